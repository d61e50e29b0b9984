//! Machine-readable command reports. Identical inputs produce byte-identical
//! JSON: no timing or environment data is serialized.

use algebroid::report::Check;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub fixtures: Vec<String>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimensions: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str, fixtures: Vec<String>) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            command: command.into(),
            fixtures,
            checks: Vec::new(),
            dimensions: None,
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn merge(&mut self, prefix: &str, rep: algebroid::report::VerificationReport) {
        for mut c in rep.checks {
            if !prefix.is_empty() {
                c.name = format!("{prefix}{}", c.name);
            }
            self.checks.push(c);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn print_text(&self) {
        println!("{} report", self.command);
        for f in &self.fixtures {
            println!("  input: {f}");
        }
        if let Some(dims) = &self.dimensions {
            if let Some(rows) = dims.get("rows").and_then(|r| r.as_array()) {
                println!("  {:>4} {:>8} {:>8} {:>9}", "k", "dim μ_k", "dim J^k", "dim Ω¹_k");
                for row in rows {
                    let cell = |key: &str| row[key].as_u64().unwrap_or(0);
                    println!(
                        "  {:>4} {:>8} {:>8} {:>9}",
                        cell("k"),
                        cell("mu_k"),
                        cell("jet_k"),
                        cell("omega1_k")
                    );
                }
                let mut rest = dims.clone();
                if let Some(obj) = rest.as_object_mut() {
                    obj.remove("rows");
                }
                println!("  dimensions: {rest}");
            } else {
                println!("  dimensions: {dims}");
            }
        }
        for note in &self.notes {
            println!("  note: {note}");
        }
        for c in &self.checks {
            match (&c.passed, &c.witness) {
                (true, _) => println!("  [pass] {}", c.name),
                (false, Some(w)) => println!("  [FAIL] {}: {}", c.name, w),
                (false, None) => println!("  [FAIL] {}", c.name),
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        if failed == 0 {
            println!("all {} checks passed", self.checks.len());
        } else {
            println!("{failed} of {} checks failed", self.checks.len());
        }
    }

    pub fn print_json(&self) {
        println!(
            "{}",
            serde_json::to_string_pretty(self).expect("report serialization")
        );
    }
}
