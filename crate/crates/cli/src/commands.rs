//! The four batch commands: structure verification, jet dimension tables,
//! cotwist suites, and the quantization conformance run.

use crate::format::{AlgebraFile, CocycleFile};
use crate::report::Report;
use algebroid::bialgebroid::{structural_eq, verify_translation_identities, Bialgebroid};
use algebroid::cotwist::{
    check_cocycle, check_invertible, compose_cocycles, cotwist, default_family,
    hopf_case_compare, inverse_cocycle, inverse_sharp_check, lambda_square_check,
    trivial_cocycle,
};
use algebroid::diffop::{
    canonical_pairing, diff_bialgebroid, dualize_cocycle, exponential_cocycle, check_xu_cocycle,
    twisted_pairing, twist_bialgebroid_by_f, verify_pairing,
};
use algebroid::jet::{jet_chain, jet_hopf_algebroid, jet_space, jet_splitting};
use algebroid::linalg::SparseVec;
use algebroid::report::Check;
use algebroid::Scalar;

/// Input-level failures: exit code 2.
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn load_algebra(path: &std::path::Path) -> Result<AlgebraFile, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    let file: AlgebraFile = serde_json::from_str(&text)
        .map_err(|e| InputError(format!("cannot parse {}: {e}", path.display())))?;
    Ok(file)
}

fn load_cocycle(path: &std::path::Path) -> Result<CocycleFile, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    let file: CocycleFile = serde_json::from_str(&text)
        .map_err(|e| InputError(format!("cannot parse {}: {e}", path.display())))?;
    Ok(file)
}

fn check_field_flag(file: &AlgebraFile, flag: &Option<String>) -> Result<(), InputError> {
    let Some(flag) = flag else { return Ok(()) };
    let declared = file.field.to_field()?;
    let requested = match flag.as_str() {
        "Q" => algebroid::Field::Q,
        s => {
            let p = s
                .strip_prefix("Fp:")
                .ok_or_else(|| InputError(format!("bad field flag {s:?}; use Q or Fp:<p>")))?;
            algebroid::Field::Fp(
                p.parse()
                    .map_err(|e| InputError(format!("bad prime in field flag: {e}")))?,
            )
        }
    };
    if declared != requested {
        return Err(InputError(format!(
            "file declares field {declared} but --field requests {requested}"
        )));
    }
    Ok(())
}

/// `verify`: build the requested structure and run the axiom and
/// translation-identity suites.
pub fn cmd_verify(
    path: &std::path::Path,
    force_pair: bool,
    field_flag: &Option<String>,
) -> Result<Report, InputError> {
    let file = load_algebra(path)?;
    check_field_flag(&file, field_flag)?;
    let l = file.to_bialgebroid(force_pair)?;
    let mut report = Report::new("verify", vec![file.name.clone()]);
    report.merge("", l.verification().clone());
    match l.translation() {
        Ok(tm) => {
            report.push(Check::pass("translation_map_bijective"));
            report.merge("", verify_translation_identities(&l, tm));
        }
        Err(e) => report.push(Check::fail("translation_map_bijective", e.to_string())),
    }
    match l.anti_translation() {
        Ok(_) => report.push(Check::pass("anti_translation_map_bijective")),
        Err(e) => report.push(Check::fail("anti_translation_map_bijective", e.to_string())),
    }
    report.dimensions = Some(serde_json::json!({
        "total": l.dim(),
        "base": l.base_dim(),
        "diamond": l.diamond().dim(),
        "takeuchi": l.takeuchi_subspace().dim(),
    }));
    Ok(report)
}

/// `jet`: dimension table of the ideal chain with stabilization index and
/// Hopf-ideal verdicts.
pub fn cmd_jet(
    path: &std::path::Path,
    max_k: usize,
    field_flag: &Option<String>,
) -> Result<Report, InputError> {
    let file = load_algebra(path)?;
    check_field_flag(&file, field_flag)?;
    let alg = file.to_algebra()?;
    let mut report = Report::new("jet", vec![file.name.clone()]);

    let chain = match jet_chain(&alg, max_k) {
        Ok(c) => c,
        Err(e) => {
            report.push(Check::fail("chain_stabilizes", e.to_string()));
            return Ok(report);
        }
    };
    report.push(Check::pass("chain_stabilizes"));

    let mut rows = Vec::new();
    let mut verdicts = Vec::new();
    let pair = algebroid::jet::pair_hopf_algebroid(&alg).map_err(|e| InputError(e.to_string()))?;
    for k in 0..=chain.stabilized_at {
        let jk = jet_space(&alg, &chain, k);
        let omega_dim = chain.mu.dim() - chain.power(k).dim();
        rows.push(serde_json::json!({
            "k": k,
            "mu_k": chain.power(k).dim(),
            "jet_k": jk.dim(),
            "omega1_k": omega_dim,
        }));
        let ideal = algebroid::bialgebroid::HopfIdeal {
            subspace: chain.power(k).clone(),
        };
        let (ok, _) = algebroid::bialgebroid::check_hopf_ideal(&pair, &ideal);
        verdicts.push(serde_json::json!({ "k": k, "hopf_ideal": ok }));
    }
    report.dimensions = Some(serde_json::json!({
        "base": alg.dim,
        "mu": chain.mu.dim(),
        "stabilized_at": chain.stabilized_at,
        "stabilized_ideal": chain.stabilized().dim(),
        "rows": rows,
        "hopf_ideal_verdicts": verdicts,
    }));

    // the stabilized ideal must be a Hopf ideal for a commutative base
    if alg.commutative {
        let ideal = algebroid::bialgebroid::HopfIdeal {
            subspace: chain.stabilized().clone(),
        };
        let (ok, rep) = algebroid::bialgebroid::check_hopf_ideal(&pair, &ideal);
        report.push(Check::from_witness(
            "stabilized_ideal_is_hopf_ideal",
            (!ok).then(|| {
                rep.first_failure()
                    .map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()))
                    .unwrap_or_default()
            }),
        ));
        match jet_hopf_algebroid(&alg, max_k) {
            Ok(j) => {
                report.push(Check::pass("jet_hopf_algebroid_verified"));
                let split = jet_splitting(&alg, &chain, chain.stabilized_at);
                report.push(Check::from_witness(
                    "jet_splitting",
                    split.err().map(|e| e.to_string()),
                ));
                report.notes.push(format!(
                    "jet Hopf algebroid has dimension {}",
                    j.dim()
                ));
            }
            Err(e) => report.push(Check::fail("jet_hopf_algebroid_verified", e.to_string())),
        }
    } else {
        report
            .notes
            .push("base is not commutative; Hopf quotient step skipped".into());
    }
    Ok(report)
}

fn build_cotwist_host(file: &AlgebraFile, max_k: usize) -> Result<Bialgebroid, InputError> {
    if file.hopf.is_some() || file.bialgebroid.is_some() {
        return file.to_bialgebroid(false).map_err(InputError);
    }
    let alg = file.to_algebra()?;
    if !alg.commutative {
        return Err(InputError(
            "cotwist host needs a commutative base (jet algebroid) or an explicit structure"
                .into(),
        ));
    }
    jet_hopf_algebroid(&alg, max_k).map_err(|e| InputError(e.to_string()))
}

fn build_cocycle_matrix(
    file: &AlgebraFile,
    cfile: &CocycleFile,
    host: &Bialgebroid,
    max_k: usize,
) -> Result<Vec<Vec<SparseVec>>, InputError> {
    let field = host.total.field;
    match cfile {
        CocycleFile::Trivial { .. } => Ok(trivial_cocycle(host).gamma),
        CocycleFile::Matrix { gamma, .. } => {
            let n = host.dim();
            let mut out = vec![vec![SparseVec::new(); n]; n];
            for (i, j, entries) in gamma {
                if *i >= n || *j >= n {
                    return Err(InputError(format!("gamma entry ({i},{j}) out of bounds")));
                }
                out[*i][*j] = crate::format::parse_sparse_vec(field, entries)?;
            }
            Ok(out)
        }
        CocycleFile::Dualized {
            derivations, theta, ..
        } => {
            if derivations.len() != 2 {
                return Err(InputError("dualized recipe needs two derivations".into()));
            }
            let alg = file.to_algebra()?;
            let d1 = crate::format::parse_matrix(field, alg.dim, alg.dim, &derivations[0])?;
            let d2 = crate::format::parse_matrix(field, alg.dim, alg.dim, &derivations[1])?;
            let theta = Scalar::parse(field, theta)?;
            let da = diff_bialgebroid(&alg, max_k).map_err(|e| InputError(e.to_string()))?;
            let rep = exponential_cocycle(&da, &d1, &d2, &theta, &alg)
                .map_err(|e| InputError(e.to_string()))?;
            let xu =
                check_xu_cocycle(&da.algebroid, rep).map_err(|e| InputError(e.to_string()))?;
            let pairing = canonical_pairing(&da, host, &alg);
            let gamma = dualize_cocycle(&da.algebroid, &xu, &pairing, host)
                .map_err(|e| InputError(e.to_string()))?;
            Ok(gamma.gamma)
        }
    }
}

/// `cotwist`: certify the cocycle, build the twisted algebroid, and run the
/// requested suites.
pub fn cmd_cotwist(
    algebra_path: &std::path::Path,
    cocycle_path: &std::path::Path,
    checks: &str,
    max_k: usize,
    field_flag: &Option<String>,
) -> Result<Report, InputError> {
    let file = load_algebra(algebra_path)?;
    check_field_flag(&file, field_flag)?;
    let cfile = load_cocycle(cocycle_path)?;
    let host = build_cotwist_host(&file, max_k)?;
    let mut report = Report::new(
        "cotwist",
        vec![file.name.clone(), cfile.display_name().to_string()],
    );
    if !host.is_verified() {
        report.merge("host_", host.verification().clone());
        return Ok(report);
    }
    report.push(Check::pass("host_verified"));

    if checks == "hopf-compare" {
        if host.base_dim() != 1 {
            return Err(InputError(
                "hopf-compare requires a Hopf algebra over the base field".into(),
            ));
        }
        let gamma_matrix = build_cocycle_matrix(&file, &cfile, &host, max_k)?;
        let c = match check_cocycle(&host, gamma_matrix) {
            Ok(c) => {
                report.push(Check::pass("cocycle_certified"));
                c
            }
            Err(e) => {
                report.push(Check::fail("cocycle_certified", e.to_string()));
                return Ok(report);
            }
        };
        match hopf_case_compare(&host, &c) {
            Ok(cmp) => report.merge("", cmp.report),
            Err(e) => report.push(Check::fail("hopf_compare", e.to_string())),
        }
        return Ok(report);
    }

    let gamma_matrix = build_cocycle_matrix(&file, &cfile, &host, max_k)?;
    let c = match check_cocycle(&host, gamma_matrix) {
        Ok(c) => {
            report.push(Check::pass("cocycle_certified"));
            c
        }
        Err(e) => {
            report.push(Check::fail("cocycle_certified", e.to_string()));
            return Ok(report);
        }
    };
    let family = default_family(&host).map_err(|e| InputError(e.to_string()))?;
    match check_invertible(&host, &c, &family) {
        Ok(()) => report.push(Check::pass("cocycle_invertible_on_family")),
        Err(e) => {
            report.push(Check::fail("cocycle_invertible_on_family", e.to_string()));
            return Ok(report);
        }
    }
    let twisted = match cotwist(&host, &c) {
        Ok(t) => t,
        Err(e) => {
            report.push(Check::fail("twisted_structure_verified", e.to_string()));
            return Ok(report);
        }
    };
    report.push(Check::pass("twisted_structure_verified"));
    report.push(Check::from_witness(
        "twisted_translation_bijective",
        twisted.translation().err().map(|e| e.to_string()),
    ));
    match lambda_square_check(&host, &c, &twisted) {
        Ok(w) => report.push(Check::from_witness("lambda_square_commutes", w)),
        Err(e) => report.push(Check::fail("lambda_square_commutes", e.to_string())),
    }
    if c == trivial_cocycle(&host) {
        report.push(Check::from_witness(
            "trivial_cotwist_identity",
            (!structural_eq(&host, &twisted)).then(|| "structures differ".to_string()),
        ));
    }

    if checks == "all" || checks == "groupoid" {
        let sigma = match inverse_cocycle(&host, &c, &twisted) {
            Ok(s) => {
                report.push(Check::pass("inverse_cocycle_certified"));
                s
            }
            Err(e) => {
                report.push(Check::fail("inverse_cocycle_certified", e.to_string()));
                return Ok(report);
            }
        };
        let round = match cotwist(&twisted, &sigma) {
            Ok(r) => r,
            Err(e) => {
                report.push(Check::fail("round_trip_identity", e.to_string()));
                return Ok(report);
            }
        };
        report.push(Check::from_witness(
            "round_trip_identity",
            (!structural_eq(&host, &round)).then(|| "(L^Γ)^(Γ⁻¹) differs from L".to_string()),
        ));
        match compose_cocycles(&host, &c, &twisted, &sigma) {
            Ok(back) => report.push(Check::from_witness(
                "inverse_composes_to_trivial",
                (back != trivial_cocycle(&host)).then(|| "Γ⁻¹∘Γ ≠ ε̂".to_string()),
            )),
            Err(e) => report.push(Check::fail("inverse_composes_to_trivial", e.to_string())),
        }
        match compose_cocycles(&twisted, &sigma, &round, &c) {
            Ok(fwd) => report.push(Check::from_witness(
                "forward_composes_to_trivial",
                (fwd != trivial_cocycle(&twisted)).then(|| "Γ∘Γ⁻¹ ≠ ε̂".to_string()),
            )),
            Err(e) => report.push(Check::fail("forward_composes_to_trivial", e.to_string())),
        }
        let mut witness = None;
        'outer: for m in &family {
            for n in &family {
                match inverse_sharp_check(&host, &c, &twisted, &sigma, m, n) {
                    Ok(None) => {}
                    Ok(Some(w)) => {
                        witness = Some(w);
                        break 'outer;
                    }
                    Err(e) => {
                        witness = Some(e.to_string());
                        break 'outer;
                    }
                }
            }
        }
        report.push(Check::from_witness("inverse_sharp_inverts", witness));
    }

    report.dimensions = Some(serde_json::json!({
        "host": host.dim(),
        "base": host.base_dim(),
    }));
    Ok(report)
}

/// `quantize`: run the quantization pipeline with the file's derivation
/// recipe and report the closed-form conformance plus the twisted pairing.
pub fn cmd_quantize(
    path: &std::path::Path,
    theta: &str,
    max_k: usize,
    field_flag: &Option<String>,
) -> Result<Report, InputError> {
    let file = load_algebra(path)?;
    check_field_flag(&file, field_flag)?;
    let alg = file.to_algebra()?;
    let mut report = Report::new("quantize", vec![file.name.clone()]);
    let theta = Scalar::parse(alg.field, theta)?;

    let Some((d1, d2)) = file.star_derivations()? else {
        report.push(Check::fail(
            "derivation_recipe",
            "no nilpotent derivation recipe applies: the algebra file carries no derivations",
        ));
        return Ok(report);
    };
    report.push(Check::pass("derivation_recipe"));

    let q = match algebroid::diffop::quantized_jet(&alg, &d1, &d2, &theta, max_k) {
        Ok(q) => q,
        Err(e) => {
            report.push(Check::fail("quantization_pipeline", e.to_string()));
            return Ok(report);
        }
    };
    report.push(Check::pass("quantization_pipeline"));
    report.merge("", q.conformance.clone());
    report.push(Check::from_witness(
        "twisted_structure_verified",
        (!q.twisted.is_verified()).then(|| {
            q.twisted
                .verification()
                .first_failure()
                .map(|c| c.name.clone())
                .unwrap_or_default()
        }),
    ));

    // twisted dual pairing axioms
    match twist_bialgebroid_by_f(&q.diff.algebroid, &q.xu) {
        Ok(lam_f) => {
            match twisted_pairing(&q.diff.algebroid, &q.xu, &q.pairing, &q.jet) {
                Ok(tp) => report.merge("twisted_", verify_pairing(&lam_f, &q.twisted, &tp)),
                Err(e) => report.push(Check::fail("twisted_pairing", e.to_string())),
            }
        }
        Err(e) => report.push(Check::fail("twisted_operator_algebroid", e.to_string())),
    }

    // base noncommutativity witnesses
    let bg = &q.twisted.base;
    for i in 0..bg.dim {
        for j in 0..i {
            let fwd = bg.mul_basis(i, j);
            let bwd = bg.mul_basis(j, i);
            if fwd != bwd {
                let diff = algebroid::linalg::normalize(
                    [fwd.clone(), algebroid::bialgebroid::negate(bwd)].concat(),
                );
                report.notes.push(format!(
                    "{}·{} − {}·{} = {}",
                    bg.basis_names[i],
                    bg.basis_names[j],
                    bg.basis_names[j],
                    bg.basis_names[i],
                    bg.format_vec(&diff)
                ));
            }
        }
    }
    if report.notes.is_empty() {
        report
            .notes
            .push("twisted base is commutative at this theta".into());
    }
    report.dimensions = Some(serde_json::json!({
        "base": alg.dim,
        "jet": q.jet.dim(),
        "operators": q.diff.algebroid.dim(),
        "filtration": q.diff.filtration_dims,
    }));
    Ok(report)
}
