//! Regenerate the golden input files under `fixtures/`. Run from the
//! workspace root:
//!
//! ```text
//! cargo run -p algebroid-cli --example gen_fixtures
//! ```

use algebroid::algebra::FiniteAlgebra;
use algebroid::linalg::LinMap;
use algebroid::{fixtures, Field};
use algebroid_cli::format::{
    AlgebraFile, CocycleFile, CustomSpec, FieldSpec, HopfSpec, MatrixSpec,
};

fn algebra_to_file(alg: &FiniteAlgebra) -> AlgebraFile {
    let mut mul = Vec::new();
    for i in 0..alg.dim {
        for j in 0..alg.dim {
            for (k, c) in alg.mul_basis(i, j) {
                let s = c.to_fraction_string();
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.to_string(), d.to_string()),
                    None => (s, "1".to_string()),
                };
                mul.push((i, j, *k, num, den));
            }
        }
    }
    let unit = {
        let dense = algebroid::linalg::to_dense(&alg.unit, alg.dim, alg.field);
        dense.iter().map(|c| c.to_fraction_string()).collect()
    };
    AlgebraFile {
        schema: 1,
        name: alg.name.clone(),
        field: match alg.field {
            Field::Q => FieldSpec::Named("Q".into()),
            Field::Fp(p) => FieldSpec::Prime { p },
        },
        dim: alg.dim,
        basis: alg.basis_names.clone(),
        unit,
        mul,
        commutative: Some(alg.commutative),
        derivations: None,
        hopf: None,
        bialgebroid: None,
    }
}

fn matrix_to_spec(m: &LinMap) -> MatrixSpec {
    let mut out = Vec::new();
    for (c, col) in m.cols.iter().enumerate() {
        for (r, v) in col {
            out.push((*r, c, v.to_fraction_string()));
        }
    }
    out
}

fn write(path: &str, value: &impl serde::Serialize) {
    let text = serde_json::to_string_pretty(value).expect("serialize fixture");
    std::fs::write(path, text + "\n").expect("write fixture");
    println!("wrote {path}");
}

fn main() {
    std::fs::create_dir_all("fixtures").expect("fixtures directory");

    write("fixtures/b2.json", &algebra_to_file(&fixtures::algebra_b2()));
    write("fixtures/b3.json", &algebra_to_file(&fixtures::algebra_b3()));
    write("fixtures/ut2.json", &algebra_to_file(&fixtures::algebra_ut2()));

    // the Moyal base ships with its star-product derivations
    let mut bm = algebra_to_file(&fixtures::algebra_bm());
    let (d1, d2) = fixtures::moyal_derivations_bm();
    bm.derivations = Some(vec![matrix_to_spec(&d1), matrix_to_spec(&d2)]);
    write("fixtures/bm.json", &bm);

    // group algebra of Z2 x Z2 with its group-like Hopf structure
    let mut h = algebra_to_file(&fixtures::algebra_k4_group());
    h.hopf = Some(HopfSpec {
        coproduct: (0..4).map(|g| (g, g, g, "1".to_string())).collect(),
        counit: vec!["1".into(); 4],
    });
    write("fixtures/h_k4.json", &h);

    // cocycle files
    write(
        "fixtures/trivial.json",
        &CocycleFile::Trivial {
            name: Some("trivial".into()),
            host: None,
        },
    );
    let sign = fixtures::sign_cocycle_k4();
    write(
        "fixtures/sign.json",
        &CocycleFile::Matrix {
            name: Some("sign".into()),
            host: Some("h_k4".into()),
            gamma: (0..4)
                .flat_map(|i| {
                    let sign = &sign;
                    (0..4).map(move |j| (i, j, vec![(0usize, sign[i][j].to_fraction_string())]))
                })
                .collect(),
        },
    );
    write(
        "fixtures/moyal.json",
        &CocycleFile::Dualized {
            name: Some("moyal".into()),
            host: Some("bm".into()),
            derivations: vec![matrix_to_spec(&d1), matrix_to_spec(&d2)],
            theta: "1".into(),
        },
    );
    // support-on-unit form: a genuine cocycle whose comparison maps are
    // singular, for the negative invertibility path
    write(
        "fixtures/rank_gamma.json",
        &CocycleFile::Matrix {
            name: Some("rank_gamma".into()),
            host: Some("h_k4".into()),
            gamma: (0..4)
                .flat_map(|i| {
                    (0..4).filter_map(move |j| {
                        (i == 0 || j == 0).then(|| (i, j, vec![(0usize, "1".to_string())]))
                    })
                })
                .collect(),
        },
    );

    // negative fixtures: a broken unit and a corrupted counit
    let bad_unit = AlgebraFile {
        schema: 1,
        name: "bad_unit".into(),
        field: FieldSpec::Named("Q".into()),
        dim: 2,
        basis: vec!["e1".into(), "e2".into()],
        unit: vec!["1".into(), "0".into()],
        mul: vec![(0, 0, 1, "1".into(), "1".into())],
        commutative: None,
        derivations: None,
        hopf: None,
        bialgebroid: None,
    };
    write("fixtures/bad_unit.json", &bad_unit);

    // pair algebroid of B2 with ε(a ⊗ a') := a in place of aa'
    let b2 = fixtures::algebra_b2();
    let parts = algebroid::jet::pair_parts(&b2);
    let mut broken = algebra_to_file(&parts.total);
    broken.name = "broken_counit".into();
    let corrupted_counit: MatrixSpec = (0..4).map(|x| (x / 2, x, "1".to_string())).collect();
    let coproduct = {
        let n = parts.total.dim;
        let mut out = Vec::new();
        for (x, rep) in parts.coproduct.iter().enumerate() {
            for (t, c) in rep {
                out.push((x, t / n, t % n, c.to_fraction_string()));
            }
        }
        out
    };
    broken.bialgebroid = Some(CustomSpec {
        base: Box::new(algebra_to_file(&b2)),
        source: matrix_to_spec(&parts.source),
        target: matrix_to_spec(&parts.target),
        coproduct,
        counit: corrupted_counit,
    });
    write("fixtures/broken_counit.json", &broken);
}
