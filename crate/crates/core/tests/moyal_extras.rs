//! Deeper checks on the two-variable deformation fixture, where the star
//! product is genuinely asymmetric: comodule transport, cocommutation of
//! the twisted and untwisted coactions, comparison-map coherence, and the
//! action identity of the dualized cocycle.

use algebroid::comodule::{base_comodule, verify_comodule};
use algebroid::cotwist::{
    cocommutation_check, coherence_check, comodule_transport, transport_monoidal_check,
};
use algebroid::diffop::{dual_action_identity_check, quantized_jet};
use algebroid::{fixtures, Field};

#[test]
fn transport_and_cocommutation_at_scale() {
    let bm = fixtures::algebra_bm();
    let (d1, d2) = fixtures::moyal_derivations_bm();
    let q = quantized_jet(&bm, &d1, &d2, &Field::Q.one(), 16).expect("pipeline");
    let l = &q.jet;
    let c = &q.gamma;
    let tw = &q.twisted;

    // the base comodule transports to a valid comodule of the twisted
    // algebroid
    let m = base_comodule(l);
    let m_tw = comodule_transport(l, c, &m).expect("transport");
    let rep = verify_comodule(tw, &m_tw);
    assert!(rep.all_passed(), "{:?}", rep.first_failure());

    // the twisted and untwisted coactions cocommute
    assert_eq!(cocommutation_check(l, c, tw, &m, &m_tw).unwrap(), None);

    // the comparison map is monoidal under transport
    assert_eq!(transport_monoidal_check(l, c, tw, &m, &m).unwrap(), None);

    // comparison-map coherence on a base-comodule triple
    assert_eq!(coherence_check(l, c, &m, &m, &m).unwrap(), None);

    // the dualized cocycle's comparison map agrees with the
    // pairing-induced action of the cocycle element
    assert_eq!(
        dual_action_identity_check(&q.diff.algebroid, &q.xu, &q.pairing, l, c, &m, &m).unwrap(),
        None
    );
}
