use std::sync::Arc;

use dshier::grading::*;
use dshier::liealg::{build_g2, build_sl, centralizer, jordan_decomposition_elem, G2Roots, LieElement};
use dshier::rational::rat;
use dshier::HalfInt;

#[test]
fn so7_grading_data() {
    let (t, idx) = so_integrable_triple(&[3, 2, 2]).unwrap();
    let h = t.grading.triple().h.to_matrix().unwrap();
    let n = idx.n();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                assert_eq!(h[(i, j)], rat(0));
            }
        }
    }
    let w = t.grading.omega_form();
    assert_eq!((w.rows(), w.cols()), (4, 4));
    assert_eq!(w.rank(), 4);
    let c = t.grading.half_centralizer(&t.big_e).unwrap();
    assert_eq!(c.len(), 2);
    assert!(is_coisotropic(&c, &t.grading).unwrap());
}

#[test]
fn so7_jordan_parts() {
    let (t, _) = so_integrable_triple(&[3, 2, 2]).unwrap();
    let (s, n) = jordan_decomposition_elem(&t.f().add(&t.big_e).unwrap()).unwrap();
    assert_eq!(n, t.f2);
    assert_eq!(s, t.f1.add(&t.big_e).unwrap());
}

#[test]
fn g2_short_root_has_no_quasicyclic_element() {
    let g = Arc::new(build_g2().unwrap());
    let s = g2_triple(&g, "~A1").unwrap();
    let gr = DynkinGrading::from_triple(&s).unwrap();
    let e = LieElement::by_label(&g, &G2Roots::label(1, 2)).unwrap();
    assert_eq!(gr.degree_of(&e).unwrap(), Some(HalfInt::ONE));
    assert!(centralizer(&e, gr.piece(HalfInt::HALF)).unwrap().is_empty());
    let out = find_integrable_element(&gr, DegreeChoice::DepthMinusHalf, SearchBudget::default(), 7).unwrap();
    assert!(out.found.is_none());
    assert!(out.candidates_tried > 0);
}

#[test]
fn sl3_minimal_search_succeeds() {
    let g = Arc::new(build_sl(3).unwrap());
    let t = sl2_from_partition(&g, None, &[2, 1]).unwrap();
    let gr = DynkinGrading::from_triple(&t).unwrap();
    let out = find_integrable_element(&gr, DegreeChoice::Depth, SearchBudget::default(), 1).unwrap();
    let found = out.found.expect("an integrable triple exists");
    assert!(integrable_triple_check(&found).all_pass());
    let (_, n) = jordan_decomposition_elem(&found.f().add(&found.big_e).unwrap()).unwrap();
    assert_eq!(n, found.f2);
}

#[test]
fn sl_principal_triples() {
    for n in 2..=4 {
        let t = sl_principal_triple(n).unwrap();
        assert!(integrable_triple_check(&t).all_pass(), "sl{n}");
        assert_eq!(t.degree(), Some(HalfInt::from_int(n as i64 - 1)));
    }
}
