use super::*;
use crate::error::Error;
use crate::filterreg::GradeValue;
use crate::fpmod::{gamma, hilbert_function, ModulePresentation};
use crate::ring::{Degree, Polynomial, Ring, RingRef};

fn ring(vars: &[&str]) -> RingRef {
    Ring::rational_fine(vars)
}

fn p(r: &RingRef, s: &[&str]) -> Vec<Polynomial> {
    r.parse_list(s).unwrap()
}

fn cyclic(r: &RingRef, gens: &[&str]) -> AdmissibleModule {
    AdmissibleModule::cyclic(r, &p(r, gens)).unwrap()
}

#[test]
fn h1_of_one_variable_localization() {
    let r = ring(&["x", "y"]);
    let t = cech_table(&p(&r, &["x"]), &cyclic(&r, &[]), &DegreeWindow::cube(2, -3, 3).unwrap()).unwrap();
    assert!(t.row_is_zero(0));
    for (d, v) in t.row(1) {
        assert_eq!(v, usize::from(d[0] <= -1 && d[1] >= 0), "{d:?}");
    }
}

#[test]
fn top_cohomology_of_the_plane() {
    let r = ring(&["x", "y"]);
    let t = cech_table(&p(&r, &["x", "y"]), &cyclic(&r, &[]), &DegreeWindow::cube(2, -3, 3).unwrap()).unwrap();
    assert_eq!(t.nonzero_indices(), vec![2]);
    for (d, v) in t.row(2) {
        assert_eq!(v, usize::from(d[0] <= -1 && d[1] <= -1), "{d:?}");
    }
}

#[test]
fn hypersurface_cohomology_by_euler_characteristic() {
    // For N = k[x,y,z]/(xy), the Čech complex has H^i only at i = 2; check via the
    // alternating sum of localization dimensions, which is exact.
    let r = ring(&["x", "y", "z"]);
    let n = cyclic(&r, &["x*y"]);
    let a = p(&r, &["x", "y", "z"]);
    let t = cech_table(&a, &n, &DegreeWindow::cube(3, -2, 2).unwrap()).unwrap();
    assert_eq!(t.nonzero_indices(), vec![2]);
    for (d, _) in t.row(0) {
        let mut chi: i64 = 0;
        for s in 0u64..8 {
            let sign = if s.count_ones() % 2 == 0 { 1 } else { -1 };
            chi += sign * n.local_dim(s, &d).unwrap() as i64;
        }
        let sum: i64 = (0..=3).map(|i| if i % 2 == 0 { 1 } else { -1 } * t.get(i, &d).unwrap() as i64).sum();
        assert_eq!(chi, sum, "{d:?}");
    }
}

#[test]
fn h0_row_matches_gamma() {
    let r = ring(&["x", "y", "z"]);
    let n = cyclic(&r, &["x*y", "x*z"]);
    let a = p(&r, &["y", "z"]);
    let w = DegreeWindow::cube(3, -1, 3).unwrap();
    let t = cech_table(&a, &n, &w).unwrap();
    let (g, _) = gamma(&a, &n.to_presentation()).unwrap();
    let degs: Vec<Degree> = w.points().into_iter().map(Degree).collect();
    let hf = hilbert_function(&g, &degs);
    for ((d, v), h) in t.row(0).into_iter().zip(hf) {
        assert_eq!(v as u64, h, "{d:?}");
    }
    assert!(!t.row_is_zero(0));
}

#[test]
fn trivial_resolution_reduces_to_cech() {
    let r = ring(&["x", "y"]);
    let n = cyclic(&r, &["x^2*y"]).direct_sum(&cyclic(&r, &["y^2"]));
    let a = p(&r, &["x", "y"]);
    let w = DegreeWindow::cube(2, -3, 3).unwrap();
    let plain = cech_table(&a, &n, &w).unwrap();
    let general = gen_cech_table(&a, &ModulePresentation::ring_module(&r), &n, &w).unwrap();
    for i in 0..=2 {
        assert_eq!(plain.row(i), general.row(i));
    }
}

#[test]
fn generalized_cohomology_of_a_line() {
    // H^k_m(R/(x), R) = Ext^{k−2}(R/(x), H²_m(R)); only Hom = (0 :_{H²} x) survives
    let r = ring(&["x", "y"]);
    let m = ModulePresentation::cyclic(&r, &p(&r, &["x"])).unwrap();
    let t = gen_cech_table(&p(&r, &["x", "y"]), &m, &cyclic(&r, &[]), &DegreeWindow::cube(2, -4, 3).unwrap()).unwrap();
    assert!(t.row_is_zero(0) && t.row_is_zero(1) && t.row_is_zero(3));
    for (d, v) in t.row(2) {
        assert_eq!(v, usize::from(d[0] == -1 && d[1] <= -1), "{d:?}");
    }
}

#[test]
fn zero_module_has_zero_table() {
    let r = ring(&["x", "y"]);
    let n = AdmissibleModule::zero(&r);
    let t = cech_table(&p(&r, &["x", "y"]), &n, &DegreeWindow::cube(2, -2, 2).unwrap()).unwrap();
    assert!(t.nonzero_indices().is_empty());
    let unit = cyclic(&r, &["1"]);
    assert!(unit.is_zero());
    assert!(cech_table(&p(&r, &["x"]), &unit, t.window()).unwrap().nonzero_indices().is_empty());
}

#[test]
fn radical_invariance() {
    let r = ring(&["x", "y", "z"]);
    let n = cyclic(&r, &["x*y*z", "y^2"]);
    let w = DegreeWindow::cube(3, -2, 2).unwrap();
    let a = cech_table(&p(&r, &["x", "y*z"]), &n, &w).unwrap();
    let b = cech_table(&p(&r, &["x^3", "x*y^2*z", "y^2*z^4"]), &n, &w).unwrap();
    for i in 0..=3 {
        assert_eq!(a.row(i), b.row(i));
    }
}

#[test]
fn top_vanishing() {
    let r = ring(&["x", "y", "z"]);
    let n = cyclic(&r, &["x*z"]);
    let w = DegreeWindow::cube(3, -2, 2).unwrap();
    let t = cech_table(&p(&r, &["x", "y"]), &n, &w).unwrap();
    assert_eq!(t.max_index(), 2);
    let m = ModulePresentation::cyclic(&r, &p(&r, &["x", "y"])).unwrap();
    let g = gen_cech_table(&p(&r, &["x", "y", "z"]), &m, &n, &w).unwrap();
    // pd M = 2 and dim N = 2
    assert!(g.nonzero_indices().iter().all(|&i| i <= 4));
}

#[test]
fn window_validation() {
    assert!(matches!(DegreeWindow::cube(5, -10, 10), Err(Error::WindowTooLarge { .. })));
    assert!(matches!(DegreeWindow::new(vec![1], vec![0]), Err(Error::InvalidWindow(_))));
    let r = ring(&["x", "y"]);
    let bad = cech_table(&p(&r, &["x+y"]), &cyclic(&r, &[]), &DegreeWindow::cube(2, 0, 0).unwrap());
    assert!(matches!(bad, Err(Error::NotMonomial(_))));
    let s = Ring::rational(&["x", "y"]);
    let m = ModulePresentation::cyclic(&s, &p(&s, &["x-y"])).unwrap();
    assert!(matches!(AdmissibleModule::from_presentation(&m), Err(Error::NotAdmissible(_))));
}

#[test]
fn regime_box_supports() {
    let r = ring(&["x", "y"]);
    // H^1_(x)(R) is supported on V(x) but not on V(y)
    let t = regime_table(&p(&r, &["x"]), &ModulePresentation::ring_module(&r), &cyclic(&r, &[])).unwrap();
    assert!(support_in_v_from_table(&t, 1, &p(&r, &["x"])).unwrap());
    assert!(!support_in_v_from_table(&t, 1, &p(&r, &["y"])).unwrap());
    assert!(support_in_v_from_table(&t, 0, &p(&r, &["1"])).unwrap());
    assert!(!support_in_v_from_table(&t, 1, &p(&r, &["1"])).unwrap());
    let m = ModulePresentation::ring_module(&r);
    assert_eq!(cohomological_dimension(&p(&r, &["x", "y"]), &m, &cyclic(&r, &[])).unwrap(), Some(2));
    assert_eq!(cohomological_dimension(&p(&r, &["x", "y"]), &m, &cyclic(&r, &["x"])).unwrap(), Some(1));
    assert_eq!(cohomological_dimension(&p(&r, &["x"]), &m, &cyclic(&r, &["1"])).unwrap(), None);
}

#[test]
fn lc_index_matches_filter_grade_examples() {
    let r = Ring::rational(&["x", "y"]);
    let free = ModulePresentation::ring_module(&r);
    let a = p(&r, &["x"]);
    let b = p(&r, &["y"]);
    assert_eq!(lc_support_index(&a, &b, &free).unwrap(), Some(GradeValue::Finite(1)));
    let xy = ModulePresentation::cyclic(&r, &p(&r, &["x*y"])).unwrap();
    assert_eq!(lc_support_index(&a, &b, &xy).unwrap(), Some(GradeValue::Finite(0)));
    assert_eq!(lc_support_index(&p(&r, &["1"]), &p(&r, &["x", "y"]), &free).unwrap(), Some(GradeValue::Finite(2)));
    assert_eq!(lc_support_index(&a, &p(&r, &["x", "y"]), &free).unwrap(), Some(GradeValue::Infinity));
    assert_eq!(lc_support_index(&p(&r, &["x+y"]), &b, &free).unwrap(), None);
}

#[test]
fn h0_exact_examples() {
    let r = Ring::rational(&["x", "y", "z"]);
    let free = ModulePresentation::ring_module(&r);
    let n = ModulePresentation::cyclic(&r, &p(&r, &["x*y", "x*z"])).unwrap();
    let h = h0_exact(&p(&r, &["y", "z"]), &free, &n).unwrap();
    assert_eq!(h.module.ngens(), 1);
    assert_eq!(h.module.degrees()[0], Degree(vec![1]));
    let h = h0_exact(&p(&r, &["x+y"]), &free, &free).unwrap();
    assert!(h.module.is_zero());
    let rx = ModulePresentation::cyclic(&r, &p(&r, &["x"])).unwrap();
    assert!(h0_exact(&p(&r, &["y"]), &rx, &free).unwrap().module.is_zero());
}

#[test]
fn nagel_schenzel_small() {
    let r = ring(&["x", "y", "z"]);
    let n = cyclic(&r, &["x*y", "x*z"]);
    let free = ModulePresentation::ring_module(&r);
    let w = DegreeWindow::cube(3, -2, 2).unwrap();
    let rep = ns_verify(&p(&r, &["y", "z"]), &p(&r, &["y"]), &free, &n, &w).unwrap();
    assert!(rep.passes(), "{rep:?}");
    let empty = ns_verify(&p(&r, &["y", "z"]), &[], &free, &n, &w).unwrap();
    assert!(empty.passes() && empty.indices.is_empty());
    let bad = ns_verify(&p(&r, &["y", "z"]), &p(&r, &["x"]), &free, &n, &w);
    assert!(matches!(bad, Err(Error::Precondition(_))));
}

#[test]
fn nagel_schenzel_fails_above_the_length() {
    // H^1_(y,z)(R) = 0 but H^1_(y)(R) ≠ 0: the comparison is only claimed below length(xs)
    let r = ring(&["x", "y", "z"]);
    let free = ModulePresentation::ring_module(&r);
    let w = DegreeWindow::cube(3, -2, 1).unwrap();
    let left = gen_cech_table(&p(&r, &["y", "z"]), &free, &cyclic(&r, &[]), &w).unwrap();
    let right = gen_cech_table(&p(&r, &["y"]), &free, &cyclic(&r, &[]), &w).unwrap();
    assert_eq!(left.row(0), right.row(0));
    assert_ne!(left.row(1), right.row(1));
}

#[test]
fn composite_formula_on_the_plane() {
    let r = ring(&["x", "y"]);
    let a = p(&r, &["x", "y"]);
    let xs = p(&r, &["x"]);
    let n = cyclic(&r, &[]);
    let w = DegreeWindow::cube(2, -3, 2).unwrap();
    let free = ModulePresentation::ring_module(&r);
    let rep = ns_compose_verify(&a, &xs, &free, &n, &w, 0).unwrap();
    assert!(rep.passes(), "{rep:?}");
    assert_eq!(rep.pd, 0);
    let line = ModulePresentation::cyclic(&r, &p(&r, &["x"])).unwrap();
    let rep = ns_compose_verify(&a, &xs, &line, &n, &w, 1).unwrap();
    assert_eq!(rep.pd, 1);
    assert!(rep.passes(), "{rep:?}");
    let zero_len = ns_compose_verify(&a, &[], &free, &n, &w, 0).unwrap();
    assert!(zero_len.passes());
}

#[test]
fn margin_shortfall_is_reported() {
    let r = ring(&["x", "y"]);
    let w = WindowedModule::new(&p(&r, &["x"]), 1, &cyclic(&r, &[]), 0).unwrap();
    assert_eq!(w.dim(&[-2, 0]).unwrap(), 1);
    assert_eq!(w.dim(&[0, 0]).unwrap(), 0);
    assert!(matches!(w.local_dim(1, &[-1, 0]), Err(Error::MarginInsufficient(_))));
    let w = WindowedModule::new(&p(&r, &["x"]), 1, &cyclic(&r, &[]), 5).unwrap();
    assert_eq!(w.local_dim(1, &[-1, 0]).unwrap(), 0);
}

#[test]
fn inferred_multidegrees() {
    let r = Ring::rational(&["x", "y"]);
    let m = ModulePresentation::new(
        &r,
        vec![Degree(vec![0]), Degree(vec![0])],
        vec![crate::groebner::Vector::from_polys(&p(&r, &["y", "-x"]))],
    )
    .unwrap();
    let f = fine_presentation(&m).unwrap();
    let d = f.degrees();
    // y·e_0 = x·e_1 forces deg e_1 − deg e_0 = (−1, 1)
    assert_eq!(&d[1].0[..], &[d[0].0[0] - 1, d[0].0[1] + 1]);
}
