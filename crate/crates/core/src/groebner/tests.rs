use proptest::prelude::*;

use super::*;
use crate::ring::{Polynomial, Ring, RingRef};

fn xy() -> RingRef {
    Ring::rational(&["x", "y"])
}

fn xyz() -> RingRef {
    Ring::rational(&["x", "y", "z"])
}

fn polys(r: &RingRef, s: &[&str]) -> Vec<Polynomial> {
    r.parse_list(s).unwrap()
}

fn same_ideal(r: &RingRef, a: &[Polynomial], b: &[Polynomial]) -> bool {
    ideal_contains(r, a, b) && ideal_contains(r, b, a)
}

#[test]
fn already_a_basis() {
    let r = xy();
    let gb = GroebnerBasis::ideal(&r, &polys(&r, &["x^2", "x*y"]));
    assert_eq!(gb.polys(), polys(&r, &["x^2", "x*y"]));
    assert!(gb.satisfies_buchberger_criterion());
    assert!(gb.check_reduced());
}

#[test]
fn principal_and_reduced() {
    let r = xy();
    assert_eq!(GroebnerBasis::ideal(&r, &polys(&r, &["x"])).polys(), polys(&r, &["x"]));
    assert_eq!(GroebnerBasis::ideal(&r, &polys(&r, &["x - y", "y"])).polys(), polys(&r, &["x", "y"]));
    assert!(GroebnerBasis::ideal(&r, &[]).elements().is_empty());
}

#[test]
fn cyclic_three_is_a_basis() {
    let r = xyz();
    let gens = polys(&r, &["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"]);
    let gb = GroebnerBasis::ideal(&r, &gens);
    assert!(gb.satisfies_buchberger_criterion());
    assert!(gb.check_reduced());
    for g in &gens {
        assert!(gb.contains_poly(g));
    }
    assert_eq!(dim_ideal(&r, &gens), 0);
}

#[test]
fn lex_order_eliminates() {
    let r = Ring::new(["x", "y"], crate::Field::Rationals, crate::Grading::Standard, crate::MonomialOrder::Lex).unwrap();
    let gb = GroebnerBasis::ideal(&r, &polys(&r, &["x - y^2", "x*y - 1"]));
    assert!(gb.satisfies_buchberger_criterion());
    assert!(gb.polys().iter().any(|p| p == &r.parse("y^3 - 1").unwrap()));
}

#[test]
fn division_remainder() {
    let r = xy();
    let gb = GroebnerBasis::ideal(&r, &polys(&r, &["x^2", "x*y"]));
    assert_eq!(gb.normal_form_poly(&r.parse("x^2*y + y").unwrap()), r.parse("y").unwrap());
}

#[test]
fn prime_field_basis() {
    let r = Ring::new(["x", "y"], crate::Field::prime(7).unwrap(), crate::Grading::Standard, Default::default())
        .unwrap();
    let gb = GroebnerBasis::ideal(&r, &polys(&r, &["3*x + y", "x^2 - y^2"]));
    assert!(gb.satisfies_buchberger_criterion());
    assert!(gb.check_reduced());
}

#[test]
fn koszul_syzygies() {
    let r = xy();
    let m = vec![polys(&r, &["x", "y"])];
    let s = syzygy_matrix(&r, &m);
    assert_eq!(s.len(), 1);
    assert!(s[0] == polys(&r, &["y", "-x"]) || s[0] == polys(&r, &["-y", "x"]));

    assert!(syzygy_matrix(&r, &[polys(&r, &["x"])]).is_empty());

    let s = syzygy_matrix(&r, &[polys(&r, &["x^2", "x*y"])]);
    assert_eq!(s.len(), 1);
    assert!(s[0] == polys(&r, &["y", "-x"]) || s[0] == polys(&r, &["-y", "x"]));
}

#[test]
fn koszul_syzygy_count() {
    for n in 1..=4usize {
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let r = Ring::rational(&refs);
        let row = r.variables_as_polys();
        let s = syzygy_matrix(&r, std::slice::from_ref(&row));
        assert_eq!(s.len(), n * (n - 1) / 2);
        for col in &s {
            let mut acc = r.zero();
            for (a, b) in row.iter().zip(col) {
                acc = &acc + &(a * b);
            }
            assert!(acc.is_zero());
        }
    }
}

#[test]
fn module_syzygies_compose_to_zero() {
    let r = xyz();
    let cols = vec![
        Vector::from_polys(&polys(&r, &["x", "y"])),
        Vector::from_polys(&polys(&r, &["y", "z"])),
        Vector::from_polys(&polys(&r, &["z", "x"])),
        Vector::from_polys(&polys(&r, &["x*y", "0"])),
    ];
    let syz = syzygies(&r, 2, &cols);
    assert!(!syz.is_empty());
    for s in &syz {
        assert!(s.apply_columns(&r, &cols).is_zero());
    }
}

#[test]
fn colon_examples() {
    let r = xy();
    let c = ideal_colon(&r, &polys(&r, &["x^2*y"]), &polys(&r, &["x"])).unwrap();
    assert!(same_ideal(&r, &c, &polys(&r, &["x*y"])));
    let i = polys(&r, &["x^2", "x*y + y^2"]);
    assert!(same_ideal(&r, &ideal_colon(&r, &i, &polys(&r, &["1"])).unwrap(), &i));
    let s = xyz();
    let c = ideal_colon(&s, &polys(&s, &["x*y", "x*z"]), &polys(&s, &["y"])).unwrap();
    assert!(same_ideal(&s, &c, &polys(&s, &["x"])));
    assert!(colon(&r, 1, &[], &r.zero()).is_err());
}

#[test]
fn saturation_examples() {
    let r = xy();
    let s = ideal_saturate(&r, &polys(&r, &["x^2", "x*y"]), &polys(&r, &["x", "y"])).unwrap();
    assert!(same_ideal(&r, &s, &polys(&r, &["x"])));
    let t = xyz();
    let s = ideal_saturate(&t, &polys(&t, &["x*y", "x*z"]), &polys(&t, &["y", "z"])).unwrap();
    assert!(same_ideal(&t, &s, &polys(&t, &["x"])));
    assert!(ideal_saturate(&r, &polys(&r, &["x"]), &[]).is_err());
}

#[test]
fn saturation_is_a_fixpoint() {
    let r = xyz();
    let a = polys(&r, &["x", "y*z"]);
    let u = polys(&r, &["x^2*y", "x*y*z^2", "y^3*z"]);
    let s = ideal_saturate(&r, &u, &a).unwrap();
    assert!(ideal_contains(&r, &s, &u));
    let c = ideal_colon(&r, &s, &a).unwrap();
    assert!(same_ideal(&r, &c, &s));
    // colon by a single generator can be strictly larger: (x) : x = (1) while (x) is (x,y)-saturated
    let t = xy();
    let sat = ideal_saturate(&t, &polys(&t, &["x"]), &polys(&t, &["x", "y"])).unwrap();
    assert!(same_ideal(&t, &sat, &polys(&t, &["x"])));
    assert!(GroebnerBasis::ideal(&t, &ideal_colon(&t, &sat, &polys(&t, &["x"])).unwrap()).is_unit_ideal());
}

#[test]
fn module_saturation() {
    // U = (x·e1, x·y·e2) in R^2 saturated by (y) gives (x·e1, x·e2)
    let r = xy();
    let u = vec![
        Vector::from_polys(&polys(&r, &["x", "0"])),
        Vector::from_polys(&polys(&r, &["0", "x*y"])),
    ];
    let s = saturate(&r, 2, &u, &polys(&r, &["y"])).unwrap();
    let want = vec![
        Vector::from_polys(&polys(&r, &["x", "0"])),
        Vector::from_polys(&polys(&r, &["0", "x"])),
    ];
    let gs = GroebnerBasis::new(&r, 2, &s);
    let gw = GroebnerBasis::new(&r, 2, &want);
    assert!(gs.contains_all(&want) && gw.contains_all(&s));
}

#[test]
fn intersections() {
    let r = xy();
    let i = ideal_intersect(&r, &polys(&r, &["x"]), &polys(&r, &["x^2", "y"]));
    assert!(same_ideal(&r, &i, &polys(&r, &["x^2", "x*y"])));
}

#[test]
fn radicals() {
    let r = xy();
    assert!(radical_member(&r, &r.parse("x").unwrap(), &polys(&r, &["x^2"])));
    assert!(!radical_member(&r, &r.parse("y").unwrap(), &polys(&r, &["x^2"])));
    assert!(radical_member(&r, &r.parse("x + y").unwrap(), &polys(&r, &["x^2", "y^3"])));
}

#[test]
fn dimensions() {
    let r = xy();
    assert_eq!(dim_ideal(&r, &polys(&r, &["x"])), 1);
    assert_eq!(dim_ideal(&r, &[]), 2);
    assert_eq!(dim_ideal(&r, &polys(&r, &["x", "y"])), 0);
    assert_eq!(dim_ideal(&r, &polys(&r, &["x", "1"])), -1);
    let s = xyz();
    assert_eq!(dim_ideal(&s, &polys(&s, &["x*y", "x*z"])), 2);
}

fn small_poly(r: &RingRef) -> impl Strategy<Value = Polynomial> {
    let r = r.clone();
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -3i64..4), 0..5).prop_map(move |ts| {
        Polynomial::from_terms(
            &r,
            ts.into_iter().map(|((a, b, c), k)| (crate::ring::mono(&[a, b, c]), r.field().from_i64(k))),
        )
    })
}

fn brute_radical(r: &RingRef, f: &Polynomial, gb: &GroebnerBasis) -> bool {
    let mut p = r.one();
    for _ in 0..12 {
        p = &p * f;
        if gb.contains_poly(&p) {
            return true;
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_is_linear_and_idempotent(gens in prop::collection::vec(small_poly(&xyz()), 1..4),
                                             f in small_poly(&xyz()), g in small_poly(&xyz())) {
        let r = xyz();
        let gb = GroebnerBasis::ideal(&r, &gens);
        prop_assert!(gb.satisfies_buchberger_criterion());
        let nf = |p: &Polynomial| gb.normal_form_poly(p);
        prop_assert_eq!(nf(&nf(&f)), nf(&f));
        prop_assert_eq!(nf(&(&f + &g)), nf(&(&nf(&f) + &nf(&g))));
        for h in &gens {
            prop_assert!(nf(&(h * &f)).is_zero());
        }
    }

    #[test]
    fn radical_membership_matches_powers(gens in prop::collection::vec(
            prop::sample::select(vec!["x^2", "y^3", "x*y", "x*z^2", "y^2 - z^2", "x^3", "z^3", "x*y*z"]), 1..4),
            f in prop::sample::select(vec!["x", "y", "z", "x + y", "x*y", "y - z", "x + z", "y*z"])) {
        let r = xyz();
        let i = polys(&r, &gens);
        let f = r.parse(f).unwrap();
        let gb = GroebnerBasis::ideal(&r, &i);
        // every fixture ideal here has radical generated in degree ≤ 2, so 12 powers suffice
        prop_assert_eq!(radical_member(&r, &f, &i), brute_radical(&r, &f, &gb));
    }
}
