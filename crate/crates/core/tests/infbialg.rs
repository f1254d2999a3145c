use std::collections::BTreeMap;

use binfty_core::corpus;
use binfty_core::infbialg::{
    check_triangle, check_unital_infinitesimal, counit_f, derived_structures_prime, enveloping,
    fundamental_bialgebra, prim_b_infinity, round_trip_difference, shuffle_bialgebra, InfBialgebra,
};
use binfty_core::structures::{quasi_trivial_b_infinity, shuffle_product, AInfinity, BInfinity, Multibrace};
use binfty_core::tcoalg::FiniteCoalgebra;
use binfty_core::underlying::{check_iota_hom, underlying_b_infinity};
use binfty_core::{
    rat, Error, GradedSpace, LinComb, MultiMap, TensorElement, TwoAssocDiffAlgebra, TwoAssocDiffBialgebra, VElement, Word,
};

fn v2() -> GradedSpace {
    GradedSpace::new([("x", 0), ("y", 1)], None).unwrap()
}

#[test]
fn fundamental_bialgebra_is_infinitesimal() {
    let (w, _) = fundamental_bialgebra(&v2(), 4).unwrap();
    for report in w.validate().unwrap() {
        assert!(report.passed(), "{report}");
    }
}

#[test]
fn generators_are_primitive_and_span_prim() {
    let v = v2();
    let (w, words) = fundamental_bialgebra(&v, 3).unwrap();
    let c = w.coalgebra();
    let unit = c.unit();
    for g in 0..v.dim() {
        let i = words.iter().position(|u| u.0 == [g]).unwrap();
        let expected: LinComb<(usize, usize)> = [((i, unit), rat(1)), ((unit, i), rat(1))].into_iter().collect();
        assert_eq!(c.coproduct_of(i), &expected);
    }
    assert_eq!(c.primitives().unwrap().len(), v.dim());
}

#[test]
fn shuffle_bialgebra_is_not_infinitesimal() {
    let (w, _) = shuffle_bialgebra(&v2(), 3).unwrap();
    let report = check_unital_infinitesimal(&w).unwrap();
    let failure = report.first_failure().unwrap();
    assert_eq!(failure.case, "relation");
    assert!(failure.counterexample.is_some());
}

#[test]
fn prime_structures_on_fundamental_and_shuffle() {
    let (w, _) = fundamental_bialgebra(&GradedSpace::new([("x", 0)], None).unwrap(), 3).unwrap();
    let (report, eq) = derived_structures_prime(&w).unwrap();
    assert!(report.passed(), "{report}");
    assert!(eq.infinitesimal && eq.product_is_coalgebra_map && eq.coproduct_is_algebra_map);

    let (s, _) = shuffle_bialgebra(&GradedSpace::new([("x", 0)], None).unwrap(), 3).unwrap();
    let (report, eq) = derived_structures_prime(&s).unwrap();
    assert!(eq.agree());
    assert!(!eq.infinitesimal);
    assert!(report.passed(), "{report}");
}

#[test]
fn counit_f_on_fundamental_and_trivial() {
    let (w, words) = fundamental_bialgebra(&v2(), 3).unwrap();
    let r = counit_f(&w).unwrap();
    assert!(r.injective && r.image_is_radical);
    assert_eq!(r.radical_dim, words.len());

    let sp = GradedSpace::new([("1", 0)], Some("1")).unwrap();
    let c = FiniteCoalgebra::new(sp.clone(), vec![rat(1)], vec![LinComb::basis((0, 0))]).unwrap();
    let mut t = BTreeMap::new();
    t.insert(Word(vec![0, 0]), TensorElement::basis(Word::letter(0)));
    let product = MultiMap::from_table(&sp, "circ", 2, 1, 0, t).unwrap();
    let k1 = InfBialgebra::new(c, product, None).unwrap();
    let r = counit_f(&k1).unwrap();
    assert_eq!(r.primitive_dim, 0);
    assert!(r.injective && r.image_is_radical);
}

fn zero_structure(cap: usize) -> BInfinity {
    let sp = v2();
    BInfinity::new(
        AInfinity::new(sp.clone(), BTreeMap::new(), cap).unwrap(),
        Multibrace::trivial(sp, cap),
    )
    .unwrap()
}

#[test]
fn zero_structure_envelope_has_shuffle_product() {
    let a = zero_structure(3);
    let u = enveloping(&a, 3).unwrap();
    let alg = u.algebra();
    let words = a.space().words_up_to(3);
    for (i, wi) in words.iter().enumerate() {
        for (j, wj) in words.iter().enumerate() {
            if wi.len() + wj.len() > 3 {
                continue;
            }
            let sh = shuffle_product(a.space(), &TensorElement::basis(wi.clone()), &TensorElement::basis(wj.clone()), 3)
                .unwrap();
            let expected: VElement = sh
                .iter()
                .map(|(w, c)| (words.iter().position(|u| u == w).unwrap(), c.clone()))
                .collect();
            assert_eq!(alg.bullet().eval_v(&[i, j]), expected);
        }
    }
}

#[test]
fn envelope_of_corpus_structure_is_valid_and_round_trips() {
    for ex in corpus::all().unwrap() {
        let a = underlying_b_infinity(&ex.algebra, 3).unwrap();
        let u = enveloping(&a, 3).unwrap();
        for report in u.validate().unwrap() {
            assert!(report.passed(), "{}:\n{report}", ex.name);
        }
        assert_eq!(round_trip_difference(&a, 3).unwrap(), None, "{}", ex.name);
        assert!(check_triangle(&a, 3).unwrap().passed());
        let r = counit_f(&u.inf_bialgebra()).unwrap();
        assert!(r.injective && r.image_is_radical, "{}: {r:?}", ex.name);
        let prim = prim_b_infinity(&u, 3).unwrap();
        assert_eq!(prim.basis.len(), a.space().dim());
    }
}

#[test]
fn iota_is_a_homomorphism_for_quasi_trivial_ext1() {
    let alg = corpus::ext1().unwrap();
    let a = quasi_trivial_b_infinity(alg.space(), alg.bullet(), alg.diff(), 3).unwrap();
    let report = check_iota_hom(&a, 3, 3).unwrap();
    assert!(report.passed(), "{report}");
    assert!(check_iota_hom(&a, 3, 4).is_err());
}

#[test]
fn group_like_element_is_not_conilpotent() {
    let sp = GradedSpace::new([("1", 0), ("g", 0)], Some("1")).unwrap();
    let mut t = BTreeMap::new();
    for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        t.insert(Word(vec![a, b]), TensorElement::basis(Word::letter(a.max(b))));
    }
    let product = MultiMap::from_table(&sp, "product", 2, 1, 0, t).unwrap();
    let diff = MultiMap::from_table(&sp, "diff", 1, 1, -1, BTreeMap::new()).unwrap();
    let alg = TwoAssocDiffAlgebra::new(sp.clone(), product.clone(), product, diff).unwrap();
    let c = FiniteCoalgebra::new(
        sp,
        vec![rat(1), rat(1)],
        vec![LinComb::basis((0, 0)), LinComb::basis((1, 1))],
    )
    .unwrap();
    let w = TwoAssocDiffBialgebra::new(alg, c).unwrap();
    assert!(matches!(prim_b_infinity(&w, 3), Err(Error::NotConilpotent { cap: 3, .. })));
}
