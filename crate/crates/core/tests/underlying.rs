use binfty_core::corpus;
use binfty_core::graded::{Sign, VElement};
use binfty_core::structures::{check_b_infinity, quasi_trivial_b_infinity};
use binfty_core::twisting::{twist_b_infinity, twisting_from_product};
use binfty_core::underlying::{
    borjeson_closed_form, check_defining_identities, check_epsilon_hom, counit_epsilon,
    derive_a_infinity, underlying_b_infinity, TwoAssocDiffAlgebra,
};
use binfty_core::{MultiMap, TensorElement, Word};

fn v(x: VElement) -> TensorElement {
    x.map_keys(|&g| Word::letter(g))
}

#[test]
fn corpus_validates() {
    for ex in corpus::all().unwrap() {
        let report = ex.algebra.validate().unwrap();
        assert!(report.passed(), "{}:\n{report}", ex.name);
    }
}

#[test]
fn poly3_differential_is_not_a_circ_derivation() {
    let alg = corpus::poly3().unwrap();
    let sp = alg.space();
    let t = VElement::basis(sp.lookup("t").unwrap());
    let circ = alg.circ_op();
    let lhs = alg.d(&circ.mul(&t, &t).unwrap());
    let rhs = circ.mul(&alg.d(&t), &t).unwrap() - circ.mul(&t, &alg.d(&t)).unwrap();
    assert_ne!(lhs, rhs);
}

#[test]
fn non_associative_circ_is_reported() {
    let good = corpus::upper2().unwrap();
    let sp = good.space().clone();
    let mut table = good.circ().table().clone();
    let a = sp.lookup("a").unwrap();
    let b = sp.lookup("b").unwrap();
    table.insert(Word(vec![a, a]), TensorElement::basis(Word::letter(b)));
    let circ = MultiMap::from_table(&sp, "circ", 2, 1, 0, table).unwrap();
    let bad = TwoAssocDiffAlgebra::new(sp, good.bullet().clone(), circ, good.diff().clone()).unwrap();
    let report = bad.validate().unwrap();
    let failure = report.first_failure().unwrap();
    assert_eq!(failure.case, "circ associativity");
    assert!(failure.counterexample.is_some());
}

#[test]
fn m11_matches_hand_expansion() {
    for ex in corpus::all().unwrap() {
        let alg = &ex.algebra;
        let s = underlying_b_infinity(alg, 3).unwrap();
        let sp = alg.space();
        let m11 = s.b.m(1, 1);
        for w in sp.words(2) {
            let (x, y) = (VElement::basis(w.0[0]), VElement::basis(w.0[1]));
            let mut expected = alg.bullet_op().mul(&x, &y).unwrap();
            expected -= alg.circ_op().mul(&x, &y).unwrap();
            let sign = Sign::from_exponent(sp.degree(w.0[0]) * sp.degree(w.0[1])).to_rational();
            expected.add_scaled(&alg.circ_op().mul(&y, &x).unwrap(), &-sign);
            assert_eq!(m11.eval(&w.0), v(expected), "{} at {:?}", ex.name, w);
        }
    }
}

#[test]
fn m2_matches_closed_form_on_t_t() {
    let alg = corpus::poly3().unwrap();
    let sp = alg.space();
    let t = sp.lookup("t").unwrap();
    let m = derive_a_infinity(&alg, 3).unwrap();
    // ∂(t∘t) - ∂t∘t + t∘∂t = t.
    assert_eq!(m.m(2).eval(&[t, t]), TensorElement::basis(Word::letter(t)));
}

#[test]
fn closed_form_agrees_with_recursion() {
    for ex in corpus::all().unwrap() {
        let derived = derive_a_infinity(&ex.algebra, 5).unwrap();
        for n in 1..=5 {
            assert_eq!(borjeson_closed_form(&ex.algebra, n).unwrap(), derived.m(n), "{} n={n}", ex.name);
        }
    }
}

#[test]
fn three_term_m3_differs_from_recursion() {
    let alg = corpus::poly3().unwrap();
    let sp = alg.space();
    let circ = alg.circ_op();
    let derived = derive_a_infinity(&alg, 3).unwrap();
    let (one, t2) = (sp.lookup("1").unwrap(), sp.lookup("t2").unwrap());
    let w = [one, t2, one];
    let three_term = {
        let first = VElement::basis(w[0]);
        let last = VElement::basis(w[2]);
        let mut out = alg.d(&alg.circ_word(&w).unwrap());
        out -= circ.mul(&alg.d(&alg.circ_word(&w[..2]).unwrap()), &last).unwrap();
        out -= circ.mul(&first, &alg.d(&alg.circ_word(&w[1..]).unwrap())).unwrap();
        out
    };
    assert_ne!(v(three_term), derived.m(3).eval(&w));
}

#[test]
fn equal_products_with_circ_derivation_collapse() {
    let alg = corpus::ext1().unwrap();
    let m = derive_a_infinity(&alg, 5).unwrap();
    for n in 2..=5 {
        assert!(m.m(n).is_zero(), "m_{n}");
    }
}

#[test]
fn derived_structures_satisfy_the_laws() {
    for ex in corpus::all().unwrap() {
        let s = underlying_b_infinity(&ex.algebra, 4).unwrap();
        for report in check_b_infinity(&s, 4, 4, 4).unwrap() {
            assert!(report.passed(), "{}:\n{report}", ex.name);
        }
        let ids = check_defining_identities(&ex.algebra, &s, 4).unwrap();
        assert!(ids.passed(), "{}:\n{ids}", ex.name);
    }
}

#[test]
fn twisting_path_matches_recursion() {
    for ex in corpus::all().unwrap() {
        let alg = &ex.algebra;
        let qt = quasi_trivial_b_infinity(alg.space(), alg.bullet(), alg.diff(), 4).unwrap();
        let tau = twisting_from_product(alg.space(), alg.circ(), 4).unwrap();
        let twisted = twist_b_infinity(&qt, &tau, 4).unwrap();
        let direct = underlying_b_infinity(alg, 4).unwrap();
        assert_eq!(twisted.first_difference(&direct, 4), None, "{}", ex.name);
    }
}

#[test]
fn epsilon_values_and_homomorphism() {
    let alg = corpus::poly3().unwrap();
    let sp = alg.space();
    let t = sp.lookup("t").unwrap();
    assert_eq!(
        counit_epsilon(&alg, &TensorElement::basis(Word::empty())).unwrap(),
        VElement::basis(alg.unit())
    );
    assert_eq!(counit_epsilon(&alg, &TensorElement::basis(Word::letter(t))).unwrap(), VElement::basis(t));
    assert_eq!(
        counit_epsilon(&alg, &TensorElement::basis(Word(vec![t, t]))).unwrap(),
        VElement::basis(sp.lookup("t2").unwrap())
    );
    for ex in corpus::all().unwrap() {
        let report = check_epsilon_hom(&ex.algebra, 3).unwrap();
        assert!(report.passed(), "{}:\n{report}", ex.name);
    }
}
