//! Coalgebra automorphisms of `T^c(V)` with identity linear part, and the
//! structures transported along them.

use std::collections::BTreeMap;

use crate::algebra::{self, Binary};
use crate::error::{Error, Result};
use crate::graded::{length_one_part, Gen, GradedSpace, MultiMap, TensorElement, VElement, Word};
use crate::structures::{pairs, AInfinity, BInfinity, Multibrace};
use crate::tcoalg::CoalgebraMap;

/// Components `t_n : V^{⊗n} → V` of degree 0 for `1 ≤ n ≤ cap`, with `t_1 = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twisting {
    space: GradedSpace,
    map: CoalgebraMap,
    cap: usize,
}

impl Twisting {
    /// Missing components above arity 1 are zero.
    pub fn new(space: GradedSpace, mut components: BTreeMap<usize, MultiMap>, cap: usize) -> Result<Self> {
        let id = MultiMap::identity(&space, 1);
        match components.get(&1) {
            Some(t1) if *t1 != id => {
                return Err(Error::Invalid("the linear part t_1 must be the identity".into()))
            }
            Some(_) => {}
            None => {
                components.insert(1, id);
            }
        }
        if let Some((&n, _)) = components.iter().find(|(&n, _)| n == 0 || n > cap) {
            return Err(Error::CapExceeded { length: n, cap });
        }
        Ok(Twisting {
            space,
            map: CoalgebraMap::new(components)?,
            cap,
        })
    }

    pub fn identity(space: GradedSpace, cap: usize) -> Self {
        Twisting::new(space, BTreeMap::new(), cap).expect("identity twisting")
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// `t_n`, or zero.
    pub fn t(&self, n: usize) -> MultiMap {
        self.map
            .component(n)
            .cloned()
            .unwrap_or_else(|| MultiMap::zero(n, 1, 0))
    }

    /// The automorphism of `T^c(V)` determined by the components.
    pub fn coalgebra_map(&self) -> &CoalgebraMap {
        &self.map
    }

    /// `τ(w)` on a word of length at most `cap`.
    pub fn apply(&self, w: &[Gen]) -> Result<TensorElement> {
        self.check(w.len())?;
        Ok(self.map.apply(w))
    }

    pub fn apply_element(&self, x: &TensorElement) -> Result<TensorElement> {
        if let Some(w) = x.keys().find(|w| w.len() > self.cap) {
            self.check(w.len())?;
        }
        Ok(self.map.apply_element(x))
    }

    /// `p_1 τ` on a combination of words: `Σ t_{|w|}(w)`.
    pub fn project(&self, x: &TensorElement) -> Result<VElement> {
        let mut out = VElement::zero();
        for (w, c) in x {
            self.check(w.len())?;
            if let Some(t) = self.map.component(w.len()) {
                out.add_scaled(&t.eval_v(&w.0), c);
            }
        }
        Ok(out)
    }

    fn check(&self, length: usize) -> Result<()> {
        if length > self.cap {
            return Err(Error::CapExceeded { length, cap: self.cap });
        }
        Ok(())
    }
}

/// `u_1 = id`, `u_n = -Σ_{0<r<n} u_r (p_r τ)` on words of length `n`.
pub fn invert_twisting(tau: &Twisting) -> Result<Twisting> {
    let space = &tau.space;
    let mut inverse: BTreeMap<usize, MultiMap> = BTreeMap::new();
    inverse.insert(1, MultiMap::identity(space, 1));
    for n in 2..=tau.cap {
        let un = MultiMap::from_fn(space, "u_n", n, 1, 0, |w| {
            let mut acc = VElement::zero();
            for r in 1..n {
                let pr = tau.map.apply_length(w, r);
                if let Some(ur) = inverse.get(&r) {
                    acc -= length_one_part(&ur.eval_element(&pr));
                }
            }
            Ok(acc.map_keys(|&g| Word::letter(g)))
        })?;
        inverse.insert(n, un);
    }
    Twisting::new(space.clone(), inverse, tau.cap)
}

/// `t_n = ∘^{(n-1)}`, after checking that `∘` is associative.
pub fn twisting_from_product(space: &GradedSpace, circ: &MultiMap, cap: usize) -> Result<Twisting> {
    algebra::require_binary("circ", circ)?;
    let op = Binary::new(space, circ, None);
    algebra::require_pass("circ associativity", algebra::associativity_case("circ", op)?)?;
    let mut comps = BTreeMap::new();
    for n in 2..=cap {
        let tn = MultiMap::from_fn(space, "t_n", n, 1, 0, |w| {
            Ok(algebra::iterated_product(op, None, w)?.map_keys(|&g| Word::letter(g)))
        })?;
        comps.insert(n, tn);
    }
    Twisting::new(space.clone(), comps, cap)
}

/// `μ^τ = τ^{-1} μ (τ ⊗ τ)` and `d^τ = τ^{-1} d τ`, projected to `V` arity by arity
/// up to `cap`.
pub fn twist_b_infinity(s: &BInfinity, tau: &Twisting, cap: usize) -> Result<BInfinity> {
    let space = s.space();
    if tau.space != *space {
        return Err(Error::Invalid("twisting lives on a different space".into()));
    }
    let limit = tau.cap.min(s.a.cap()).min(s.b.cap());
    if cap > limit {
        return Err(Error::CapExceeded { length: cap, cap: limit });
    }
    let inverse = invert_twisting(tau)?;
    let d = s.a.coderivation();
    let mut m = BTreeMap::new();
    for n in 1..=cap {
        let mn = MultiMap::from_fn(space, "m_n", n, 1, -1, |w| {
            let dt = d.apply_element(space, &tau.apply(w)?)?;
            Ok(as_words(inverse.project(&dt)?))
        })?;
        m.insert(n, mn);
    }
    let mut mb = BTreeMap::new();
    for (i, j) in pairs(cap) {
        let mij = MultiMap::from_fn(space, "m_ij", i + j, 1, 0, |w| {
            let x = tau.apply(&w[..i])?;
            let y = tau.apply(&w[i..])?;
            let prod = s.b.product().apply_elements(space, &x, &y)?;
            Ok(as_words(inverse.project(&prod)?))
        })?;
        mb.insert((i, j), mij);
    }
    BInfinity::new(
        AInfinity::new(space.clone(), m, cap)?,
        Multibrace::new(space.clone(), mb, cap)?,
    )
}

fn as_words(v: VElement) -> TensorElement {
    v.map_keys(|&g| Word::letter(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn space() -> GradedSpace {
        GradedSpace::new([("a", 0), ("b", 1)], None).unwrap()
    }

    fn random_twisting() -> Twisting {
        let sp = space();
        // t_2(a ⊗ a) = 2a, t_2(a ⊗ b) = b, t_2(b ⊗ a) = -b; t_3(a ⊗ a ⊗ b) = 3b.
        let mut t2 = BTreeMap::new();
        t2.insert(Word(vec![0, 0]), TensorElement::term(Word(vec![0]), rat(2)));
        t2.insert(Word(vec![0, 1]), TensorElement::basis(Word(vec![1])));
        t2.insert(Word(vec![1, 0]), TensorElement::term(Word(vec![1]), rat(-1)));
        let mut t3 = BTreeMap::new();
        t3.insert(Word(vec![0, 0, 1]), TensorElement::term(Word(vec![1]), rat(3)));
        let comps = BTreeMap::from([
            (2, MultiMap::from_table(&sp, "t2", 2, 1, 0, t2).unwrap()),
            (3, MultiMap::from_table(&sp, "t3", 3, 1, 0, t3).unwrap()),
        ]);
        Twisting::new(sp, comps, 4).unwrap()
    }

    #[test]
    fn identity_inverts_to_identity() {
        let id = Twisting::identity(space(), 4);
        let inv = invert_twisting(&id).unwrap();
        for n in 2..=4 {
            assert!(inv.t(n).is_zero());
        }
    }

    #[test]
    fn inverse_composes_to_identity() {
        let tau = random_twisting();
        let inv = invert_twisting(&tau).unwrap();
        for w in space().words_up_to(4) {
            let there = inv.apply_element(&tau.apply(&w.0).unwrap()).unwrap();
            let back = tau.apply_element(&inv.apply(&w.0).unwrap()).unwrap();
            assert_eq!(there, TensorElement::basis(w.clone()));
            assert_eq!(back, TensorElement::basis(w));
        }
    }

    #[test]
    fn rejects_nonidentity_linear_part() {
        let sp = space();
        let mut t1 = BTreeMap::new();
        t1.insert(Word(vec![0]), TensorElement::term(Word(vec![0]), rat(2)));
        t1.insert(Word(vec![1]), TensorElement::basis(Word(vec![1])));
        let comps = BTreeMap::from([(1, MultiMap::from_table(&sp, "t1", 1, 1, 0, t1).unwrap())]);
        assert!(Twisting::new(sp, comps, 3).is_err());
    }
}
