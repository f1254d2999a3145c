//! Bilinear products and differentials on a finite graded space, with
//! optional weighted truncation, and the exhaustive checks of their laws.

use num_traits::One;

use crate::error::{Error, Result};
use crate::graded::{Gen, GradedSpace, MultiMap, Multilinear, Sign, VElement};
use crate::laws::{run_case, Counterexample, Outcome, Verdict};
use crate::tcoalg::{within, Truncation};

/// A binary operation `V ⊗ V → V` of degree 0, possibly partial under a truncation.
#[derive(Clone, Copy)]
pub struct Binary<'a> {
    pub space: &'a GradedSpace,
    pub table: &'a MultiMap,
    pub truncation: Option<&'a Truncation>,
}

impl<'a> Binary<'a> {
    pub fn new(space: &'a GradedSpace, table: &'a MultiMap, truncation: Option<&'a Truncation>) -> Self {
        Binary {
            space,
            table,
            truncation,
        }
    }

    pub fn defined(&self, gens: &[Gen]) -> bool {
        within(self.truncation, gens)
    }

    /// `a · b` on generators, or `None` outside the truncation.
    pub fn gens(&self, a: Gen, b: Gen) -> Option<VElement> {
        self.defined(&[a, b]).then(|| self.table.eval_v(&[a, b]))
    }

    /// Bilinear extension; `Err(Truncated)` if some needed product is undefined.
    pub fn mul(&self, x: &VElement, y: &VElement) -> Result<VElement> {
        let mut out = VElement::zero();
        for (a, c) in x {
            for (b, d) in y {
                let p = self.gens(*a, *b).ok_or_else(|| Error::Truncated {
                    left: self.space.name(*a).to_string(),
                    right: self.space.name(*b).to_string(),
                })?;
                out.add_scaled(&p, &(c * d));
            }
        }
        Ok(out)
    }

    /// Like [`Binary::mul`] but returns `None` instead of an error.
    pub fn try_mul(&self, x: &VElement, y: &VElement) -> Option<VElement> {
        self.mul(x, y).ok()
    }
}

/// A linear map `V → V` (any degree), evaluated on combinations.
pub fn apply_linear(map: &MultiMap, x: &VElement) -> VElement {
    x.map_linear(|&g| map.eval_v(&[g]))
}

fn gen_tuples(space: &GradedSpace, n: usize) -> Vec<Vec<Gen>> {
    space.words(n).into_iter().map(|w| w.0).collect()
}

/// `(a·b)·c = a·(b·c)` on basis triples where the product is defined.
pub fn associativity_case(case: &str, op: Binary<'_>) -> Result<Verdict> {
    let sp = op.space;
    run_case(case, &gen_tuples(sp, 3), |t| {
        if !op.defined(t) {
            return Ok(Outcome::Skipped);
        }
        let (a, b, c) = (VElement::basis(t[0]), VElement::basis(t[1]), VElement::basis(t[2]));
        let lhs = op.mul(&op.mul(&a, &b)?, &c)?;
        let rhs = op.mul(&a, &op.mul(&b, &c)?)?;
        Ok(Outcome::compare(&lhs, &rhs, || Counterexample {
            input: sp.render_word(t),
            lhs: sp.render_vector(&lhs),
            rhs: sp.render_vector(&rhs),
        }))
    })
}

/// `1·a = a = a·1` for every generator `a`.
pub fn unit_case(case: &str, op: Binary<'_>, unit: Gen) -> Result<Verdict> {
    let sp = op.space;
    run_case(case, &gen_tuples(sp, 1), |t| {
        let a = VElement::basis(t[0]);
        let one = VElement::basis(unit);
        let left = op.mul(&one, &a)?;
        let right = op.mul(&a, &one)?;
        Ok(if left == a && right == a {
            Outcome::Holds
        } else {
            Outcome::Fails(Counterexample {
                input: sp.render_word(t),
                lhs: format!("{} / {}", sp.render_vector(&left), sp.render_vector(&right)),
                rhs: sp.render_vector(&a),
            })
        })
    })
}

/// `∂∂a = 0` for every generator `a`.
pub fn square_zero_case(case: &str, space: &GradedSpace, diff: &MultiMap) -> Result<Verdict> {
    run_case(case, &gen_tuples(space, 1), |t| {
        let dd = apply_linear(diff, &apply_linear(diff, &VElement::basis(t[0])));
        Ok(Outcome::compare(&dd, &VElement::zero(), || Counterexample {
            input: space.render_word(t),
            lhs: space.render_vector(&dd),
            rhs: "0".into(),
        }))
    })
}

/// `∂(a·b) = ∂a·b + (-1)^{|a|} a·∂b` on pairs where the product is defined.
pub fn leibniz_case(case: &str, op: Binary<'_>, diff: &MultiMap) -> Result<Verdict> {
    let sp = op.space;
    run_case(case, &gen_tuples(sp, 2), |t| {
        if !op.defined(t) {
            return Ok(Outcome::Skipped);
        }
        let (a, b) = (VElement::basis(t[0]), VElement::basis(t[1]));
        let lhs = apply_linear(diff, &op.mul(&a, &b)?);
        let (Some(l), Some(r)) = (
            op.try_mul(&apply_linear(diff, &a), &b),
            op.try_mul(&a, &apply_linear(diff, &b)),
        ) else {
            return Ok(Outcome::Skipped);
        };
        let mut rhs = l;
        rhs.add_scaled(&r, &Sign::from_exponent(sp.degree(t[0])).to_rational());
        Ok(Outcome::compare(&lhs, &rhs, || Counterexample {
            input: sp.render_word(t),
            lhs: sp.render_vector(&lhs),
            rhs: sp.render_vector(&rhs),
        }))
    })
}

/// Checks the shape of a binary operation table.
pub fn require_binary(name: &str, op: &MultiMap) -> Result<()> {
    if op.in_arity() != 2 || op.out_arity() != 1 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: op.in_arity(),
        });
    }
    if op.degree() != 0 {
        return Err(Error::Inhomogeneous {
            map: name.to_string(),
            degree: 0,
            detail: format!("operation has degree {}", op.degree()),
        });
    }
    Ok(())
}

/// Checks the shape of a differential table.
pub fn require_differential(name: &str, diff: &MultiMap) -> Result<()> {
    if diff.in_arity() != 1 || diff.out_arity() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: diff.in_arity(),
        });
    }
    if diff.degree() != -1 {
        return Err(Error::Inhomogeneous {
            map: name.to_string(),
            degree: -1,
            detail: format!("map has degree {}", diff.degree()),
        });
    }
    Ok(())
}

/// Turns a failed verdict into a validation error.
pub fn require_pass(law: &str, verdict: Verdict) -> Result<()> {
    if verdict.passed {
        return Ok(());
    }
    Err(Error::LawViolation {
        law: law.to_string(),
        witness: verdict
            .counterexample
            .map(|c| c.to_string())
            .unwrap_or_default(),
    })
}

/// The value of a product of generators in order, `g_1 · … · g_k`; the empty
/// product is `unit`.
pub fn iterated_product(op: Binary<'_>, unit: Option<Gen>, gens: &[Gen]) -> Result<VElement> {
    let Some((&first, rest)) = gens.split_first() else {
        return unit.map(VElement::basis).ok_or(Error::MissingUnit);
    };
    let mut acc = VElement::basis(first);
    for &g in rest {
        acc = op.mul(&acc, &VElement::basis(g))?;
    }
    Ok(acc)
}

/// Coefficient `±1` as a rational.
pub fn sign_of(exponent: i64) -> crate::exact::Rational {
    Sign::from_exponent(exponent).to_rational()
}

/// `-1`.
pub fn minus_one() -> crate::exact::Rational {
    -crate::exact::Rational::one()
}
