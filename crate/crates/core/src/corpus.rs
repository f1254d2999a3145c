//! Built-in two-associative differential algebras.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::exact::rat;
use crate::graded::{Degree, GradedSpace, MultiMap, TensorElement, Word};
use crate::underlying::TwoAssocDiffAlgebra;

/// A named example with a one-line description.
#[derive(Clone, Debug)]
pub struct Example {
    pub name: &'static str,
    pub description: &'static str,
    pub algebra: TwoAssocDiffAlgebra,
}

/// Structure constants as `(inputs, [(coefficient, output)])` by generator name.
type Entries<'a> = &'a [(&'a [&'a str], &'a [(i64, &'a str)])];

fn table(space: &GradedSpace, name: &str, arity: usize, degree: Degree, entries: Entries<'_>) -> Result<MultiMap> {
    let mut t = BTreeMap::new();
    for (inputs, outputs) in entries {
        let key = Word(inputs.iter().map(|n| space.lookup(n)).collect::<Result<_>>()?);
        let mut value = TensorElement::zero();
        for (c, out) in *outputs {
            value.add_term(Word::letter(space.lookup(out)?), rat(*c));
        }
        t.insert(key, value);
    }
    MultiMap::from_table(space, name, arity, 1, degree, t)
}

type OwnedEntry<'a> = (Vec<&'a str>, Vec<(i64, &'a str)>);

/// Products with `1` as a two-sided unit plus the given entries.
fn unital(space: &GradedSpace, name: &str, entries: Entries<'_>) -> Result<MultiMap> {
    let unit = space.require_unit()?;
    let one = space.name(unit);
    let mut all: Vec<OwnedEntry<'_>> = Vec::new();
    for g in space.generators() {
        let n = g.name.as_str();
        all.push((vec![one, n], vec![(1, n)]));
        if n != one {
            all.push((vec![n, one], vec![(1, n)]));
        }
    }
    for (i, o) in entries {
        all.push((i.to_vec(), o.to_vec()));
    }
    let borrowed: Vec<_> = all.iter().map(|(i, o)| (i.as_slice(), o.as_slice())).collect();
    table(space, name, 2, 0, &borrowed)
}

/// `K[t]/t³` with `|t| = 1` under `∘`, the square-zero extension of `K` by
/// `t, t²` under `•`, and `∂t² = t`; `∂` is not a `∘`-derivation.
pub fn poly3() -> Result<TwoAssocDiffAlgebra> {
    let sp = GradedSpace::new([("1", 0), ("t", 1), ("t2", 2)], Some("1"))?;
    let bullet = unital(&sp, "bullet", &[])?;
    let circ = unital(&sp, "circ", &[(&["t", "t"], &[(1, "t2")])])?;
    let diff = table(&sp, "diff", 1, -1, &[(&["t2"], &[(1, "t")])])?;
    TwoAssocDiffAlgebra::new(sp, bullet, circ, diff)
}

/// The exterior algebra on one generator `e` of degree 1, `∘ = •`, `∂e = 1`.
pub fn ext1() -> Result<TwoAssocDiffAlgebra> {
    let sp = GradedSpace::new([("1", 0), ("e", 1)], Some("1"))?;
    let bullet = unital(&sp, "bullet", &[])?;
    let diff = table(&sp, "diff", 1, -1, &[(&["e"], &[(1, "1")])])?;
    TwoAssocDiffAlgebra::new(sp, bullet.clone(), bullet, diff)
}

/// Dual numbers `ε•ε = 0` with the idempotent product `ε∘ε = ε`, `∂ = 0`.
pub fn dual2() -> Result<TwoAssocDiffAlgebra> {
    let sp = GradedSpace::new([("1", 0), ("eps", 0)], Some("1"))?;
    let bullet = unital(&sp, "bullet", &[])?;
    let circ = unital(&sp, "circ", &[(&["eps", "eps"], &[(1, "eps")])])?;
    let diff = MultiMap::zero(1, 1, -1);
    TwoAssocDiffAlgebra::new(sp, bullet, circ, diff)
}

/// Two noncommutative products in degree 0: `a•b = a`, `b•b = b` and
/// `b∘a = a`, `b∘b = b`, other products of `a, b` zero, `∂ = 0`.
pub fn upper2() -> Result<TwoAssocDiffAlgebra> {
    let sp = GradedSpace::new([("1", 0), ("a", 0), ("b", 0)], Some("1"))?;
    let bullet = unital(&sp, "bullet", &[(&["a", "b"], &[(1, "a")]), (&["b", "b"], &[(1, "b")])])?;
    let circ = unital(&sp, "circ", &[(&["b", "a"], &[(1, "a")]), (&["b", "b"], &[(1, "b")])])?;
    let diff = MultiMap::zero(1, 1, -1);
    TwoAssocDiffAlgebra::new(sp, bullet, circ, diff)
}

/// Every built-in example, in a fixed order.
pub fn all() -> Result<Vec<Example>> {
    Ok(vec![
        Example {
            name: "poly3",
            description: "truncated polynomials in t, |t| = 1, with a non-derivation differential",
            algebra: poly3()?,
        },
        Example {
            name: "ext1",
            description: "exterior dga on one degree-1 generator, both products equal",
            algebra: ext1()?,
        },
        Example {
            name: "dual2",
            description: "dual numbers with a second idempotent product",
            algebra: dual2()?,
        },
        Example {
            name: "upper2",
            description: "noncommutative upper-triangular products in degree 0",
            algebra: upper2()?,
        },
    ])
}

/// Looks up a built-in example by name.
pub fn by_name(name: &str) -> Result<Option<Example>> {
    Ok(all()?.into_iter().find(|e| e.name == name))
}
