//! A-infinity, multibrace and B-infinity structures given by their structure
//! maps, the components of the maps they extend to, and the checks of their
//! defining identities on basis tuples.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;
use rayon::prelude::*;

use crate::algebra::{self, Binary};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::graded::{
    apply_map_tensor, length_one_part, permute_tensor, Degree, Gen, GradedSpace, Identity, MultiMap,
    Multilinear, Permutation, Sign, TensorElement, VElement, Word,
};
use crate::laws::{run_case, Counterexample, LawReport, Outcome};
use crate::tcoalg::{compositions, Coderivation, ProductMap};

/// Default arity cap for the A-infinity identities.
pub const DEFAULT_A_INFINITY_CAP: usize = 5;
/// Default cap on `i + j + k` for multibrace associativity.
pub const DEFAULT_MULTIBRACE_CAP: usize = 6;
/// Default cap on `i + j` for the compatibility identities.
pub const DEFAULT_COMPATIBILITY_CAP: usize = 6;

/// Structure maps `m_n : V^{⊗n} → V` of degree `-1` for `1 ≤ n ≤ cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfinity {
    space: GradedSpace,
    maps: BTreeMap<usize, MultiMap>,
    cap: usize,
}

impl AInfinity {
    /// Missing arities are zero.
    pub fn new(space: GradedSpace, maps: BTreeMap<usize, MultiMap>, cap: usize) -> Result<Self> {
        for (&n, m) in &maps {
            if n == 0 {
                return Err(Error::Invalid("m_0 must vanish".into()));
            }
            if n > cap {
                return Err(Error::CapExceeded { length: n, cap });
            }
            if m.in_arity() != n || m.out_arity() != 1 {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: m.in_arity(),
                });
            }
            if m.degree() != -1 {
                return Err(Error::Inhomogeneous {
                    map: format!("m_{n}"),
                    degree: -1,
                    detail: format!("map has degree {}", m.degree()),
                });
            }
        }
        let maps = maps.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(AInfinity { space, maps, cap })
    }

    /// Only `m_1 = ∂` nonzero.
    pub fn trivial(space: GradedSpace, diff: MultiMap, cap: usize) -> Result<Self> {
        AInfinity::new(space, BTreeMap::from([(1, diff)]), cap)
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// `m_n`, or the zero map when it vanishes.
    pub fn m(&self, n: usize) -> MultiMap {
        self.maps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| MultiMap::zero(n, 1, -1))
    }

    pub fn maps(&self) -> &BTreeMap<usize, MultiMap> {
        &self.maps
    }

    /// The coderivation of `T^c(V)` on words up to `cap`.
    pub fn coderivation(&self) -> Coderivation {
        Coderivation::new(-1, self.maps.clone(), self.cap).expect("validated components")
    }

    /// `p_1 d` on a word: `m_n(w)` with `n = |w|`.
    pub fn project(&self, w: &[Gen]) -> VElement {
        match self.maps.get(&w.len()) {
            Some(m) => m.eval_v(w),
            None => VElement::zero(),
        }
    }

    /// Restricts to arities at most `cap`.
    pub fn truncated(&self, cap: usize) -> AInfinity {
        AInfinity {
            space: self.space.clone(),
            maps: self.maps.range(..=cap).map(|(k, v)| (*k, v.clone())).collect(),
            cap,
        }
    }
}

/// Structure maps `m_{i,j} : V^{⊗i} ⊗ V^{⊗j} → V` of degree 0 for
/// `i, j ≥ 1`, `i + j ≤ cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multibrace {
    space: GradedSpace,
    product: ProductMap,
    cap: usize,
}

impl Multibrace {
    /// Missing components are zero.
    pub fn new(space: GradedSpace, maps: BTreeMap<(usize, usize), MultiMap>, cap: usize) -> Result<Self> {
        for &(i, j) in maps.keys() {
            if i + j > cap {
                return Err(Error::CapExceeded { length: i + j, cap });
            }
        }
        let maps = maps.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(Multibrace {
            space,
            product: ProductMap::new(maps, cap)?,
            cap,
        })
    }

    /// All `m_{i,j}` zero: the shuffle product.
    pub fn trivial(space: GradedSpace, cap: usize) -> Self {
        Multibrace::new(space, BTreeMap::new(), cap).expect("no components")
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn m(&self, i: usize, j: usize) -> MultiMap {
        self.product
            .components()
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| MultiMap::zero(i + j, 1, 0))
    }

    pub fn maps(&self) -> &BTreeMap<(usize, usize), MultiMap> {
        self.product.components()
    }

    pub fn product(&self) -> &ProductMap {
        &self.product
    }

    /// `μ(x ⊗ y)` on words.
    pub fn mu(&self, x: &[Gen], y: &[Gen]) -> Result<TensorElement> {
        self.product.apply(&self.space, x, y)
    }

    pub fn truncated(&self, cap: usize) -> Multibrace {
        let maps = self
            .maps()
            .iter()
            .filter(|((i, j), _)| i + j <= cap)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        Multibrace::new(self.space.clone(), maps, cap).expect("smaller cap")
    }
}

/// An A-infinity structure and a multibrace structure on the same space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BInfinity {
    pub a: AInfinity,
    pub b: Multibrace,
}

impl BInfinity {
    pub fn new(a: AInfinity, b: Multibrace) -> Result<Self> {
        if a.space != b.space {
            return Err(Error::Invalid("structures live on different spaces".into()));
        }
        Ok(BInfinity { a, b })
    }

    pub fn space(&self) -> &GradedSpace {
        &self.a.space
    }

    pub fn truncated(&self, cap: usize) -> BInfinity {
        BInfinity {
            a: self.a.truncated(cap),
            b: self.b.truncated(cap),
        }
    }

    /// First structure map where `self` and `other` differ.
    pub fn first_difference(&self, other: &BInfinity, cap: usize) -> Option<String> {
        for n in 1..=cap {
            if let Some((w, x, y)) = self.a.m(n).first_difference(&other.a.m(n)) {
                let sp = self.space();
                return Some(format!(
                    "m_{n} at {}: {} vs {}",
                    sp.render_word(&w.0),
                    sp.render_tensor(&x),
                    sp.render_tensor(&y)
                ));
            }
        }
        for total in 2..=cap {
            for i in 1..total {
                let j = total - i;
                if let Some((w, x, y)) = self.b.m(i, j).first_difference(&other.b.m(i, j)) {
                    let sp = self.space();
                    return Some(format!(
                        "m_{{{i},{j}}} at {}: {} vs {}",
                        sp.render_word(&w.0),
                        sp.render_tensor(&x),
                        sp.render_tensor(&y)
                    ));
                }
            }
        }
        None
    }
}

/// A sequence `(i_1, …, i_r)` of nonnegative integers with a fixed sum.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CompositionIndex {
    parts: Vec<usize>,
}

impl CompositionIndex {
    pub fn new(parts: Vec<usize>, total: usize) -> Result<Self> {
        let sum: usize = parts.iter().sum();
        if sum != total {
            return Err(Error::SizeMismatch {
                expected: total,
                found: sum,
            });
        }
        Ok(CompositionIndex { parts })
    }

    /// Every sequence of `r` nonnegative integers summing to `total`.
    pub fn all(total: usize, r: usize) -> Vec<CompositionIndex> {
        compositions(total, r, false)
            .into_iter()
            .map(|parts| CompositionIndex { parts })
            .collect()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }
}

/// `m_n^k = Σ_{i+1+j=k} id^{⊗i} ⊗ m_{n-i-j} ⊗ id^{⊗j}` as a table.
pub fn coderivation_components(a: &AInfinity, n: usize, k: usize) -> Result<MultiMap> {
    if n > a.cap {
        return Err(Error::CapExceeded { length: n, cap: a.cap });
    }
    let space = &a.space;
    let mut total = MultiMap::zero(n, k, -1);
    if k == 0 || k > n {
        return Ok(total);
    }
    for i in 0..k {
        let j = k - 1 - i;
        let l = n - i - j;
        let m = a.m(l);
        let maps: [&dyn Multilinear; 3] = [&Identity(i), &m, &Identity(j)];
        let part = MultiMap::from_fn(space, "m_n^k", n, k, -1, |w| apply_map_tensor(space, &maps, w))?;
        total = total.add_scaled(&part, &Rational::one())?;
    }
    Ok(total)
}

/// Unit conventions: `m_{0,1} = m_{1,0} = id`, other components with a zero
/// index vanish.
struct Block<'a> {
    i: usize,
    j: usize,
    map: Option<&'a MultiMap>,
}

impl Multilinear for Block<'_> {
    fn in_arity(&self) -> usize {
        self.i + self.j
    }
    fn out_arity(&self) -> usize {
        1
    }
    fn degree(&self) -> Degree {
        0
    }
    fn apply(&self, input: &[Gen]) -> TensorElement {
        match (self.i, self.j) {
            (0, 1) | (1, 0) => TensorElement::basis(Word::from(input)),
            (0, _) | (_, 0) => TensorElement::zero(),
            _ => self.map.map(|m| m.eval(input)).unwrap_or_default(),
        }
    }
}

/// `m_{i,j}^r = Σ (m_{i_1,j_1} ⊗ … ⊗ m_{i_r,j_r}) Δ_r^{ī,j̄}` as a table,
/// by enumerating the block decompositions and their interleaving permutation.
pub fn coalgebra_map_components(b: &Multibrace, i: usize, j: usize, r: usize) -> Result<MultiMap> {
    if i + j > b.cap {
        return Err(Error::CapExceeded {
            length: i + j,
            cap: b.cap,
        });
    }
    let space = &b.space;
    let comps_i = CompositionIndex::all(i, r);
    let comps_j = CompositionIndex::all(j, r);
    MultiMap::from_fn(space, "m_ij^r", i + j, r, 0, |word| {
        let mut out = TensorElement::zero();
        for ci in &comps_i {
            for cj in &comps_j {
                let blocks: Vec<Block<'_>> = ci
                    .parts
                    .iter()
                    .zip(&cj.parts)
                    .map(|(&a, &c)| Block {
                        i: a,
                        j: c,
                        map: b.product.components().get(&(a, c)),
                    })
                    .collect();
                if blocks.iter().any(|blk| blk.i == 0 && blk.j == 0) {
                    continue;
                }
                // Cut x into r blocks then y into r blocks; interleave x_a, y_a.
                let mut pieces: Vec<Vec<Gen>> = Vec::with_capacity(2 * r);
                let mut pos = 0;
                for &p in ci.parts.iter().chain(&cj.parts) {
                    pieces.push(word[pos..pos + p].to_vec());
                    pos += p;
                }
                let degrees: Vec<Degree> = pieces.iter().map(|p| space.word_degree(p)).collect();
                let images: Vec<usize> = (0..r).map(|a| 2 * a).chain((0..r).map(|a| 2 * a + 1)).collect();
                let sigma = Permutation::new(images)?;
                let (sign, arranged) = permute_tensor(&sigma, &pieces, &degrees)?;
                let flat: Vec<Gen> = arranged.concat();
                let maps: Vec<&dyn Multilinear> = blocks.iter().map(|blk| blk as &dyn Multilinear).collect();
                let value = apply_map_tensor(space, &maps, &flat)?;
                out.add_scaled(&value, &sign.to_rational());
            }
        }
        Ok(out)
    })
}

fn render_pair(space: &GradedSpace, parts: &[&[Gen]]) -> String {
    parts
        .iter()
        .map(|p| space.render_word(p))
        .collect::<Vec<_>>()
        .join(" ⊗ ")
}

/// `p_1 d d = 0` on every word of length `n ≤ max_arity`.
pub fn check_a_infinity(a: &AInfinity, max_arity: usize) -> Result<LawReport> {
    if max_arity > a.cap {
        return Err(Error::CapExceeded {
            length: max_arity,
            cap: a.cap,
        });
    }
    let space = &a.space;
    let d = a.coderivation();
    let mut report = LawReport::new("a-infinity");
    for n in 1..=max_arity {
        let words = space.words(n);
        report.push(run_case(format!("n={n}"), &words, |w| {
            let dd = d.apply_element(space, &d.apply(space, &w.0)?)?;
            let lhs = length_one_part(&dd);
            Ok(Outcome::compare(&lhs, &VElement::zero(), || Counterexample {
                input: space.render_word(&w.0),
                lhs: space.render_vector(&lhs),
                rhs: "0".into(),
            }))
        })?);
    }
    Ok(report)
}

fn products(b: &Multibrace, left: usize, right: usize) -> Result<HashMap<(Word, Word), TensorElement>> {
    let space = &b.space;
    let pairs: Vec<(Word, Word)> = space
        .words(left)
        .into_iter()
        .flat_map(|x| space.words(right).into_iter().map(move |y| (x.clone(), y)))
        .collect();
    pairs
        .into_par_iter()
        .map(|(x, y)| {
            let v = b.mu(&x.0, &y.0)?;
            Ok(((x, y), v))
        })
        .collect()
}

/// Arity triples `(i, j, k)` with all entries positive and sum at most `cap`.
pub fn triples(cap: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for total in 3..=cap {
        for c in compositions(total, 3, true) {
            out.push((c[0], c[1], c[2]));
        }
    }
    out
}

/// Arity pairs `(i, j)` with both positive and sum at most `cap`.
pub fn pairs(cap: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for total in 2..=cap {
        for i in 1..total {
            out.push((i, total - i));
        }
    }
    out
}

/// `p_1 μ(μ(x ⊗ y) ⊗ z) = p_1 μ(x ⊗ μ(y ⊗ z))` for `i + j + k ≤ max_total`.
pub fn check_multibrace(b: &Multibrace, max_total: usize) -> Result<LawReport> {
    if max_total > b.cap {
        return Err(Error::CapExceeded {
            length: max_total,
            cap: b.cap,
        });
    }
    let space = &b.space;
    let mut report = LawReport::new("multibrace");
    for (i, j, k) in triples(max_total) {
        let xy = products(b, i, j)?;
        let yz = products(b, j, k)?;
        let inputs: Vec<(Word, Word, Word)> = space
            .words(i)
            .into_iter()
            .flat_map(|x| {
                space.words(j).into_iter().flat_map(move |y| {
                    let x = x.clone();
                    space.words(k).into_iter().map(move |z| (x.clone(), y.clone(), z))
                })
            })
            .collect();
        report.push(run_case(format!("({i},{j},{k})"), &inputs, |(x, y, z)| {
            let mut lhs = VElement::zero();
            for (u, c) in &xy[&(x.clone(), y.clone())] {
                lhs.add_scaled(&b.product.project(&u.0, &z.0), c);
            }
            let mut rhs = VElement::zero();
            for (v, c) in &yz[&(y.clone(), z.clone())] {
                rhs.add_scaled(&b.product.project(&x.0, &v.0), c);
            }
            Ok(Outcome::compare(&lhs, &rhs, || Counterexample {
                input: render_pair(space, &[&x.0, &y.0, &z.0]),
                lhs: space.render_vector(&lhs),
                rhs: space.render_vector(&rhs),
            }))
        })?);
    }
    Ok(report)
}

/// `p_1 d μ(x ⊗ y) = p_1 μ(dx ⊗ y) + (-1)^{|x|} p_1 μ(x ⊗ dy)` for `i + j ≤ max_total`.
pub fn check_compatibility(s: &BInfinity, max_total: usize) -> Result<LawReport> {
    let cap = s.a.cap.min(s.b.cap);
    if max_total > cap {
        return Err(Error::CapExceeded { length: max_total, cap });
    }
    let space = s.space();
    let d = s.a.coderivation();
    let mut report = LawReport::new("compatibility");
    for (i, j) in pairs(max_total) {
        let inputs: Vec<(Word, Word)> = space
            .words(i)
            .into_iter()
            .flat_map(|x| space.words(j).into_iter().map(move |y| (x.clone(), y)))
            .collect();
        report.push(run_case(format!("({i},{j})"), &inputs, |(x, y)| {
            let mut lhs = VElement::zero();
            for (u, c) in &s.b.mu(&x.0, &y.0)? {
                lhs.add_scaled(&s.a.project(&u.0), c);
            }
            let mut rhs = VElement::zero();
            for (u, c) in &d.apply(space, &x.0)? {
                rhs.add_scaled(&s.b.product.project(&u.0, &y.0), c);
            }
            let sign = Sign::from_exponent(space.word_degree(&x.0)).to_rational();
            for (v, c) in &d.apply(space, &y.0)? {
                rhs.add_scaled(&s.b.product.project(&x.0, &v.0), &(c * &sign));
            }
            Ok(Outcome::compare(&lhs, &rhs, || Counterexample {
                input: render_pair(space, &[&x.0, &y.0]),
                lhs: space.render_vector(&lhs),
                rhs: space.render_vector(&rhs),
            }))
        })?);
    }
    Ok(report)
}

/// Runs the three families with the given caps.
pub fn check_b_infinity(s: &BInfinity, a_cap: usize, mb_cap: usize, compat_cap: usize) -> Result<Vec<LawReport>> {
    Ok(vec![
        check_a_infinity(&s.a, a_cap)?,
        check_multibrace(&s.b, mb_cap)?,
        check_compatibility(s, compat_cap)?,
    ])
}

/// Signed sum over `(i, k-i)`-shuffles, computed directly from the
/// permutations; words longer than `cap` are an error.
pub fn shuffle_product(
    space: &GradedSpace,
    x: &TensorElement,
    y: &TensorElement,
    cap: usize,
) -> Result<TensorElement> {
    let mut out = TensorElement::zero();
    for (u, a) in x {
        for (v, b) in y {
            let (i, k) = (u.len(), u.len() + v.len());
            if k > cap {
                return Err(Error::CapExceeded { length: k, cap });
            }
            let letters: Vec<Gen> = u.0.iter().chain(&v.0).copied().collect();
            let degrees: Vec<Degree> = letters.iter().map(|&g| space.degree(g)).collect();
            for positions in increasing_subsets(k, i) {
                let mut rest = (0..k).filter(|p| !positions.contains(p));
                let images: Vec<usize> = positions
                    .iter()
                    .copied()
                    .chain(std::iter::from_fn(|| rest.next()))
                    .collect();
                let sigma = Permutation::new(images)?;
                let (sign, arranged) = permute_tensor(&sigma, &letters, &degrees)?;
                out.add_term(Word(arranged), sign.apply(a * b));
            }
        }
    }
    Ok(out)
}

fn increasing_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for p in start..n {
            if n - p < k - cur.len() {
                break;
            }
            cur.push(p);
            go(p + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Multibrace with `m_{1,1} = •` and every other `m_{i,j}` zero.
pub fn quasi_shuffle_multibrace(space: &GradedSpace, bullet: &MultiMap, cap: usize) -> Result<Multibrace> {
    algebra::require_binary("bullet", bullet)?;
    let mut maps = BTreeMap::new();
    if cap >= 2 {
        maps.insert((1, 1), bullet.clone());
    }
    Multibrace::new(space.clone(), maps, cap)
}

/// `m_{1,1} = •`, `m_1 = ∂`, all other maps zero, after checking that
/// `(V, •, ∂)` is a differential graded algebra.
pub fn quasi_trivial_b_infinity(
    space: &GradedSpace,
    bullet: &MultiMap,
    diff: &MultiMap,
    cap: usize,
) -> Result<BInfinity> {
    algebra::require_binary("bullet", bullet)?;
    algebra::require_differential("diff", diff)?;
    let op = Binary::new(space, bullet, None);
    algebra::require_pass("bullet associativity", algebra::associativity_case("bullet", op)?)?;
    algebra::require_pass("diff square zero", algebra::square_zero_case("diff", space, diff)?)?;
    algebra::require_pass("leibniz", algebra::leibniz_case("leibniz", op, diff)?)?;
    let a = AInfinity::trivial(space.clone(), diff.clone(), cap)?;
    let b = quasi_shuffle_multibrace(space, bullet, cap)?;
    BInfinity::new(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn odd_space() -> GradedSpace {
        GradedSpace::new([("a", 1), ("b", 1), ("c", 2)], None).unwrap()
    }

    fn w(v: &[Gen]) -> TensorElement {
        TensorElement::basis(Word::from(v))
    }

    #[test]
    fn shuffle_of_two_letters() {
        let sp = odd_space();
        let out = shuffle_product(&sp, &w(&[0]), &w(&[1]), 6).unwrap();
        let mut expected = w(&[0, 1]);
        expected.add_term(Word(vec![1, 0]), rat(-1));
        assert_eq!(out, expected);
    }

    #[test]
    fn shuffle_two_one_all_odd() {
        let sp = odd_space();
        let out = shuffle_product(&sp, &w(&[0, 1]), &w(&[0]), 6).unwrap();
        let mut expected = w(&[0, 1, 0]);
        expected.add_term(Word(vec![0, 0, 1]), rat(-1));
        expected.add_term(Word(vec![0, 0, 1]), rat(1));
        // v1 v2 w - v1 w v2 + w v1 v2 with w = v1 = a, v2 = b.
        let mut direct = TensorElement::zero();
        direct.add_term(Word(vec![0, 1, 0]), rat(1));
        direct.add_term(Word(vec![0, 0, 1]), rat(-1));
        direct.add_term(Word(vec![0, 0, 1]), rat(1));
        assert_eq!(out, direct);
        assert_eq!(out, expected);
    }

    #[test]
    fn shuffle_unit() {
        let sp = odd_space();
        assert_eq!(shuffle_product(&sp, &w(&[2]), &w(&[]), 6).unwrap(), w(&[2]));
    }

    #[test]
    fn trivial_multibrace_components_are_shuffles() {
        let sp = odd_space();
        let b = Multibrace::trivial(sp.clone(), 4);
        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let top = coalgebra_map_components(&b, i, j, i + j).unwrap();
            for word in sp.words(i + j) {
                let sh = shuffle_product(&sp, &w(&word.0[..i]), &w(&word.0[i..]), 6).unwrap();
                assert_eq!(top.eval(&word.0), sh);
                assert_eq!(b.mu(&word.0[..i], &word.0[i..]).unwrap(), sh);
            }
            assert!(coalgebra_map_components(&b, i, j, i + j + 1).unwrap().is_zero());
        }
    }

    #[test]
    fn components_beyond_total_vanish_for_coderivations() {
        let sp = odd_space();
        let mut table = BTreeMap::new();
        table.insert(Word(vec![2]), w(&[0]));
        let diff = MultiMap::from_table(&sp, "d", 1, 1, -1, table).unwrap();
        let a = AInfinity::trivial(sp.clone(), diff.clone(), 4).unwrap();
        assert!(coderivation_components(&a, 2, 3).unwrap().is_zero());
        assert_eq!(coderivation_components(&a, 1, 1).unwrap(), diff);
        let m22 = coderivation_components(&a, 2, 2).unwrap();
        // (∂ ⊗ id + id ⊗ ∂)(a ⊗ c) = -(a ⊗ a).
        assert_eq!(m22.eval(&[0, 2]), TensorElement::term(Word(vec![0, 0]), rat(-1)));
        assert_eq!(m22.eval(&[2, 1]), w(&[0, 1]));
    }

    #[test]
    fn non_square_zero_fails_at_one() {
        let sp = GradedSpace::new([("x", 0), ("y", -1)], None).unwrap();
        let mut table = BTreeMap::new();
        table.insert(Word(vec![0]), w(&[1]));
        let d = MultiMap::from_table(&sp, "d", 1, 1, -1, table).unwrap();
        let a = AInfinity::trivial(sp, d, 3).unwrap();
        assert!(check_a_infinity(&a, 3).unwrap().passed());
        let sp2 = GradedSpace::new([("x", 0), ("y", -1), ("z", -2)], None).unwrap();
        let mut t2 = BTreeMap::new();
        t2.insert(Word(vec![0]), w(&[1]));
        t2.insert(Word(vec![1]), w(&[2]));
        let d2 = MultiMap::from_table(&sp2, "d", 1, 1, -1, t2).unwrap();
        let a2 = AInfinity::trivial(sp2, d2, 3).unwrap();
        let report = check_a_infinity(&a2, 3).unwrap();
        assert_eq!(report.first_failure().unwrap().case, "n=1");
    }
}
