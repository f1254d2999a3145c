//! The tensor coalgebra `T^c(V)` truncated at a word length, maps extended
//! from their components, and finite coalgebras given by tables.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{kernel_basis, rank, Rational, SparseMatrix};
use crate::graded::{Degree, Gen, GradedSpace, MultiMap, Multilinear, Sign, TensorElement, VElement, Word};
use crate::laws::{run_case, Counterexample, LawReport, Outcome};
use crate::lincomb::LinComb;

/// Word-length cap for stored elements and arity cap for law checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationPolicy {
    pub word_cap: usize,
    pub arity_cap: usize,
}

impl TruncationPolicy {
    pub fn new(word_cap: usize, arity_cap: usize) -> Result<Self> {
        if word_cap < 1 {
            return Err(Error::InvalidPolicy("word cap must be at least 1".into()));
        }
        if arity_cap > word_cap {
            return Err(Error::InvalidPolicy(format!(
                "arity cap {arity_cap} exceeds word cap {word_cap}"
            )));
        }
        Ok(TruncationPolicy { word_cap, arity_cap })
    }

    pub fn check_len(&self, length: usize) -> Result<()> {
        if length > self.word_cap {
            Err(Error::CapExceeded {
                length,
                cap: self.word_cap,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            word_cap: 6,
            arity_cap: 6,
        }
    }
}

/// Weighted truncation of a finite algebra: a product of basis elements is
/// defined when the weights add up to at most `cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub weights: Vec<usize>,
    pub cap: usize,
}

impl Truncation {
    pub fn weight(&self, gens: &[Gen]) -> usize {
        gens.iter().map(|&g| self.weights[g]).sum()
    }

    pub fn allows(&self, gens: &[Gen]) -> bool {
        self.weight(gens) <= self.cap
    }
}

/// Whether a product of the given factors is defined under an optional truncation.
pub fn within(truncation: Option<&Truncation>, gens: &[Gen]) -> bool {
    truncation.is_none_or(|t| t.allows(gens))
}

/// Tensor of several words, as an ordered tuple of factors.
pub type MultiTensor = LinComb<Vec<Word>>;

/// The counit: coefficient of the empty word.
pub fn counit(x: &TensorElement) -> Rational {
    x.coeff(&Word::empty())
}

/// `J = id - ηε`: drops the empty word.
pub fn reduce(x: &TensorElement) -> TensorElement {
    x.filter(|w| !w.is_empty())
}

/// Deconcatenation `Δ(v_1…v_k) = Σ_{i=0}^{k} v_1…v_i ⊗ v_{i+1}…v_k`.
pub fn deconcatenate(x: &TensorElement) -> LinComb<(Word, Word)> {
    let mut out = LinComb::zero();
    for (w, c) in x {
        for i in 0..=w.len() {
            out.add_term((Word::from(&w.0[..i]), Word::from(&w.0[i..])), c.clone());
        }
    }
    out
}

/// `Δ^{(r)}`: all ways of cutting each word into `r + 1` possibly empty pieces.
pub fn iterated_coproduct(x: &TensorElement, r: usize) -> MultiTensor {
    cut_words(x, r + 1, false)
}

/// `Δ̄^{(r)}`; for `r = 0` this is `x` itself.
pub fn reduced_coproduct(x: &TensorElement, r: usize) -> Result<MultiTensor> {
    if r >= 1 && !counit(x).is_zero() {
        return Err(Error::NonReduced);
    }
    Ok(cut_words(x, r + 1, true))
}

fn cut_words(x: &TensorElement, pieces: usize, nonempty: bool) -> MultiTensor {
    let mut out = MultiTensor::zero();
    for (w, c) in x {
        for parts in compositions(w.len(), pieces, nonempty) {
            let mut pos = 0;
            let factors: Vec<Word> = parts
                .iter()
                .map(|&p| {
                    let f = Word::from(&w.0[pos..pos + p]);
                    pos += p;
                    f
                })
                .collect();
            out.add_term(factors, c.clone());
        }
    }
    out
}

/// Smallest `r` with `Δ̄^{(r)}(J x) = 0`.
pub fn filtration_level(x: &TensorElement) -> usize {
    // Δ̄^{(r)} of a word of length k vanishes exactly when r ≥ k.
    reduce(x).keys().map(Word::len).max().unwrap_or(0)
}

/// Sequences of `parts` integers summing to `total`, each at least 1 when
/// `positive`, in lexicographic order.
pub fn compositions(total: usize, parts: usize, positive: bool) -> Vec<Vec<usize>> {
    fn go(rest: usize, left: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if rest < min * left {
            return;
        }
        let max = rest - min * (left - 1);
        for p in min..=max {
            cur.push(p);
            go(rest - p, left - 1, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, usize::from(positive), &mut Vec::new(), &mut out);
    out
}

/// A unital coalgebra map `T^c(V) → T^c(W)` given by its components
/// `f_k : V^{⊗k} → W` for `k ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraMap {
    components: BTreeMap<usize, MultiMap>,
}

impl CoalgebraMap {
    /// Components keyed by input length; a component on the empty word must be zero.
    pub fn new(components: BTreeMap<usize, MultiMap>) -> Result<Self> {
        for (&k, f) in &components {
            if f.in_arity() != k || f.out_arity() != 1 {
                return Err(Error::ArityMismatch {
                    expected: k,
                    found: f.in_arity(),
                });
            }
            if f.degree() != 0 {
                return Err(Error::Inhomogeneous {
                    map: format!("f_{k}"),
                    degree: 0,
                    detail: format!("component has degree {}", f.degree()),
                });
            }
            if k == 0 && !f.is_zero() {
                return Err(Error::NonZeroOnUnit);
            }
        }
        let components = components.into_iter().filter(|(k, _)| *k > 0).collect();
        Ok(CoalgebraMap { components })
    }

    pub fn component(&self, k: usize) -> Option<&MultiMap> {
        self.components.get(&k)
    }

    /// `p_r f` on a word: the sum over cuts into `r` nonempty blocks.
    pub fn apply_length(&self, word: &[Gen], r: usize) -> TensorElement {
        let mut out = TensorElement::zero();
        'cuts: for parts in compositions(word.len(), r, true) {
            let mut acc = TensorElement::basis(Word::empty());
            let mut pos = 0;
            for p in parts {
                let Some(f) = self.components.get(&p) else {
                    continue 'cuts;
                };
                let v = f.eval(&word[pos..pos + p]);
                if v.is_zero() {
                    continue 'cuts;
                }
                acc = crate::graded::tensor(&acc, &v);
                pos += p;
            }
            out += acc;
        }
        out
    }

    /// `f(w) = Σ_r (f_{k_1} ⊗ … ⊗ f_{k_r})(w)`.
    pub fn apply(&self, word: &[Gen]) -> TensorElement {
        if word.is_empty() {
            return TensorElement::basis(Word::empty());
        }
        let mut out = TensorElement::zero();
        for r in 1..=word.len() {
            out += self.apply_length(word, r);
        }
        out
    }

    pub fn apply_element(&self, x: &TensorElement) -> TensorElement {
        x.map_linear(|w| self.apply(&w.0))
    }
}

/// Extends components `f_k` to the coalgebra map they determine, on one word.
pub fn extend_coalgebra_map(map: &CoalgebraMap, word: &[Gen]) -> TensorElement {
    map.apply(word)
}

/// A coderivation of `T^c(V)` given by components `d_k : V^{⊗k} → V` of a
/// common degree; a component `d_0` on the empty word is allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coderivation {
    degree: Degree,
    components: BTreeMap<usize, MultiMap>,
    word_cap: usize,
}

impl Coderivation {
    pub fn new(degree: Degree, components: BTreeMap<usize, MultiMap>, word_cap: usize) -> Result<Self> {
        for (&k, f) in &components {
            if f.in_arity() != k || f.out_arity() != 1 {
                return Err(Error::ArityMismatch {
                    expected: k,
                    found: f.in_arity(),
                });
            }
            if f.degree() != degree {
                return Err(Error::Inhomogeneous {
                    map: format!("d_{k}"),
                    degree,
                    detail: format!("component has degree {}", f.degree()),
                });
            }
        }
        Ok(Coderivation {
            degree,
            components,
            word_cap,
        })
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    /// `d(w) = Σ ± w[..i] ⊗ d_l(w[i..i+l]) ⊗ w[i+l..]`, sign `(-1)^{|d|·|w[..i]|}`.
    pub fn apply(&self, space: &GradedSpace, word: &[Gen]) -> Result<TensorElement> {
        let n = word.len();
        let mut out = TensorElement::zero();
        for (&l, f) in &self.components {
            if l > n || f.is_zero() {
                continue;
            }
            for i in 0..=(n - l) {
                let value = f.eval(&word[i..i + l]);
                if value.is_zero() {
                    continue;
                }
                let length = n - l + 1;
                if length > self.word_cap {
                    return Err(Error::CapExceeded {
                        length,
                        cap: self.word_cap,
                    });
                }
                let sign = Sign::from_exponent(self.degree * space.word_degree(&word[..i]));
                for (v, c) in &value {
                    let mut w = Vec::with_capacity(length);
                    w.extend_from_slice(&word[..i]);
                    w.extend_from_slice(&v.0);
                    w.extend_from_slice(&word[i + l..]);
                    out.add_term(Word(w), sign.apply(c.clone()));
                }
            }
        }
        Ok(out)
    }

    pub fn apply_element(&self, space: &GradedSpace, x: &TensorElement) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        for (w, c) in x {
            out.add_scaled(&self.apply(space, &w.0)?, c);
        }
        Ok(out)
    }
}

/// Extends components `d_k` to the coderivation they determine, on one word.
pub fn extend_coderivation(space: &GradedSpace, d: &Coderivation, word: &[Gen]) -> Result<TensorElement> {
    d.apply(space, word)
}

/// A unital coalgebra map `T^c(V) ⊗ T^c(V) → T^c(V)` given by components
/// `m_{i,j}` with `i, j ≥ 1`; the components with `i = 0` or `j = 0` are the
/// unit identifications.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductMap {
    components: BTreeMap<(usize, usize), MultiMap>,
    word_cap: usize,
}

impl ProductMap {
    pub fn new(components: BTreeMap<(usize, usize), MultiMap>, word_cap: usize) -> Result<Self> {
        for (&(i, j), f) in &components {
            if i == 0 || j == 0 {
                return Err(Error::Invalid(format!(
                    "component m_{{{i},{j}}} is fixed by the unit and cannot be stored"
                )));
            }
            if f.in_arity() != i + j || f.out_arity() != 1 {
                return Err(Error::ArityMismatch {
                    expected: i + j,
                    found: f.in_arity(),
                });
            }
            if f.degree() != 0 {
                return Err(Error::Inhomogeneous {
                    map: format!("m_{{{i},{j}}}"),
                    degree: 0,
                    detail: format!("component has degree {}", f.degree()),
                });
            }
        }
        Ok(ProductMap {
            components,
            word_cap,
        })
    }

    pub fn components(&self) -> &BTreeMap<(usize, usize), MultiMap> {
        &self.components
    }

    pub fn word_cap(&self) -> usize {
        self.word_cap
    }

    /// `p_1 μ(x ⊗ y)`, including the unit conventions.
    pub fn project(&self, x: &[Gen], y: &[Gen]) -> VElement {
        match (x.len(), y.len()) {
            (0, 1) => VElement::basis(y[0]),
            (1, 0) => VElement::basis(x[0]),
            (0, _) | (_, 0) => VElement::zero(),
            (i, j) => match self.components.get(&(i, j)) {
                Some(f) => {
                    let mut w = Vec::with_capacity(i + j);
                    w.extend_from_slice(x);
                    w.extend_from_slice(y);
                    f.eval_v(&w)
                }
                None => VElement::zero(),
            },
        }
    }

    /// `μ(x ⊗ y) = Σ_r Σ (m_{i_1,j_1} ⊗ … ⊗ m_{i_r,j_r}) Δ_r(x ⊗ y)`.
    ///
    /// Bringing the block `y_a` next to `x_a` moves it past `x_{a+1} … x_r`,
    /// which contributes `(-1)^{|y_a| |x_{a+1} … x_r|}`.
    pub fn apply(&self, space: &GradedSpace, x: &[Gen], y: &[Gen]) -> Result<TensorElement> {
        let (i, j) = (x.len(), y.len());
        // suffix[p][q] = μ(x[p..] ⊗ y[q..]).
        let mut suffix: Vec<Vec<TensorElement>> = vec![vec![TensorElement::zero(); j + 1]; i + 1];
        suffix[i][j] = TensorElement::basis(Word::empty());
        let x_tail_degree: Vec<Degree> = (0..=i).map(|p| space.word_degree(&x[p..])).collect();
        for p in (0..=i).rev() {
            for q in (0..=j).rev() {
                if p == i && q == j {
                    continue;
                }
                let mut acc = TensorElement::zero();
                for a in 0..=(i - p) {
                    for b in 0..=(j - q) {
                        if a == 0 && b == 0 {
                            continue;
                        }
                        let rest = &suffix[p + a][q + b];
                        if rest.is_zero() {
                            continue;
                        }
                        let block = self.project(&x[p..p + a], &y[q..q + b]);
                        if block.is_zero() {
                            continue;
                        }
                        let sign = Sign::from_exponent(
                            space.word_degree(&y[q..q + b]) * x_tail_degree[p + a],
                        );
                        for (g, c) in &block {
                            let coeff = sign.apply(c.clone());
                            for (w, d) in rest {
                                let mut v = Vec::with_capacity(w.len() + 1);
                                v.push(*g);
                                v.extend_from_slice(&w.0);
                                acc.add_term(Word(v), &coeff * d);
                            }
                        }
                    }
                }
                suffix[p][q] = acc;
            }
        }
        let out = std::mem::take(&mut suffix[0][0]);
        if let Some(w) = out.keys().find(|w| w.len() > self.word_cap) {
            return Err(Error::CapExceeded {
                length: w.len(),
                cap: self.word_cap,
            });
        }
        Ok(out)
    }

    /// Bilinear extension of [`ProductMap::apply`].
    pub fn apply_elements(
        &self,
        space: &GradedSpace,
        x: &TensorElement,
        y: &TensorElement,
    ) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        for (u, a) in x {
            for (v, b) in y {
                out.add_scaled(&self.apply(space, &u.0, &v.0)?, &(a * b));
            }
        }
        Ok(out)
    }
}

/// Extends components `m_{i,j}` to the product they determine, on one pair of words.
pub fn extend_product_map(space: &GradedSpace, mu: &ProductMap, x: &[Gen], y: &[Gen]) -> Result<TensorElement> {
    mu.apply(space, x, y)
}

/// A finite-dimensional unital counital coalgebra given by tables on a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCoalgebra {
    space: GradedSpace,
    counit: Vec<Rational>,
    coproduct: Vec<LinComb<(Gen, Gen)>>,
}

/// Basis of the conilpotent radical and the level where the filtration stops growing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radical {
    pub basis: Vec<Vec<Rational>>,
    pub level: usize,
}

impl FiniteCoalgebra {
    /// The space must designate a unit generator.
    pub fn new(
        space: GradedSpace,
        counit: Vec<Rational>,
        coproduct: Vec<LinComb<(Gen, Gen)>>,
    ) -> Result<Self> {
        space.require_unit()?;
        let n = space.dim();
        for len in [counit.len(), coproduct.len()] {
            if len != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: len,
                });
            }
        }
        for (g, c) in counit.iter().enumerate() {
            if !c.is_zero() && space.degree(g) != 0 {
                return Err(Error::Inhomogeneous {
                    map: "counit".into(),
                    degree: 0,
                    detail: format!("nonzero on `{}` of degree {}", space.name(g), space.degree(g)),
                });
            }
        }
        for (g, d) in coproduct.iter().enumerate() {
            for ((a, b), _) in d {
                space.check_gen(*a)?;
                space.check_gen(*b)?;
                if space.degree(*a) + space.degree(*b) != space.degree(g) {
                    return Err(Error::Inhomogeneous {
                        map: "coproduct".into(),
                        degree: 0,
                        detail: format!(
                            "`{}` has a term {} ⊗ {}",
                            space.name(g),
                            space.name(*a),
                            space.name(*b)
                        ),
                    });
                }
            }
        }
        Ok(FiniteCoalgebra {
            space,
            counit,
            coproduct,
        })
    }

    /// The truncated tensor coalgebra on words of `V` of length at most `cap`,
    /// with one generator per word.
    pub fn tensor_coalgebra(v: &GradedSpace, cap: usize) -> Result<(Self, Vec<Word>)> {
        let words = v.words_up_to(cap);
        let index: BTreeMap<&Word, Gen> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let space = GradedSpace::new(
            words.iter().map(|w| (word_name(v, w), v.word_degree(&w.0))),
            Some("[]"),
        )?;
        let counit = words
            .iter()
            .map(|w| if w.is_empty() { Rational::one() } else { Rational::zero() })
            .collect();
        let coproduct = words
            .iter()
            .map(|w| {
                (0..=w.len())
                    .map(|i| {
                        let a = index[&Word::from(&w.0[..i])];
                        let b = index[&Word::from(&w.0[i..])];
                        ((a, b), Rational::one())
                    })
                    .collect()
            })
            .collect();
        Ok((FiniteCoalgebra::new(space, counit, coproduct)?, words))
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn unit(&self) -> Gen {
        self.space.unit().expect("checked at construction")
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn counit_of(&self, g: Gen) -> &Rational {
        &self.counit[g]
    }

    pub fn coproduct_of(&self, g: Gen) -> &LinComb<(Gen, Gen)> {
        &self.coproduct[g]
    }

    pub fn counit_vec(&self, x: &VElement) -> Rational {
        x.iter().map(|(g, c)| c * &self.counit[*g]).sum()
    }

    pub fn coproduct_vec(&self, x: &VElement) -> LinComb<(Gen, Gen)> {
        x.map_linear(|&g| self.coproduct[g].clone())
    }

    /// `J(g) = g - ε(g) 1`.
    pub fn reduce_gen(&self, g: Gen) -> VElement {
        let mut out = VElement::basis(g);
        out.add_term(self.unit(), -self.counit[g].clone());
        out
    }

    /// `Δ^{(r)}` of a generator as a combination of `(r+1)`-tuples.
    pub fn iterated(&self, g: Gen, r: usize) -> LinComb<Vec<Gen>> {
        let mut acc: LinComb<Vec<Gen>> = LinComb::basis(vec![g]);
        for _ in 0..r {
            let mut next = LinComb::zero();
            for (t, c) in &acc {
                for ((a, b), d) in &self.coproduct[t[0]] {
                    let mut v = Vec::with_capacity(t.len() + 1);
                    v.push(*a);
                    v.push(*b);
                    v.extend_from_slice(&t[1..]);
                    next.add_term(v, c * d);
                }
            }
            acc = next;
        }
        acc
    }

    /// `J^{⊗(r+1)} Δ^{(r)}(g)`, which is `Δ̄^{(r)}(J g)`.
    pub fn reduced_iterated(&self, g: Gen, r: usize) -> LinComb<Vec<Gen>> {
        let mut out = LinComb::zero();
        for (t, c) in &self.iterated(g, r) {
            let mut acc: LinComb<Vec<Gen>> = LinComb::basis(Vec::new());
            for &h in t {
                let jh = self.reduce_gen(h);
                let mut next = LinComb::zero();
                for (prefix, a) in &acc {
                    for (k, b) in &jh {
                        let mut v = prefix.clone();
                        v.push(*k);
                        next.add_term(v, a * b);
                    }
                }
                acc = next;
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    fn matrix_of<K: Ord + Clone>(&self, columns: impl Fn(Gen) -> LinComb<K>) -> SparseMatrix {
        let cols: Vec<LinComb<K>> = (0..self.dim()).map(columns).collect();
        let mut rows: BTreeMap<K, usize> = BTreeMap::new();
        for col in &cols {
            for (k, _) in col {
                let next = rows.len();
                rows.entry(k.clone()).or_insert(next);
            }
        }
        let mut m = SparseMatrix::new(rows.len(), self.dim());
        for (c, col) in cols.iter().enumerate() {
            for (k, x) in col {
                m.set(rows[k], c, x.clone()).expect("in bounds");
            }
        }
        m
    }

    /// Basis of `F_r = ker(J^{⊗(r+1)} Δ^{(r)}) = 𝕂1 ⊕ ker Δ̄^{(r)}`.
    pub fn filtration(&self, r: usize) -> Vec<Vec<Rational>> {
        kernel_basis(&self.matrix_of(|g| self.reduced_iterated(g, r)))
    }

    /// Basis of `ker(Δ - id ⊗ 1 - 1 ⊗ id)`. Requires coassociativity.
    pub fn primitives(&self) -> Result<Vec<Vec<Rational>>> {
        let report = self.validate()?;
        if let Some(v) = report.first_failure() {
            return Err(Error::LawViolation {
                law: format!("{} {}", report.law, v.case),
                witness: v
                    .counterexample
                    .as_ref()
                    .map(|c| c.to_string())
                    .unwrap_or_default(),
            });
        }
        let unit = self.unit();
        Ok(kernel_basis(&self.matrix_of(|g| {
            let mut d = self.coproduct[g].clone();
            d.add_term((g, unit), -Rational::one());
            d.add_term((unit, g), -Rational::one());
            d
        })))
    }

    /// The union of the filtration, found when `F_r = F_{r+1}`.
    pub fn conilpotent_radical(&self) -> Radical {
        let mut r = 0;
        let mut current = self.filtration(0);
        loop {
            let next = self.filtration(r + 1);
            if next.len() == current.len() || r > self.dim() {
                return Radical {
                    basis: current,
                    level: r,
                };
            }
            current = next;
            r += 1;
        }
    }

    /// `Ok(level)` when the radical is everything, else the first basis
    /// generator outside it.
    pub fn conilpotency(&self) -> std::result::Result<usize, Gen> {
        let radical = self.conilpotent_radical();
        if radical.basis.len() == self.dim() {
            return Ok(radical.level);
        }
        let mut span = crate::exact::Echelon::new();
        for v in &radical.basis {
            span.insert(crate::exact::sparsify(v));
        }
        let outside = (0..self.dim())
            .find(|&g| !span.contains(BTreeMap::from([(g, Rational::one())])))
            .expect("radical is a proper subspace");
        Err(outside)
    }

    /// Coassociativity, counit laws and group-likeness of the unit.
    pub fn validate(&self) -> Result<LawReport> {
        let mut report = LawReport::new("coalgebra");
        let gens: Vec<Gen> = (0..self.dim()).collect();
        let sp = &self.space;
        report.push(run_case("coassociativity", &gens, |&g| {
            let mut left: LinComb<Vec<Gen>> = LinComb::zero();
            let mut right: LinComb<Vec<Gen>> = LinComb::zero();
            for ((a, b), c) in &self.coproduct[g] {
                for ((a1, a2), d) in &self.coproduct[*a] {
                    left.add_term(vec![*a1, *a2, *b], c * d);
                }
                for ((b1, b2), d) in &self.coproduct[*b] {
                    right.add_term(vec![*a, *b1, *b2], c * d);
                }
            }
            Ok(Outcome::compare(&left, &right, || Counterexample {
                input: sp.name(g).to_string(),
                lhs: format!("{left:?}"),
                rhs: format!("{right:?}"),
            }))
        })?);
        report.push(run_case("counit", &gens, |&g| {
            let mut left = VElement::zero();
            let mut right = VElement::zero();
            for ((a, b), c) in &self.coproduct[g] {
                left.add_term(*b, c * &self.counit[*a]);
                right.add_term(*a, c * &self.counit[*b]);
            }
            let id = VElement::basis(g);
            let holds = left == id && right == id;
            Ok(if holds {
                Outcome::Holds
            } else {
                Outcome::Fails(Counterexample {
                    input: sp.name(g).to_string(),
                    lhs: format!("{} / {}", sp.render_vector(&left), sp.render_vector(&right)),
                    rhs: sp.render_vector(&id),
                })
            })
        })?);
        let unit = self.unit();
        let grouplike = self.coproduct[unit] == LinComb::basis((unit, unit))
            && self.counit[unit] == Rational::one();
        report.push_fact(
            "unit",
            grouplike,
            Some(Counterexample {
                input: sp.name(unit).to_string(),
                lhs: format!("{:?}", self.coproduct[unit]),
                rhs: "1 ⊗ 1".into(),
            }),
        );
        Ok(report)
    }

    /// Rank of a set of vectors in this coalgebra.
    pub fn rank_of(&self, vectors: &[Vec<Rational>]) -> usize {
        if vectors.is_empty() {
            return 0;
        }
        let dense: Vec<Vec<Rational>> = vectors.to_vec();
        rank(&SparseMatrix::from_dense(&dense).expect("rectangular"))
    }
}

/// Display name of a word used as a generator, e.g. `[a, b]`.
pub fn word_name(v: &GradedSpace, w: &Word) -> String {
    v.render_word(&w.0)
}
