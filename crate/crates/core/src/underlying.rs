//! Two-associative differential algebras and the B-infinity structure they
//! carry, computed from the recursive defining identities.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::algebra::{self, apply_linear, Binary};
use crate::error::{Error, Result};
use crate::graded::{Gen, GradedSpace, MultiMap, Sign, TensorElement, VElement, Word};
use crate::laws::{run_case, Counterexample, LawReport, Outcome};
use crate::structures::{pairs, AInfinity, BInfinity, Multibrace};
use crate::tcoalg::{word_name, Truncation};

/// `(V, •, ∘, 1, ∂)`: a dga `(V, •, 1, ∂)` with a second associative product
/// `∘` sharing the unit. Products may be partial under a weighted truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoAssocDiffAlgebra {
    space: GradedSpace,
    bullet: MultiMap,
    circ: MultiMap,
    diff: MultiMap,
    truncation: Option<Truncation>,
}

impl TwoAssocDiffAlgebra {
    /// Checks shapes and the presence of a unit; the laws are checked by
    /// [`TwoAssocDiffAlgebra::validate`].
    pub fn new(space: GradedSpace, bullet: MultiMap, circ: MultiMap, diff: MultiMap) -> Result<Self> {
        space.require_unit()?;
        algebra::require_binary("bullet", &bullet)?;
        algebra::require_binary("circ", &circ)?;
        algebra::require_differential("diff", &diff)?;
        Ok(TwoAssocDiffAlgebra {
            space,
            bullet,
            circ,
            diff,
            truncation: None,
        })
    }

    /// Products are defined only where the weights of the factors add up to at
    /// most `truncation.cap`.
    pub fn with_truncation(mut self, truncation: Truncation) -> Result<Self> {
        if truncation.weights.len() != self.space.dim() {
            return Err(Error::SizeMismatch {
                expected: self.space.dim(),
                found: truncation.weights.len(),
            });
        }
        self.truncation = Some(truncation);
        Ok(self)
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn unit(&self) -> Gen {
        self.space.unit().expect("checked at construction")
    }

    pub fn bullet(&self) -> &MultiMap {
        &self.bullet
    }

    pub fn circ(&self) -> &MultiMap {
        &self.circ
    }

    pub fn diff(&self) -> &MultiMap {
        &self.diff
    }

    pub fn truncation(&self) -> Option<&Truncation> {
        self.truncation.as_ref()
    }

    pub fn bullet_op(&self) -> Binary<'_> {
        Binary::new(&self.space, &self.bullet, self.truncation.as_ref())
    }

    pub fn circ_op(&self) -> Binary<'_> {
        Binary::new(&self.space, &self.circ, self.truncation.as_ref())
    }

    /// `∂x`.
    pub fn d(&self, x: &VElement) -> VElement {
        apply_linear(&self.diff, x)
    }

    /// `v_1 ∘ … ∘ v_k`, the unit for the empty word.
    pub fn circ_word(&self, w: &[Gen]) -> Result<VElement> {
        algebra::iterated_product(self.circ_op(), Some(self.unit()), w)
    }

    /// Associativity of both products, the shared unit, `∂² = 0` and the
    /// Leibniz rule for `•`.
    pub fn validate(&self) -> Result<LawReport> {
        let mut report = LawReport::new("dAs11");
        let unit = self.unit();
        report.push(algebra::associativity_case("bullet associativity", self.bullet_op())?);
        report.push(algebra::associativity_case("circ associativity", self.circ_op())?);
        report.push(algebra::unit_case("bullet unit", self.bullet_op(), unit)?);
        report.push(algebra::unit_case("circ unit", self.circ_op(), unit)?);
        report.push(algebra::square_zero_case("diff square zero", &self.space, &self.diff)?);
        report.push(algebra::leibniz_case("leibniz", self.bullet_op(), &self.diff)?);
        Ok(report)
    }

    /// [`TwoAssocDiffAlgebra::validate`] turned into an error on the first failure.
    pub fn require_valid(&self) -> Result<()> {
        let report = self.validate()?;
        match report.first_failure() {
            None => Ok(()),
            Some(v) => algebra::require_pass(&v.case, v.clone()),
        }
    }
}

fn letters(v: VElement) -> TensorElement {
    v.map_keys(|&g| Word::letter(g))
}

/// Lazily evaluated structure maps of the underlying B-infinity structure,
/// memoized per input.
pub struct Underlying<'a> {
    alg: &'a TwoAssocDiffAlgebra,
    multibrace: Mutex<HashMap<(Vec<Gen>, usize), VElement>>,
    a_infinity: Mutex<HashMap<Vec<Gen>, VElement>>,
}

impl<'a> Underlying<'a> {
    pub fn new(alg: &'a TwoAssocDiffAlgebra) -> Self {
        Underlying {
            alg,
            multibrace: Mutex::new(HashMap::new()),
            a_infinity: Mutex::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &TwoAssocDiffAlgebra {
        self.alg
    }

    /// `m_{a,b}` on a block, with `m_{0,1} = m_{1,0} = id` and the other
    /// components with a zero index vanishing.
    fn block(&self, x: &[Gen], y: &[Gen]) -> Result<VElement> {
        match (x.len(), y.len()) {
            (0, 1) => Ok(VElement::basis(y[0])),
            (1, 0) => Ok(VElement::basis(x[0])),
            (0, _) | (_, 0) => Ok(VElement::zero()),
            _ => self.m_ij(x, y),
        }
    }

    /// `Σ_r ∘^{(r-1)} m_{i,j}^r (x ⊗ y)`, leaving out the single block
    /// `m_{i,j}` when `skip_whole` is set.
    fn iterated_blocks(&self, x: &[Gen], y: &[Gen], skip_whole: bool) -> Result<VElement> {
        let sp = &self.alg.space;
        let circ = self.alg.circ_op();
        let (i, j) = (x.len(), y.len());
        let mut table = vec![vec![VElement::zero(); j + 1]; i + 1];
        table[i][j] = VElement::basis(self.alg.unit());
        for p in (0..=i).rev() {
            for q in (0..=j).rev() {
                if p == i && q == j {
                    continue;
                }
                let mut acc = VElement::zero();
                for a in 0..=(i - p) {
                    for b in 0..=(j - q) {
                        if (a == 0 && b != 1) || (b == 0 && a != 1) {
                            continue;
                        }
                        if skip_whole && p == 0 && q == 0 && a == i && b == j {
                            continue;
                        }
                        let rest = &table[p + a][q + b];
                        if rest.is_zero() {
                            continue;
                        }
                        let head = self.block(&x[p..p + a], &y[q..q + b])?;
                        if head.is_zero() {
                            continue;
                        }
                        let sign = Sign::from_exponent(sp.word_degree(&y[q..q + b]) * sp.word_degree(&x[p + a..]));
                        acc.add_scaled(&circ.mul(&head, rest)?, &sign.to_rational());
                    }
                }
                table[p][q] = acc;
            }
        }
        Ok(std::mem::take(&mut table[0][0]))
    }

    /// `m_{i,j}(x ⊗ y) = •(∘x ⊗ ∘y) - Σ_{r ≥ 2} ∘^{(r-1)} m_{i,j}^r (x ⊗ y)`.
    pub fn m_ij(&self, x: &[Gen], y: &[Gen]) -> Result<VElement> {
        if x.is_empty() || y.is_empty() {
            return Err(Error::Invalid("m_{i,j} needs i, j ≥ 1".into()));
        }
        let key = ([x, y].concat(), x.len());
        if let Some(v) = self.multibrace.lock().expect("memo").get(&key) {
            return Ok(v.clone());
        }
        let bullet = self.alg.bullet_op();
        let mut value = bullet.mul(&self.alg.circ_word(x)?, &self.alg.circ_word(y)?)?;
        value -= self.iterated_blocks(x, y, true)?;
        self.multibrace.lock().expect("memo").insert(key, value.clone());
        Ok(value)
    }

    /// `Σ_k ∘^{(k-1)} m_n^k (w)`, leaving out `m_n` itself when `skip_whole` is set.
    fn iterated_coderivation(&self, w: &[Gen], skip_whole: bool) -> Result<VElement> {
        let sp = &self.alg.space;
        let circ = self.alg.circ_op();
        let n = w.len();
        let mut acc = VElement::zero();
        for i in 0..n {
            for l in 1..=(n - i) {
                if skip_whole && i == 0 && l == n {
                    continue;
                }
                let mid = self.m_n(&w[i..i + l])?;
                if mid.is_zero() {
                    continue;
                }
                let left = self.alg.circ_word(&w[..i])?;
                let right = self.alg.circ_word(&w[i + l..])?;
                let term = circ.mul(&circ.mul(&left, &mid)?, &right)?;
                acc.add_scaled(&term, &Sign::from_exponent(sp.word_degree(&w[..i])).to_rational());
            }
        }
        Ok(acc)
    }

    /// `m_n = ∂∘^{(n-1)} - Σ_{k ≥ 2} ∘^{(k-1)} m_n^k`.
    pub fn m_n(&self, w: &[Gen]) -> Result<VElement> {
        if w.is_empty() {
            return Err(Error::Invalid("m_n needs n ≥ 1".into()));
        }
        if let Some(v) = self.a_infinity.lock().expect("memo").get(w) {
            return Ok(v.clone());
        }
        let mut value = self.alg.d(&self.alg.circ_word(w)?);
        value -= self.iterated_coderivation(w, true)?;
        self.a_infinity.lock().expect("memo").insert(w.to_vec(), value.clone());
        Ok(value)
    }

    /// Left side of the first defining identity, `Σ_r ∘^{(r-1)} m_{i,j}^r (x ⊗ y)`.
    pub fn defining_multibrace_sum(&self, x: &[Gen], y: &[Gen]) -> Result<VElement> {
        self.iterated_blocks(x, y, false)
    }

    /// Left side of the second defining identity, `Σ_k ∘^{(k-1)} m_n^k (w)`.
    pub fn defining_coderivation_sum(&self, w: &[Gen]) -> Result<VElement> {
        self.iterated_coderivation(w, false)
    }
}

/// All `m_{i,j}` with `i + j ≤ cap`.
pub fn derive_multibrace(alg: &TwoAssocDiffAlgebra, cap: usize) -> Result<Multibrace> {
    derive_multibrace_with(&Underlying::new(alg), cap)
}

fn derive_multibrace_with(engine: &Underlying<'_>, cap: usize) -> Result<Multibrace> {
    let sp = &engine.alg.space;
    let mut maps = BTreeMap::new();
    for (i, j) in pairs(cap) {
        let m = MultiMap::from_fn(sp, &format!("m_{{{i},{j}}}"), i + j, 1, 0, |w| {
            Ok(letters(engine.m_ij(&w[..i], &w[i..])?))
        })?;
        maps.insert((i, j), m);
    }
    Multibrace::new(sp.clone(), maps, cap)
}

/// All `m_n` with `n ≤ cap`.
pub fn derive_a_infinity(alg: &TwoAssocDiffAlgebra, cap: usize) -> Result<AInfinity> {
    derive_a_infinity_with(&Underlying::new(alg), cap)
}

fn derive_a_infinity_with(engine: &Underlying<'_>, cap: usize) -> Result<AInfinity> {
    let sp = &engine.alg.space;
    let mut maps = BTreeMap::new();
    for n in 1..=cap {
        let m = MultiMap::from_fn(sp, &format!("m_{n}"), n, 1, -1, |w| Ok(letters(engine.m_n(w)?)))?;
        maps.insert(n, m);
    }
    AInfinity::new(sp.clone(), maps, cap)
}

/// `m_n` from the explicit formula: `∂` for `n = 1`, and for `n ≥ 2`
/// `∂(v_1∘…∘v_n) - ∂(v_1∘…∘v_{n-1})∘v_n - (-1)^{|v_1|} v_1∘∂(v_2∘…∘v_n)
///  + (-1)^{|v_1|} v_1∘∂(v_2∘…∘v_{n-1})∘v_n`.
pub fn borjeson_closed_form(alg: &TwoAssocDiffAlgebra, n: usize) -> Result<MultiMap> {
    if n == 0 {
        return Err(Error::Invalid("m_n needs n ≥ 1".into()));
    }
    if n == 1 {
        return Ok(alg.diff.clone());
    }
    let sp = &alg.space;
    let circ = alg.circ_op();
    MultiMap::from_fn(sp, &format!("m_{n}"), n, 1, -1, |w| {
        let first = VElement::basis(w[0]);
        let last = VElement::basis(w[n - 1]);
        let sign = Sign::from_exponent(sp.degree(w[0])).to_rational();
        let mut out = alg.d(&alg.circ_word(w)?);
        out -= circ.mul(&alg.d(&alg.circ_word(&w[..n - 1])?), &last)?;
        out.add_scaled(&circ.mul(&first, &alg.d(&alg.circ_word(&w[1..])?))?, &-sign.clone());
        let inner = circ.mul(&circ.mul(&first, &alg.d(&alg.circ_word(&w[1..n - 1])?))?, &last)?;
        out.add_scaled(&inner, &sign);
        Ok(letters(out))
    })
}

/// The underlying B-infinity structure up to arity `cap`, after validating `alg`.
pub fn underlying_b_infinity(alg: &TwoAssocDiffAlgebra, cap: usize) -> Result<BInfinity> {
    alg.require_valid()?;
    let engine = Underlying::new(alg);
    BInfinity::new(derive_a_infinity_with(&engine, cap)?, derive_multibrace_with(&engine, cap)?)
}

/// `ε_V(v_1 ⊗ … ⊗ v_k) = v_1 ∘ … ∘ v_k`, `ε_V(1_K) = 1`.
pub fn counit_epsilon(alg: &TwoAssocDiffAlgebra, x: &TensorElement) -> Result<VElement> {
    let mut out = VElement::zero();
    for (w, c) in x {
        out.add_scaled(&alg.circ_word(&w.0)?, c);
    }
    Ok(out)
}

fn word_pairs(sp: &GradedSpace, i: usize, j: usize) -> Vec<(Word, Word)> {
    sp.words(i)
        .into_iter()
        .flat_map(|x| sp.words(j).into_iter().map(move |y| (x.clone(), y)))
        .collect()
}

fn render_pair(sp: &GradedSpace, x: &Word, y: &Word) -> String {
    format!("{} ⊗ {}", sp.render_word(&x.0), sp.render_word(&y.0))
}

/// `Σ_r ∘^{(r-1)} m_{i,j}^r = •(∘^{(i-1)} ⊗ ∘^{(j-1)})` for `i + j ≤ cap` and
/// `Σ_k ∘^{(k-1)} m_n^k = ∂∘^{(n-1)}` for `n ≤ cap`, with the left sides
/// computed by extending the tabulated maps of `s` to `T^c(V)` and applying `ε_V`.
pub fn check_defining_identities(alg: &TwoAssocDiffAlgebra, s: &BInfinity, cap: usize) -> Result<LawReport> {
    let sp = &alg.space;
    let bullet = alg.bullet_op();
    let d = s.a.coderivation();
    let mut report = LawReport::new("defining identities");
    for (i, j) in pairs(cap) {
        report.push(run_case(format!("multibrace ({i},{j})"), &word_pairs(sp, i, j), |(x, y)| {
            let lhs = counit_epsilon(alg, &s.b.mu(&x.0, &y.0)?)?;
            let rhs = bullet.mul(&alg.circ_word(&x.0)?, &alg.circ_word(&y.0)?)?;
            Ok(Outcome::compare(&lhs, &rhs, || Counterexample {
                input: render_pair(sp, x, y),
                lhs: sp.render_vector(&lhs),
                rhs: sp.render_vector(&rhs),
            }))
        })?);
    }
    for n in 1..=cap {
        report.push(run_case(format!("a-infinity n={n}"), &sp.words(n), |w| {
            let lhs = counit_epsilon(alg, &d.apply(sp, &w.0)?)?;
            let rhs = alg.d(&alg.circ_word(&w.0)?);
            Ok(Outcome::compare(&lhs, &rhs, || Counterexample {
                input: sp.render_word(&w.0),
                lhs: sp.render_vector(&lhs),
                rhs: sp.render_vector(&rhs),
            }))
        })?);
    }
    Ok(report)
}

/// `ε_V` is a homomorphism for `•`, for concatenation against `∘`, and for
/// the differentials, on words of total length at most `cap`.
pub fn check_epsilon_hom(alg: &TwoAssocDiffAlgebra, cap: usize) -> Result<LawReport> {
    let s = underlying_b_infinity(alg, cap)?;
    let sp = &alg.space;
    let bullet = alg.bullet_op();
    let circ = alg.circ_op();
    let d = s.a.coderivation();
    let mut report = LawReport::new("epsilon homomorphism");
    for total in 0..=cap {
        for i in 0..=total {
            let j = total - i;
            let inputs = word_pairs(sp, i, j);
            report.push(run_case(format!("bullet ({i},{j})"), &inputs, |(x, y)| {
                let lhs = counit_epsilon(alg, &s.b.mu(&x.0, &y.0)?)?;
                let rhs = bullet.mul(
                    &counit_epsilon(alg, &TensorElement::basis(x.clone()))?,
                    &counit_epsilon(alg, &TensorElement::basis(y.clone()))?,
                )?;
                Ok(Outcome::compare(&lhs, &rhs, || Counterexample {
                    input: render_pair(sp, x, y),
                    lhs: sp.render_vector(&lhs),
                    rhs: sp.render_vector(&rhs),
                }))
            })?);
            report.push(run_case(format!("circ ({i},{j})"), &inputs, |(x, y)| {
                let lhs = counit_epsilon(alg, &TensorElement::basis(x.concat(&y.0)))?;
                let rhs = circ.mul(&alg.circ_word(&x.0)?, &alg.circ_word(&y.0)?)?;
                Ok(Outcome::compare(&lhs, &rhs, || Counterexample {
                    input: render_pair(sp, x, y),
                    lhs: sp.render_vector(&lhs),
                    rhs: sp.render_vector(&rhs),
                }))
            })?);
        }
    }
    for n in 1..=cap {
        report.push(run_case(format!("diff n={n}"), &sp.words(n), |w| {
            let lhs = counit_epsilon(alg, &d.apply(sp, &w.0)?)?;
            let rhs = alg.d(&counit_epsilon(alg, &TensorElement::basis(w.clone()))?);
            Ok(Outcome::compare(&lhs, &rhs, || Counterexample {
                input: sp.render_word(&w.0),
                lhs: sp.render_vector(&lhs),
                rhs: sp.render_vector(&rhs),
            }))
        })?);
    }
    Ok(report)
}

/// `V = T^c(A)` on words of length at most `cap`, with `•` the multibrace
/// product, `∘` concatenation, `∂` the coderivation, and products defined when
/// the word lengths add up to at most `cap`. Also returns the words indexing
/// the generators of `V`.
pub fn tensor_algebra_of(a: &BInfinity, cap: usize) -> Result<(TwoAssocDiffAlgebra, Vec<Word>)> {
    let limit = a.a.cap().min(a.b.cap());
    if cap > limit {
        return Err(Error::CapExceeded { length: cap, cap: limit });
    }
    let asp = a.space();
    let words = asp.words_up_to(cap);
    let index: HashMap<Word, Gen> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let space = GradedSpace::new(
        words.iter().map(|w| (word_name(asp, w), asp.word_degree(&w.0))),
        Some("[]"),
    )?;
    let reindex = |x: &TensorElement| -> TensorElement { x.map_keys(|w| Word::letter(index[w])) };
    let mut bullet = BTreeMap::new();
    let mut circ = BTreeMap::new();
    for (u, wu) in words.iter().enumerate() {
        for (v, wv) in words.iter().enumerate() {
            if wu.len() + wv.len() > cap {
                continue;
            }
            let key = Word(vec![u, v]);
            bullet.insert(key.clone(), reindex(&a.b.mu(&wu.0, &wv.0)?));
            circ.insert(key, TensorElement::basis(Word::letter(index[&wu.concat(&wv.0)])));
        }
    }
    let d = a.a.coderivation();
    let mut diff = BTreeMap::new();
    for (u, wu) in words.iter().enumerate() {
        diff.insert(Word::letter(u), reindex(&d.apply(asp, &wu.0)?));
    }
    let alg = TwoAssocDiffAlgebra::new(
        space.clone(),
        MultiMap::from_table(&space, "bullet", 2, 1, 0, bullet)?,
        MultiMap::from_table(&space, "circ", 2, 1, 0, circ)?,
        MultiMap::from_table(&space, "diff", 1, 1, -1, diff)?,
    )?
    .with_truncation(Truncation {
        weights: words.iter().map(Word::len).collect(),
        cap,
    })?;
    Ok((alg, words))
}

/// The relations `m_{i,j}(ι_1^{⊗i} ⊗ ι_1^{⊗j}) = ι_1 m̄_{i,j}` for
/// `i + j ≤ arity_cap` and `m_n ι_1^{⊗n} = ι_1 m̄_n` for `n ≤ arity_cap`, where
/// the left sides are the underlying structure of `T^c(A)` truncated at
/// `inner_cap`.
pub fn check_iota_hom(a: &BInfinity, inner_cap: usize, arity_cap: usize) -> Result<LawReport> {
    if arity_cap > inner_cap {
        return Err(Error::CapExceeded {
            length: arity_cap,
            cap: inner_cap,
        });
    }
    let (alg, words) = tensor_algebra_of(a, inner_cap)?;
    alg.require_valid()?;
    let engine = Underlying::new(&alg);
    let asp = a.space();
    let vsp = alg.space();
    let iota_gen: Vec<Gen> = (0..asp.dim())
        .map(|g| words.iter().position(|w| w.0 == [g]).expect("letters are words"))
        .collect();
    let iota = |x: &VElement| -> VElement { x.map_keys(|&g| iota_gen[g]) };
    let lift = |w: &[Gen]| -> Vec<Gen> { w.iter().map(|&g| iota_gen[g]).collect() };
    let mut report = LawReport::new("iota homomorphism");
    for n in 1..=arity_cap {
        report.push(run_case(format!("concatenation n={n}"), &asp.words(n), |w| {
            let lhs = alg.circ_word(&lift(&w.0))?;
            let rhs = VElement::basis(words.iter().position(|u| u == w).expect("within cap"));
            Ok(Outcome::compare(&lhs, &rhs, || Counterexample {
                input: asp.render_word(&w.0),
                lhs: vsp.render_vector(&lhs),
                rhs: vsp.render_vector(&rhs),
            }))
        })?);
    }
    for (i, j) in pairs(arity_cap) {
        report.push(run_case(format!("R ({i},{j})"), &word_pairs(asp, i, j), |(x, y)| {
            let lhs = engine.m_ij(&lift(&x.0), &lift(&y.0))?;
            let rhs = iota(&a.b.product().project(&x.0, &y.0));
            Ok(Outcome::compare(&lhs, &rhs, || Counterexample {
                input: render_pair(asp, x, y),
                lhs: vsp.render_vector(&lhs),
                rhs: vsp.render_vector(&rhs),
            }))
        })?);
    }
    for n in 1..=arity_cap {
        report.push(run_case(format!("S n={n}"), &asp.words(n), |w| {
            let lhs = engine.m_n(&lift(&w.0))?;
            let rhs = iota(&a.a.project(&w.0));
            Ok(Outcome::compare(&lhs, &rhs, || Counterexample {
                input: asp.render_word(&w.0),
                lhs: vsp.render_vector(&lhs),
                rhs: vsp.render_vector(&rhs),
            }))
        })?);
    }
    Ok(report)
}
