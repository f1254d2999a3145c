//! Unital infinitesimal bialgebras, the fundamental bialgebra `T^fc(V)`, the
//! enveloping bialgebra `U(A)` of a B-infinity algebra and the structure on
//! primitives.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{self, Binary};
use crate::error::{Error, Result};
use crate::exact::{rank, Rational, SparseMatrix};
use crate::graded::{Gen, GradedSpace, MultiMap, Multilinear, Sign, TensorElement, VElement, Word};
use crate::laws::{run_case, Counterexample, LawReport, Outcome};
use crate::lincomb::LinComb;
use crate::structures::{pairs, shuffle_product, AInfinity, BInfinity, Multibrace};
use crate::tcoalg::{FiniteCoalgebra, Truncation};
use crate::underlying::{counit_epsilon, tensor_algebra_of, TwoAssocDiffAlgebra, Underlying};

/// Tensors of basis elements as ordered tuples.
pub type Tuples = LinComb<Vec<Gen>>;

/// `(W, ∘, 1, Δ, ε)` on a finite basis; `∘` may be partial under a truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfBialgebra {
    coalgebra: FiniteCoalgebra,
    product: MultiMap,
    truncation: Option<Truncation>,
}

impl InfBialgebra {
    pub fn new(coalgebra: FiniteCoalgebra, product: MultiMap, truncation: Option<Truncation>) -> Result<Self> {
        algebra::require_binary("circ", &product)?;
        if let Some(t) = &truncation {
            if t.weights.len() != coalgebra.dim() {
                return Err(Error::SizeMismatch {
                    expected: coalgebra.dim(),
                    found: t.weights.len(),
                });
            }
        }
        Ok(InfBialgebra {
            coalgebra,
            product,
            truncation,
        })
    }

    pub fn space(&self) -> &GradedSpace {
        self.coalgebra.space()
    }

    pub fn coalgebra(&self) -> &FiniteCoalgebra {
        &self.coalgebra
    }

    pub fn product(&self) -> &MultiMap {
        &self.product
    }

    pub fn op(&self) -> Binary<'_> {
        Binary::new(self.coalgebra.space(), &self.product, self.truncation.as_ref())
    }

    pub fn unit(&self) -> Gen {
        self.coalgebra.unit()
    }

    /// Coalgebra laws, associativity and unit of `∘`, and the infinitesimal relation.
    pub fn validate(&self) -> Result<Vec<LawReport>> {
        let mut algebra_report = LawReport::new("algebra");
        algebra_report.push(algebra::associativity_case("associativity", self.op())?);
        algebra_report.push(algebra::unit_case("unit", self.op(), self.unit())?);
        Ok(vec![
            self.coalgebra.validate()?,
            algebra_report,
            check_unital_infinitesimal(self)?,
        ])
    }

    fn coproduct(&self, x: &VElement) -> Tuples {
        let mut out = Tuples::zero();
        for (g, c) in x {
            for ((a, b), d) in self.coalgebra.coproduct_of(*g) {
                out.add_term(vec![*a, *b], c * d);
            }
        }
        out
    }

    fn reduced_iterated(&self, x: &VElement, r: usize) -> Tuples {
        let mut out = Tuples::zero();
        for (g, c) in x {
            out.add_scaled(&self.coalgebra.reduced_iterated(*g, r), c);
        }
        out
    }

    fn counit(&self, x: &VElement) -> Rational {
        self.coalgebra.counit_vec(x)
    }
}

fn render_tuples(space: &GradedSpace, x: &Tuples) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.iter()
        .map(|(t, c)| {
            let names: Vec<&str> = t.iter().map(|&g| space.name(g)).collect();
            format!("{c} {}", names.join(" ⊗ "))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn gen_pairs(dim: usize) -> Vec<(Gen, Gen)> {
    (0..dim).flat_map(|a| (0..dim).map(move |b| (a, b))).collect()
}

/// Multiplies `x ⊗ y` factorwise against a product with one factor, appending to a tuple.
fn push_product(op: Binary<'_>, prefix: &[Gen], x: Gen, y: Gen, suffix: &[Gen], c: &Rational, out: &mut Tuples) -> Result<()> {
    let p = op.mul(&VElement::basis(x), &VElement::basis(y))?;
    for (g, d) in &p {
        let mut t = prefix.to_vec();
        t.push(*g);
        t.extend_from_slice(suffix);
        out.add_term(t, c * d);
    }
    Ok(())
}

/// `Δ(xy) = x_(1) ⊗ x_(2) y + x y_(1) ⊗ y_(2) - x ⊗ y` on basis pairs, and
/// the iterated form for `Δ̄^{(n)}`, `n ≤ 3`, on reduced parts.
pub fn check_unital_infinitesimal(w: &InfBialgebra) -> Result<LawReport> {
    let sp = w.space();
    let op = w.op();
    let inputs = gen_pairs(sp.dim());
    let mut report = LawReport::new("unital infinitesimal");
    report.push(run_case("relation", &inputs, |&(x, y)| {
        let Some(xy) = op.try_mul(&VElement::basis(x), &VElement::basis(y)) else {
            return Ok(Outcome::Skipped);
        };
        let lhs = w.coproduct(&xy);
        let rhs = (|| -> Result<Tuples> {
            let mut rhs = Tuples::zero();
            for ((a, b), c) in w.coalgebra.coproduct_of(x) {
                push_product(op, &[*a], *b, y, &[], c, &mut rhs)?;
            }
            for ((a, b), c) in w.coalgebra.coproduct_of(y) {
                push_product(op, &[], x, *a, &[*b], c, &mut rhs)?;
            }
            rhs.add_term(vec![x, y], -Rational::one());
            Ok(rhs)
        })();
        let Ok(rhs) = rhs else {
            return Ok(Outcome::Skipped);
        };
        Ok(Outcome::compare(&lhs, &rhs, || Counterexample {
            input: format!("{} ⊗ {}", sp.name(x), sp.name(y)),
            lhs: render_tuples(sp, &lhs),
            rhs: render_tuples(sp, &rhs),
        }))
    })?);
    for n in 1..=3 {
        report.push(run_case(format!("iterate n={n}"), &inputs, |&(x, y)| {
            let (xr, yr) = (w.coalgebra.reduce_gen(x), w.coalgebra.reduce_gen(y));
            let Some(xy) = op.try_mul(&xr, &yr) else {
                return Ok(Outcome::Skipped);
            };
            let lhs = w.reduced_iterated(&xy, n);
            let rhs = (|| -> Result<Tuples> {
                let mut rhs = Tuples::zero();
                for r in 0..=n {
                    let s = n - r;
                    for (a, c) in &w.reduced_iterated(&xr, r) {
                        for (b, d) in &w.reduced_iterated(&yr, s) {
                            push_product(op, &a[..r], a[r], b[0], &b[1..], &(c * d), &mut rhs)?;
                        }
                    }
                }
                for r in 0..n {
                    let s = n - 1 - r;
                    for (a, c) in &w.reduced_iterated(&xr, r) {
                        for (b, d) in &w.reduced_iterated(&yr, s) {
                            rhs.add_term([a.as_slice(), b.as_slice()].concat(), c * d);
                        }
                    }
                }
                Ok(rhs)
            })();
            let Ok(rhs) = rhs else {
                return Ok(Outcome::Skipped);
            };
            Ok(Outcome::compare(&lhs, &rhs, || Counterexample {
                input: format!("{} ⊗ {}", sp.name(x), sp.name(y)),
                lhs: render_tuples(sp, &lhs),
                rhs: render_tuples(sp, &rhs),
            }))
        })?);
    }
    Ok(report)
}

/// `Δ'(x ⊗ y) = (x_(1) ⊗ 1) ⊗ (x_(2) ⊗ y) + (x ⊗ y_(1)) ⊗ (1 ⊗ y_(2)) - (x ⊗ 1) ⊗ (1 ⊗ y)`
/// as 4-tuples.
pub fn delta_prime(c: &FiniteCoalgebra, x: Gen, y: Gen) -> Tuples {
    let one = c.unit();
    let mut out = Tuples::zero();
    for ((a, b), k) in c.coproduct_of(x) {
        out.add_term(vec![*a, one, *b, y], k.clone());
    }
    for ((a, b), k) in c.coproduct_of(y) {
        out.add_term(vec![x, *a, one, *b], k.clone());
    }
    out.add_term(vec![x, one, one, y], -Rational::one());
    out
}

/// `(x_1 ⊗ x_2) ∘' (y_1 ⊗ y_2) = ε(y_1) x_1 ⊗ x_2∘y_2 + ε(x_2) x_1∘y_1 ⊗ y_2
/// - ε(x_2∘y_1) x_1 ⊗ y_2`.
pub fn circ_prime(w: &InfBialgebra, x: (Gen, Gen), y: (Gen, Gen)) -> Result<Tuples> {
    let op = w.op();
    let mut out = Tuples::zero();
    let (x1, x2) = x;
    let (y1, y2) = y;
    let ey1 = w.coalgebra.counit_of(y1).clone();
    if !ey1.is_zero() {
        push_product(op, &[x1], x2, y2, &[], &ey1, &mut out)?;
    }
    let ex2 = w.coalgebra.counit_of(x2).clone();
    if !ex2.is_zero() {
        push_product(op, &[], x1, y1, &[y2], &ex2, &mut out)?;
    }
    let e = w.counit(&op.mul(&VElement::basis(x2), &VElement::basis(y1))?);
    out.add_term(vec![x1, y2], -e);
    Ok(out)
}

fn apply_delta_prime_left(c: &FiniteCoalgebra, t: &Tuples) -> Tuples {
    let mut out = Tuples::zero();
    for (v, k) in t {
        for (u, d) in &delta_prime(c, v[0], v[1]) {
            out.add_term([u.as_slice(), &v[2..]].concat(), k * d);
        }
    }
    out
}

fn apply_delta_prime_right(c: &FiniteCoalgebra, t: &Tuples) -> Tuples {
    let mut out = Tuples::zero();
    for (v, k) in t {
        for (u, d) in &delta_prime(c, v[2], v[3]) {
            out.add_term([&v[..2], u.as_slice()].concat(), k * d);
        }
    }
    out
}

fn circ_prime_tuples(w: &InfBialgebra, x: &Tuples, y: &Tuples) -> Result<Tuples> {
    let mut out = Tuples::zero();
    for (a, c) in x {
        for (b, d) in y {
            out.add_scaled(&circ_prime(w, (a[0], a[1]), (b[0], b[1]))?, &(c * d));
        }
    }
    Ok(out)
}

/// Verdicts of the three equivalent conditions for a unital infinitesimal bialgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub infinitesimal: bool,
    pub product_is_coalgebra_map: bool,
    pub coproduct_is_algebra_map: bool,
}

impl Equivalence {
    pub fn agree(&self) -> bool {
        self.infinitesimal == self.product_is_coalgebra_map && self.product_is_coalgebra_map == self.coproduct_is_algebra_map
    }
}

/// Laws of `Δ'` and `∘'`, and the three equivalent conditions evaluated on `w`.
pub fn derived_structures_prime(w: &InfBialgebra) -> Result<(LawReport, Equivalence)> {
    let c = &w.coalgebra;
    let sp = w.space();
    let one = w.unit();
    let dim = sp.dim();
    let inputs = gen_pairs(dim);
    let render4 = |t: &Tuples| render_tuples(sp, t);
    let mut report = LawReport::new("prime structures");
    report.push(run_case("delta' coassociativity", &inputs, |&(x, y)| {
        let d = delta_prime(c, x, y);
        let lhs = apply_delta_prime_left(c, &d);
        let rhs = apply_delta_prime_right(c, &d);
        Ok(Outcome::compare(&lhs, &rhs, || Counterexample {
            input: format!("{} ⊗ {}", sp.name(x), sp.name(y)),
            lhs: render4(&lhs),
            rhs: render4(&rhs),
        }))
    })?);
    report.push(run_case("delta' counit", &inputs, |&(x, y)| {
        let d = delta_prime(c, x, y);
        let mut left = Tuples::zero();
        let mut right = Tuples::zero();
        for (v, k) in &d {
            let e_front = c.counit_of(v[0]) * c.counit_of(v[1]);
            let e_back = c.counit_of(v[2]) * c.counit_of(v[3]);
            left.add_term(vec![v[2], v[3]], k * e_front);
            right.add_term(vec![v[0], v[1]], k * e_back);
        }
        let id = Tuples::basis(vec![x, y]);
        Ok(if left == id && right == id {
            Outcome::Holds
        } else {
            Outcome::Fails(Counterexample {
                input: format!("{} ⊗ {}", sp.name(x), sp.name(y)),
                lhs: format!("{} / {}", render4(&left), render4(&right)),
                rhs: render4(&id),
            })
        })
    })?);
    let grouplike = delta_prime(c, one, one) == Tuples::basis(vec![one, one, one, one]);
    report.push_fact("1 ⊗ 1 grouplike", grouplike, None);

    let pair_gens: Vec<(Gen, Gen)> = inputs.clone();
    let triples: Vec<[(Gen, Gen); 3]> = pair_gens
        .iter()
        .flat_map(|&a| {
            let pg = &pair_gens;
            pg.iter().flat_map(move |&b| pg.iter().map(move |&cc| [a, b, cc]))
        })
        .collect();
    report.push(run_case("circ' associativity", &triples, |&[a, b, cc]| {
        let ta = Tuples::basis(vec![a.0, a.1]);
        let tb = Tuples::basis(vec![b.0, b.1]);
        let tc = Tuples::basis(vec![cc.0, cc.1]);
        let sides = (|| -> Result<(Tuples, Tuples)> {
            let lhs = circ_prime_tuples(w, &circ_prime_tuples(w, &ta, &tb)?, &tc)?;
            let rhs = circ_prime_tuples(w, &ta, &circ_prime_tuples(w, &tb, &tc)?)?;
            Ok((lhs, rhs))
        })();
        let Ok((lhs, rhs)) = sides else {
            return Ok(Outcome::Skipped);
        };
        Ok(Outcome::compare(&lhs, &rhs, || Counterexample {
            input: format!(
                "({} ⊗ {}), ({} ⊗ {}), ({} ⊗ {})",
                sp.name(a.0),
                sp.name(a.1),
                sp.name(b.0),
                sp.name(b.1),
                sp.name(cc.0),
                sp.name(cc.1)
            ),
            lhs: render4(&lhs),
            rhs: render4(&rhs),
        }))
    })?);
    report.push(run_case("circ' unit", &inputs, |&(x, y)| {
        let t = Tuples::basis(vec![x, y]);
        let u = Tuples::basis(vec![one, one]);
        let (Ok(left), Ok(right)) = (circ_prime_tuples(w, &u, &t), circ_prime_tuples(w, &t, &u)) else {
            return Ok(Outcome::Skipped);
        };
        Ok(if left == t && right == t {
            Outcome::Holds
        } else {
            Outcome::Fails(Counterexample {
                input: format!("{} ⊗ {}", sp.name(x), sp.name(y)),
                lhs: format!("{} / {}", render4(&left), render4(&right)),
                rhs: render4(&t),
            })
        })
    })?);

    let infinitesimal = check_unital_infinitesimal(w)?
        .verdicts
        .into_iter()
        .find(|v| v.case == "relation")
        .expect("relation case");
    let op = w.op();
    let coalgebra_map = run_case("product is a coalgebra map", &inputs, |&(x, y)| {
        let Some(xy) = op.try_mul(&VElement::basis(x), &VElement::basis(y)) else {
            return Ok(Outcome::Skipped);
        };
        let lhs = w.coproduct(&xy);
        let mut rhs = Tuples::zero();
        for (v, k) in &delta_prime(c, x, y) {
            let (Some(p), Some(q)) = (
                op.try_mul(&VElement::basis(v[0]), &VElement::basis(v[1])),
                op.try_mul(&VElement::basis(v[2]), &VElement::basis(v[3])),
            ) else {
                return Ok(Outcome::Skipped);
            };
            for (g, a) in &p {
                for (h, b) in &q {
                    rhs.add_term(vec![*g, *h], k * a * b);
                }
            }
        }
        let counit_ok = w.counit(&xy) == c.counit_of(x) * c.counit_of(y);
        Ok(if lhs == rhs && counit_ok {
            Outcome::Holds
        } else {
            Outcome::Fails(Counterexample {
                input: format!("{} ⊗ {}", sp.name(x), sp.name(y)),
                lhs: render_tuples(sp, &lhs),
                rhs: render_tuples(sp, &rhs),
            })
        })
    })?;
    let algebra_map = run_case("coproduct is an algebra map", &inputs, |&(x, y)| {
        let Some(xy) = op.try_mul(&VElement::basis(x), &VElement::basis(y)) else {
            return Ok(Outcome::Skipped);
        };
        let lhs = w.coproduct(&xy);
        let Ok(rhs) = circ_prime_tuples(w, &w.coproduct(&VElement::basis(x)), &w.coproduct(&VElement::basis(y))) else {
            return Ok(Outcome::Skipped);
        };
        Ok(Outcome::compare(&lhs, &rhs, || Counterexample {
            input: format!("{} ⊗ {}", sp.name(x), sp.name(y)),
            lhs: render_tuples(sp, &lhs),
            rhs: render_tuples(sp, &rhs),
        }))
    })?;
    let unit_grouplike = w.coproduct(&VElement::basis(one)) == Tuples::basis(vec![one, one]);
    let equivalence = Equivalence {
        infinitesimal: infinitesimal.passed,
        product_is_coalgebra_map: coalgebra_map.passed,
        coproduct_is_algebra_map: algebra_map.passed && unit_grouplike,
    };
    report.push_fact(
        "equivalent conditions agree",
        equivalence.agree(),
        Some(Counterexample {
            input: "verdicts".into(),
            lhs: format!("{equivalence:?}"),
            rhs: "all equal".into(),
        }),
    );
    Ok((report, equivalence))
}

fn concatenation_table(space: &GradedSpace, words: &[Word], cap: usize) -> Result<MultiMap> {
    let index: BTreeMap<&Word, Gen> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut table = BTreeMap::new();
    for (u, wu) in words.iter().enumerate() {
        for (v, wv) in words.iter().enumerate() {
            if wu.len() + wv.len() <= cap {
                table.insert(Word(vec![u, v]), TensorElement::basis(Word::letter(index[&wu.concat(&wv.0)])));
            }
        }
    }
    MultiMap::from_table(space, "circ", 2, 1, 0, table)
}

fn length_truncation(words: &[Word], cap: usize) -> Truncation {
    Truncation {
        weights: words.iter().map(Word::len).collect(),
        cap,
    }
}

/// `T^fc(V)` on words of length at most `cap`: concatenation and deconcatenation.
pub fn fundamental_bialgebra(v: &GradedSpace, cap: usize) -> Result<(InfBialgebra, Vec<Word>)> {
    let (c, words) = FiniteCoalgebra::tensor_coalgebra(v, cap)?;
    let product = concatenation_table(c.space(), &words, cap)?;
    let truncation = length_truncation(&words, cap);
    Ok((InfBialgebra::new(c, product, Some(truncation))?, words))
}

/// Deconcatenation with the shuffle product, on words of length at most `cap`.
pub fn shuffle_bialgebra(v: &GradedSpace, cap: usize) -> Result<(InfBialgebra, Vec<Word>)> {
    let (c, words) = FiniteCoalgebra::tensor_coalgebra(v, cap)?;
    let index: BTreeMap<&Word, Gen> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut table = BTreeMap::new();
    for (u, wu) in words.iter().enumerate() {
        for (x, wv) in words.iter().enumerate() {
            if wu.len() + wv.len() <= cap {
                let sh = shuffle_product(v, &TensorElement::basis(wu.clone()), &TensorElement::basis(wv.clone()), cap)?;
                table.insert(Word(vec![u, x]), sh.map_keys(|w| Word::letter(index[w])));
            }
        }
    }
    let product = MultiMap::from_table(c.space(), "shuffle", 2, 1, 0, table)?;
    let truncation = length_truncation(&words, cap);
    Ok((InfBialgebra::new(c, product, Some(truncation))?, words))
}

/// Outcome of comparing `F_W : T^fc(Prim W) → W` with the conilpotent radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounitFReport {
    pub primitive_dim: usize,
    /// Number of words in the primitives that were mapped.
    pub source_dim: usize,
    pub image_rank: usize,
    pub radical_dim: usize,
    pub injective: bool,
    pub image_is_radical: bool,
}

fn dense(dim: usize, x: &VElement) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    for (g, c) in x {
        v[*g] = c.clone();
    }
    v
}

fn sparse(v: &[Rational]) -> VElement {
    v.iter().enumerate().map(|(g, c)| (g, c.clone())).collect()
}

/// `F_W(p_1 ⊗ … ⊗ p_k) = p_1 ∘ … ∘ p_k` on words in a basis of `Prim W` up to
/// the level of the radical, compared by rank with the radical.
pub fn counit_f(w: &InfBialgebra) -> Result<CounitFReport> {
    let c = &w.coalgebra;
    let dim = c.dim();
    let prims = c.primitives()?;
    let radical = c.conilpotent_radical();
    let op = w.op();
    let mut image: Vec<Vec<Rational>> = vec![dense(dim, &VElement::basis(w.unit()))];
    let mut layer: Vec<VElement> = vec![VElement::basis(w.unit())];
    for _ in 0..radical.level {
        let mut next = Vec::new();
        for x in &layer {
            for p in &prims {
                match op.mul(x, &sparse(p)) {
                    Ok(v) => next.push(v),
                    Err(Error::Truncated { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        image.extend(next.iter().map(|v| dense(dim, v)));
        layer = next;
    }
    let image_rank = rank(&SparseMatrix::from_dense(&image)?);
    let mut union = image.clone();
    union.extend(radical.basis.iter().cloned());
    let union_rank = rank(&SparseMatrix::from_dense(&union)?);
    let radical_dim = radical.basis.len();
    Ok(CounitFReport {
        primitive_dim: prims.len(),
        source_dim: image.len(),
        image_rank,
        radical_dim,
        injective: image_rank == image.len(),
        image_is_radical: image_rank == radical_dim && union_rank == radical_dim,
    })
}

/// `(V, ∂, •, ∘, Δ, 1)`: a two-associative differential algebra with a
/// coproduct making it a dg bialgebra for `•` and an infinitesimal one for `∘`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoAssocDiffBialgebra {
    alg: TwoAssocDiffAlgebra,
    coalgebra: FiniteCoalgebra,
}

impl TwoAssocDiffBialgebra {
    pub fn new(alg: TwoAssocDiffAlgebra, coalgebra: FiniteCoalgebra) -> Result<Self> {
        if alg.space() != coalgebra.space() {
            return Err(Error::Invalid("algebra and coalgebra live on different spaces".into()));
        }
        Ok(TwoAssocDiffBialgebra { alg, coalgebra })
    }

    pub fn algebra(&self) -> &TwoAssocDiffAlgebra {
        &self.alg
    }

    pub fn coalgebra(&self) -> &FiniteCoalgebra {
        &self.coalgebra
    }

    /// `(V, ∘, 1, Δ, ε)`.
    pub fn inf_bialgebra(&self) -> InfBialgebra {
        InfBialgebra {
            coalgebra: self.coalgebra.clone(),
            product: self.alg.circ().clone(),
            truncation: self.alg.truncation().cloned(),
        }
    }

    /// All laws: the algebra, the coalgebra, compatibility of `Δ` with `•` and
    /// `∂`, and the infinitesimal relation for `∘`.
    pub fn validate(&self) -> Result<Vec<LawReport>> {
        let mut reports = vec![self.alg.validate()?, self.coalgebra.validate()?];
        reports.push(self.check_dg_bialgebra()?);
        reports.push(check_unital_infinitesimal(&self.inf_bialgebra())?);
        Ok(reports)
    }

    fn coproduct(&self, x: &VElement) -> Tuples {
        let mut out = Tuples::zero();
        for (g, c) in x {
            for ((a, b), d) in self.coalgebra.coproduct_of(*g) {
                out.add_term(vec![*a, *b], c * d);
            }
        }
        out
    }

    /// `Δ(x•y) = Δ(x)•Δ(y)`, `ε(x•y) = ε(x)ε(y)`, `Δ∂ = (∂ ⊗ id + id ⊗ ∂)Δ`, `ε∂ = 0`.
    pub fn check_dg_bialgebra(&self) -> Result<LawReport> {
        let sp = self.alg.space();
        let bullet = self.alg.bullet_op();
        let c = &self.coalgebra;
        let mut report = LawReport::new("dg bialgebra");
        report.push(run_case("coproduct multiplicative", &gen_pairs(sp.dim()), |&(x, y)| {
            let Some(xy) = bullet.try_mul(&VElement::basis(x), &VElement::basis(y)) else {
                return Ok(Outcome::Skipped);
            };
            let lhs = self.coproduct(&xy);
            let mut rhs = Tuples::zero();
            for ((x1, x2), a) in c.coproduct_of(x) {
                for ((y1, y2), b) in c.coproduct_of(y) {
                    let (Some(p), Some(q)) = (
                        bullet.try_mul(&VElement::basis(*x1), &VElement::basis(*y1)),
                        bullet.try_mul(&VElement::basis(*x2), &VElement::basis(*y2)),
                    ) else {
                        return Ok(Outcome::Skipped);
                    };
                    let sign = Sign::from_exponent(sp.degree(*x2) * sp.degree(*y1)).to_rational();
                    for (g, e) in &p {
                        for (h, f) in &q {
                            rhs.add_term(vec![*g, *h], a * b * e * f * &sign);
                        }
                    }
                }
            }
            let counit_ok = c.counit_vec(&xy) == c.counit_of(x) * c.counit_of(y);
            Ok(if lhs == rhs && counit_ok {
                Outcome::Holds
            } else {
                Outcome::Fails(Counterexample {
                    input: format!("{} ⊗ {}", sp.name(x), sp.name(y)),
                    lhs: render_tuples(sp, &lhs),
                    rhs: render_tuples(sp, &rhs),
                })
            })
        })?);
        let gens: Vec<Gen> = (0..sp.dim()).collect();
        report.push(run_case("coproduct commutes with differential", &gens, |&x| {
            let lhs = self.coproduct(&self.alg.d(&VElement::basis(x)));
            let mut rhs = Tuples::zero();
            for ((a, b), k) in c.coproduct_of(x) {
                for (g, e) in &self.alg.d(&VElement::basis(*a)) {
                    rhs.add_term(vec![*g, *b], k * e);
                }
                let sign = Sign::from_exponent(sp.degree(*a)).to_rational();
                for (g, e) in &self.alg.d(&VElement::basis(*b)) {
                    rhs.add_term(vec![*a, *g], k * e * &sign);
                }
            }
            let counit_ok = c.counit_vec(&self.alg.d(&VElement::basis(x))).is_zero();
            Ok(if lhs == rhs && counit_ok {
                Outcome::Holds
            } else {
                Outcome::Fails(Counterexample {
                    input: sp.name(x).to_string(),
                    lhs: render_tuples(sp, &lhs),
                    rhs: render_tuples(sp, &rhs),
                })
            })
        })?);
        Ok(report)
    }
}

/// `U(A)`: `T^c(A)` on words of length at most `cap` with the multibrace
/// product, concatenation, the coderivation and deconcatenation.
pub fn enveloping(a: &BInfinity, cap: usize) -> Result<TwoAssocDiffBialgebra> {
    let (alg, _) = tensor_algebra_of(a, cap)?;
    let (coalgebra, _) = FiniteCoalgebra::tensor_coalgebra(a.space(), cap)?;
    TwoAssocDiffBialgebra::new(alg, coalgebra)
}

/// The B-infinity structure on `Prim W` obtained by restricting the
/// underlying structure of `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveStructure {
    /// Basis of `Prim W` in coordinates of `W`.
    pub basis: Vec<Vec<Rational>>,
    pub structure: BInfinity,
    pub closure: LawReport,
}

/// Computes `Prim W`, checks that every `m_{i,j}` (`i + j ≤ cap`) and `m_n`
/// (`n ≤ cap`) maps primitive tuples to primitives, and returns the
/// restriction. `W` must be conilpotent.
pub fn prim_b_infinity(w: &TwoAssocDiffBialgebra, cap: usize) -> Result<PrimitiveStructure> {
    let c = &w.coalgebra;
    if let Err(g) = c.conilpotency() {
        let sp = c.space();
        let terms: Vec<String> = c
            .reduced_iterated(g, cap)
            .iter()
            .map(|(t, k)| format!("{k} {}", sp.render_word(t)))
            .collect();
        return Err(Error::NotConilpotent {
            cap,
            witness: format!("reduced {cap}-fold coproduct of {} is {}", sp.name(g), terms.join(" + ")),
        });
    }
    let wsp = c.space();
    let basis = c.primitives()?;
    let mut generators = Vec::with_capacity(basis.len());
    let mut coordinate_columns = Vec::with_capacity(basis.len());
    for (k, v) in basis.iter().enumerate() {
        let support: Vec<Gen> = (0..v.len()).filter(|&g| !v[g].is_zero()).collect();
        let degree = wsp.degree(support[0]);
        if support.iter().any(|&g| wsp.degree(g) != degree) {
            return Err(Error::Invalid("primitive basis vector is not homogeneous".into()));
        }
        let column = support
            .iter()
            .copied()
            .find(|&g| v[g].is_one() && basis.iter().enumerate().all(|(j, u)| j == k || u[g].is_zero()))
            .ok_or_else(|| Error::Invalid("primitive basis is not in reduced form".into()))?;
        coordinate_columns.push(column);
        let name = if support.len() == 1 {
            wsp.name(support[0]).to_string()
        } else {
            format!("p{}", k + 1)
        };
        generators.push((name, degree));
    }
    let psp = GradedSpace::new(generators, None)?;
    let engine = Underlying::new(&w.alg);
    let vectors: Vec<VElement> = basis.iter().map(|v| sparse(v)).collect();

    let coordinates = |value: &VElement| -> Option<VElement> {
        let coords: VElement = coordinate_columns
            .iter()
            .enumerate()
            .map(|(k, &col)| (k, value.coeff(&col)))
            .collect();
        let mut rebuilt = VElement::zero();
        for (k, a) in &coords {
            rebuilt.add_scaled(&vectors[*k], a);
        }
        (rebuilt == *value).then_some(coords)
    };
    // Multilinear expansion of a structure map over primitive tuples.
    let expand = |tuple: &[Gen], eval: &dyn Fn(&[Gen]) -> Result<VElement>| -> Result<VElement> {
        let mut acc: Vec<(Vec<Gen>, Rational)> = vec![(Vec::new(), Rational::one())];
        for &p in tuple {
            let mut next = Vec::new();
            for (prefix, a) in &acc {
                for (g, b) in &vectors[p] {
                    let mut t = prefix.clone();
                    t.push(*g);
                    next.push((t, a * b));
                }
            }
            acc = next;
        }
        let mut out = VElement::zero();
        for (t, a) in acc {
            out.add_scaled(&eval(&t)?, &a);
        }
        Ok(out)
    };

    let mut closure = LawReport::new("primitive closure");
    let mut a_maps = BTreeMap::new();
    for n in 1..=cap {
        let words = psp.words(n);
        let mut failure = None;
        let mut table = BTreeMap::new();
        for word in &words {
            let value = expand(&word.0, &|t| engine.m_n(t))?;
            match coordinates(&value) {
                Some(coords) => {
                    table.insert(word.clone(), coords.map_keys(|&g| Word::letter(g)));
                }
                None if failure.is_none() => {
                    failure = Some(Counterexample {
                        input: psp.render_word(&word.0),
                        lhs: wsp.render_vector(&value),
                        rhs: "a primitive".into(),
                    })
                }
                None => {}
            }
        }
        closure.push_fact(format!("m_{n}"), failure.is_none(), failure);
        a_maps.insert(n, MultiMap::from_table(&psp, &format!("m_{n}"), n, 1, -1, table)?);
    }
    let mut b_maps = BTreeMap::new();
    for (i, j) in pairs(cap) {
        let words = psp.words(i + j);
        let mut failure = None;
        let mut table = BTreeMap::new();
        for word in &words {
            let value = expand(&word.0, &|t| engine.m_ij(&t[..i], &t[i..]))?;
            match coordinates(&value) {
                Some(coords) => {
                    table.insert(word.clone(), coords.map_keys(|&g| Word::letter(g)));
                }
                None if failure.is_none() => {
                    failure = Some(Counterexample {
                        input: psp.render_word(&word.0),
                        lhs: wsp.render_vector(&value),
                        rhs: "a primitive".into(),
                    })
                }
                None => {}
            }
        }
        closure.push_fact(format!("m_{{{i},{j}}}"), failure.is_none(), failure);
        b_maps.insert((i, j), MultiMap::from_table(&psp, &format!("m_{{{i},{j}}}"), i + j, 1, 0, table)?);
    }
    if let Some(v) = closure.first_failure() {
        return Err(Error::ClosureFailure(format!(
            "{} {}",
            v.case,
            v.counterexample.as_ref().map(|c| c.to_string()).unwrap_or_default()
        )));
    }
    let structure = BInfinity::new(
        AInfinity::new(psp.clone(), a_maps, cap)?,
        Multibrace::new(psp, b_maps, cap)?,
    )?;
    Ok(PrimitiveStructure {
        basis,
        structure,
        closure,
    })
}

/// `ε_{T^c(A)} ∘ T^c(ι_1) = id` on words of length at most `cap`.
pub fn check_triangle(a: &BInfinity, cap: usize) -> Result<LawReport> {
    let (alg, words) = tensor_algebra_of(a, cap)?;
    let asp = a.space();
    let vsp = alg.space();
    let index = |w: &Word| words.iter().position(|u| u == w).expect("within cap");
    let mut report = LawReport::new("triangle identity");
    for n in 0..=cap {
        report.push(run_case(format!("n={n}"), &asp.words(n), |w| {
            let lifted = Word(w.0.iter().map(|&g| index(&Word::letter(g))).collect());
            let lhs = counit_epsilon(&alg, &TensorElement::basis(lifted))?;
            let rhs = VElement::basis(index(w));
            Ok(Outcome::compare(&lhs, &rhs, || Counterexample {
                input: asp.render_word(&w.0),
                lhs: vsp.render_vector(&lhs),
                rhs: vsp.render_vector(&rhs),
            }))
        })?);
    }
    Ok(report)
}

/// Compares `A` with the structure recovered on `Prim U(A)`, matching the
/// primitive `[a]` with `a`. Returns the first difference.
pub fn round_trip_difference(a: &BInfinity, cap: usize) -> Result<Option<String>> {
    let u = enveloping(a, cap)?;
    let prim = prim_b_infinity(&u, cap)?;
    let asp = a.space();
    let psp = prim.structure.space();
    if psp.dim() != asp.dim() {
        return Ok(Some(format!("Prim has dimension {} instead of {}", psp.dim(), asp.dim())));
    }
    let mut to_a = Vec::with_capacity(psp.dim());
    for g in 0..psp.dim() {
        let found = (0..asp.dim()).find(|&h| asp.render_word(&[h]) == psp.name(g));
        match found {
            Some(h) => to_a.push(h),
            None => return Ok(Some(format!("primitive {} is not a letter", psp.name(g)))),
        }
    }
    let relabel = |m: &MultiMap| -> Result<MultiMap> {
        let mut table = BTreeMap::new();
        for (w, v) in m.table() {
            let key = Word(w.0.iter().map(|&g| to_a[g]).collect());
            table.insert(key, v.map_keys(|o| Word(o.0.iter().map(|&g| to_a[g]).collect())));
        }
        MultiMap::from_table(asp, "m", m.in_arity(), m.out_arity(), m.degree(), table)
    };
    let mut a_maps = BTreeMap::new();
    for (n, m) in prim.structure.a.maps() {
        a_maps.insert(*n, relabel(m)?);
    }
    let mut b_maps = BTreeMap::new();
    for (k, m) in prim.structure.b.maps() {
        b_maps.insert(*k, relabel(m)?);
    }
    let recovered = BInfinity::new(
        AInfinity::new(asp.clone(), a_maps, cap)?,
        Multibrace::new(asp.clone(), b_maps, cap)?,
    )?;
    Ok(recovered.first_difference(&a.truncated(cap), cap))
}
