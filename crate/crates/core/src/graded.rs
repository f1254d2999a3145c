//! Graded spaces, tensor words, Koszul signs and homogeneous multilinear maps.
//!
//! Signs enter only through [`permute_tensor`] and [`apply_map_tensor`]; every
//! higher formula in the crate is evaluated by reduction to those two.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Mul;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::lincomb::LinComb;

/// Index of a basis generator.
pub type Gen = usize;
/// Integer degree.
pub type Degree = i64;

/// A tensor word `v_1 ⊗ … ⊗ v_k` of generators; the empty word is the unit of
/// the ground field.
///
/// Ordered by length first, then lexicographically on generator indices.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: Gen) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    /// Concatenation `self ⊗ other`.
    pub fn concat(&self, other: &[Gen]) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }
}

impl From<Vec<Gen>> for Word {
    fn from(v: Vec<Gen>) -> Self {
        Word(v)
    }
}

impl From<&[Gen]> for Word {
    fn from(v: &[Gen]) -> Self {
        Word(v.to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Element of `V`: a combination of generators.
pub type VElement = LinComb<Gen>;
/// Element of `T^c(V)`: a combination of words.
pub type TensorElement = LinComb<Word>;

/// Tensor product of two elements of `T^c(V)` (concatenation, no sign).
pub fn tensor(x: &TensorElement, y: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero();
    for (u, a) in x {
        for (v, b) in y {
            out.add_term(u.concat(&v.0), a * b);
        }
    }
    out
}

/// Views a combination of generators as a combination of length-one words.
pub fn as_tensor(v: &VElement) -> TensorElement {
    v.map_keys(|&g| Word::letter(g))
}

/// Projects onto the length-one words and reads them as generators.
pub fn length_one_part(x: &TensorElement) -> VElement {
    x.iter()
        .filter(|(w, _)| w.len() == 1)
        .map(|(w, c)| (w.0[0], c.clone()))
        .collect()
}

/// `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^exponent`.
    pub fn from_exponent(exponent: i64) -> Sign {
        if exponent.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_rational(self) -> Rational {
        match self {
            Sign::Plus => Rational::one(),
            Sign::Minus => -Rational::one(),
        }
    }

    pub fn apply(self, x: Rational) -> Rational {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// A named basis vector with a degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: Degree,
}

/// Finite graded vector space given by a named, ordered basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    generators: Vec<Generator>,
    unit: Option<Gen>,
    index: HashMap<String, Gen>,
}

impl GradedSpace {
    /// Builds a space; `unit` names the generator playing the role of `1`.
    pub fn new<S: Into<String>>(
        generators: impl IntoIterator<Item = (S, Degree)>,
        unit: Option<&str>,
    ) -> Result<Self> {
        let mut gens = Vec::new();
        let mut index = HashMap::new();
        for (name, degree) in generators {
            let name = name.into();
            if index.insert(name.clone(), gens.len()).is_some() {
                return Err(Error::DuplicateName(name));
            }
            gens.push(Generator { name, degree });
        }
        let unit = match unit {
            None => None,
            Some(name) => {
                let g = *index
                    .get(name)
                    .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
                if gens[g].degree != 0 {
                    return Err(Error::UnitDegree(name.to_string()));
                }
                Some(g)
            }
        };
        Ok(GradedSpace {
            generators: gens,
            unit,
            index,
        })
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn unit(&self) -> Option<Gen> {
        self.unit
    }

    pub fn require_unit(&self) -> Result<Gen> {
        self.unit.ok_or(Error::MissingUnit)
    }

    pub fn degree(&self, g: Gen) -> Degree {
        self.generators[g].degree
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.generators[g].name
    }

    pub fn lookup(&self, name: &str) -> Result<Gen> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn check_gen(&self, g: Gen) -> Result<()> {
        if g < self.dim() {
            Ok(())
        } else {
            Err(Error::GeneratorOutOfRange(g))
        }
    }

    /// Total degree of a word.
    pub fn word_degree(&self, w: &[Gen]) -> Degree {
        w.iter().map(|&g| self.degree(g)).sum()
    }

    /// Degree of a homogeneous combination, or `None` if it is zero or mixed.
    pub fn homogeneous_degree(&self, x: &TensorElement) -> Option<Degree> {
        let mut degrees = x.keys().map(|w| self.word_degree(&w.0));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// All words of length `len`, in lexicographic order.
    pub fn words(&self, len: usize) -> Vec<Word> {
        let dim = self.dim();
        if len > 0 && dim == 0 {
            return Vec::new();
        }
        let total = dim.checked_pow(len as u32).expect("word count overflow");
        let mut out = Vec::with_capacity(total);
        let mut cur = vec![0; len];
        for _ in 0..total {
            out.push(Word(cur.clone()));
            for pos in (0..len).rev() {
                cur[pos] += 1;
                if cur[pos] < dim {
                    break;
                }
                cur[pos] = 0;
            }
        }
        out
    }

    /// All words of length at most `max_len`, in (length, lex) order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        (0..=max_len).flat_map(|l| self.words(l)).collect()
    }

    pub fn render_word(&self, w: &[Gen]) -> String {
        let names: Vec<&str> = w.iter().map(|&g| self.name(g)).collect();
        format!("[{}]", names.join(", "))
    }

    /// Renders a combination with words in (length, lex) order.
    pub fn render_tensor(&self, x: &TensorElement) -> String {
        render_terms(x.iter().map(|(w, c)| (self.render_word(&w.0), c)))
    }

    pub fn render_vector(&self, x: &VElement) -> String {
        render_terms(x.iter().map(|(&g, c)| (self.name(g).to_string(), c)))
    }
}

fn render_terms<'a>(terms: impl Iterator<Item = (String, &'a Rational)>) -> String {
    let parts: Vec<String> = terms.map(|(k, c)| format!("{c} {k}")).collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// A permutation of `{0, …, n-1}`; the factor in position `i` moves to
/// position `images[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &Permutation) -> Result<Permutation> {
        if self.len() != first.len() {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                found: first.len(),
            });
        }
        Ok(Permutation {
            images: first.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// Pairs `(p, q)` with `p < q` and `σ(p) > σ(q)`.
    pub fn inversions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |p| {
            ((p + 1)..n)
                .filter(move |&q| self.images[p] > self.images[q])
                .map(move |q| (p, q))
        })
    }

    /// Every permutation of `n` letters, in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            let n = used.len();
            if prefix.len() == n {
                out.push(Permutation {
                    images: prefix.clone(),
                });
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    prefix.push(i);
                    extend(prefix, used, out);
                    prefix.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        extend(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }
}

/// `(-1)^κ` with `κ = Σ |v_p||v_q|` over the inversions of `σ`.
pub fn koszul_sign(degrees: &[Degree], sigma: &Permutation) -> Result<Sign> {
    if degrees.len() != sigma.len() {
        return Err(Error::SizeMismatch {
            expected: sigma.len(),
            found: degrees.len(),
        });
    }
    let kappa: i64 = sigma
        .inversions()
        .map(|(p, q)| degrees[p] * degrees[q])
        .sum();
    Ok(Sign::from_exponent(kappa))
}

/// Moves the `i`-th factor to position `σ(i)` and returns the Koszul sign.
pub fn permute_tensor<T: Clone>(
    sigma: &Permutation,
    items: &[T],
    degrees: &[Degree],
) -> Result<(Sign, Vec<T>)> {
    if items.len() != sigma.len() {
        return Err(Error::SizeMismatch {
            expected: sigma.len(),
            found: items.len(),
        });
    }
    let sign = koszul_sign(degrees, sigma)?;
    let mut out: Vec<Option<T>> = vec![None; items.len()];
    for (i, item) in items.iter().enumerate() {
        out[sigma.image(i)] = Some(item.clone());
    }
    Ok((sign, out.into_iter().map(|x| x.expect("bijection")).collect()))
}

/// A homogeneous multilinear map `V^{⊗a} → V^{⊗b}` evaluated on basis words.
pub trait Multilinear: Sync {
    fn in_arity(&self) -> usize;
    fn out_arity(&self) -> usize;
    fn degree(&self) -> Degree;
    /// Value on a basis word of length `in_arity`.
    fn apply(&self, input: &[Gen]) -> TensorElement;
}

/// `id^{⊗n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Identity(pub usize);

impl Multilinear for Identity {
    fn in_arity(&self) -> usize {
        self.0
    }
    fn out_arity(&self) -> usize {
        self.0
    }
    fn degree(&self) -> Degree {
        0
    }
    fn apply(&self, input: &[Gen]) -> TensorElement {
        TensorElement::basis(Word::from(input))
    }
}

/// Multilinear map stored by structure constants.
///
/// Inputs missing from the table map to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiMap {
    in_arity: usize,
    out_arity: usize,
    degree: Degree,
    table: BTreeMap<Word, TensorElement>,
}

impl MultiMap {
    pub fn zero(in_arity: usize, out_arity: usize, degree: Degree) -> Self {
        MultiMap {
            in_arity,
            out_arity,
            degree,
            table: BTreeMap::new(),
        }
    }

    /// Builds a map from a table, checking word lengths, generator indices
    /// and homogeneity.
    pub fn from_table(
        space: &GradedSpace,
        name: &str,
        in_arity: usize,
        out_arity: usize,
        degree: Degree,
        table: BTreeMap<Word, TensorElement>,
    ) -> Result<Self> {
        let mut map = MultiMap::zero(in_arity, out_arity, degree);
        for (input, value) in table {
            if input.len() != in_arity {
                return Err(Error::ArityMismatch {
                    expected: in_arity,
                    found: input.len(),
                });
            }
            for &g in &input.0 {
                space.check_gen(g)?;
            }
            let expected = space.word_degree(&input.0) + degree;
            for (out, _) in &value {
                if out.len() != out_arity {
                    return Err(Error::ArityMismatch {
                        expected: out_arity,
                        found: out.len(),
                    });
                }
                for &g in &out.0 {
                    space.check_gen(g)?;
                }
                let found = space.word_degree(&out.0);
                if found != expected {
                    return Err(Error::Inhomogeneous {
                        map: name.to_string(),
                        degree,
                        detail: format!(
                            "{} has degree {} but {} has degree {}",
                            space.render_word(&input.0),
                            space.word_degree(&input.0),
                            space.render_word(&out.0),
                            found
                        ),
                    });
                }
            }
            map.insert_unchecked(input, value);
        }
        Ok(map)
    }

    /// Tabulates `f` on every basis word of length `in_arity`.
    pub fn from_fn<F>(
        space: &GradedSpace,
        name: &str,
        in_arity: usize,
        out_arity: usize,
        degree: Degree,
        f: F,
    ) -> Result<Self>
    where
        F: Fn(&[Gen]) -> Result<TensorElement> + Sync,
    {
        use rayon::prelude::*;
        let words = space.words(in_arity);
        let values: Vec<(Word, TensorElement)> = words
            .into_par_iter()
            .map(|w| f(&w.0).map(|v| (w, v)))
            .collect::<Result<_>>()?;
        MultiMap::from_table(space, name, in_arity, out_arity, degree, values.into_iter().collect())
    }

    /// The identity `V^{⊗n} → V^{⊗n}` as a table.
    pub fn identity(space: &GradedSpace, n: usize) -> Self {
        let mut map = MultiMap::zero(n, n, 0);
        for w in space.words(n) {
            map.insert_unchecked(w.clone(), TensorElement::basis(w));
        }
        map
    }

    fn insert_unchecked(&mut self, input: Word, value: TensorElement) {
        if value.is_zero() {
            self.table.remove(&input);
        } else {
            self.table.insert(input, value);
        }
    }

    pub fn eval(&self, input: &[Gen]) -> TensorElement {
        debug_assert_eq!(input.len(), self.in_arity);
        self.table
            .get(&Word::from(input))
            .cloned()
            .unwrap_or_default()
    }

    /// Value on a word, read as an element of `V`; requires `out_arity == 1`.
    pub fn eval_v(&self, input: &[Gen]) -> VElement {
        debug_assert_eq!(self.out_arity, 1);
        length_one_part(&self.eval(input))
    }

    /// Linear extension to combinations of words of length `in_arity`.
    pub fn eval_element(&self, x: &TensorElement) -> TensorElement {
        x.map_linear(|w| self.eval(&w.0))
    }

    pub fn table(&self) -> &BTreeMap<Word, TensorElement> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    /// Nonzero entries, for diagnostics.
    pub fn support_size(&self) -> usize {
        self.table.len()
    }

    fn check_shape(&self, other: &MultiMap) -> Result<()> {
        if self.in_arity != other.in_arity || self.out_arity != other.out_arity {
            return Err(Error::ArityMismatch {
                expected: self.in_arity,
                found: other.in_arity,
            });
        }
        if self.degree != other.degree {
            return Err(Error::Inhomogeneous {
                map: "sum".into(),
                degree: self.degree,
                detail: format!("summand of degree {}", other.degree),
            });
        }
        Ok(())
    }

    /// `self + factor · other`.
    pub fn add_scaled(&self, other: &MultiMap, factor: &Rational) -> Result<MultiMap> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (w, v) in &other.table {
            let mut entry = out.table.remove(w).unwrap_or_default();
            entry.add_scaled(v, factor);
            out.insert_unchecked(w.clone(), entry);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiMap) -> Result<MultiMap> {
        self.add_scaled(other, &-Rational::one())
    }

    /// First input where the two maps differ, with both values.
    pub fn first_difference(&self, other: &MultiMap) -> Option<(Word, TensorElement, TensorElement)> {
        let keys: std::collections::BTreeSet<&Word> =
            self.table.keys().chain(other.table.keys()).collect();
        keys.into_iter().find_map(|w| {
            let a = self.eval(&w.0);
            let b = other.eval(&w.0);
            (a != b).then(|| (w.clone(), a, b))
        })
    }
}

impl Multilinear for MultiMap {
    fn in_arity(&self) -> usize {
        self.in_arity
    }
    fn out_arity(&self) -> usize {
        self.out_arity
    }
    fn degree(&self) -> Degree {
        self.degree
    }
    fn apply(&self, input: &[Gen]) -> TensorElement {
        self.eval(input)
    }
}

/// `(f_1 ⊗ … ⊗ f_r)(x_1 ⊗ … ⊗ x_r)` with sign `(-1)^{Σ_{a<b} |f_b||x_a|}`,
/// where the word is cut into consecutive blocks `x_a` of length `in_arity(f_a)`.
pub fn apply_map_tensor(
    space: &GradedSpace,
    maps: &[&dyn Multilinear],
    word: &[Gen],
) -> Result<TensorElement> {
    let total: usize = maps.iter().map(|f| f.in_arity()).sum();
    if total != word.len() {
        return Err(Error::ArityMismatch {
            expected: total,
            found: word.len(),
        });
    }
    let mut exponent: i64 = 0;
    let mut prefix_degree: Degree = 0;
    let mut acc = TensorElement::basis(Word::empty());
    let mut pos = 0;
    for f in maps {
        let block = &word[pos..pos + f.in_arity()];
        pos += f.in_arity();
        exponent += f.degree() * prefix_degree;
        prefix_degree += space.word_degree(block);
        let value = f.apply(block);
        if value.is_zero() {
            return Ok(TensorElement::zero());
        }
        acc = tensor(&acc, &value);
    }
    acc.scale(&Sign::from_exponent(exponent).to_rational());
    Ok(acc)
}

/// Linear extension of [`apply_map_tensor`].
pub fn apply_map_tensor_element(
    space: &GradedSpace,
    maps: &[&dyn Multilinear],
    x: &TensorElement,
) -> Result<TensorElement> {
    let mut out = TensorElement::zero();
    for (w, c) in x {
        out.add_scaled(&apply_map_tensor(space, maps, &w.0)?, c);
    }
    Ok(out)
}

/// Structure constants of `outer ∘ (inner_1 ⊗ … ⊗ inner_r)`.
pub fn compose_multimap(
    space: &GradedSpace,
    outer: &dyn Multilinear,
    inners: &[&dyn Multilinear],
) -> Result<MultiMap> {
    let mid: usize = inners.iter().map(|f| f.out_arity()).sum();
    if mid != outer.in_arity() {
        return Err(Error::ArityMismatch {
            expected: outer.in_arity(),
            found: mid,
        });
    }
    let in_arity: usize = inners.iter().map(|f| f.in_arity()).sum();
    let degree = outer.degree() + inners.iter().map(|f| f.degree()).sum::<Degree>();
    MultiMap::from_fn(space, "composite", in_arity, outer.out_arity(), degree, |w| {
        let inner = apply_map_tensor(space, inners, w)?;
        Ok(inner.map_linear(|u| outer.apply(&u.0)))
    })
}
