//! Exact rational scalars and sparse linear algebra over the rationals.
//!
//! Everything here is exact: elimination works on [`Rational`] entries and the
//! results are canonical (reduced row echelon form), so identical inputs give
//! identical outputs down to the last coefficient.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"` with integer `p`, `q` and `q != 0`.
///
/// Decimal and exponent notation are rejected so that no floating point value
/// can sneak into an exact computation.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let valid = |s: &str| {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num) || !valid(den) {
        return None;
    }
    let num = BigInt::from_str(num).ok()?;
    let den = BigInt::from_str(den).ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Sparse matrix with exact entries. Zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::new(n, n);
        for i in 0..n {
            m.entries.insert((i, i), Rational::one());
        }
        m
    }

    /// Builds a matrix from dense rows; all rows must have the same length.
    pub fn from_dense(rows: &[Vec<Rational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::new(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::SizeMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone())?;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) -> Result<()> {
        if row >= self.rows {
            return Err(Error::SizeMismatch {
                expected: self.rows,
                found: row,
            });
        }
        if col >= self.cols {
            return Err(Error::SizeMismatch {
                expected: self.cols,
                found: col,
            });
        }
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
        Ok(())
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::SizeMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.rows];
        for (&(r, c), x) in &self.entries {
            out[r] += x * &v[c];
        }
        Ok(out)
    }

    fn sparse_rows(&self) -> Vec<BTreeMap<usize, Rational>> {
        let mut rows = vec![BTreeMap::new(); self.rows];
        for (&(r, c), x) in &self.entries {
            rows[r].insert(c, x.clone());
        }
        rows
    }
}

/// Incrementally maintained reduced row echelon form.
///
/// Each stored row has a leading 1 at its pivot column and zeros in every other
/// pivot column. Since the RREF of a row space is unique, the result does not
/// depend on the order rows are fed in.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `row` against the current pivots without inserting it.
    pub fn reduce(&self, mut row: BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        let hits: Vec<usize> = row
            .keys()
            .copied()
            .filter(|c| self.pivots.contains_key(c))
            .collect();
        for pc in hits {
            let factor = match row.get(&pc) {
                Some(f) => f.clone(),
                None => continue,
            };
            for (c, x) in &self.pivots[&pc] {
                let entry = row.entry(*c).or_insert_with(Rational::zero);
                *entry -= &factor * x;
                if entry.is_zero() {
                    row.remove(c);
                }
            }
        }
        row
    }

    /// Adds a row; returns `true` when it increased the rank.
    pub fn insert(&mut self, row: BTreeMap<usize, Rational>) -> bool {
        let mut row = self.reduce(row);
        let Some((&lead, lead_val)) = row.iter().next() else {
            return false;
        };
        let inv = lead_val.recip();
        for x in row.values_mut() {
            *x *= &inv;
        }
        for prow in self.pivots.values_mut() {
            if let Some(f) = prow.get(&lead).cloned() {
                for (c, x) in &row {
                    let entry = prow.entry(*c).or_insert_with(Rational::zero);
                    *entry -= &f * x;
                    if entry.is_zero() {
                        prow.remove(c);
                    }
                }
            }
        }
        self.pivots.insert(lead, row);
        true
    }

    /// Whether `row` lies in the current row space.
    pub fn contains(&self, row: BTreeMap<usize, Rational>) -> bool {
        self.reduce(row).is_empty()
    }

    /// The RREF rows as dense vectors of length `cols`, ordered by pivot.
    pub fn dense_rows(&self, cols: usize) -> Vec<Vec<Rational>> {
        self.pivots
            .values()
            .map(|row| densify(row, cols))
            .collect()
    }
}

fn densify(row: &BTreeMap<usize, Rational>, cols: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); cols];
    for (c, x) in row {
        v[*c] = x.clone();
    }
    v
}

/// Converts a dense vector to sparse form.
pub fn sparsify(v: &[Rational]) -> BTreeMap<usize, Rational> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(c, x)| (c, x.clone()))
        .collect()
}

fn echelon_of(m: &SparseMatrix) -> Echelon {
    let mut ech = Echelon::new();
    for row in m.sparse_rows() {
        if !row.is_empty() {
            ech.insert(row);
        }
    }
    ech
}

/// Rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    echelon_of(m).rank()
}

/// Basis of the right null space `{v : m v = 0}`.
///
/// The basis is returned in reduced echelon form: each vector has leading
/// entry 1 and the vectors are sorted by the position of that entry.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vec<Rational>> {
    let ech = echelon_of(m);
    let mut kernel = Echelon::new();
    for free in 0..m.cols {
        if ech.pivots.contains_key(&free) {
            continue;
        }
        let mut v = BTreeMap::new();
        v.insert(free, Rational::one());
        for (&pc, prow) in &ech.pivots {
            if let Some(x) = prow.get(&free) {
                v.insert(pc, -x.clone());
            }
        }
        kernel.insert(v);
    }
    kernel.dense_rows(m.cols)
}

/// Reduced echelon basis of the span of `vectors` (each of length `cols`).
pub fn span_basis(vectors: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(sparsify(v));
    }
    ech.dense_rows(cols)
}
