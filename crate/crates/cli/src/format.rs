//! JSON algebra definition files.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use binfty_core::tcoalg::{FiniteCoalgebra, Truncation};
use binfty_core::{
    parse_rational, GradedSpace, LinComb, MultiMap, Rational, TensorElement, TwoAssocDiffAlgebra,
    TwoAssocDiffBialgebra, Word,
};

/// A problem with an input file, with the place it occurred.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn at(location: impl std::fmt::Display, detail: impl std::fmt::Display) -> InputError {
    InputError(format!("{location}: {detail}"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDecl {
    pub name: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    /// Exact rational `"p"` or `"p/q"`.
    pub coeff: String,
    pub word: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub input: Vec<String>,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationDecl {
    pub cap: usize,
    pub weights: BTreeMap<String, usize>,
}

/// Structure constants of `•`, `∘`, `∂` and optionally `Δ`, `ε`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub generators: Vec<GeneratorDecl>,
    pub unit: Option<String>,
    pub bullet: Vec<Entry>,
    pub circ: Vec<Entry>,
    pub diff: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coproduct: Option<Vec<Entry>>,
    /// Values of the counit; defaults to `1` on the unit and `0` elsewhere.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<TruncationDecl>,
}

/// A parsed file: an algebra, possibly with a coproduct.
pub enum Parsed {
    Algebra(TwoAssocDiffAlgebra),
    Bialgebra(TwoAssocDiffBialgebra),
}

impl Parsed {
    pub fn algebra(&self) -> &TwoAssocDiffAlgebra {
        match self {
            Parsed::Algebra(a) => a,
            Parsed::Bialgebra(b) => b.algebra(),
        }
    }
}

fn coefficient(text: &str, location: &str) -> Result<Rational, InputError> {
    parse_rational(text).ok_or_else(|| at(location, format!("`{text}` is not an exact rational p/q")))
}

fn lookup(space: &GradedSpace, name: &str, location: &str) -> Result<usize, InputError> {
    space
        .lookup(name)
        .map_err(|_| at(location, format!("unknown generator `{name}`")))
}

fn table(
    space: &GradedSpace,
    label: &str,
    entries: &[Entry],
    arity: usize,
    out_arity: usize,
    degree: i64,
) -> Result<MultiMap, InputError> {
    let mut t: BTreeMap<Word, TensorElement> = BTreeMap::new();
    for (k, e) in entries.iter().enumerate() {
        let loc = format!("{label}[{k}]");
        if e.input.len() != arity {
            return Err(at(&loc, format!("input has {} generators, expected {arity}", e.input.len())));
        }
        let key = Word(e.input.iter().map(|n| lookup(space, n, &loc)).collect::<Result<_, _>>()?);
        if t.contains_key(&key) {
            return Err(at(&loc, "duplicate input"));
        }
        let mut value = TensorElement::zero();
        for (m, term) in e.terms.iter().enumerate() {
            let tloc = format!("{loc}.terms[{m}]");
            if term.word.len() != out_arity {
                return Err(at(&tloc, format!("output has {} generators, expected {out_arity}", term.word.len())));
            }
            let w = Word(term.word.iter().map(|n| lookup(space, n, &tloc)).collect::<Result<_, _>>()?);
            value.add_term(w, coefficient(&term.coeff, &tloc)?);
        }
        t.insert(key, value);
    }
    MultiMap::from_table(space, label, arity, out_arity, degree, t).map_err(|e| at(label, e))
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        serde_json::from_str(text).map_err(|e| InputError(format!("line {} column {}: {e}", e.line(), e.column())))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn parse(&self) -> Result<Parsed, InputError> {
        let unit = self.unit.as_deref().ok_or_else(|| at("unit", "missing unit designation"))?;
        let space = GradedSpace::new(self.generators.iter().map(|g| (g.name.clone(), g.degree)), Some(unit))
            .map_err(|e| at("generators", e))?;
        let bullet = table(&space, "bullet", &self.bullet, 2, 1, 0)?;
        let circ = table(&space, "circ", &self.circ, 2, 1, 0)?;
        let diff = table(&space, "diff", &self.diff, 1, 1, -1)?;
        let mut alg = TwoAssocDiffAlgebra::new(space.clone(), bullet, circ, diff).map_err(|e| at("algebra", e))?;
        if let Some(t) = &self.truncation {
            let mut weights = vec![0; space.dim()];
            for (name, w) in &t.weights {
                weights[lookup(&space, name, "truncation.weights")?] = *w;
            }
            if t.weights.len() != space.dim() {
                return Err(at("truncation.weights", "every generator needs a weight"));
            }
            alg = alg
                .with_truncation(Truncation { weights, cap: t.cap })
                .map_err(|e| at("truncation", e))?;
        }
        let Some(coproduct) = &self.coproduct else {
            if self.counit.is_some() {
                return Err(at("counit", "a counit needs a coproduct"));
            }
            return Ok(Parsed::Algebra(alg));
        };
        let d = table(&space, "coproduct", coproduct, 1, 2, 0)?;
        let mut counit = vec![Rational::from_integer(0.into()); space.dim()];
        match &self.counit {
            Some(values) => {
                for (name, c) in values {
                    let loc = format!("counit.{name}");
                    counit[lookup(&space, name, &loc)?] = coefficient(c, &loc)?;
                }
            }
            None => counit[space.unit().expect("unit")] = Rational::from_integer(1.into()),
        }
        let coproduct: Vec<LinComb<(usize, usize)>> = (0..space.dim())
            .map(|g| d.eval(&[g]).iter().map(|(w, c)| ((w.0[0], w.0[1]), c.clone())).collect())
            .collect();
        let c = FiniteCoalgebra::new(space, counit, coproduct).map_err(|e| at("coproduct", e))?;
        let b = TwoAssocDiffBialgebra::new(alg, c).map_err(|e| at("bialgebra", e))?;
        Ok(Parsed::Bialgebra(b))
    }

    /// The file describing an algebra, listing nonzero entries in word order.
    pub fn from_algebra(name: &str, alg: &TwoAssocDiffAlgebra) -> Self {
        let sp = alg.space();
        let truncation = alg.truncation().map(|t| TruncationDecl {
            cap: t.cap,
            weights: (0..sp.dim()).map(|g| (sp.name(g).to_string(), t.weights[g])).collect(),
        });
        AlgebraFile {
            name: name.to_string(),
            generators: sp
                .generators()
                .iter()
                .map(|g| GeneratorDecl {
                    name: g.name.clone(),
                    degree: g.degree,
                })
                .collect(),
            unit: Some(sp.name(alg.unit()).to_string()),
            bullet: entries(sp, alg.bullet()),
            circ: entries(sp, alg.circ()),
            diff: entries(sp, alg.diff()),
            coproduct: None,
            counit: None,
            truncation,
        }
    }

    pub fn from_bialgebra(name: &str, b: &TwoAssocDiffBialgebra) -> Self {
        let mut file = AlgebraFile::from_algebra(name, b.algebra());
        let c = b.coalgebra();
        let sp = c.space();
        file.coproduct = Some(
            (0..sp.dim())
                .filter(|&g| !c.coproduct_of(g).is_zero())
                .map(|g| Entry {
                    input: vec![sp.name(g).to_string()],
                    terms: c
                        .coproduct_of(g)
                        .iter()
                        .map(|((a, b), k)| Term {
                            coeff: k.to_string(),
                            word: vec![sp.name(*a).to_string(), sp.name(*b).to_string()],
                        })
                        .collect(),
                })
                .collect(),
        );
        let default_counit = (0..sp.dim()).all(|g| {
            let expected = if g == c.unit() { 1 } else { 0 };
            *c.counit_of(g) == Rational::from_integer(expected.into())
        });
        if !default_counit {
            file.counit = Some(
                (0..sp.dim())
                    .filter(|&g| !num_is_zero(c.counit_of(g)))
                    .map(|g| (sp.name(g).to_string(), c.counit_of(g).to_string()))
                    .collect(),
            );
        }
        file
    }
}

fn num_is_zero(x: &Rational) -> bool {
    *x == Rational::from_integer(0.into())
}

fn entries(sp: &GradedSpace, m: &MultiMap) -> Vec<Entry> {
    m.table()
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(w, v)| Entry {
            input: w.0.iter().map(|&g| sp.name(g).to_string()).collect(),
            terms: v
                .iter()
                .map(|(o, c)| Term {
                    coeff: c.to_string(),
                    word: o.0.iter().map(|&g| sp.name(g).to_string()).collect(),
                })
                .collect(),
        })
        .collect()
}
