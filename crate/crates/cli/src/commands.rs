//! Subcommand implementations.

use std::collections::BTreeMap;

use binfty_core::corpus;
use binfty_core::infbialg::{check_unital_infinitesimal, enveloping, prim_b_infinity};
use binfty_core::structures::{
    check_a_infinity, check_compatibility, check_multibrace, DEFAULT_A_INFINITY_CAP,
    DEFAULT_COMPATIBILITY_CAP, DEFAULT_MULTIBRACE_CAP,
};
use binfty_core::tcoalg::TruncationPolicy;
use binfty_core::underlying::{check_defining_identities, underlying_b_infinity};
use binfty_core::{BInfinity, Error, Multibrace, TensorElement, TwoAssocDiffAlgebra, Word};

use crate::format::{AlgebraFile, InputError, Parsed};
use crate::report::{structure_sections, Report};

/// Why a command stopped: bad input (exit 2) or a law violation or
/// inconsistency found while computing (exit 1).
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Violation(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::LawViolation { .. } | Error::NotConilpotent { .. } | Error::ClosureFailure(_) => {
                Failure::Violation(e.to_string())
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

pub type Outcome = Result<Report, Failure>;

/// Laws selectable with `--laws`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Law {
    AInfinity,
    Multibrace,
    Compatibility,
    UnitalInfinitesimal,
}

impl Law {
    pub fn parse(name: &str) -> Result<Law, Failure> {
        match name {
            "ainf" => Ok(Law::AInfinity),
            "mb" => Ok(Law::Multibrace),
            "compat" => Ok(Law::Compatibility),
            "uib" => Ok(Law::UnitalInfinitesimal),
            other => Err(Failure::Input(format!("unknown law `{other}` (expected ainf, mb, compat, uib)"))),
        }
    }
}

fn load(bytes: &[u8]) -> Result<Parsed, Failure> {
    let text = std::str::from_utf8(bytes).map_err(|_| Failure::Input("input is not UTF-8".into()))?;
    Ok(AlgebraFile::from_json(text)?.parse()?)
}

fn policy(max_arity: usize, cap: usize) -> Result<TruncationPolicy, Failure> {
    let p = TruncationPolicy::new(cap, cap).map_err(|e| Failure::Input(e.to_string()))?;
    if max_arity == 0 || max_arity > p.arity_cap {
        return Err(Failure::Input(format!(
            "--max-arity {max_arity} must lie between 1 and the word cap {cap}"
        )));
    }
    Ok(p)
}

pub fn validate(bytes: &[u8]) -> Outcome {
    let parsed = load(bytes)?;
    let mut report = Report::new("validate", bytes);
    match &parsed {
        Parsed::Algebra(alg) => report.law(alg.validate()?),
        Parsed::Bialgebra(b) => {
            for r in b.validate()? {
                report.law(r);
            }
        }
    }
    Ok(report)
}

pub fn derive(bytes: &[u8], max_arity: usize, cap: usize) -> Outcome {
    policy(max_arity, cap)?;
    let parsed = load(bytes)?;
    let alg = parsed.algebra();
    let s = underlying_b_infinity(alg, max_arity)?;
    let mut report = Report::new(&format!("derive --max-arity {max_arity}"), bytes);
    structure_sections(&mut report, &s, max_arity);
    report.law(check_defining_identities(alg, &s, max_arity)?);
    Ok(report)
}

/// Adds `k` to `m_{1,1}(1 ⊗ k)`, where `k` is the first generator with a
/// nonzero differential, or the unit when the differential vanishes.
pub fn perturb_m11(alg: &TwoAssocDiffAlgebra, s: &BInfinity) -> Result<BInfinity, Failure> {
    let sp = alg.space();
    let unit = alg.unit();
    let k = (0..sp.dim())
        .find(|&g| !alg.diff().eval(&[g]).is_zero())
        .unwrap_or(unit);
    let mut maps = s.b.maps().clone();
    let bump = BTreeMap::from([(Word(vec![unit, k]), TensorElement::basis(Word::letter(k)))]);
    let bump = binfty_core::MultiMap::from_table(sp, "perturbation", 2, 1, 0, bump)?;
    let m11 = s.b.m(1, 1).add_scaled(&bump, &binfty_core::rat(1))?;
    maps.insert((1, 1), m11);
    let b = Multibrace::new(sp.clone(), maps, s.b.cap())?;
    Ok(BInfinity::new(s.a.clone(), b)?)
}

pub fn check(bytes: &[u8], laws: &[String], max_arity: Option<usize>, cap: usize, perturb: Option<&str>) -> Outcome {
    let mut selected: Vec<Law> = laws.iter().map(|l| Law::parse(l.trim())).collect::<Result<_, _>>()?;
    selected.sort();
    selected.dedup();
    if let Some(n) = max_arity {
        policy(n, cap)?;
    } else {
        TruncationPolicy::new(cap, cap).map_err(|e| Failure::Input(e.to_string()))?;
    }
    let perturb = match perturb {
        None => false,
        Some("m11") => true,
        Some(other) => return Err(Failure::Input(format!("unknown perturbation `{other}` (expected m11)"))),
    };
    let parsed = load(bytes)?;
    if selected.is_empty() {
        selected = vec![Law::AInfinity, Law::Multibrace, Law::Compatibility];
        if matches!(parsed, Parsed::Bialgebra(_)) {
            selected.push(Law::UnitalInfinitesimal);
        }
    }
    if selected.contains(&Law::UnitalInfinitesimal) && !matches!(parsed, Parsed::Bialgebra(_)) {
        return Err(Failure::Input("law `uib` needs a file with a coproduct".into()));
    }
    let a_cap = max_arity.unwrap_or(DEFAULT_A_INFINITY_CAP).min(cap);
    let mb_cap = max_arity.unwrap_or(DEFAULT_MULTIBRACE_CAP).min(cap);
    let compat_cap = max_arity.unwrap_or(DEFAULT_COMPATIBILITY_CAP).min(cap);
    let structure_cap = a_cap.max(mb_cap).max(compat_cap);
    let alg = parsed.algebra();
    let mut command = format!("check --laws {}", names(&selected));
    if let Some(n) = max_arity {
        command.push_str(&format!(" --max-arity {n}"));
    }
    let needs_structure = selected.iter().any(|l| *l != Law::UnitalInfinitesimal);
    let mut s = None;
    if needs_structure {
        let derived = underlying_b_infinity(alg, structure_cap).map_err(|e| match e {
            Error::Truncated { .. } => Failure::Input(format!("{e}; lower --max-arity")),
            other => other.into(),
        })?;
        s = Some(if perturb { perturb_m11(alg, &derived)? } else { derived });
    }
    if perturb {
        command.push_str(" --perturb m11");
    }
    let mut report = Report::new(&command, bytes);
    for law in &selected {
        let r = match law {
            Law::AInfinity => check_a_infinity(&s.as_ref().expect("derived").a, a_cap)?,
            Law::Multibrace => check_multibrace(&s.as_ref().expect("derived").b, mb_cap)?,
            Law::Compatibility => check_compatibility(s.as_ref().expect("derived"), compat_cap)?,
            Law::UnitalInfinitesimal => match &parsed {
                Parsed::Bialgebra(b) => check_unital_infinitesimal(&b.inf_bialgebra())?,
                Parsed::Algebra(_) => unreachable!("rejected above"),
            },
        };
        report.law(r);
    }
    Ok(report)
}

fn names(laws: &[Law]) -> String {
    laws.iter()
        .map(|l| match l {
            Law::AInfinity => "ainf",
            Law::Multibrace => "mb",
            Law::Compatibility => "compat",
            Law::UnitalInfinitesimal => "uib",
        })
        .collect::<Vec<_>>()
        .join(",")
}

pub fn primitives(bytes: &[u8], cap: usize) -> Outcome {
    if cap == 0 {
        return Err(Failure::Input("--cap must be positive".into()));
    }
    let Parsed::Bialgebra(b) = load(bytes)? else {
        return Err(Failure::Input("primitives needs a file with a coproduct".into()));
    };
    let prim = prim_b_infinity(&b, cap)?;
    let sp = b.coalgebra().space();
    let mut report = Report::new(&format!("primitives --cap {cap}"), bytes);
    let basis_lines = if prim.basis.is_empty() {
        vec!["(empty)".to_string()]
    } else {
        let psp = prim.structure.space();
        prim.basis
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let x: binfty_core::VElement = v.iter().enumerate().map(|(g, c)| (g, c.clone())).collect();
                format!("{} = {}", psp.name(k), sp.render_vector(&x))
            })
            .collect()
    };
    report.section("primitive basis", basis_lines);
    report.law(prim.closure.clone());
    structure_sections(&mut report, &prim.structure, cap);
    Ok(report)
}

pub fn examples_list() -> Result<String, Failure> {
    let mut out = String::new();
    for e in corpus::all()? {
        out.push_str(&format!("{:<8} {}\n", e.name, e.description));
    }
    Ok(out)
}

/// The JSON file of a built-in example, or of its enveloping bialgebra on
/// words of length at most `envelope`.
pub fn examples_emit(name: &str, envelope: Option<usize>) -> Result<String, Failure> {
    let example = corpus::by_name(name)?.ok_or_else(|| Failure::Input(format!("unknown example `{name}`")))?;
    let file = match envelope {
        None => AlgebraFile::from_algebra(example.name, &example.algebra),
        Some(cap) => {
            let s = underlying_b_infinity(&example.algebra, cap)?;
            let u = enveloping(&s, cap)?;
            AlgebraFile::from_bialgebra(&format!("U({})", example.name), &u)
        }
    };
    Ok(file.to_json())
}
