//! Verdict bookkeeping for exhaustive law checks.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;

/// A basis input on which the two sides of a law differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {} != {}", self.input, self.lhs, self.rhs)
    }
}

/// Result of one case (usually one arity tuple) of a law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub case: String,
    pub passed: bool,
    /// Inputs evaluated, not counting skipped ones.
    pub checked: usize,
    pub skipped: usize,
    pub counterexample: Option<Counterexample>,
}

/// Per-case verdicts for one family of identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub law: String,
    pub verdicts: Vec<Verdict>,
}

impl LawReport {
    pub fn new(law: impl Into<String>) -> Self {
        LawReport {
            law: law.into(),
            verdicts: Vec::new(),
        }
    }

    pub fn push(&mut self, verdict: Verdict) {
        self.verdicts.push(verdict);
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn first_failure(&self) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| !v.passed)
    }

    pub fn checked(&self) -> usize {
        self.verdicts.iter().map(|v| v.checked).sum()
    }

    /// Adds one verdict whose outcome was decided without enumeration.
    pub fn push_fact(&mut self, case: impl Into<String>, holds: bool, detail: Option<Counterexample>) {
        self.verdicts.push(Verdict {
            case: case.into(),
            passed: holds,
            checked: 1,
            skipped: 0,
            counterexample: if holds { None } else { detail },
        });
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.verdicts {
            let status = if v.passed { "pass" } else { "FAIL" };
            write!(f, "{} {} {}: {} checked", status, self.law, v.case, v.checked)?;
            if v.skipped > 0 {
                write!(f, ", {} skipped", v.skipped)?;
            }
            if let Some(c) = &v.counterexample {
                write!(f, ", {c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Outcome of a law on one input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    /// The input lies outside the region where both sides are defined.
    Skipped,
    Fails(Counterexample),
}

impl Outcome {
    /// Compares two rendered sides.
    pub fn compare<T: PartialEq>(
        lhs: &T,
        rhs: &T,
        render: impl FnOnce() -> Counterexample,
    ) -> Outcome {
        if lhs == rhs {
            Outcome::Holds
        } else {
            Outcome::Fails(render())
        }
    }
}

/// Evaluates `check` on every input in parallel; the reported counterexample
/// is the first failing input in the given order.
pub fn run_case<T, F>(case: impl Into<String>, inputs: &[T], check: F) -> Result<Verdict>
where
    T: Sync,
    F: Fn(&T) -> Result<Outcome> + Sync,
{
    let outcomes: Vec<Outcome> = inputs.par_iter().map(&check).collect::<Result<_>>()?;
    let mut checked = 0;
    let mut skipped = 0;
    let mut counterexample = None;
    for o in outcomes {
        match o {
            Outcome::Holds => checked += 1,
            Outcome::Skipped => skipped += 1,
            Outcome::Fails(c) => {
                checked += 1;
                if counterexample.is_none() {
                    counterexample = Some(c);
                }
            }
        }
    }
    Ok(Verdict {
        case: case.into(),
        passed: counterexample.is_none(),
        checked,
        skipped,
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_in_input_order() {
        let inputs: Vec<u32> = (0..100).collect();
        let v = run_case("n", &inputs, |&x| {
            Ok(if x % 7 == 3 {
                Outcome::Fails(Counterexample {
                    input: x.to_string(),
                    lhs: "a".into(),
                    rhs: "b".into(),
                })
            } else if x % 5 == 0 {
                Outcome::Skipped
            } else {
                Outcome::Holds
            })
        })
        .unwrap();
        assert!(!v.passed);
        assert_eq!(v.counterexample.unwrap().input, "3");
        assert_eq!(v.skipped, 17);
        assert_eq!(v.checked, 83);
    }
}
