//! Exact construction and verification of A-infinity, multibrace and
//! B-infinity structures on truncated tensor coalgebras.

pub mod algebra;
pub mod corpus;
pub mod error;
pub mod exact;
pub mod graded;
pub mod infbialg;
pub mod laws;
pub mod lincomb;
pub mod structures;
pub mod tcoalg;
pub mod twisting;
pub mod underlying;

pub use error::{Error, Result};
pub use exact::{kernel_basis, parse_rational, rank, rat, ratio, Rational, SparseMatrix};
pub use graded::{
    apply_map_tensor, compose_multimap, koszul_sign, permute_tensor, Degree, Gen, GradedSpace,
    Identity, MultiMap, Multilinear, Permutation, Sign, TensorElement, VElement, Word,
};
pub use laws::{Counterexample, LawReport, Outcome, Verdict};
pub use lincomb::LinComb;
pub use tcoalg::{
    CoalgebraMap, Coderivation, FiniteCoalgebra, ProductMap, Truncation, TruncationPolicy,
};
pub use infbialg::{InfBialgebra, TwoAssocDiffBialgebra};
pub use structures::{AInfinity, BInfinity, Multibrace};
pub use twisting::Twisting;
pub use underlying::{TwoAssocDiffAlgebra, Underlying};
