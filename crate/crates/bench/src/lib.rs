//! Fixtures shared by the benchmarks in `benches/`.

use binfty_core::corpus;
use binfty_core::TwoAssocDiffAlgebra;

/// The corpus algebras by name.
pub fn algebras() -> Vec<(&'static str, TwoAssocDiffAlgebra)> {
    corpus::all()
        .expect("corpus builds")
        .into_iter()
        .map(|e| (e.name, e.algebra))
        .collect()
}
