//! Exact-arithmetic engine for connected cochain DG algebras.
//!
//! Everything here is computed over the rationals with arbitrary precision:
//! no floats, no finite-field shortcuts, no probabilistic answers except the
//! documented Schwartz-Zippel fallback for very large Frobenius Gram
//! determinants.
//!
//! The pipeline, bottom to top:
//!
//! * [`linalg`] — sparse and dense rational row reduction, kernels, RREF.
//! * [`poly`] — multivariate rational polynomials and symbolic determinants.
//! * [`word`], [`ncpoly`] — words and polynomials in a free algebra.
//! * [`algebra`] — degree-truncated normal forms in `k<x_1,..,x_n>/(relations)`.
//! * [`dg`] — the Leibniz differential, cohomology, and the cohomology algebra.
//! * [`semifree`] — semi-free DG modules, minimal resolutions of the trivial
//!   module, Koszulness and the smoothness certificate.
//! * [`hom`] — the endomorphism Hom-complex of a resolution and its
//!   cohomology, i.e. the Ext-algebra with its multiplication table.
//! * [`graded`], [`frobenius`] — finite graded algebras by structure
//!   constants, the graded (symmetric) Frobenius tests, Nakayama matrix.
//! * [`classify`] — the Koszul / smooth / Gorenstein / Calabi-Yau verdict.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod classify;
pub mod dg;
pub mod error;
pub mod frobenius;
pub mod graded;
pub mod hom;
pub mod linalg;
pub mod ncpoly;
pub mod poly;
pub mod semifree;
pub mod word;

pub use algebra::{AlgebraTables, DegreeBasis, Presentation};
// TODO-scaffold pub use classify::{classify, classify_graded, ClassificationVerdict, SmoothnessVerdict};
// TODO-scaffold pub use dg::{CohomologyAlgebra, CohomologyResult, DgAlgebra, DgTables, PresentationCandidate};
pub use error::Error;
// TODO-scaffold pub use frobenius::{FrobeniusReport, SymmetricReport};
// TODO-scaffold pub use graded::FiniteGradedAlgebra;
// TODO-scaffold pub use hom::{ExtAlgebra, HomCohomology};
pub use linalg::{QMatrix, Rational};
pub use ncpoly::NcPoly;
pub use poly::MultiPoly;
// TODO-scaffold pub use semifree::{SemiFreeModule, SmoothnessReport};
pub use word::{GeneratorSet, Word};
