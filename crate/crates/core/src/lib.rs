//! The sp(4,R) boson algebra on a truncated two-mode Fock space, its tilting
//! (displacement) transformations, and exact spectra of the general two-level
//! two-mode interaction Hamiltonian, each checked against direct diagonalization.

pub mod algebra;
pub mod error;
pub mod fock;
pub mod hamiltonian;
pub mod linalg;
pub mod models;
pub mod report;
pub mod verify;
pub mod tilt;

pub use algebra::{build_generators, Auxiliary, Coefficients, Generator, GeneratorSet};
pub use error::{Error, Result};
pub use hamiltonian::{ModelParams, SpectrumTable};
pub use fock::{build_basis, interior_projector, FockBasis, Interior, OperatorMatrix};
pub use models::{model_spectrum, preset, ModelName, ModelPreset};
pub use linalg::{ComplexMatrix, SparseMatrix, C64};
pub use report::VerificationReport;
pub use tilt::{FormulaMode, TiltKind, TiltParameters};
