//! Exact spectral counting for tensor products of positive operators.
//!
//! The eigenvalues of `P_1 ⊗ … ⊗ P_p` are the products of the factor
//! eigenvalues, so the counting function
//!
//! ```text
//! N(λ) = #{ (k_1, …, k_p) : λ_{k_1}^{(1)} ⋯ λ_{k_p}^{(p)} ≤ λ }
//! ```
//!
//! is a generalized Dirichlet divisor count. This crate provides
//!
//! - [`sequence`]: factor eigenvalue models with closed-form counting,
//! - [`zeta`]: real-axis Hurwitz zeta and Laurent data of Dirichlet series,
//! - [`lattice`]: exact lattice counts by several interchangeable methods,
//! - [`asymptotics`]: the asymptotic expansions of `N(λ)` with zeta coefficients,
//! - [`remainder`]: λ-grid experiments and remainder exponent fits,
//! - [`specfile`]: the JSON spec-file format shared with the CLI.
//!
//! ```
//! use wdc_core::{lattice, ProductSpec, SequenceSpec};
//!
//! let id = SequenceSpec::affine_power(1.0, 1.0, 1.0).unwrap();
//! let spec = ProductSpec::new(vec![id.clone(), id]).unwrap();
//! assert_eq!(lattice::count_recursive(&spec, 100.0).unwrap().count, 482);
//! ```

// `!(x > 0.0)` style checks are deliberate: NaN must fail validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod error;
pub mod lattice;
pub mod remainder;
pub mod sequence;
pub mod specfile;
pub mod zeta;

pub use asymptotics::{BCoefficients, ErrorKind, ExpansionTerm, TermExpansion};
pub use error::{Error, Result};
pub use lattice::{ArithmeticMode, CountMethod, CountResult, ProductSpec};
pub use remainder::{FitResult, GridSpec, RemainderRow, RemainderTable};
pub use sequence::{Exponent, SequenceSpec, WeylData};
pub use specfile::SpecFile;
pub use zeta::{LaurentCoefficients, EULER_GAMMA};
