//! Exact verification workbench for Leibniz conformal algebras, their
//! homotopy (Leib∞) versions and their categorified 2-algebra versions.
//!
//! All structure constants are polynomials in `∂` and λ-variables over `ℚ`;
//! every axiom check reduces to comparing polynomials with zero.

pub mod cat2;
pub mod confcore;
pub mod corering;
pub mod error;
pub mod frontend;
pub mod leibcoh;
pub mod linalg;
pub mod linfty;
pub mod par;
pub mod random;
pub mod twoterm;
pub mod verify;
pub mod zoo;

pub use error::{Error, Result};
