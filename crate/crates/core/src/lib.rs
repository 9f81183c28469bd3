//! Exact construction of graded Hamiltonian and Albert-Zassenhaus Lie
//! algebras over finite fields, Laguerre grading switching, and verification
//! of diamond patterns in their loop algebras.

mod error;

pub mod dpalgebra;
pub mod ffield;
pub mod grading;
pub mod liealg;
pub mod oracle;
pub mod scenario;
pub mod thinlie;

pub use error::{Error, Result};
