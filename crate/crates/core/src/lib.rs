//! Ghost ideals, splitting calculus and the Cartan-Eilenberg exact structure over
//! finite-dimensional algebras with prime-field coefficients.

pub mod algebra;
pub mod complex;
pub mod error;
pub mod ghost;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod splitting;

pub use error::{Error, Result};
