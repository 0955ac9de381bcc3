//! Exact computations with the cross product of R^7, the exceptional Lie
//! algebra g2 and the Lie triple systems attached to G2/SO(4).

pub mod catalog;
pub mod cli;
pub mod cross7;
pub mod error;
pub mod g2alg;
pub mod linalg;
pub mod lts;
pub mod matmodel;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;
