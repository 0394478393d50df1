//! Charged core abaci of the classical affine types, the Uglov map, exact
//! affine Weyl group actions, and the sums-of-squares Diophantine equations
//! that core heights satisfy.

pub mod abacus;
pub mod action;
pub mod cartan;
pub mod cli;
pub mod dioph;
pub mod error;
pub mod exactnum;
pub mod uglov;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
