//! Closed-form massless Dirac and Weyl solutions in a self-generated
//! electromagnetic field, with finite-difference verification.

pub mod algebra;
pub mod cli_io;
pub mod em_gauge;
pub mod error;
pub mod exec;
pub mod fd;
pub mod observables;
pub mod profiles;
pub mod solutions;
pub mod verifier;

pub use error::{Error, Result};
