//! Eigenvalues of radial potentials confined in a hard spherical box,
//! computed semiclassically with a perturbative treatment of the centrifugal
//! term and verified against an independent Numerov solver.

pub mod error;
pub mod oracle;
pub mod potentials;
pub mod quadrature;
pub mod reference;
pub mod wkb;

pub use error::{CwkbError, Result};
