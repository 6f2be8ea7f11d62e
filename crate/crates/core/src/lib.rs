//! Exact computation of open-boundary ASEP and two-species ASEP partition
//! functions, Koornwinder moments at q = t, and Askey–Wilson moments, together
//! with checkers for the identities that connect them.
//!
//! All arithmetic is exact: rationals, Gaussian rationals, and polynomials over
//! them. Only the fugacity ξ and the light-particle marker y stay formal.

pub mod ansatz;
pub mod chains;
pub mod error;
pub mod exact;
pub mod f_identities;
pub mod moments;
pub mod motzkin;
pub mod partition;
pub mod q1;
pub mod report;
pub mod sampling;
pub mod suites;
pub mod words;

pub use error::{Error, Result};
pub use partition::Partition;
