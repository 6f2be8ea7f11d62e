//! Exact scalar fields, polynomial rings, determinants and q-combinatorics.

mod gaussian;
mod matrix;
mod multi;
mod poly;
mod qcomb;
mod rational;
mod ring;
mod series;

pub use gaussian::GaussianRational;
pub use matrix::{cofactor_determinant, exact_determinant, solve, Matrix};
pub use multi::{Monomial, Poly4};
pub use poly::{Poly, TaggedPoly};
pub use qcomb::{binomial, q_binomial, q_binomial_inv_base, q_int};
pub use rational::Rational;
pub use ring::{Domain, Field, Ring};
pub use series::SeriesY;

/// Polynomial in the fugacity ξ.
pub type PolyXi<F> = Poly<F>;
