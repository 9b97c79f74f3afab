//! Univariate and trivariate polynomial arithmetic over a [`Field`](crate::field::Field).

mod coeff;
mod tri;
mod uni;

pub use coeff::CoeffPoly;
pub use tri::{parse_tripoly, Monomial, TriPoly, VarPermutation, ALL_PERMUTATIONS};
pub use uni::UniPoly;
