//! Exact verification toolkit for Cartier-Manin matrices of genus-2
//! Rosenhain curves `y^2 = x(x-1)(x-z1)(x-z2)(x-z3)` over `F_p`.
//!
//! The arithmetic layers ([`field`], [`poly`], [`linalg`]) are generic over
//! the [`Field`] trait, implemented for `F_p` ([`PrimeModulus`]), `F_{p^k}`
//! ([`ExtField`]) and `Q` ([`Rationals`]). The aliases below name the
//! instantiations the verification modules work with.

pub mod cartier;
pub mod error;
pub mod field;
pub mod ideal;
pub mod lauricella;
pub mod linalg;
pub mod locus;
pub mod pde;
pub mod poly;

pub use error::{Error, Result};
pub use field::{build_extension, ExtField, Field, Fp, Fq, PrimeModulus, Rationals};
pub use poly::{CoeffPoly, Monomial, TriPoly, UniPoly};

/// `F_p[z1, z2, z3]`.
pub type FpTriPoly = TriPoly<PrimeModulus>;
/// `F_{p^k}[z1, z2, z3]`.
pub type FqTriPoly = TriPoly<ExtField>;
/// `Q[z1, z2, z3]`.
pub type QTriPoly = TriPoly<Rationals>;
/// `F_p[t]`.
pub type FpUniPoly = UniPoly<PrimeModulus>;
/// `F_{p^k}[t]`.
pub type FqUniPoly = UniPoly<ExtField>;
/// `F_p[z1, z2, z3][x]`.
pub type FpCoeffPoly = CoeffPoly<PrimeModulus>;
/// Dense matrix over `F_p`.
pub type FpMatrix = linalg::Matrix<PrimeModulus>;
/// Dense matrix over `F_{p^k}`.
pub type FqMatrix = linalg::Matrix<ExtField>;
