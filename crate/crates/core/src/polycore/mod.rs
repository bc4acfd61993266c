//! The exact ring layer: Q(√2) scalars, sparse polynomials in the time
//! variables, and elementary Schur polynomials.

mod mpoly;
mod scalar;
mod series;

use std::fmt::Debug;

pub use mpoly::{MPoly, Monomial, VarId, VarKind};
pub use scalar::Scalar;
pub use series::{coeffs_to_c, elementary_schur, exp_series, schur_sequence, SchurArg};

/// Commutative ring with a structure map from [`Scalar`].
///
/// Pfaffians, determinants and Fock-space coefficients are generic over this.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_scalar(s: Scalar) -> Self;
    fn scale(&self, s: &Scalar) -> Self;

    fn add_assign(&mut self, other: &Self) {
        *self = Ring::add(self, other);
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_scalar(s: Scalar) -> Self {
        s
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
}
