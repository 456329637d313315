//! Exact arithmetic for exceptional-collection numerics, Lefschetz traces and
//! the character theory of the order-21 group.
//!
//! The numeric layers ([`matrix`], [`cyclotomic`]) are generic over the
//! scalar type; the aliases below fix the types the domain modules use.

pub mod error;
pub mod scalar;
pub mod matrix;
pub mod poly;
pub mod exact;
pub mod eulerform;
pub mod sonb;
pub mod cyclotomic;
pub mod lefschetz;
pub mod reptheory;
pub mod atlas;

pub use error::{Error, Result};
pub use exact::{lattice_index_squared, ExactMatrix, LatticeIndex, RingElement};
pub use matrix::Matrix;
pub use poly::IntValuedPolynomial;
pub use scalar::{ExactDiv, Field, Fp, Scalar};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Integer matrices (Bareiss determinants).
pub type IntMatrix = Matrix<BigInt>;
/// Rational matrices (pivoted elimination, inverses).
pub type RatMatrix = Matrix<BigRational>;
/// Two-element field.
pub type F2 = Fp<2>;
/// Three-element field.
pub type F3 = Fp<3>;
/// `Z[ζ_3]`.
pub type Zeta3 = cyclotomic::Cyclotomic<BigInt, 3>;
/// `Z[ζ_7]`.
pub type Zeta7 = cyclotomic::Cyclotomic<BigInt, 7>;
/// `Z[ζ_21]`, where all character values live.
pub type Zeta21 = cyclotomic::Cyclotomic<BigInt, 21>;
/// `Q(ζ_7)`, home of the Lefschetz fixed-point terms.
pub type QZeta7 = cyclotomic::Cyclotomic<BigRational, 7>;
/// `Q(ζ_21)`.
pub type QZeta21 = cyclotomic::Cyclotomic<BigRational, 21>;
