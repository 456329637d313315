//! Scalar traits shared by the matrix, polynomial and cyclotomic layers.
//!
//! Everything here is exact. The traits sit on top of `num_traits` so that
//! `BigInt`, `BigRational`, machine integers, prime-field residues and
//! cyclotomic integers all flow through the same generic algorithms.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

/// A commutative ring with exact equality.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_i64(v: i64) -> Self;
}

/// Rings in which `a / b` is computable whenever `b` divides `a`.
///
/// This is what fraction-free (Bareiss) elimination needs.
pub trait ExactDiv: Scalar {
    fn div_exact(&self, rhs: &Self) -> Self;
}

/// A field: every nonzero element is invertible.
pub trait Field: ExactDiv {
    fn inverse(&self) -> Option<Self>;
}

macro_rules! machine_int_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }
        }
        impl ExactDiv for $t {
            fn div_exact(&self, rhs: &Self) -> Self {
                debug_assert!(self % rhs == 0, "inexact division");
                self / rhs
            }
        }
    )*};
}

machine_int_scalar!(i64, i128);

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl ExactDiv for BigInt {
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert!((self % rhs).is_zero(), "inexact division");
        self / rhs
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl ExactDiv for BigRational {
    fn div_exact(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl Field for BigRational {
    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl Scalar for Rational64 {
    fn from_i64(v: i64) -> Self {
        Rational64::from_integer(v)
    }
}

impl ExactDiv for Rational64 {
    fn div_exact(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl Field for Rational64 {
    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

/// Residue class modulo the prime `P`, stored in `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub const MODULUS: u64 = P;

    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn from_signed(v: i128) -> Self {
        Fp(v.rem_euclid(P as i128) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + P - rhs.0
        })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in F_p")
    }
}

impl<const P: u64> AddAssign for Fp<P> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u64> SubAssign for Fp<P> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const P: u64> MulAssign for Fp<P> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn from_i64(v: i64) -> Self {
        Fp::from_signed(v as i128)
    }
}

impl<const P: u64> ExactDiv for Fp<P> {
    fn div_exact(&self, rhs: &Self) -> Self {
        *self / *rhs
    }
}

impl<const P: u64> Field for Fp<P> {
    fn inverse(&self) -> Option<Self> {
        // Fermat; P is prime by contract.
        (self.0 != 0).then(|| self.pow(P - 2))
    }
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes for which a monomorphised `Fp<P>` is available at runtime.
pub const SUPPORTED_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Runs `$body` with `$F` bound to `Fp<p>` for a runtime prime `p`.
///
/// Evaluates to `Result<_, Error>`; unsupported or composite moduli are
/// rejected before dispatch.
#[macro_export]
macro_rules! with_prime_field {
    ($p:expr, $F:ident => $body:expr) => {{
        let p: u64 = $p;
        match p {
            2 => { type $F = $crate::scalar::Fp<2>; Ok($body) }
            3 => { type $F = $crate::scalar::Fp<3>; Ok($body) }
            5 => { type $F = $crate::scalar::Fp<5>; Ok($body) }
            7 => { type $F = $crate::scalar::Fp<7>; Ok($body) }
            11 => { type $F = $crate::scalar::Fp<11>; Ok($body) }
            13 => { type $F = $crate::scalar::Fp<13>; Ok($body) }
            17 => { type $F = $crate::scalar::Fp<17>; Ok($body) }
            19 => { type $F = $crate::scalar::Fp<19>; Ok($body) }
            23 => { type $F = $crate::scalar::Fp<23>; Ok($body) }
            29 => { type $F = $crate::scalar::Fp<29>; Ok($body) }
            31 => { type $F = $crate::scalar::Fp<31>; Ok($body) }
            37 => { type $F = $crate::scalar::Fp<37>; Ok($body) }
            41 => { type $F = $crate::scalar::Fp<41>; Ok($body) }
            43 => { type $F = $crate::scalar::Fp<43>; Ok($body) }
            47 => { type $F = $crate::scalar::Fp<47>; Ok($body) }
            53 => { type $F = $crate::scalar::Fp<53>; Ok($body) }
            59 => { type $F = $crate::scalar::Fp<59>; Ok($body) }
            61 => { type $F = $crate::scalar::Fp<61>; Ok($body) }
            67 => { type $F = $crate::scalar::Fp<67>; Ok($body) }
            71 => { type $F = $crate::scalar::Fp<71>; Ok($body) }
            73 => { type $F = $crate::scalar::Fp<73>; Ok($body) }
            79 => { type $F = $crate::scalar::Fp<79>; Ok($body) }
            83 => { type $F = $crate::scalar::Fp<83>; Ok($body) }
            89 => { type $F = $crate::scalar::Fp<89>; Ok($body) }
            97 => { type $F = $crate::scalar::Fp<97>; Ok($body) }
            other if !$crate::scalar::is_prime(other) => Err($crate::Error::NotPrime(other)),
            other => Err($crate::Error::UnsupportedModulus(other)),
        }
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;

    #[test]
    fn fp_inverse_roundtrip() {
        for v in 1..7 {
            let x = F7::new(v);
            assert_eq!(x * x.inverse().unwrap(), F7::one());
        }
        assert!(F7::zero().inverse().is_none());
    }

    #[test]
    fn fp_signed_reduction() {
        assert_eq!(F7::from_i64(-1).value(), 6);
        assert_eq!(F7::from_i64(-15).value(), 6);
        assert_eq!(Fp::<2>::from_i64(3876).value(), 0);
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..100).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, SUPPORTED_PRIMES.to_vec());
    }

    #[test]
    fn dispatch_rejects_composites() {
        let r: crate::Result<u64> = with_prime_field!(9, F => F::MODULUS);
        assert_eq!(r, Err(crate::Error::NotPrime(9)));
        let r: crate::Result<u64> = with_prime_field!(101, F => F::MODULUS);
        assert_eq!(r, Err(crate::Error::UnsupportedModulus(101)));
        let r: crate::Result<u64> = with_prime_field!(5, F => F::MODULUS);
        assert_eq!(r, Ok(5));
    }
}
