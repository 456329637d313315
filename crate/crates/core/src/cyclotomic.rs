//! Cyclotomic rings `Z[ζ_N]` and fields `Q(ζ_N)`.
//!
//! Elements are dense coefficient vectors in the power basis
//! `1, ζ, …, ζ^{φ(N)-1}`, always reduced modulo `Φ_N`, so equality is plain
//! coefficient equality.

use std::collections::HashMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `Φ_n` as ascending integer coefficients (monic, degree `φ(n)`).
pub fn cyclotomic_polynomial(n: usize) -> &'static [i64] {
    static CACHE: OnceLock<Mutex<HashMap<usize, &'static [i64]>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p;
    }
    let poly: &'static [i64] = Box::leak(compute_cyclotomic(n).into_boxed_slice());
    cache.lock().unwrap().insert(n, poly);
    poly
}

fn compute_cyclotomic(n: usize) -> Vec<i64> {
    assert!(n > 0, "conductor must be positive");
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = divide_monic(&num, &compute_cyclotomic(d));
    }
    num
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

pub fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count()
}

/// Units of `Z/N`, i.e. the exponents of the Galois automorphisms.
pub fn galois_exponents(n: usize) -> Vec<usize> {
    (1..n.max(2)).filter(|&k| k.gcd(&n) == 1).collect()
}

/// An element of `Z[ζ_N]` (or `Q(ζ_N)` with rational coefficients).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic<T, const N: usize> {
    coeffs: Vec<T>,
    _ring: PhantomData<[(); N]>,
}

impl<T: Scalar, const N: usize> Cyclotomic<T, N> {
    pub const CONDUCTOR: usize = N;

    pub fn degree() -> usize {
        cyclotomic_polynomial(N).len() - 1
    }

    /// Reduces an arbitrary-length coefficient vector modulo `Φ_N`.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        let phi = cyclotomic_polynomial(N);
        let d = phi.len() - 1;
        let mut c = coeffs;
        for top in (d..c.len()).rev() {
            let lead = std::mem::replace(&mut c[top], T::zero());
            if lead.is_zero() {
                continue;
            }
            for (j, &p) in phi[..d].iter().enumerate() {
                if p != 0 {
                    let v = std::mem::replace(&mut c[top - d + j], T::zero());
                    c[top - d + j] = v - lead.clone() * T::from_i64(p);
                }
            }
        }
        c.resize(d, T::zero());
        Cyclotomic {
            coeffs: c,
            _ring: PhantomData,
        }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn from_scalar(v: T) -> Self {
        Self::from_coeffs(vec![v])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// `ζ_N^k`, with `k` taken modulo `N`.
    pub fn root_of_unity(k: i64) -> Self {
        let k = k.rem_euclid(N as i64) as usize;
        let mut c = vec![T::zero(); k + 1];
        c[k] = T::one();
        Self::from_coeffs(c)
    }

    /// Sum of `ζ^e` over the given exponents.
    pub fn sum_of_powers(exponents: &[i64]) -> Self {
        exponents
            .iter()
            .fold(Self::zero(), |acc, &e| acc + Self::root_of_unity(e))
    }

    /// Applies `ζ ↦ ζ^k`; `k` must be a unit mod `N`.
    pub fn galois_conj(&self, k: i64) -> Result<Self> {
        if (k.rem_euclid(N as i64) as usize).gcd(&N) != 1 {
            return Err(Error::NotCoprime { k, n: N });
        }
        let k = k.rem_euclid(N as i64) as usize;
        let mut c = vec![T::zero(); N];
        for (j, a) in self.coeffs.iter().enumerate() {
            let e = (j * k) % N;
            let v = std::mem::replace(&mut c[e], T::zero());
            c[e] = v + a.clone();
        }
        Ok(Self::from_coeffs(c))
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois_conj(-1).expect("-1 is a unit")
    }

    /// Product of the conjugates under every non-identity automorphism.
    fn conjugate_product(&self) -> Self {
        galois_exponents(N)
            .into_iter()
            .skip(1)
            .fold(Self::one(), |acc, k| acc * self.galois_conj(k as i64).expect("unit"))
    }

    /// Field norm to `Q`.
    pub fn norm(&self) -> T {
        (self.clone() * self.conjugate_product()).coeffs[0].clone()
    }

    /// Field trace to `Q`.
    pub fn trace(&self) -> T {
        galois_exponents(N)
            .into_iter()
            .fold(Self::zero(), |acc, k| acc + self.galois_conj(k as i64).expect("unit"))
            .coeffs[0]
            .clone()
    }

    /// `Some(c)` when the element is the rational number `c`.
    pub fn as_scalar(&self) -> Option<&T> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    pub fn scale(&self, s: &T) -> Self {
        Cyclotomic {
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
            _ring: PhantomData,
        }
    }

    /// The image under `ζ_N ↦ ζ_M^{M/N}`; `N` must divide `M`.
    pub fn embed<const M: usize>(&self) -> Result<Cyclotomic<T, M>> {
        if !M.is_multiple_of(N) {
            return Err(Error::Unsupported(format!("Z[ζ_{N}] does not embed in Z[ζ_{M}]")));
        }
        let step = M / N;
        let mut c = vec![T::zero(); M];
        for (j, a) in self.coeffs.iter().enumerate() {
            c[j * step] = a.clone();
        }
        Ok(Cyclotomic::from_coeffs(c))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Cyclotomic<U, N> {
        Cyclotomic {
            coeffs: self.coeffs.iter().map(f).collect(),
            _ring: PhantomData,
        }
    }
}

impl<const N: usize> Cyclotomic<BigInt, N> {
    pub fn to_rational(&self) -> Cyclotomic<BigRational, N> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }
}

impl<const N: usize> Cyclotomic<BigRational, N> {
    /// Back to `Z[ζ_N]` when every coefficient is an integer.
    pub fn to_integral(&self) -> Option<Cyclotomic<BigInt, N>> {
        self.coeffs
            .iter()
            .all(|c| c.is_integer())
            .then(|| self.map(|c| c.to_integer()))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let others = self.conjugate_product();
        let norm = (self.clone() * others.clone()).coeffs[0].clone();
        Ok(others.scale(&norm.recip()))
    }
}

/// `num / den` in `Q(ζ_N)`, rationalised through the Galois norm of `den`.
pub fn exact_divide<T, const N: usize>(
    num: &Cyclotomic<T, N>,
    den: &Cyclotomic<T, N>,
) -> Result<Cyclotomic<BigRational, N>>
where
    T: Scalar + Into<BigRational>,
{
    let n = num.map(|c| c.clone().into());
    let d = den.map(|c| c.clone().into());
    Ok(n * d.inverse()?)
}

impl<T: Scalar, const N: usize> Zero for Cyclotomic<T, N> {
    fn zero() -> Self {
        Cyclotomic {
            coeffs: vec![T::zero(); Self::degree()],
            _ring: PhantomData,
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl<T: Scalar, const N: usize> One for Cyclotomic<T, N> {
    fn one() -> Self {
        Self::from_scalar(T::one())
    }
}

impl<T: Scalar, const N: usize> Add for Cyclotomic<T, N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Cyclotomic {
            coeffs: self.coeffs.into_iter().zip(rhs.coeffs).map(|(a, b)| a + b).collect(),
            _ring: PhantomData,
        }
    }
}

impl<T: Scalar, const N: usize> Sub for Cyclotomic<T, N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Cyclotomic {
            coeffs: self.coeffs.into_iter().zip(rhs.coeffs).map(|(a, b)| a - b).collect(),
            _ring: PhantomData,
        }
    }
}

impl<T: Scalar, const N: usize> Neg for Cyclotomic<T, N> {
    type Output = Self;
    fn neg(self) -> Self {
        Cyclotomic {
            coeffs: self.coeffs.into_iter().map(|a| -a).collect(),
            _ring: PhantomData,
        }
    }
}

impl<T: Scalar, const N: usize> Mul for Cyclotomic<T, N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let d = self.coeffs.len();
        let mut c = vec![T::zero(); (2 * d).saturating_sub(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let v = std::mem::replace(&mut c[i + j], T::zero());
                    c[i + j] = v + a.clone() * b.clone();
                }
            }
        }
        Self::from_coeffs(c)
    }
}

impl<T: Scalar, const N: usize> Scalar for Cyclotomic<T, N> {
    fn from_i64(v: i64) -> Self {
        Self::from_scalar(T::from_i64(v))
    }
}

impl<T: Scalar + fmt::Display, const N: usize> fmt::Display for Cyclotomic<T, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == "1";
            let mag = if mag.contains('/') && j > 0 { format!("({mag})") } else { mag };
            match (j, unit) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "ζ{}", power(j))?,
                (_, false) => write!(f, "{mag}*ζ{}", power(j))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn power(j: usize) -> String {
    if j == 1 {
        String::new()
    } else {
        format!("^{j}")
    }
}

impl<T: fmt::Debug, const N: usize> fmt::Debug for Cyclotomic<T, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[ζ_{N}]{:?}", self.coeffs)
    }
}
