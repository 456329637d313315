//! Runtime-typed matrices: rational (characteristic zero) or residues mod a prime.
//!
//! The generic algorithms live on [`Matrix<T>`]; this layer picks the scalar
//! type from the modulus carried by the value.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{is_prime, Fp};
use crate::with_prime_field;

/// A square matrix over `Q` or over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExactMatrix {
    Rational(Matrix<BigRational>),
    Modular { p: u64, entries: Matrix<u64> },
}

/// An element of the ring a matrix lives over.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingElement {
    Rational(BigRational),
    Residue { value: u64, p: u64 },
}

impl RingElement {
    pub fn is_zero(&self) -> bool {
        match self {
            RingElement::Rational(q) => q.is_zero(),
            RingElement::Residue { value, .. } => *value == 0,
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            RingElement::Rational(q) if q.is_integer() => Some(q.to_integer()),
            _ => None,
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElement::Rational(q) => write!(f, "{q}"),
            RingElement::Residue { value, p } => write!(f, "{value} (mod {p})"),
        }
    }
}

fn from_fp<const P: u64>(m: &Matrix<Fp<P>>) -> Matrix<u64> {
    m.map(|v| v.value())
}

impl ExactMatrix {
    pub fn from_integers(m: &Matrix<BigInt>) -> Self {
        ExactMatrix::Rational(m.map(|v| BigRational::from_integer(v.clone())))
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        ExactMatrix::Rational(Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        ))
    }

    /// Residue matrix; entries are reduced into `[0, p)`.
    pub fn modular(p: u64, entries: &Matrix<i64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(ExactMatrix::Modular {
            p,
            entries: entries.map(|&v| v.rem_euclid(p as i64) as u64),
        })
    }

    pub fn identity(n: usize, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            Ok(ExactMatrix::Rational(Matrix::identity(n)))
        } else {
            Self::modular(modulus, &Matrix::<i64>::identity(n))
        }
    }

    /// 0 for characteristic zero.
    pub fn modulus(&self) -> u64 {
        match self {
            ExactMatrix::Rational(_) => 0,
            ExactMatrix::Modular { p, .. } => *p,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            ExactMatrix::Rational(m) => m.rows(),
            ExactMatrix::Modular { entries, .. } => entries.rows(),
        }
    }

    pub fn is_square(&self) -> bool {
        match self {
            ExactMatrix::Rational(m) => m.is_square(),
            ExactMatrix::Modular { entries, .. } => entries.is_square(),
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> RingElement {
        match self {
            ExactMatrix::Rational(m) => RingElement::Rational(m.get(i, j).clone()),
            ExactMatrix::Modular { p, entries } => RingElement::Residue {
                value: *entries.get(i, j),
                p: *p,
            },
        }
    }

    /// Integer entries, if every entry is an integer (char 0 only).
    pub fn to_integer_matrix(&self) -> Result<Matrix<BigInt>> {
        match self {
            ExactMatrix::Rational(m) => {
                if m.iter_rows().flatten().all(BigRational::is_integer) {
                    Ok(m.map(BigRational::to_integer))
                } else {
                    Err(Error::NotIntegral)
                }
            }
            ExactMatrix::Modular { .. } => Err(Error::NotIntegral),
        }
    }

    /// Entries as small signed integers: residues for `F_p`, integers for `Q`.
    pub fn to_i64_matrix(&self) -> Result<Matrix<i64>> {
        match self {
            ExactMatrix::Modular { entries, .. } => Ok(entries.map(|&v| v as i64)),
            ExactMatrix::Rational(_) => {
                let ints = self.to_integer_matrix()?;
                let mut out = Vec::new();
                for row in ints.iter_rows() {
                    let mut r = Vec::new();
                    for v in row {
                        r.push(i64::try_from(v).map_err(|_| Error::Overflow("entry"))?);
                    }
                    out.push(r);
                }
                Ok(Matrix::from_rows(out))
            }
        }
    }

    /// Reduce an integer matrix modulo `p`.
    pub fn reduce_mod(&self, p: u64) -> Result<ExactMatrix> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        match self {
            ExactMatrix::Rational(_) => {
                let ints = self.to_integer_matrix()?;
                let pb = BigInt::from(p);
                let entries = ints.map(|v| {
                    let r = ((v % &pb) + &pb) % &pb;
                    u64::try_from(r).expect("residue fits")
                });
                Ok(ExactMatrix::Modular { p, entries })
            }
            ExactMatrix::Modular { p: q, entries } if *q == p => Ok(ExactMatrix::Modular {
                p,
                entries: entries.clone(),
            }),
            ExactMatrix::Modular { .. } => Err(Error::Unsupported(
                "cannot change the modulus of a residue matrix".into(),
            )),
        }
    }

    /// Exact determinant. Integer matrices go through Bareiss; everything
    /// else through pivoted elimination over the field.
    pub fn determinant(&self) -> Result<RingElement> {
        match self {
            ExactMatrix::Rational(m) => {
                if let Ok(ints) = self.to_integer_matrix() {
                    let d = ints.determinant_bareiss()?;
                    Ok(RingElement::Rational(BigRational::from_integer(d)))
                } else {
                    Ok(RingElement::Rational(m.determinant()?))
                }
            }
            ExactMatrix::Modular { p, entries } => {
                let value = with_prime_field!(*p, F => entries.map(|&v| F::new(v)).determinant()?.value())?;
                Ok(RingElement::Residue { value, p: *p })
            }
        }
    }

    pub fn transpose(&self) -> ExactMatrix {
        match self {
            ExactMatrix::Rational(m) => ExactMatrix::Rational(m.transpose()),
            ExactMatrix::Modular { p, entries } => ExactMatrix::Modular {
                p: *p,
                entries: entries.transpose(),
            },
        }
    }

    pub fn try_mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        match (self, rhs) {
            (ExactMatrix::Rational(a), ExactMatrix::Rational(b)) => {
                Ok(ExactMatrix::Rational(a.try_mul(b)?))
            }
            (ExactMatrix::Modular { p, entries: a }, ExactMatrix::Modular { p: q, entries: b })
                if p == q =>
            {
                let entries = with_prime_field!(*p, F => {
                    from_fp(&a.map(|&v| F::new(v)).try_mul(&b.map(|&v| F::new(v)))?)
                })?;
                Ok(ExactMatrix::Modular { p: *p, entries })
            }
            _ => Err(Error::Unsupported("mixed-modulus product".into())),
        }
    }

    pub fn inverse(&self) -> Result<ExactMatrix> {
        match self {
            ExactMatrix::Rational(m) => Ok(ExactMatrix::Rational(m.inverse()?)),
            ExactMatrix::Modular { p, entries } => {
                let inv = with_prime_field!(*p, F => from_fp(&entries.map(|&v| F::new(v)).inverse()?))?;
                Ok(ExactMatrix::Modular {
                    p: *p,
                    entries: inv,
                })
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            ExactMatrix::Rational(m) => m.is_identity(),
            ExactMatrix::Modular { entries, .. } => {
                entries.is_square()
                    && (0..entries.rows()).all(|i| {
                        (0..entries.cols()).all(|j| *entries.get(i, j) == u64::from(i == j))
                    })
            }
        }
    }

    /// Smallest `k ≥ 1` with `M^k = 1`, or `None` if no such `k ≤ bound`.
    ///
    /// `bound` defaults to `2·p^n` for an `n×n` matrix mod `p`; over `Q` it is
    /// mandatory.
    pub fn matrix_order(&self, bound: Option<u64>) -> Result<Option<u64>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.size(),
                cols: 0,
            });
        }
        if self.determinant()?.is_zero() {
            return Err(Error::Singular);
        }
        match self {
            ExactMatrix::Rational(m) => {
                let bound = bound.ok_or_else(|| {
                    Error::Unsupported("an explicit bound is required over Q".into())
                })?;
                m.multiplicative_order(bound)
            }
            ExactMatrix::Modular { p, entries } => {
                let n = entries.rows() as u32;
                let bound = match bound {
                    Some(b) => b,
                    None => p
                        .checked_pow(n)
                        .and_then(|v| v.checked_mul(2))
                        .ok_or(Error::Overflow("default order bound"))?,
                };
                let order = with_prime_field!(*p, F => entries.map(|&v| F::new(v)).multiplicative_order(bound)?)?;
                Ok(order)
            }
        }
    }

    /// `uᵗ · M · v` with integer vectors, reduced mod `p` when modular.
    pub fn pair_i64(&self, u: &[i64], v: &[i64]) -> Result<BigRational> {
        match self {
            ExactMatrix::Rational(m) => {
                let conv = |x: &[i64]| -> Vec<BigRational> {
                    x.iter().map(|&a| BigRational::from_integer(a.into())).collect()
                };
                Ok(m.pair(&conv(u), &conv(v)))
            }
            ExactMatrix::Modular { p, entries } => {
                let mut acc: i128 = 0;
                for (i, &ui) in u.iter().enumerate() {
                    for (&a, &vj) in entries.row(i).iter().zip(v) {
                        acc = (acc + ui as i128 * a as i128 * vj as i128).rem_euclid(*p as i128);
                    }
                }
                Ok(BigRational::from_integer(BigInt::from(acc)))
            }
        }
    }

    pub fn to_compact_string(&self) -> String {
        match self {
            ExactMatrix::Rational(m) => m.to_compact_string(),
            ExactMatrix::Modular { entries, .. } => entries.to_compact_string(),
        }
    }

    pub fn to_grid_string(&self) -> String {
        match self {
            ExactMatrix::Rational(m) => m.to_grid_string(),
            ExactMatrix::Modular { entries, .. } => entries.to_grid_string(),
        }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactMatrix::Rational(m) => write!(f, "ExactMatrix(Q) {m:?}"),
            ExactMatrix::Modular { p, entries } => write!(f, "ExactMatrix(F_{p}) {entries:?}"),
        }
    }
}

/// Outcome of the perfect-square test on a Gram determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    /// `|det G| = index²`.
    Index(BigInt),
    /// `|det G|` is not a square, so no unimodular lattice contains the
    /// sublattice with this Gram matrix as a finite-index sublattice.
    NotPerfectSquare { abs_det: BigInt },
}

/// Integer square root with remainder check.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Candidate index `[L : Λ]` of a sublattice with Gram matrix `G` inside a
/// unimodular lattice `L`: `|det G| = [L : Λ]²`.
pub fn lattice_index_squared(gram: &ExactMatrix) -> Result<LatticeIndex> {
    let ints = gram.to_integer_matrix()?;
    let det = ints.determinant_bareiss()?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let abs_det = det.abs();
    Ok(match exact_sqrt(&abs_det) {
        Some(r) => LatticeIndex::Index(r),
        None => LatticeIndex::NotPerfectSquare { abs_det },
    })
}

/// `det = ±1`.
pub fn is_unimodular(gram: &ExactMatrix) -> Result<bool> {
    let det = gram.to_integer_matrix()?.determinant_bareiss()?;
    Ok(det.abs().is_one())
}
