//! Integer-valued polynomials with rational coefficients.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial in `Q[x]` taking integer values at every integer.
///
/// `coeffs[j]` is the coefficient of `x^j`; trailing zeros are trimmed.
/// Integrality is checked at construction through the binomial basis:
/// `P = Σ c_k binom(x, k)` is integer-valued iff every `c_k` is an integer.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntValuedPolynomial {
    coeffs: Vec<BigRational>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

impl IntValuedPolynomial {
    /// Validates and wraps an ascending coefficient list.
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        let p = IntValuedPolynomial {
            coeffs: trim(coeffs),
        };
        for (index, c) in p.binomial_coefficients_raw().into_iter().enumerate() {
            if !c.is_integer() {
                return Err(Error::NotIntegerValued {
                    index,
                    value: c.to_string(),
                });
            }
        }
        Ok(p)
    }

    pub fn zero() -> Self {
        IntValuedPolynomial { coeffs: Vec::new() }
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// `scale · Π (x − r)` over the given roots.
    pub fn from_roots(scale: BigRational, roots: &[i64]) -> Result<Self> {
        let poly = roots.iter().fold(vec![scale], |acc, &r| {
            poly_mul(&acc, &[rat(-r), BigRational::one()])
        });
        Self::new(poly)
    }

    /// `Σ c_k binom(x, k)`.
    pub fn from_binomial_coefficients(cs: &[BigInt]) -> Self {
        let mut out: Vec<BigRational> = Vec::new();
        // binom(x, k) = x(x-1)...(x-k+1) / k!
        let mut falling = vec![BigRational::one()];
        for (k, c) in cs.iter().enumerate() {
            if k > 0 {
                falling = poly_mul(&falling, &[rat(-(k as i64 - 1)), BigRational::one()]);
            }
            let scale = BigRational::new(c.clone(), factorial(k));
            if out.len() < falling.len() {
                out.resize(falling.len(), BigRational::zero());
            }
            for (j, f) in falling.iter().enumerate() {
                out[j] += f * &scale;
            }
        }
        IntValuedPolynomial { coeffs: trim(out) }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^j` (zero beyond the degree).
    pub fn coeff(&self, j: usize) -> BigRational {
        self.coeffs.get(j).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Exact value at an integer argument.
    pub fn eval(&self, k: i64) -> BigInt {
        self.try_eval(k)
            .expect("integer-valued polynomial produced a fraction")
    }

    pub fn try_eval(&self, k: i64) -> Result<BigInt> {
        let v = self.eval_rational(&rat(k));
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::NonIntegerValue {
                at: k,
                value: v.to_string(),
            })
        }
    }

    fn binomial_coefficients_raw(&self) -> Vec<BigRational> {
        // c_k = Δ^k P(0), forward differences of the values at 0..=deg.
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        let mut values: Vec<BigRational> =
            (0..=deg as i64).map(|k| self.eval_rational(&rat(k))).collect();
        let mut out = Vec::with_capacity(deg + 1);
        for _ in 0..=deg {
            out.push(values[0].clone());
            values = values.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        out
    }

    /// Coordinates in the basis `binom(x, k)`, all integers.
    pub fn binomial_coefficients(&self) -> Vec<BigInt> {
        self.binomial_coefficients_raw()
            .into_iter()
            .map(|c| c.to_integer())
            .collect()
    }

    /// `n! · p_n` for `n` the degree; zero for the zero polynomial.
    pub fn normalized_leading(&self) -> BigInt {
        match self.degree() {
            None => BigInt::zero(),
            Some(n) => (self.leading_coefficient() * BigRational::from_integer(factorial(n)))
                .to_integer(),
        }
    }
}

impl fmt::Debug for IntValuedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntValuedPolynomial({self})")
    }
}

impl fmt::Display for IntValuedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = j == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match j {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{j}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Accepts two literal syntaxes:
///
/// * ascending coefficients `c0,c1,...,cn` with rational entries (`1,3/2,1/2`);
/// * factored root form `scale*(x-r1)(x+r2)...` where `scale` is optional
///   (`1/2*(k-1)(k-2)`, `-(x-1)`); `x` and `k` are both accepted as the variable.
impl FromStr for IntValuedPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial literal".into()));
        }
        if !s.contains('(') {
            let coeffs = s
                .split(',')
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()?;
            return Self::new(coeffs);
        }
        let open = s.find('(').expect("checked above");
        let (head, mut rest) = s.split_at(open);
        let head = head.strip_suffix('*').unwrap_or(head);
        let scale = match head {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            h => parse_rational(h)?,
        };
        let mut roots = Vec::new();
        while !rest.is_empty() {
            let rest_trim = rest.strip_prefix('*').unwrap_or(rest);
            let inner_end = rest_trim
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced factor in `{s}`")))?;
            let factor = rest_trim
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected `(` in `{s}`")))?;
            let factor = &factor[..inner_end - 1];
            let body = factor
                .strip_prefix('x')
                .or_else(|| factor.strip_prefix('k'))
                .ok_or_else(|| Error::Parse(format!("factor `{factor}` must start with x or k")))?;
            let root: i64 = if body.is_empty() {
                0
            } else if let Some(r) = body.strip_prefix('-') {
                r.parse()
                    .map_err(|_| Error::Parse(format!("bad root in `{factor}`")))?
            } else if let Some(r) = body.strip_prefix('+') {
                -r.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad root in `{factor}`")))?
            } else {
                return Err(Error::Parse(format!("bad factor `{factor}`")));
            };
            roots.push(root);
            rest = &rest_trim[inner_end + 1..];
        }
        Self::from_roots(scale, &roots)
    }
}
