//! Holomorphic Lefschetz arithmetic for an order-7 automorphism with three
//! isolated fixed points.
//!
//! At a fixed point `P` the automorphism acts on the tangent space with
//! eigenvalues `ξ^a, ξ^b` (`ξ = ζ_7`). The fixed points are cyclically
//! permuted by the order-3 element, which squares the eigenvalues, so the
//! whole configuration is determined by the pair at the first point.

use std::fmt;

use num_traits::{One, Zero};

use crate::cyclotomic::exact_divide;
use crate::error::{Error, Result};
use crate::{QZeta7, Zeta7};

/// Which of the two conjugate solution families to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Eigenvalues `(ξ, ξ³)` at the first point.
    #[default]
    Standard,
    /// The complex conjugate `(ξ⁶, ξ⁴)`.
    Conjugate,
}

impl Branch {
    pub fn starting_pair(self) -> (u8, u8) {
        match self {
            Branch::Standard => (1, 3),
            Branch::Conjugate => (6, 4),
        }
    }
}

/// Tangent exponents `(a_i, b_i)` at the three fixed points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FixedPointDatum {
    points: [(u8, u8); 3],
}

fn double(e: u8) -> u8 {
    (2 * e) % 7
}

impl FixedPointDatum {
    /// Datum generated from the first point by the doubling law.
    pub fn from_pair(a: u8, b: u8) -> Result<Self> {
        let (a, b) = (a % 7, b % 7);
        if a == 0 || b == 0 {
            return Err(Error::Unsupported(
                "fixed points are isolated: tangent exponents must be nonzero mod 7".into(),
            ));
        }
        let p1 = (a, b);
        let p2 = (double(a), double(b));
        let p3 = (double(p2.0), double(p2.1));
        Ok(FixedPointDatum { points: [p1, p2, p3] })
    }

    pub fn branch(branch: Branch) -> Self {
        let (a, b) = branch.starting_pair();
        Self::from_pair(a, b).expect("nonzero exponents")
    }

    /// Arbitrary data, checked against the doubling law.
    pub fn from_points(points: [(u8, u8); 3]) -> Result<Self> {
        let d = Self::from_pair(points[0].0, points[0].1)?;
        let normalized = points.map(|(a, b)| (a % 7, b % 7));
        if d.points != normalized {
            return Err(Error::Unsupported(
                "exponents do not double from one fixed point to the next".into(),
            ));
        }
        Ok(d)
    }

    pub fn points(&self) -> &[(u8, u8); 3] {
        &self.points
    }

    /// The same configuration with the fixed points renumbered so that the
    /// first (sorted) pair is lexicographically least.
    pub fn normalized(&self) -> Self {
        let sorted = |(a, b): (u8, u8)| (a.min(b), a.max(b));
        let start = (0..3).min_by_key(|&i| sorted(self.points[i])).unwrap();
        let (a, b) = sorted(self.points[start]);
        Self::from_pair(a, b).expect("nonzero exponents")
    }

    /// Pointwise complex conjugate `(−a_i, −b_i)`.
    pub fn conjugate(&self) -> Self {
        let (a, b) = self.points[0];
        Self::from_pair(7 - a, 7 - b).expect("nonzero exponents")
    }

    /// Local term `ξ^e / ((1 − ξ^a)(1 − ξ^b))` at point `i`.
    pub fn local_term(&self, i: usize, e: i64) -> QZeta7 {
        let (a, b) = self.points[i];
        let one = Zeta7::one();
        let den = (one.clone() - Zeta7::root_of_unity(a as i64)) * (one - Zeta7::root_of_unity(b as i64));
        exact_divide(&Zeta7::root_of_unity(e), &den).expect("1 - ξ^a is nonzero for a != 0")
    }
}

impl fmt::Display for FixedPointDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|(a, b)| format!("({a},{b})"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// All unordered pairs `{a, b}` (with `a = b` allowed) whose untwisted
/// Lefschetz sum is exactly 1, sorted.
pub fn solve_hlfp0() -> Vec<(u8, u8)> {
    let mut out = Vec::new();
    for a in 1..=6u8 {
        for b in a..=6u8 {
            let d = FixedPointDatum::from_pair(a, b).expect("nonzero");
            if untwisted_sum(&d).is_one() {
                out.push((a, b));
            }
        }
    }
    out
}

fn untwisted_sum(d: &FixedPointDatum) -> QZeta7 {
    (0..3).fold(QZeta7::zero(), |acc, i| acc + d.local_term(i, 0))
}

/// Exponent of the action on the canonical line at each point, `a_i + b_i`.
pub fn canonical_trace(d: &FixedPointDatum) -> [u8; 3] {
    d.points.map(|(a, b)| (a + b) % 7)
}

/// Linearisation of the generator `O(1)` with `O(3) = K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistTraceTable {
    /// `Tr(σ | O(1)_{P_i}) = ξ^{t_i}`.
    pub exponents: [u8; 3],
}

impl TwistTraceTable {
    /// Exponent of the trace on `O(k)` at point `i`.
    pub fn exponent(&self, i: usize, k: i64) -> u8 {
        (k * self.exponents[i] as i64).rem_euclid(7) as u8
    }

    pub fn trace(&self, i: usize, k: i64) -> Zeta7 {
        Zeta7::root_of_unity(self.exponent(i, k) as i64)
    }
}

/// Multiplicative inverse of 3 modulo 7.
pub const INVERSE_OF_THREE: u8 = 5;

/// `t_i = 3⁻¹ · (a_i + b_i) mod 7`.
pub fn twist_traces(d: &FixedPointDatum) -> TwistTraceTable {
    TwistTraceTable {
        exponents: canonical_trace(d).map(|c| (INVERSE_OF_THREE * c) % 7),
    }
}

/// Right-hand side of the fixed-point formula for `O(k)`.
///
/// This is the alternating trace on cohomology, hence the trace on `H⁰`
/// whenever the higher cohomology of `O(k)` vanishes.
pub fn h0_trace(d: &FixedPointDatum, k: i64) -> QZeta7 {
    let t = twist_traces(d);
    (0..3).fold(QZeta7::zero(), |acc, i| acc + d.local_term(i, t.exponent(i, k) as i64))
}

/// The same as [`h0_trace`] back in `Z[ζ_7]`, where traces of group
/// elements must land.
pub fn h0_trace_integral(d: &FixedPointDatum, k: i64) -> Result<Zeta7> {
    h0_trace(d, k).to_integral().ok_or(Error::NotIntegral)
}

/// Outcome of bounding `δ = h⁰(O(2))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deduction {
    pub h0_o4: u64,
    pub delta_upper_bound: u64,
    pub conclusion: Conclusion,
    pub steps: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conclusion {
    /// Only the bound `δ ≤ delta_upper_bound` follows.
    Bounded,
    /// `H⁰(O(2)) = 0`.
    Vanishes,
}

/// Bounds `δ = h⁰(O(2))` from `h⁰(O(4))`.
///
/// The multiplication map `H⁰(O(2)) ⊗ H⁰(O(2)) → H⁰(O(4))` has image of
/// dimension at least `2δ − 1` when `δ > 0`. If `target_irreducible` is set
/// (`H⁰(O(4))` is an irreducible 3-dimensional representation while the
/// sources split into characters), Schur forces that map to vanish, so
/// `2δ − 1 ≤ 0`.
pub fn h0_o2_vanishing(h0_o4: u64, target_irreducible: bool) -> Deduction {
    let bound = h0_o4.div_ceil(2);
    let mut steps = vec![
        "assume H^1 = H^2 = 0 for O(4) (Kodaira vanishing)".to_string(),
        format!("2*delta - 1 <= h0(O(4)) = {h0_o4} gives delta <= {bound}"),
    ];
    if h0_o4 == 0 {
        steps.push("no sections of O(4), so delta = 0".into());
        return Deduction {
            h0_o4,
            delta_upper_bound: 0,
            conclusion: Conclusion::Vanishes,
            steps,
        };
    }
    if target_irreducible && bound <= 2 {
        steps.push(
            "delta <= 2 and no faithful 2-dimensional representation: H0(O(2)) is a sum of characters"
                .into(),
        );
        steps.push("Schur: no nonzero equivariant map into the irreducible H0(O(4))".into());
        steps.push("image dimension 0 >= 2*delta - 1 forces delta = 0".into());
        return Deduction {
            h0_o4,
            delta_upper_bound: 0,
            conclusion: Conclusion::Vanishes,
            steps,
        };
    }
    Deduction {
        h0_o4,
        delta_upper_bound: bound,
        conclusion: Conclusion::Bounded,
        steps,
    }
}
