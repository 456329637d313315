//! The non-abelian group of order 21, `⟨σ, τ | σ⁷ = τ³ = 1, στ = τσ²⟩`.
//!
//! Character values live in `Z[ζ_21]` with `ω = ζ_21^7` and `ξ = ζ_21^3`.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::Zeta21;

/// `τ^t σ^u` with `t` mod 3 and `u` mod 7.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct G21Element {
    pub t: u8,
    pub u: u8,
}

impl G21Element {
    pub const IDENTITY: G21Element = G21Element { t: 0, u: 0 };
    pub const SIGMA: G21Element = G21Element { t: 0, u: 1 };
    pub const TAU: G21Element = G21Element { t: 1, u: 0 };

    pub fn new(t: i64, u: i64) -> Self {
        G21Element {
            t: t.rem_euclid(3) as u8,
            u: u.rem_euclid(7) as u8,
        }
    }

    pub fn all() -> impl Iterator<Item = G21Element> {
        (0..3).flat_map(|t| (0..7).map(move |u| G21Element { t, u }))
    }

    pub fn pow(self, e: u32) -> Self {
        (0..e).fold(Self::IDENTITY, |acc, _| acc * self)
    }

    pub fn inverse(self) -> Self {
        Self::all().find(|&g| g * self == Self::IDENTITY).expect("group")
    }

    pub fn order(self) -> u32 {
        (1..=21).find(|&k| self.pow(k) == Self::IDENTITY).expect("group")
    }
}

impl Mul for G21Element {
    type Output = G21Element;

    /// `σ^u τ = τ σ^{2u}`, so `τ^a σ^b · τ^c σ^d = τ^{a+c} σ^{b·2^c + d}`.
    fn mul(self, rhs: G21Element) -> G21Element {
        let shift = 1i64 << rhs.t;
        G21Element::new(
            self.t as i64 + rhs.t as i64,
            self.u as i64 * shift + rhs.u as i64,
        )
    }
}

impl fmt::Display for G21Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |name: &str, e: u8| match e {
            0 => String::new(),
            1 => name.to_string(),
            _ => format!("{name}^{e}"),
        };
        let s = format!("{}{}", part("τ", self.t), part("σ", self.u));
        write!(f, "{}", if s.is_empty() { "1" } else { &s })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: G21Element,
    pub elements: Vec<G21Element>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

/// Representatives in table order: `1, σ, σ³, τ, τ²`.
pub const CLASS_REPRESENTATIVES: [G21Element; 5] = [
    G21Element { t: 0, u: 0 },
    G21Element { t: 0, u: 1 },
    G21Element { t: 0, u: 3 },
    G21Element { t: 1, u: 0 },
    G21Element { t: 2, u: 0 },
];

pub const CLASS_LABELS: [&str; 5] = ["1", "σ", "σ^3", "τ", "τ^2"];

/// Conjugacy classes by orbit enumeration, in table order.
pub fn conjugacy_classes() -> Vec<ConjugacyClass> {
    let mut classes: Vec<ConjugacyClass> = Vec::new();
    for g in G21Element::all() {
        if classes.iter().any(|c| c.elements.contains(&g)) {
            continue;
        }
        let mut elements: Vec<G21Element> = G21Element::all().map(|h| h.inverse() * g * h).collect();
        elements.sort();
        elements.dedup();
        classes.push(ConjugacyClass {
            representative: g,
            elements,
        });
    }
    CLASS_REPRESENTATIVES
        .iter()
        .map(|rep| {
            let mut c = classes
                .iter()
                .find(|c| c.elements.contains(rep))
                .expect("every representative lies in some class")
                .clone();
            c.representative = *rep;
            c
        })
        .collect()
}

/// Index of the class containing `g`, in table order.
pub fn class_index(g: G21Element) -> usize {
    if g.u == 0 || g.t != 0 {
        return [0, 3, 4][g.t as usize];
    }
    // σ^u with u in {1,2,4} or {3,5,6}
    if [1, 2, 4].contains(&g.u) {
        1
    } else {
        2
    }
}

/// Sorted tuples of `parts` divisors of `order` whose squares sum to `order`.
pub fn dimension_solutions(order: u64, parts: usize) -> Vec<Vec<u64>> {
    let divisors: Vec<u64> = (1..=order).filter(|d| order.is_multiple_of(*d)).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts);
    fn go(divs: &[u64], start: usize, left: u64, parts: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == parts {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for i in start..divs.len() {
            let sq = divs[i] * divs[i];
            if sq > left {
                break;
            }
            cur.push(divs[i]);
            go(divs, i, left - sq, parts, cur, out);
            cur.pop();
        }
    }
    go(&divisors, 0, order, parts, &mut cur, &mut out);
    out
}

/// The unique dimension tuple for five irreducibles of a group of order 21.
pub fn irrep_dimensions() -> Vec<u64> {
    let mut sols = dimension_solutions(21, 5);
    // at least one trivial representation
    sols.retain(|s| s[0] == 1);
    assert_eq!(sols.len(), 1, "dimension equation has a unique solution");
    sols.remove(0)
}

/// `ζ_21^k`.
fn z(k: i64) -> Zeta21 {
    Zeta21::root_of_unity(k)
}

/// `ω = ζ_21^7`.
pub fn omega() -> Zeta21 {
    z(7)
}

/// `ξ = ζ_21^3`.
pub fn xi() -> Zeta21 {
    z(3)
}

/// `b = ξ + ξ² + ξ⁴`.
pub fn b() -> Zeta21 {
    Zeta21::sum_of_powers(&[3, 6, 12])
}

/// A class function, valued on `1, σ, σ³, τ, τ²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub name: String,
    pub values: [Zeta21; 5],
}

impl Character {
    pub fn new(name: impl Into<String>, values: [Zeta21; 5]) -> Self {
        Character {
            name: name.into(),
            values,
        }
    }

    /// Character of a matrix representation given on the generators.
    pub fn of_representation(name: &str, rho_sigma: &Matrix<Zeta21>, rho_tau: &Matrix<Zeta21>) -> Result<Self> {
        let rep = |g: G21Element| -> Result<Matrix<Zeta21>> {
            rho_tau.pow(g.t as u64)?.try_mul(&rho_sigma.pow(g.u as u64)?)
        };
        // check the defining relations before trusting the traces
        let s = rep(G21Element::SIGMA)?;
        let t = rep(G21Element::TAU)?;
        let relations = s.pow(7)?.is_identity()
            && t.pow(3)?.is_identity()
            && s.try_mul(&t)? == t.try_mul(&s.try_mul(&s)?)?;
        if !relations {
            return Err(Error::Unsupported(format!("{name}: matrices violate the presentation")));
        }
        let mut values = Vec::with_capacity(5);
        for g in CLASS_REPRESENTATIVES {
            let m = rep(g)?;
            values.push((0..m.rows()).fold(Zeta21::zero(), |acc, i| acc + m.get(i, i).clone()));
        }
        Ok(Character::new(name, values.try_into().expect("five classes")))
    }

    pub fn degree(&self) -> Option<BigInt> {
        self.values[0].as_scalar().cloned()
    }

    pub fn value(&self, g: G21Element) -> &Zeta21 {
        &self.values[class_index(g)]
    }

    pub fn galois_conj(&self, name: &str, k: i64) -> Result<Self> {
        let mut values = self.values.clone();
        for v in &mut values {
            *v = v.galois_conj(k)?;
        }
        Ok(Character::new(name, values))
    }

    /// The kernel of the representation: elements with `χ(g) = χ(1)`.
    pub fn kernel(&self) -> Vec<G21Element> {
        G21Element::all().filter(|&g| *self.value(g) == self.values[0]).collect()
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel() == vec![G21Element::IDENTITY]
    }
}

impl std::ops::Add for &Character {
    type Output = Character;
    fn add(self, rhs: &Character) -> Character {
        let values = std::array::from_fn(|i| self.values[i].clone() + rhs.values[i].clone());
        Character::new(format!("{}+{}", self.name, rhs.name), values)
    }
}

/// Cyclic permutation matrix `e_i ↦ e_{i+1}` on `n` coordinates.
fn cyclic_permutation(n: usize) -> Matrix<Zeta21> {
    Matrix::from_fn(n, n, |i, j| if i == (j + 1) % n { Zeta21::one() } else { Zeta21::zero() })
}

/// `ρ(σ) = diag(ξ, ξ², ξ⁴)` and `ρ(τ)` the cyclic permutation.
pub fn v3_representation() -> (Matrix<Zeta21>, Matrix<Zeta21>) {
    let diag = [3, 6, 12];
    let sigma = Matrix::from_fn(3, 3, |i, j| if i == j { z(diag[i]) } else { Zeta21::zero() });
    (sigma, cyclic_permutation(3))
}

/// Rows `C, V₁, V̄₁, V₃, V̄₃`, computed from explicit representations.
pub fn character_table() -> Vec<Character> {
    let one_dim = |name: &str, j: i64| {
        let sigma = Matrix::from_rows(vec![vec![Zeta21::one()]]);
        let tau = Matrix::from_rows(vec![vec![omega().pow(j as u32)]]);
        Character::of_representation(name, &sigma, &tau).expect("characters of G/⟨σ⟩")
    };
    let (s, t) = v3_representation();
    let v3 = Character::of_representation("V3", &s, &t).expect("valid representation");
    let v3bar = v3.galois_conj("V3bar", -1).expect("unit");
    vec![one_dim("C", 0), one_dim("V1", 1), one_dim("V1bar", 2), v3, v3bar]
}

/// Table as printed: columns `1, σ, σ³, τ, τ²`.
pub fn printed_table() -> Vec<Character> {
    let one = Zeta21::one;
    let zero = Zeta21::zero;
    let three = || Zeta21::from_i64_coeffs(&[3]);
    let w = omega();
    let wb = w.conj();
    let bb = b().conj();
    vec![
        Character::new("C", [one(), one(), one(), one(), one()]),
        Character::new("V1", [one(), one(), one(), w.clone(), wb.clone()]),
        Character::new("V1bar", [one(), one(), one(), wb, w]),
        Character::new("V3", [three(), b(), bb.clone(), zero(), zero()]),
        Character::new("V3bar", [three(), bb, b(), zero(), zero()]),
    ]
}

/// `(1/21) Σ_C |C| χ(C) conj(ψ(C))`.
pub fn inner_product(chi: &Character, psi: &Character) -> Result<BigRational> {
    let sizes = [1i64, 3, 3, 7, 7];
    let mut sum = Zeta21::zero();
    for ((x, y), size) in chi.values.iter().zip(&psi.values).zip(sizes) {
        sum = sum + (x.clone() * y.conj()).scale(&BigInt::from(size));
    }
    let s = sum.as_scalar().ok_or(Error::NotRational)?;
    Ok(BigRational::new(s.clone(), BigInt::from(21)))
}

/// Multiplicities of the irreducibles in `chi`, in table order.
pub fn decompose(chi: &Character) -> Result<Vec<(String, BigInt)>> {
    character_table()
        .iter()
        .map(|irr| {
            let m = inner_product(chi, irr)?;
            if !m.is_integer() || m < BigRational::zero() {
                return Err(Error::Unsupported(format!(
                    "{} is not a character: multiplicity of {} is {m}",
                    chi.name, irr.name
                )));
            }
            Ok((irr.name.clone(), m.to_integer()))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum H0Verdict {
    IrreducibleV3,
    IrreducibleV3Bar,
    SumOfOnes,
    Inconsistent,
}

impl fmt::Display for H0Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            H0Verdict::IrreducibleV3 => "irreducible-3-dim (V3)",
            H0Verdict::IrreducibleV3Bar => "irreducible-3-dim (V3bar)",
            H0Verdict::SumOfOnes => "sum-of-ones",
            H0Verdict::Inconsistent => "inconsistent",
        })
    }
}

/// Identifies a 3-dimensional representation from the trace of `σ`.
///
/// The 3-dimensional characters at `σ` take only the values read off the
/// computed table: `b`, `b̄`, or `3` for a sum of characters of `G/⟨σ⟩`.
pub fn classify_h0(dim: u32, trace_at_sigma: &Zeta21) -> Result<H0Verdict> {
    if dim != 3 {
        return Err(Error::Unsupported(format!("classification is for dimension 3, got {dim}")));
    }
    let table = character_table();
    let sigma = 1;
    if *trace_at_sigma == table[3].values[sigma] {
        return Ok(H0Verdict::IrreducibleV3);
    }
    if *trace_at_sigma == table[4].values[sigma] {
        return Ok(H0Verdict::IrreducibleV3Bar);
    }
    // any sum of three 1-dimensionals
    let ones: Zeta21 = (0..3).fold(Zeta21::zero(), |acc, i| acc + table[i].values[sigma].clone());
    if *trace_at_sigma == ones {
        return Ok(H0Verdict::SumOfOnes);
    }
    Ok(H0Verdict::Inconsistent)
}

/// Whether some 2-dimensional representation is faithful.
///
/// Every 2-dimensional representation is a sum of irreducibles of total
/// degree 2, so it suffices to check those sums.
pub fn faithful_two_dimensional_exists() -> bool {
    let table = character_table();
    let degree = |c: &Character| c.degree().expect("integral degree");
    let two = BigInt::from(2);
    let mut sums: Vec<Character> = table.iter().filter(|c| degree(c) == two).cloned().collect();
    for (i, a) in table.iter().enumerate() {
        for c in &table[i..] {
            if degree(a) + degree(c) == two {
                sums.push(a + c);
            }
        }
    }
    sums.iter().any(Character::is_faithful)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws() {
        let all: Vec<G21Element> = G21Element::all().collect();
        assert_eq!(all.len(), 21);
        for &a in &all {
            for &b in &all {
                for &c in &all {
                    assert_eq!((a * b) * c, a * (b * c));
                }
            }
        }
        let (s, t) = (G21Element::SIGMA, G21Element::TAU);
        assert_eq!(s.order(), 7);
        assert_eq!(t.order(), 3);
        assert_eq!(s * t, t * s * s);
        assert_eq!(t.inverse() * s * t, s * s);
    }

    #[test]
    fn classes() {
        let cls = conjugacy_classes();
        let sizes: Vec<usize> = cls.iter().map(ConjugacyClass::size).collect();
        assert_eq!(sizes, vec![1, 3, 3, 7, 7]);
        assert_eq!(
            cls[1].elements,
            vec![G21Element::new(0, 1), G21Element::new(0, 2), G21Element::new(0, 4)]
        );
        assert_eq!(cls[3].elements, (0..7).map(|k| G21Element::new(1, k)).collect::<Vec<_>>());
        for (i, c) in cls.iter().enumerate() {
            assert!(c.elements.iter().all(|&g| class_index(g) == i));
        }
    }

    #[test]
    fn dimensions() {
        assert_eq!(irrep_dimensions(), vec![1, 1, 1, 3, 3]);
        assert_eq!(dimension_solutions(5, 5), vec![vec![1, 1, 1, 1, 1]]);
        // brute-force oracle over all ordered divisor tuples
        let divs = [1u64, 3, 7, 21];
        let mut ordered = 0;
        for code in 0..4usize.pow(5) {
            let t: Vec<u64> = (0..5).map(|i| divs[(code / 4usize.pow(i)) % 4]).collect();
            if t.iter().map(|d| d * d).sum::<u64>() == 21 {
                let mut s = t.clone();
                s.sort();
                assert_eq!(s, vec![1, 1, 1, 3, 3]);
                ordered += 1;
            }
        }
        // 5!/(3!·2!) arrangements of (1,1,1,3,3)
        assert_eq!(ordered, 10);
    }

    #[test]
    fn table_matches_printed() {
        assert_eq!(character_table(), printed_table());
    }

    #[test]
    fn orthogonality() {
        let t = character_table();
        for (i, a) in t.iter().enumerate() {
            for (j, c) in t.iter().enumerate() {
                let expected = BigRational::from_integer(BigInt::from(i64::from(i == j)));
                assert_eq!(inner_product(a, c).unwrap(), expected);
            }
        }
        let sum_deg2: BigInt = t.iter().map(|c| c.degree().unwrap().pow(2)).sum();
        assert_eq!(sum_deg2, BigInt::from(21));
    }

    #[test]
    fn sums_and_decomposition() {
        let t = character_table();
        let ones = &(&t[0] + &t[1]) + &t[2];
        assert_eq!(inner_product(&ones, &ones).unwrap(), BigRational::from_integer(3.into()));
        let d = decompose(&ones).unwrap();
        let mult: Vec<i64> = d.iter().map(|(_, m)| i64::try_from(m).unwrap()).collect();
        assert_eq!(mult, vec![1, 1, 1, 0, 0]);
        let v = decompose(&(&t[3] + &t[3])).unwrap();
        assert_eq!(v[3].1, BigInt::from(2));
    }

    #[test]
    fn three_dimensional_values_at_sigma() {
        let t = character_table();
        for c in &t[3..] {
            let v = &c.values[1];
            assert!(*v == b() || *v == b().conj());
            assert_ne!(*v, Zeta21::from_i64_coeffs(&[3]));
        }
    }

    #[test]
    fn classify() {
        assert_eq!(classify_h0(3, &b().conj()).unwrap(), H0Verdict::IrreducibleV3Bar);
        assert_eq!(classify_h0(3, &b()).unwrap(), H0Verdict::IrreducibleV3);
        assert_eq!(classify_h0(3, &Zeta21::from_i64_coeffs(&[3])).unwrap(), H0Verdict::SumOfOnes);
        assert_eq!(classify_h0(3, &xi()).unwrap(), H0Verdict::Inconsistent);
        assert!(classify_h0(2, &b()).is_err());
    }

    #[test]
    fn no_faithful_plane_representation() {
        assert!(!faithful_two_dimensional_exists());
        assert!(character_table()[3].is_faithful());
    }

    #[test]
    fn wrong_matrices_rejected() {
        let (s, _) = v3_representation();
        let bad_tau = Matrix::identity(3);
        assert!(Character::of_representation("bad", &s, &bad_tau).is_err());
    }
}
