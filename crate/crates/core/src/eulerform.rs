//! Euler-pairing Gram matrices built from Hilbert polynomials, Serre
//! operators, and the small counting identities that ride on them.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::ExactMatrix;
use crate::matrix::Matrix;
use crate::poly::IntValuedPolynomial;
use crate::scalar::is_prime;

/// `k ↦ χ(O(k))` together with its dimension and degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertProfile {
    name: String,
    dimension: usize,
    polynomial: IntValuedPolynomial,
    degree: BigInt,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl HilbertProfile {
    /// Dimension and degree are read off the leading coefficient:
    /// `n = deg P`, `deg = n!·p_n`.
    pub fn new(name: impl Into<String>, polynomial: IntValuedPolynomial) -> Result<Self> {
        let dimension = polynomial
            .degree()
            .ok_or_else(|| Error::Unsupported("zero Hilbert polynomial".into()))?;
        let degree = polynomial.normalized_leading();
        if degree.is_zero() {
            return Err(Error::Unsupported("profile of degree zero".into()));
        }
        Ok(HilbertProfile {
            name: name.into(),
            dimension,
            polynomial,
            degree,
        })
    }

    /// The Hilbert polynomial shared with `P^n` after fixing `ω = O(n+1)`:
    /// `(−1)^n (k−1)(k−2)…(k−n)/n!`.
    pub fn fake_projective(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Unsupported("dimension must be positive".into()));
        }
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        let scale = BigRational::new(BigInt::from(sign), factorial(n));
        let roots: Vec<i64> = (1..=n as i64).collect();
        Self::new(
            format!("fake-pn:{n}"),
            IntValuedPolynomial::from_roots(scale, &roots)?,
        )
    }

    /// `P^n` with `O(1)` the hyperplane class: `binom(k+n, n)`.
    pub fn projective(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Unsupported("dimension must be positive".into()));
        }
        let scale = BigRational::new(BigInt::one(), factorial(n));
        let roots: Vec<i64> = (1..=n as i64).map(|r| -r).collect();
        Self::new(
            format!("pn:{n}"),
            IntValuedPolynomial::from_roots(scale, &roots)?,
        )
    }

    /// Wilson's fourfold, twisted by powers of the anticanonical bundle:
    /// `1 + 25/8 · l(l+1)(3l² + 3l + 2)`.
    pub fn wilson() -> Self {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        // expand 25/8 (3l^4 + 6l^3 + 5l^2 + 2l) + 1
        let coeffs = vec![q(1, 1), q(50, 8), q(125, 8), q(150, 8), q(75, 8)];
        let poly = IntValuedPolynomial::new(coeffs).expect("Wilson polynomial is integer-valued");
        Self::new("wilson", poly).expect("Wilson profile has degree 225")
    }

    /// Looks up a named profile: `wilson`, `fake-plane`, `fake-pn:N`, `pn:N`.
    pub fn by_name(name: &str) -> Result<Self> {
        let parse_n = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| Error::Parse(format!("bad dimension in `{name}`")))
        };
        match name {
            "wilson" => Ok(Self::wilson()),
            "fake-plane" => Self::fake_projective(2),
            _ => {
                if let Some(n) = name.strip_prefix("fake-pn:") {
                    Self::fake_projective(parse_n(n)?)
                } else if let Some(n) = name.strip_prefix("pn:") {
                    Self::projective(parse_n(n)?)
                } else {
                    Err(Error::Parse(format!("unknown profile `{name}`")))
                }
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn polynomial(&self) -> &IntValuedPolynomial {
        &self.polynomial
    }

    /// `n!·p_n`; the anticanonical degree when the twist is anticanonical.
    pub fn degree(&self) -> &BigInt {
        &self.degree
    }

    pub fn eval(&self, k: i64) -> BigInt {
        self.polynomial.eval(k)
    }

    /// `(0, 1, …, n)`.
    pub fn standard_twists(&self) -> Vec<i64> {
        (0..=self.dimension as i64).collect()
    }

    /// `(0, −1, …, −n)`.
    pub fn dual_twists(&self) -> Vec<i64> {
        (0..=self.dimension as i64).map(|k| -k).collect()
    }

    /// `deg^(n+1)`, the determinant of the Gram matrix on standard twists.
    pub fn expected_determinant(&self) -> BigInt {
        num_traits::pow(self.degree.clone(), self.dimension + 1)
    }
}

/// Gram matrix of the Euler pairing on `O(c_0), …, O(c_m)`.
///
/// Entry law: `entry(i, j) = χ(O(c_i), O(c_j)) = P(c_j − c_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    base: ExactMatrix,
    twists: Vec<i64>,
    profile: HilbertProfile,
    /// Set when the base was reduced mod a prime dividing the degree.
    prime_divides_degree: bool,
}

impl GramMatrix {
    pub fn from_twists(profile: &HilbertProfile, twists: &[i64]) -> Result<Self> {
        if twists.is_empty() {
            return Err(Error::Unsupported("empty twist sequence".into()));
        }
        let n = twists.len();
        let ints = Matrix::from_fn(n, n, |i, j| profile.eval(twists[j] - twists[i]));
        Ok(GramMatrix {
            base: ExactMatrix::from_integers(&ints),
            twists: twists.to_vec(),
            profile: profile.clone(),
            prime_divides_degree: false,
        })
    }

    /// `A_P` on the standard twists `(0..=n)`.
    pub fn standard(profile: &HilbertProfile) -> Self {
        Self::from_twists(profile, &profile.standard_twists()).expect("nonempty twists")
    }

    pub fn base(&self) -> &ExactMatrix {
        &self.base
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn profile(&self) -> &HilbertProfile {
        &self.profile
    }

    pub fn size(&self) -> usize {
        self.twists.len()
    }

    pub fn modulus(&self) -> u64 {
        self.base.modulus()
    }

    pub fn prime_divides_degree(&self) -> bool {
        self.prime_divides_degree
    }

    /// Twists form a run `c, c+1, …, c+n` of length `dim + 1`.
    pub fn has_consecutive_twists(&self) -> bool {
        self.twists.len() == self.profile.dimension + 1
            && self.twists.windows(2).all(|w| w[1] - w[0] == 1)
    }

    /// Entrywise residues mod `p`.
    pub fn reduce_mod(&self, p: u64) -> Result<GramMatrix> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let base = self.base.reduce_mod(p)?;
        let divides = (self.profile.degree() % BigInt::from(p)).is_zero();
        Ok(GramMatrix {
            base,
            twists: self.twists.clone(),
            profile: self.profile.clone(),
            prime_divides_degree: divides,
        })
    }

    /// Re-evaluates every entry from the profile and compares.
    pub fn entry_law_holds(&self) -> bool {
        let n = self.size();
        let p = BigInt::from(self.modulus());
        (0..n).all(|i| {
            (0..n).all(|j| {
                let mut v = self.profile.eval(self.twists[j] - self.twists[i]);
                if !p.is_zero() {
                    v = ((v % &p) + &p) % &p;
                }
                self.base.entry(i, j)
                    == match self.base {
                        ExactMatrix::Rational(_) => {
                            crate::RingElement::Rational(BigRational::from_integer(v))
                        }
                        ExactMatrix::Modular { p, .. } => crate::RingElement::Residue {
                            value: u64::try_from(v).expect("residue"),
                            p,
                        },
                    }
            })
        })
    }

    /// Lower triangle zero, unit diagonal: `χ(E_j, E_i) = 0` for `j > i`.
    pub fn numerically_exceptional(&self) -> bool {
        numerically_exceptional(&self.base)
    }
}

/// Lower triangle zero and unit diagonal.
pub fn numerically_exceptional(m: &ExactMatrix) -> bool {
    let n = m.size();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let e = m.entry(i, j);
            if i == j {
                match e {
                    crate::RingElement::Rational(q) => q.is_one(),
                    crate::RingElement::Residue { value, .. } => value == 1,
                }
            } else if i > j {
                e.is_zero()
            } else {
                true
            }
        })
    })
}

/// `S = A⁻¹·Aᵗ`, the numerical Serre functor on a Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreOperator {
    matrix: ExactMatrix,
    source: ExactMatrix,
}

impl SerreOperator {
    /// Computes `S` and verifies `A·S = Aᵗ` and `Sᵗ·A·S = A`.
    pub fn new(form: &ExactMatrix) -> Result<Self> {
        let inv = form.inverse()?;
        let s = inv.try_mul(&form.transpose())?;
        let op = SerreOperator {
            matrix: s,
            source: form.clone(),
        };
        if !op.satisfies_relations()? {
            return Err(Error::Unsupported(
                "Serre relation failed; arithmetic defect".into(),
            ));
        }
        Ok(op)
    }

    pub fn from_gram(g: &GramMatrix) -> Result<Self> {
        Self::new(g.base())
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn source(&self) -> &ExactMatrix {
        &self.source
    }

    /// `A·S = Aᵗ` and `Sᵗ·A·S = A`.
    pub fn satisfies_relations(&self) -> Result<bool> {
        let a = &self.source;
        let s = &self.matrix;
        let a_s = a.try_mul(s)?;
        let sts = s.transpose().try_mul(&a_s)?;
        Ok(a_s == a.transpose() && sts == *a)
    }

    pub fn order(&self, bound: Option<u64>) -> Result<Option<u64>> {
        self.matrix.matrix_order(bound)
    }
}

/// `c_1 c_{n−1}[P^n] = n(n+1)²/2`.
pub fn chern_identity(n: u64) -> u64 {
    n * (n + 1) * (n + 1) / 2
}

/// One row of the equivariant Hochschild count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantRow {
    pub group: &'static str,
    pub irrep_count: u32,
    pub conjugacy_class_count: u32,
    pub singularities: &'static [(u32, &'static str)],
    pub r_g: u32,
    pub euler_z: u32,
    pub kodaira: u8,
}

/// `3·#IrrRep(G) = χ(Z_G) + r_G`.
pub fn equivariant_count_check(row: &EquivariantRow) -> bool {
    3 * row.irrep_count == row.euler_z + row.r_g
}

/// Dimension of orbifold cohomology when `G` acts trivially on `H*(S)` and
/// every nontrivial element fixes exactly three points.
pub fn orbifold_hh_dimension(conjugacy_class_count: u32) -> u32 {
    3 * conjugacy_class_count
}

/// Quotients of a fake projective plane by subgroups of `G_21`.
///
/// `r_G`, `χ(Z_G)` and the singularity profiles are transcribed data.
pub const EQUIVARIANT_ROWS: [EquivariantRow; 4] = [
    EquivariantRow {
        group: "1",
        irrep_count: 1,
        conjugacy_class_count: 1,
        singularities: &[],
        r_g: 0,
        euler_z: 3,
        kodaira: 2,
    },
    EquivariantRow {
        group: "Z/3",
        irrep_count: 3,
        conjugacy_class_count: 3,
        singularities: &[(3, "1/3(1,2)")],
        r_g: 0,
        euler_z: 9,
        kodaira: 2,
    },
    EquivariantRow {
        group: "Z/7",
        irrep_count: 7,
        conjugacy_class_count: 7,
        singularities: &[(3, "1/7(1,3)")],
        r_g: 9,
        euler_z: 12,
        kodaira: 1,
    },
    EquivariantRow {
        group: "G21",
        irrep_count: 5,
        conjugacy_class_count: 5,
        singularities: &[(3, "1/3(1,2)"), (1, "1/7(1,3)")],
        r_g: 3,
        euler_z: 12,
        kodaira: 1,
    },
];

impl EquivariantRow {
    /// Non-special characters per singularity type: `1/3(1,2)` points give
    /// none, `1/7(1,3)` points give three each.
    pub fn r_g_from_singularities(&self) -> Option<u32> {
        self.singularities
            .iter()
            .map(|&(count, label)| match label {
                "1/3(1,2)" => Some(0),
                "1/7(1,3)" => Some(3 * count),
                _ => None,
            })
            .sum()
    }

    pub fn singularity_label(&self) -> String {
        if self.singularities.is_empty() {
            return "none".into();
        }
        self.singularities
            .iter()
            .map(|(c, l)| if *c == 1 { l.to_string() } else { format!("{c}x{l}") })
            .collect::<Vec<_>>()
            .join("+")
    }
}

impl fmt::Display for HilbertProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (dim {}, deg {}): {}",
            self.name, self.dimension, self.degree, self.polynomial
        )
    }
}

/// `true` iff the sign pattern `P(k) = P(−1−k)` holds on `range`.
pub fn serre_symmetric(profile: &HilbertProfile, range: std::ops::RangeInclusive<i64>) -> bool {
    range.into_iter().all(|k| profile.eval(k) == profile.eval(-1 - k))
}

/// `|det|` of the Gram matrix on standard twists, for display.
pub fn standard_determinant(profile: &HilbertProfile) -> BigInt {
    GramMatrix::standard(profile)
        .base()
        .to_integer_matrix()
        .and_then(|m| m.determinant_bareiss())
        .expect("integer Gram matrix")
        .abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::RingElement;

    fn int_rows(g: &GramMatrix) -> Vec<Vec<i64>> {
        g.base().to_i64_matrix().unwrap().to_rows()
    }

    #[test]
    fn fake_plane_polynomial() {
        let p = HilbertProfile::fake_projective(2).unwrap();
        let expected: IntValuedPolynomial = "1/2*(k-1)(k-2)".parse().unwrap();
        assert_eq!(p.polynomial(), &expected);
        assert_eq!(p.degree(), &BigInt::from(1));
    }

    #[test]
    fn fake_line_closed_form() {
        let p = HilbertProfile::fake_projective(1).unwrap();
        assert_eq!(p.polynomial(), &IntValuedPolynomial::from_integers(&[1, -1]).unwrap());
        assert_eq!(p.eval(0), BigInt::from(1));
    }

    #[test]
    fn fake_fourfold_at_minus_one() {
        let p = HilbertProfile::fake_projective(4).unwrap();
        assert_eq!(p.eval(-1), BigInt::from(5));
    }

    #[test]
    fn fake_profiles_vanish_on_one_to_n() {
        for n in 1..=6 {
            let p = HilbertProfile::fake_projective(n).unwrap();
            assert_eq!(p.eval(0), BigInt::one());
            for k in 1..=n as i64 {
                assert!(p.eval(k).is_zero(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn wilson_values() {
        let w = HilbertProfile::wilson();
        let vals: Vec<BigInt> = (0..5).map(|k| w.eval(k)).collect();
        let expected: Vec<BigInt> = [1, 51, 376, 1426, 3876].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(vals, expected);
        assert_eq!(w.dimension(), 4);
        assert_eq!(w.degree(), &BigInt::from(225));
        for n in 0..=8 {
            assert_eq!(w.eval(-1 - n), w.eval(n));
        }
    }

    #[test]
    fn projective_plane_gram() {
        let p2 = HilbertProfile::projective(2).unwrap();
        let g = GramMatrix::from_twists(&p2, &[0, 1, 2]).unwrap();
        assert_eq!(int_rows(&g), vec![vec![1, 3, 6], vec![0, 1, 3], vec![0, 0, 1]]);
        assert!(g.numerically_exceptional());
    }

    #[test]
    fn fake_plane_dual_twists() {
        let p = HilbertProfile::fake_projective(2).unwrap();
        let g = GramMatrix::from_twists(&p, &[0, -1, -2]).unwrap();
        assert_eq!(int_rows(&g), vec![vec![1, 3, 6], vec![0, 1, 3], vec![0, 0, 1]]);
        assert!(g.numerically_exceptional());
    }

    #[test]
    fn wilson_mod_two_gram() {
        let g = GramMatrix::standard(&HilbertProfile::wilson()).reduce_mod(2).unwrap();
        assert_eq!(
            int_rows(&g),
            vec![
                vec![1, 1, 0, 0, 0],
                vec![1, 1, 1, 0, 0],
                vec![1, 1, 1, 1, 0],
                vec![0, 1, 1, 1, 1],
                vec![0, 0, 1, 1, 1],
            ]
        );
        assert!(!g.prime_divides_degree());
        assert!(g.entry_law_holds());
    }

    #[test]
    fn wilson_mod_three_is_flagged() {
        let g = GramMatrix::standard(&HilbertProfile::wilson()).reduce_mod(3).unwrap();
        assert!(g.prime_divides_degree());
        assert!(matches!(SerreOperator::from_gram(&g), Err(Error::Singular)));
    }

    #[test]
    fn reduce_mod_rejects_composite() {
        let g = GramMatrix::standard(&HilbertProfile::wilson());
        assert_eq!(g.reduce_mod(4).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn reduce_is_noop_on_small_entries() {
        let p2 = HilbertProfile::projective(1).unwrap();
        let g = GramMatrix::standard(&p2);
        // [[1,2],[0,1]] mod 3
        let r = g.reduce_mod(3).unwrap();
        assert_eq!(int_rows(&r), int_rows(&g));
    }

    #[test]
    fn wilson_not_exceptional_over_z() {
        let g = GramMatrix::standard(&HilbertProfile::wilson());
        assert_eq!(g.base().entry(1, 0), RingElement::Rational(BigRational::from_integer(1.into())));
        assert!(!g.numerically_exceptional());
    }

    #[test]
    fn wilson_serre_operator_mod_two() {
        let g = GramMatrix::standard(&HilbertProfile::wilson()).reduce_mod(2).unwrap();
        let s = SerreOperator::from_gram(&g).unwrap();
        assert_eq!(
            s.matrix().to_i64_matrix().unwrap().to_rows(),
            vec![
                vec![1, 1, 0, 0, 0],
                vec![0, 0, 1, 0, 0],
                vec![0, 0, 0, 1, 0],
                vec![1, 0, 0, 0, 1],
                vec![1, 0, 0, 0, 0],
            ]
        );
        assert_eq!(s.order(None).unwrap(), Some(8));
    }

    #[test]
    fn symmetric_form_has_trivial_serre() {
        let a = ExactMatrix::from_i64_rows(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]]);
        let s = SerreOperator::new(&a).unwrap();
        assert!(s.matrix().is_identity());
    }

    #[test]
    fn p3_serre_mod_five() {
        let g = GramMatrix::standard(&HilbertProfile::projective(3).unwrap())
            .reduce_mod(5)
            .unwrap();
        let s = SerreOperator::from_gram(&g).unwrap();
        assert!(s.satisfies_relations().unwrap());
    }

    #[test]
    fn p2_serre_order_mod_two_matches_iteration() {
        let g = GramMatrix::standard(&HilbertProfile::projective(2).unwrap())
            .reduce_mod(2)
            .unwrap();
        let s = SerreOperator::from_gram(&g).unwrap();
        // oracle: multiply until the identity appears
        let m = s.matrix().to_i64_matrix().unwrap();
        let mut power = m.clone();
        let mut k = 1;
        while !power.map(|v| v.rem_euclid(2)).is_identity() {
            power = (&power * &m).map(|v| v.rem_euclid(2));
            k += 1;
            assert!(k <= 100);
        }
        assert_eq!(s.order(Some(100)).unwrap(), Some(k));
    }

    #[test]
    fn determinant_is_degree_power() {
        for profile in [
            HilbertProfile::wilson(),
            HilbertProfile::projective(3).unwrap(),
            HilbertProfile::fake_projective(4).unwrap(),
        ] {
            let g = GramMatrix::standard(&profile);
            assert!(g.has_consecutive_twists());
            let det = g.base().determinant().unwrap().as_integer().unwrap();
            assert_eq!(det, profile.expected_determinant(), "{}", profile.name());
        }
        assert_eq!(
            HilbertProfile::wilson().expected_determinant(),
            num_traits::pow(BigInt::from(15), 10)
        );
    }

    #[test]
    fn chern_values() {
        assert_eq!(chern_identity(4), 50);
        assert_eq!(chern_identity(1), 2);
        assert_eq!(chern_identity(3), 24);
    }

    #[test]
    fn equivariant_rows_balance() {
        for row in &EQUIVARIANT_ROWS {
            assert!(equivariant_count_check(row), "{}", row.group);
            assert_eq!(orbifold_hh_dimension(row.conjugacy_class_count), 3 * row.irrep_count);
            assert_eq!(row.r_g_from_singularities(), Some(row.r_g));
        }
        assert_eq!(orbifold_hh_dimension(5), 15);
        assert_eq!(orbifold_hh_dimension(1), 3);
        assert_eq!(orbifold_hh_dimension(3), 9);
    }

    #[test]
    fn profile_lookup() {
        assert_eq!(HilbertProfile::by_name("fake-pn:3").unwrap().dimension(), 3);
        assert_eq!(HilbertProfile::by_name("pn:2").unwrap().eval(1), BigInt::from(3));
        assert!(HilbertProfile::by_name("pn:x").is_err());
        assert!(HilbertProfile::by_name("nope").is_err());
    }
}
