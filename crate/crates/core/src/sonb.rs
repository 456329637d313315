//! Semi-orthonormal bases of a bilinear form.
//!
//! A basis `e_1, …, e_n` is semi-orthonormal for `(u, v) = uᵗ·A·v` when
//! `(e_i, e_i) = 1` and `(e_j, e_i) = 0` for every `j > i`. Over a finite
//! field the search below is exhaustive: it either returns the first basis in
//! canonical order or certifies that none exists.
//!
//! Vectors are ordered by their base-`p` index with coordinate 0 as the least
//! significant digit, so `(1, 0, …, 0)` is the smallest nonzero vector.

use std::collections::HashSet;

use rayon::prelude::*;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::eulerform::SerreOperator;
use crate::exact::ExactMatrix;
use crate::matrix::Matrix;
use crate::with_prime_field;

pub type Vector = Vec<i64>;

/// Default cap on `p^dimension` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 22;

/// `V = (F_p)^n` or `Z^n` with the pairing `(u, v) = uᵗ·A·v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpace {
    modulus: u64,
    form: Matrix<i64>,
}

impl FormSpace {
    pub fn new(form: &ExactMatrix) -> Result<Self> {
        if !form.is_square() {
            return Err(Error::NotSquare {
                rows: form.size(),
                cols: 0,
            });
        }
        Ok(FormSpace {
            modulus: form.modulus(),
            form: form.to_i64_matrix()?,
        })
    }

    /// Form over `F_p` from arbitrary integer entries.
    pub fn modular(p: u64, form: &Matrix<i64>) -> Result<Self> {
        Self::new(&ExactMatrix::modular(p, form)?)
    }

    pub fn integral(form: Matrix<i64>) -> Result<Self> {
        if !form.is_square() {
            return Err(Error::NotSquare {
                rows: form.rows(),
                cols: form.cols(),
            });
        }
        Ok(FormSpace { modulus: 0, form })
    }

    pub fn dimension(&self) -> usize {
        self.form.rows()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn form(&self) -> &Matrix<i64> {
        &self.form
    }

    /// The same space with the form transposed, i.e. with the basis order
    /// convention reversed.
    pub fn transposed(&self) -> FormSpace {
        FormSpace {
            modulus: self.modulus,
            form: self.form.transpose(),
        }
    }

    fn reduce(&self, v: i128) -> i128 {
        if self.modulus == 0 {
            v
        } else {
            v.rem_euclid(self.modulus as i128)
        }
    }

    pub fn pair(&self, u: &[i64], v: &[i64]) -> i128 {
        let mut acc: i128 = 0;
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            let row: i128 = self.form.row(i).iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum();
            acc = self.reduce(acc + ui as i128 * self.reduce(row));
        }
        self.reduce(acc)
    }

    /// `p^n`, the number of vectors (finite modulus only).
    pub fn vector_count(&self) -> Option<u128> {
        (self.modulus != 0).then(|| (self.modulus as u128).pow(self.dimension() as u32))
    }

    /// Vector with the given canonical index.
    pub fn decode(&self, mut index: u128) -> Vector {
        let p = self.modulus as u128;
        (0..self.dimension())
            .map(|_| {
                let d = (index % p) as i64;
                index /= p;
                d
            })
            .collect()
    }

    pub fn encode(&self, v: &[i64]) -> u128 {
        let p = self.modulus as u128;
        v.iter()
            .rev()
            .fold(0u128, |acc, &d| acc * p + d.rem_euclid(p as i64) as u128)
    }

    fn normalize(&self, v: &mut [i64]) {
        if self.modulus != 0 {
            for x in v {
                *x = x.rem_euclid(self.modulus as i64);
            }
        }
    }

    fn check_cap(&self, cap: u128) -> Result<u128> {
        let size = self.vector_count().ok_or(Error::NeedsFiniteModulus)?;
        if size > cap {
            return Err(Error::EnumerationCap { size, cap });
        }
        Ok(size)
    }

    fn apply(&self, m: &Matrix<i64>, v: &[i64]) -> Vector {
        let mut out: Vector = m.mul_vec(v);
        self.normalize(&mut out);
        out
    }
}

/// All vectors with `(x, x) = 1`, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSet {
    vectors: Vec<Vector>,
}

impl CandidateSet {
    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    fn position(&self, space: &FormSpace, v: &[i64]) -> Option<usize> {
        if space.modulus == 0 {
            return self.vectors.iter().position(|x| x == v);
        }
        // finite-field candidates are sorted by canonical index
        let key = space.encode(v);
        self.vectors
            .binary_search_by_key(&key, |x| space.encode(x))
            .ok()
    }
}

pub fn enumerate_candidates(space: &FormSpace) -> Result<CandidateSet> {
    enumerate_candidates_capped(space, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_candidates_capped(space: &FormSpace, cap: u128) -> Result<CandidateSet> {
    space.check_cap(cap)?;
    let n = space.dimension();
    let p = space.modulus as i64;
    let a = &space.form;
    let mut vectors = Vec::new();
    let mut x = vec![0i64; n];
    // odometer in canonical order, coordinate 0 fastest
    while let Some(k) = x.iter().position(|&d| d != p - 1) {
        x[k] += 1;
        x[..k].fill(0);
        let mut q = 0i64;
        for i in 0..n {
            if x[i] != 0 {
                let row = (0..n).fold(0i64, |acc, j| acc + a.get(i, j) * x[j]);
                q = (q + x[i] * row.rem_euclid(p)) % p;
            }
        }
        if q == 1 {
            vectors.push(x.clone());
        }
    }
    Ok(CandidateSet { vectors })
}

/// Integer vectors with coordinates in `[-bound, bound]` and `(x, x) = 1`.
///
/// Ordered by the coordinates read from the last to the first.
pub fn enumerate_candidates_in_box(space: &FormSpace, bound: i64) -> Result<CandidateSet> {
    if space.modulus != 0 {
        return Err(Error::Unsupported("box enumeration is for integral forms".into()));
    }
    let n = space.dimension() as u32;
    let width = (2 * bound + 1) as u128;
    let size = width.pow(n);
    if size > DEFAULT_ENUMERATION_CAP {
        return Err(Error::EnumerationCap {
            size,
            cap: DEFAULT_ENUMERATION_CAP,
        });
    }
    let vectors = (0..size)
        .map(|mut i| {
            (0..n)
                .map(|_| {
                    let d = (i % width) as i64 - bound;
                    i /= width;
                    d
                })
                .collect::<Vector>()
        })
        .filter(|v| space.pair(v, v) == 1)
        .collect();
    Ok(CandidateSet { vectors })
}

/// One orbit of the Serre operator, starting at its least element and listed
/// as `x, Sx, S²x, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub vectors: Vec<Vector>,
}

impl Orbit {
    pub fn representative(&self) -> &Vector {
        &self.vectors[0]
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

fn serre_matrix(space: &FormSpace, s: &SerreOperator) -> Result<Matrix<i64>> {
    if s.matrix().modulus() != space.modulus || space.modulus == 0 {
        return Err(Error::Unsupported(
            "Serre orbits need a residue operator over the same field".into(),
        ));
    }
    s.matrix().to_i64_matrix()
}

/// Partition of the candidates into orbits of `S`.
pub fn serre_orbits(
    space: &FormSpace,
    cands: &CandidateSet,
    s: &SerreOperator,
) -> Result<Vec<Orbit>> {
    let m = serre_matrix(space, s)?;
    orbits_under(space, cands, &m)
}

/// Orbits under an arbitrary matrix acting on the candidate set.
pub fn orbits_under(space: &FormSpace, cands: &CandidateSet, m: &Matrix<i64>) -> Result<Vec<Orbit>> {
    let mut seen = vec![false; cands.len()];
    let mut orbits = Vec::new();
    for start in 0..cands.len() {
        if seen[start] {
            continue;
        }
        let mut vectors = vec![cands.vectors[start].clone()];
        seen[start] = true;
        let mut cur = space.apply(m, &cands.vectors[start]);
        while cur != cands.vectors[start] {
            let pos = cands.position(space, &cur).ok_or(Error::NotFormPreserving)?;
            if seen[pos] {
                // S permutes a finite set, so a repeat before closing the cycle
                // means S is not injective on it.
                return Err(Error::NotFormPreserving);
            }
            seen[pos] = true;
            vectors.push(cur.clone());
            cur = space.apply(m, &cur);
        }
        orbits.push(Orbit { vectors });
    }
    Ok(orbits)
}

/// `(c_i, c_j)` for a list of vectors.
pub fn pairing_matrix(space: &FormSpace, vectors: &[Vector]) -> Matrix<i64> {
    Matrix::from_fn(vectors.len(), vectors.len(), |i, j| {
        space.pair(&vectors[i], &vectors[j]) as i64
    })
}

/// Symmetry reduction applied to the first basis vector.
#[derive(Clone, Debug, Default)]
pub enum Symmetry {
    #[default]
    Off,
    /// Restrict the first vector to orbit representatives of this operator.
    Serre(SerreOperator),
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub symmetry: Symmetry,
    pub cap: u128,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            symmetry: Symmetry::Off,
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

impl SearchOptions {
    pub fn with_serre(s: SerreOperator) -> Self {
        SearchOptions {
            symmetry: Symmetry::Serre(s),
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Found(Vec<Vector>),
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub nodes_explored: u64,
    /// Subtrees cut because fewer candidates remained than basis slots.
    pub pruned_by_pool: u64,
    /// Candidates skipped as linearly dependent on the current prefix.
    pub pruned_by_dependence: u64,
    /// Prefixes skipped because a prefix with the same span already failed.
    pub pruned_by_span: u64,
    pub candidates: usize,
    pub first_choices: usize,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.nodes_explored += other.nodes_explored;
        self.pruned_by_pool += other.pruned_by_pool;
        self.pruned_by_dependence += other.pruned_by_dependence;
        self.pruned_by_span += other.pruned_by_span;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SonbResult {
    pub outcome: Outcome,
    pub stats: SearchStats,
}

impl SonbResult {
    pub fn found(&self) -> Option<&[Vector]> {
        match &self.outcome {
            Outcome::Found(b) => Some(b),
            Outcome::Exhausted => None,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        self.outcome == Outcome::Exhausted
    }
}

/// Reduced row-echelon basis mod `p` of the chosen prefix. Rows are kept
/// sorted by pivot, so equal spans give equal keys.
#[derive(Clone)]
struct Echelon {
    p: i64,
    rows: Vec<(usize, Vector)>,
}

impl Echelon {
    fn new(p: u64) -> Self {
        Echelon {
            p: p as i64,
            rows: Vec::new(),
        }
    }

    fn inv(&self, a: i64) -> i64 {
        // p is small; extended Euclid keeps this independent of the field types.
        let (mut t, mut new_t, mut r, mut new_r) = (0i64, 1i64, self.p, a.rem_euclid(self.p));
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        t.rem_euclid(self.p)
    }

    /// Adds `v` if it is independent of the rows; returns whether it was.
    fn try_insert(&mut self, v: &[i64]) -> bool {
        let p = self.p;
        let mut w = v.to_vec();
        for (pivot, row) in &self.rows {
            let f = w[*pivot];
            if f != 0 {
                for (x, r) in w.iter_mut().zip(row) {
                    *x = (*x - f * r).rem_euclid(p);
                }
            }
        }
        let Some(pivot) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.inv(w[pivot]);
        for x in &mut w {
            *x = (*x * inv).rem_euclid(p);
        }
        for (_, row) in &mut self.rows {
            let f = row[pivot];
            if f != 0 {
                for (x, r) in row.iter_mut().zip(&w) {
                    *x = (*x - f * r).rem_euclid(p);
                }
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < pivot);
        self.rows.insert(at, (pivot, w));
        true
    }

    fn key(&self) -> Vec<i64> {
        self.rows.iter().flat_map(|(_, r)| r.iter().copied()).collect()
    }
}

struct Searcher<'a> {
    n: usize,
    space: &'a FormSpace,
    cands: &'a [Vector],
    stats: SearchStats,
    /// Spans of prefixes whose subtree holds no basis. Below a prefix only
    /// its span matters: it fixes both the pool and the independence test.
    failed: HashSet<Vec<i64>>,
}

impl Searcher<'_> {
    fn dfs(&mut self, pool: &[usize], echelon: &Echelon, chosen: &mut Vec<usize>) -> bool {
        self.stats.nodes_explored += 1;
        if chosen.len() == self.n {
            return true;
        }
        if pool.len() < self.n - chosen.len() {
            self.stats.pruned_by_pool += 1;
            return false;
        }
        for &c in pool {
            if self.descend(c, pool, echelon, chosen) {
                return true;
            }
        }
        false
    }

    /// Tries `c` as the next basis vector.
    fn descend(&mut self, c: usize, pool: &[usize], echelon: &Echelon, chosen: &mut Vec<usize>) -> bool {
        let mut next = echelon.clone();
        if !next.try_insert(&self.cands[c]) {
            self.stats.pruned_by_dependence += 1;
            return false;
        }
        let key = next.key();
        if self.failed.contains(&key) {
            self.stats.pruned_by_span += 1;
            return false;
        }
        // Later vectors x must satisfy (x, e) = 0 for every chosen e, i.e.
        // x is orthogonal to A·e.
        let p = self.space.modulus as i64;
        let ae = self.space.apply(&self.space.form, &self.cands[c]);
        let sub: Vec<usize> = pool
            .iter()
            .copied()
            .filter(|&x| {
                let dot = self.cands[x].iter().zip(&ae).fold(0i64, |acc, (a, b)| (acc + a * b) % p);
                dot == 0
            })
            .collect();
        chosen.push(c);
        if self.dfs(&sub, &next, chosen) {
            return true;
        }
        chosen.pop();
        self.failed.insert(key);
        false
    }
}

struct Prepared {
    n: usize,
    modulus: u64,
    space: FormSpace,
    cands: CandidateSet,
    first: Vec<usize>,
}

fn prepare(space: &FormSpace, options: &SearchOptions) -> Result<Prepared> {
    if space.modulus == 0 {
        return Err(Error::NeedsFiniteModulus);
    }
    space.check_cap(options.cap)?;
    let cands = enumerate_candidates_capped(space, options.cap)?;
    let first = match &options.symmetry {
        Symmetry::Off => (0..cands.len()).collect(),
        Symmetry::Serre(s) => serre_orbits(space, &cands, s)?
            .iter()
            .map(|o| cands.position(space, o.representative()).expect("orbit member"))
            .collect(),
    };
    Ok(Prepared {
        n: space.dimension(),
        modulus: space.modulus,
        space: space.clone(),
        cands,
        first,
    })
}

impl Prepared {
    fn stats(&self) -> SearchStats {
        SearchStats {
            candidates: self.cands.len(),
            first_choices: self.first.len(),
            ..SearchStats::default()
        }
    }

    /// Root node of the tree: every candidate is allowed after nothing.
    fn all(&self) -> Vec<usize> {
        (0..self.cands.len()).collect()
    }

    fn finish(&self, chosen: Option<Vec<usize>>, stats: SearchStats) -> SonbResult {
        let outcome = match chosen {
            Some(idx) => Outcome::Found(idx.iter().map(|&i| self.cands.vectors[i].clone()).collect()),
            None => Outcome::Exhausted,
        };
        SonbResult { outcome, stats }
    }

    fn searcher(&self) -> Searcher<'_> {
        Searcher {
            n: self.n,
            space: &self.space,
            cands: &self.cands.vectors,
            stats: SearchStats::default(),
            failed: HashSet::new(),
        }
    }

    fn run_subtree(&self, searcher: &mut Searcher<'_>, all: &[usize], first: usize) -> Option<Vec<usize>> {
        let mut chosen = Vec::with_capacity(self.n);
        let found = searcher.descend(first, all, &Echelon::new(self.modulus), &mut chosen);
        found.then_some(chosen)
    }
}

/// Exhaustive depth-first search for a semi-orthonormal basis over `F_p`.
///
/// Candidates are taken in canonical order at every level, so the returned
/// basis is the first one in that order (among those whose first vector is
/// an orbit representative when symmetry is on).
pub fn search(space: &FormSpace, options: &SearchOptions) -> Result<SonbResult> {
    let prep = prepare(space, options)?;
    let mut stats = prep.stats();
    stats.nodes_explored += 1;
    if prep.n == 0 {
        return Ok(prep.finish(Some(Vec::new()), stats));
    }
    if prep.cands.len() < prep.n {
        stats.pruned_by_pool += 1;
        return Ok(prep.finish(None, stats));
    }
    let all = prep.all();
    for &f in &prep.first {
        // a fresh memo per first choice keeps the counts equal to the
        // parallel search
        let mut searcher = prep.searcher();
        let found = prep.run_subtree(&mut searcher, &all, f);
        stats.absorb(&searcher.stats);
        if found.is_some() {
            return Ok(prep.finish(found, stats));
        }
    }
    Ok(prep.finish(None, stats))
}

/// Same result as [`search`], with first choices explored in parallel.
///
/// Every worker finishes its own subtree; the basis from the earliest first choice wins, so the outcome does not depend
/// on scheduling. Node counts are the sum over all workers.
pub fn search_parallel(space: &FormSpace, options: &SearchOptions) -> Result<SonbResult> {
    let prep = prepare(space, options)?;
    let mut stats = prep.stats();
    stats.nodes_explored += 1;
    if prep.n == 0 {
        return Ok(prep.finish(Some(Vec::new()), stats));
    }
    if prep.cands.len() < prep.n {
        stats.pruned_by_pool += 1;
        return Ok(prep.finish(None, stats));
    }
    let all = prep.all();
    let results: Vec<(Option<Vec<usize>>, SearchStats)> = prep
        .first
        .par_iter()
        .map(|&f| {
            let mut searcher = prep.searcher();
            let found = prep.run_subtree(&mut searcher, &all, f);
            (found, searcher.stats)
        })
        .collect();
    let mut found = None;
    for (r, sub) in results {
        stats.absorb(&sub);
        if found.is_none() {
            found = r;
        }
    }
    Ok(prep.finish(found, stats))
}

/// Checks the pairing conditions and linear independence of `basis`.
///
/// Independence is tested over `F_p`, or over `Q` for integral forms.
pub fn verify_semi_orthonormal(space: &FormSpace, basis: &[Vector]) -> Result<()> {
    let n = space.dimension();
    for (i, e) in basis.iter().enumerate() {
        if e.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: e.len(),
            });
        }
        if space.pair(e, e) != 1 {
            return Err(Error::NotSemiOrthonormal(format!("(e_{i}, e_{i}) != 1")));
        }
        for (j, later) in basis.iter().enumerate().skip(i + 1) {
            if space.pair(later, e) != 0 {
                return Err(Error::NotSemiOrthonormal(format!("(e_{j}, e_{i}) != 0")));
            }
        }
    }
    if rank(space, basis)? != basis.len() {
        return Err(Error::NotSemiOrthonormal("vectors are dependent".into()));
    }
    Ok(())
}

/// Rank of a vector list by elimination over `F_p` or `Q`.
pub fn rank(space: &FormSpace, vectors: &[Vector]) -> Result<usize> {
    if vectors.is_empty() {
        return Ok(0);
    }
    let rows: Vec<Vec<i64>> = vectors.to_vec();
    if space.modulus == 0 {
        let m = Matrix::from_rows(rows).map(|&v| BigRational::from_integer(v.into()));
        Ok(m.rank())
    } else {
        let m = Matrix::from_rows(rows);
        with_prime_field!(space.modulus, F => m.map(|&v| F::from_signed(v as i128)).rank())
    }
}

fn combine(space: &FormSpace, a: &[i64], coeff: i128, b: &[i64]) -> Result<Vector> {
    let mut out = Vec::with_capacity(a.len());
    for (&x, &y) in a.iter().zip(b) {
        let v = space.reduce(x as i128 + coeff * y as i128);
        out.push(i64::try_from(v).map_err(|_| Error::Overflow("mutation"))?);
    }
    Ok(out)
}

/// Mutation of the adjacent pair at positions `(i, i+1)` (zero-based):
/// `(e_i, e_{i+1}) ↦ (e_{i+1}, e_i − (e_i, e_{i+1})·e_{i+1})`.
///
/// Over `F_2` the sign is irrelevant and this is the familiar
/// `e_i + (e_i, e_{i+1})·e_{i+1}`.
pub fn mutate(basis: &[Vector], i: usize, space: &FormSpace) -> Result<Vec<Vector>> {
    verify_semi_orthonormal(space, basis)?;
    if i + 1 >= basis.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: basis.len(),
        });
    }
    let c = space.pair(&basis[i], &basis[i + 1]);
    let mut out = basis.to_vec();
    out[i] = basis[i + 1].clone();
    out[i + 1] = combine(space, &basis[i], -c, &basis[i + 1])?;
    Ok(out)
}

/// Inverse of [`mutate`]:
/// `(f_i, f_{i+1}) ↦ (f_{i+1} − (f_i, f_{i+1})·f_i, f_i)`.
pub fn mutate_inverse(basis: &[Vector], i: usize, space: &FormSpace) -> Result<Vec<Vector>> {
    verify_semi_orthonormal(space, basis)?;
    if i + 1 >= basis.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: basis.len(),
        });
    }
    let c = space.pair(&basis[i], &basis[i + 1]);
    let mut out = basis.to_vec();
    out[i] = combine(space, &basis[i + 1], -c, &basis[i])?;
    out[i + 1] = basis[i].clone();
    Ok(out)
}

/// The standard basis `e_1, …, e_n`.
pub fn standard_basis(n: usize) -> Vec<Vector> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eulerform::{GramMatrix, HilbertProfile};

    fn wilson_mod2() -> (FormSpace, SerreOperator) {
        let g = GramMatrix::standard(&HilbertProfile::wilson()).reduce_mod(2).unwrap();
        let s = SerreOperator::from_gram(&g).unwrap();
        (FormSpace::new(g.base()).unwrap(), s)
    }

    fn p2_integral() -> FormSpace {
        let g = GramMatrix::standard(&HilbertProfile::projective(2).unwrap());
        FormSpace::new(g.base()).unwrap()
    }

    #[test]
    fn wilson_has_twelve_candidates_in_two_orbits() {
        let (space, s) = wilson_mod2();
        let cands = enumerate_candidates(&space).unwrap();
        assert_eq!(cands.len(), 12);
        let orbits = serre_orbits(&space, &cands, &s).unwrap();
        let sizes: Vec<usize> = orbits.iter().map(Orbit::len).collect();
        assert_eq!(sizes, vec![8, 4]);
        assert_eq!(orbits[0].representative(), &vec![1, 0, 0, 0, 0]);
        assert_eq!(orbits[1].representative(), &vec![1, 0, 1, 0, 0]);
    }

    #[test]
    fn identity_form_mod_two_counts_odd_weight_vectors() {
        let space = FormSpace::modular(2, &Matrix::identity(5)).unwrap();
        // brute force: (x, x) = Σ x_i mod 2
        let expected = (1u32..32).filter(|v| v.count_ones() % 2 == 1).count();
        assert_eq!(enumerate_candidates(&space).unwrap().len(), expected);
        assert_eq!(expected, 16);
    }

    #[test]
    fn zero_form_has_no_candidates() {
        let space = FormSpace::modular(3, &Matrix::zeros(3, 3)).unwrap();
        assert!(enumerate_candidates(&space).unwrap().is_empty());
        let r = search(&space, &SearchOptions::default()).unwrap();
        assert!(r.is_exhausted());
    }

    #[test]
    fn identity_operator_gives_singletons() {
        let (space, _) = wilson_mod2();
        let cands = enumerate_candidates(&space).unwrap();
        let orbits = orbits_under(&space, &cands, &Matrix::identity(5)).unwrap();
        assert_eq!(orbits.len(), 12);
        assert!(orbits.iter().all(|o| o.len() == 1));
    }

    #[test]
    fn non_preserving_operator_is_rejected() {
        let (space, _) = wilson_mod2();
        let cands = enumerate_candidates(&space).unwrap();
        let shift = Matrix::from_fn(5, 5, |i, j| i64::from((i + 1) % 5 == j));
        assert_eq!(
            orbits_under(&space, &cands, &shift),
            Err(Error::NotFormPreserving)
        );
    }

    #[test]
    fn wilson_search_is_exhausted() {
        let (space, s) = wilson_mod2();
        let plain = search(&space, &SearchOptions::default()).unwrap();
        assert!(plain.is_exhausted());
        let sym = search(&space, &SearchOptions::with_serre(s)).unwrap();
        assert!(sym.is_exhausted());
        assert_eq!(sym.stats.first_choices, 2);
        assert!(sym.stats.nodes_explored < plain.stats.nodes_explored);
        assert!(plain.stats.nodes_explored < 1_000_000);
        assert!(search(&space.transposed(), &SearchOptions::default())
            .unwrap()
            .is_exhausted());
    }

    #[test]
    fn unitriangular_form_yields_standard_basis() {
        let g = GramMatrix::standard(&HilbertProfile::projective(2).unwrap())
            .reduce_mod(2)
            .unwrap();
        let space = FormSpace::new(g.base()).unwrap();
        let r = search(&space, &SearchOptions::default()).unwrap();
        assert_eq!(r.found().unwrap(), standard_basis(3).as_slice());
    }

    #[test]
    fn parallel_matches_sequential() {
        let g = GramMatrix::standard(&HilbertProfile::projective(3).unwrap())
            .reduce_mod(3)
            .unwrap();
        let space = FormSpace::new(g.base()).unwrap();
        let a = search(&space, &SearchOptions::default()).unwrap();
        let b = search_parallel(&space, &SearchOptions::default()).unwrap();
        assert_eq!(a.outcome, b.outcome);
        let (w, _) = wilson_mod2();
        let a = search(&w, &SearchOptions::default()).unwrap();
        let b = search_parallel(&w, &SearchOptions::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn integral_search_needs_finite_modulus() {
        assert_eq!(
            search(&p2_integral(), &SearchOptions::default()).unwrap_err(),
            Error::NeedsFiniteModulus
        );
    }

    #[test]
    fn enumeration_cap() {
        let space = FormSpace::modular(3, &Matrix::identity(6)).unwrap();
        let err = enumerate_candidates_capped(&space, 100).unwrap_err();
        assert_eq!(err, Error::EnumerationCap { size: 729, cap: 100 });
    }

    #[test]
    fn p2_mutation_over_z() {
        let space = p2_integral();
        let e = standard_basis(3);
        let m = mutate(&e, 0, &space).unwrap();
        assert_eq!(m, vec![vec![0, 1, 0], vec![1, -3, 0], vec![0, 0, 1]]);
        verify_semi_orthonormal(&space, &m).unwrap();
        assert_eq!(mutate_inverse(&m, 0, &space).unwrap(), e);
    }

    #[test]
    fn mutation_with_zero_pairing_swaps() {
        let space = FormSpace::integral(Matrix::identity(3)).unwrap();
        let e = standard_basis(3);
        let m = mutate(&e, 1, &space).unwrap();
        assert_eq!(m, vec![e[0].clone(), e[2].clone(), e[1].clone()]);
    }

    #[test]
    fn mutation_mod_two_adds() {
        // unitriangular form with (e_1, e_2) = 1 over F_2
        let space = FormSpace::modular(2, &Matrix::from_rows(vec![vec![1, 1], vec![0, 1]])).unwrap();
        let e = standard_basis(2);
        let m = mutate(&e, 0, &space).unwrap();
        assert_eq!(m, vec![vec![0, 1], vec![1, 1]]);
        verify_semi_orthonormal(&space, &m).unwrap();
    }

    #[test]
    fn mutation_rejects_bad_input() {
        let space = p2_integral();
        let bad = vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]];
        assert!(matches!(mutate(&bad, 0, &space), Err(Error::NotSemiOrthonormal(_))));
        let e = standard_basis(3);
        assert!(matches!(mutate(&e, 2, &space), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn box_candidates_over_z() {
        let space = p2_integral();
        let c = enumerate_candidates_in_box(&space, 1).unwrap();
        assert!(c.vectors().iter().all(|v| space.pair(v, v) == 1));
        assert!(c.vectors().contains(&vec![1, 0, 0]));
    }

    #[test]
    fn encode_decode_round_trip() {
        let space = FormSpace::modular(3, &Matrix::identity(4)).unwrap();
        for i in 0..81u128 {
            assert_eq!(space.encode(&space.decode(i)), i);
        }
        assert_eq!(space.decode(1), vec![1, 0, 0, 0]);
    }
}
