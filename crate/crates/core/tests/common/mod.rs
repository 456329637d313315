//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls into the library's elimination or search code.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::zero();
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][col] * cofactor_det(&minor);
        if col % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `binom(k, j)` for any integer `k`.
pub fn binom(k: i64, j: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..j as i64 {
        num *= BigInt::from(k - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// `Σ c_j binom(k, j)`.
pub fn binomial_eval(cs: &[i64], k: i64) -> BigInt {
    cs.iter()
        .enumerate()
        .map(|(j, &c)| BigInt::from(c) * binom(k, j))
        .sum()
}

/// `A_P` with entries `P(j − i)` on twists `0..=n`.
pub fn gram_entries(cs: &[i64], n: usize) -> Vec<Vec<BigInt>> {
    (0..=n as i64)
        .map(|i| (0..=n as i64).map(|j| binomial_eval(cs, j - i)).collect())
        .collect()
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `(x, y) = xᵗ A y mod p`, recomputed from scratch.
pub fn pair_mod(p: i64, a: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut acc = 0i64;
    for i in 0..x.len() {
        for j in 0..y.len() {
            acc += x[i] * a[i][j] * y[j];
        }
    }
    acc.rem_euclid(p)
}

/// Rank over `F_p` by plain Gaussian elimination.
pub fn rank_mod(p: i64, rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = (1..p).find(|&t| (t * m[rank][c]) % p == 1).expect("field");
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = (row[c] * inv) % p;
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Vector with base-`p` index `i`, coordinate 0 least significant.
pub fn decode(p: i64, n: usize, mut i: u64) -> Vec<i64> {
    (0..n)
        .map(|_| {
            let d = (i % p as u64) as i64;
            i /= p as u64;
            d
        })
        .collect()
}

/// Depth-first search over ordered tuples of vectors with `(x, x) = 1`, in
/// index order. Every level rescans the full list and checks `(x, e) = 0`
/// against all earlier choices; independence is checked on the complete
/// tuple. Pairings come from a table filled by [`pair_mod`].
pub fn brute_force_sonb(p: i64, a: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = a.len();
    let cands: Vec<Vec<i64>> = (1..(p as u64).pow(n as u32))
        .map(|i| decode(p, n, i))
        .filter(|x| pair_mod(p, a, x, x) == 1)
        .collect();
    let table: Vec<Vec<bool>> = cands
        .iter()
        .map(|x| cands.iter().map(|e| pair_mod(p, a, x, e) == 0).collect())
        .collect();
    fn go(n: usize, p: i64, cands: &[Vec<i64>], table: &[Vec<bool>], chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == n {
            let rows: Vec<Vec<i64>> = chosen.iter().map(|&i| cands[i].clone()).collect();
            return rank_mod(p, &rows) == n;
        }
        for x in 0..cands.len() {
            if chosen.iter().any(|&e| !table[x][e]) {
                continue;
            }
            chosen.push(x);
            if go(n, p, cands, table, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    go(n, p, &cands, &table, &mut chosen).then(|| chosen.iter().map(|&i| cands[i].clone()).collect())
}

/// Random form over `F_p` of size `n`. Odd draws are `Mᵗ U M` with `U`
/// upper unitriangular and `M` invertible, so they always admit a basis.
pub fn random_form(rng: &mut impl Rng, p: i64, n: usize, draw: usize) -> Vec<Vec<i64>> {
    let entry = |rng: &mut dyn rand::RngCore| rng.gen_range(0..p);
    if draw.is_multiple_of(2) {
        return (0..n).map(|_| (0..n).map(|_| entry(rng)).collect()).collect();
    }
    let u: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Less => entry(rng),
                    std::cmp::Ordering::Equal => 1,
                    std::cmp::Ordering::Greater => 0,
                })
                .collect()
        })
        .collect();
    let m = loop {
        let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| entry(rng)).collect()).collect();
        if rank_mod(p, &m) == n {
            break m;
        }
    };
    let mul = |x: &[Vec<i64>], y: &[Vec<i64>]| -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum::<i64>().rem_euclid(p))
                    .collect()
            })
            .collect()
    };
    let mt: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect();
    mul(&mul(&mt, &u), &m)
}
