//! Exact matrix rank over the rationals and over prime fields.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Field used for homology ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RankField {
    /// Rank over `Q` by fraction-free integer elimination.
    #[default]
    Rational,
    /// Rank over `GF(p)`; `p` must be prime and below `2^63`.
    ModPrime(u64),
}

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: alloc::vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn rank(&self, field: RankField) -> usize {
        match field {
            RankField::Rational => rank_rational(self),
            RankField::ModPrime(p) => rank_mod_prime(self, p),
        }
    }
}

/// Rank over `Q`. Runs Bareiss elimination in `i128` and restarts with
/// big integers if an intermediate overflows.
pub fn rank_rational(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<i128>> = (0..m.rows)
        .map(|r| {
            m.data[r * m.cols..(r + 1) * m.cols]
                .iter()
                .map(|&x| x as i128)
                .collect()
        })
        .collect();
    match bareiss_i128(&mut a, m.cols) {
        Some(r) => r,
        None => {
            let mut b: Vec<Vec<BigInt>> = (0..m.rows)
                .map(|r| {
                    m.data[r * m.cols..(r + 1) * m.cols]
                        .iter()
                        .map(|&x| BigInt::from(x))
                        .collect()
                })
                .collect();
            bareiss_big(&mut b, m.cols)
        }
    }
}

/// Picks the row at or below `r` with the smallest nonzero magnitude in column `c`.
fn pivot_row<T, F: Fn(&T) -> Option<u128>>(
    a: &[Vec<T>],
    r: usize,
    c: usize,
    mag: F,
) -> Option<usize> {
    (r..a.len())
        .filter_map(|i| mag(&a[i][c]).map(|m| (m, i)))
        .min()
        .map(|(_, i)| i)
}

fn bareiss_i128(a: &mut [Vec<i128>], cols: usize) -> Option<usize> {
    let rows = a.len();
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = pivot_row(a, r, c, |x| (*x != 0).then(|| x.unsigned_abs())) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c];
        for i in r + 1..rows {
            let lead = a[i][c];
            for j in c + 1..cols {
                let num = piv
                    .checked_mul(a[i][j])?
                    .checked_sub(lead.checked_mul(a[r][j])?)?;
                debug_assert_eq!(num % prev, 0, "Bareiss division must be exact");
                a[i][j] = num / prev;
            }
            a[i][c] = 0;
        }
        prev = piv;
        r += 1;
    }
    Some(r)
}

fn bareiss_big(a: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = a.len();
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = pivot_row(a, r, c, |x: &BigInt| {
            (!x.is_zero()).then(|| u128::try_from(x.abs()).unwrap_or(u128::MAX))
        }) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for i in r + 1..rows {
            let lead = a[i][c].clone();
            for j in c + 1..cols {
                let num = &piv * &a[i][j] - &lead * &a[r][j];
                a[i][j] = num / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = piv;
        r += 1;
    }
    r
}

/// Rank over `GF(p)` by Gaussian elimination.
pub fn rank_mod_prime(m: &IntMatrix, p: u64) -> usize {
    assert!((2..1 << 63).contains(&p), "modulus out of range");
    let reduce = |x: i64| x.rem_euclid(p as i64) as u64;
    let mut a: Vec<Vec<u64>> = (0..m.rows)
        .map(|r| {
            m.data[r * m.cols..(r + 1) * m.cols]
                .iter()
                .map(|&x| reduce(x))
                .collect()
        })
        .collect();
    let mulmod = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let rows = m.rows;
    let mut r = 0;
    for c in 0..m.cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = pow_mod(a[r][c], p - 2, p);
        for j in c..m.cols {
            a[r][j] = mulmod(a[r][j], inv);
        }
        for i in r + 1..rows {
            let f = a[i][c];
            if f == 0 {
                continue;
            }
            for j in c..m.cols {
                let sub = mulmod(f, a[r][j]);
                a[i][j] = (a[i][j] + p - sub) % p;
            }
        }
        r += 1;
    }
    r
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}
