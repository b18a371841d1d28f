//! Smith normal form over Z and finite abelian group invariants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::integer::factor_integer;

/// A finitely generated abelian group Z/d1 x ... x Z/dk x Z^r with d1 | d2 | ... and di >= 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianInvariants {
    pub divisors: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn from_divisors(ds: &[u64]) -> Self {
        Self::from_cyclic(&ds.iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>())
    }

    /// Normalizes an arbitrary product of cyclic groups (zeros mean Z).
    pub fn from_cyclic(orders: &[BigInt]) -> Self {
        let mut free_rank = 0;
        let mut by_prime: std::collections::BTreeMap<BigInt, Vec<u32>> = Default::default();
        for d in orders {
            if d.is_zero() {
                free_rank += 1;
                continue;
            }
            for (p, e) in factor_integer(d) {
                by_prime.entry(p).or_default().push(e);
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut divisors = vec![BigInt::one(); len];
        for (p, mut es) in by_prime {
            es.sort_unstable_by(|a, b| b.cmp(a));
            for (k, e) in es.into_iter().enumerate() {
                divisors[len - 1 - k] *= p.pow(e);
            }
        }
        AbelianInvariants { divisors, free_rank }
    }

    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.divisors.iter().product())
    }

    pub fn as_u64(&self) -> Vec<u64> {
        self.divisors.iter().map(|d| u64::try_from(d).expect("divisor fits u64")).collect()
    }

    /// Number of cyclic factors of order divisible by the prime p.
    pub fn p_rank(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.divisors.iter().filter(|d| (*d % &p).is_zero()).count() + self.free_rank
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.divisors.iter().map(|d| d.to_string()).collect();
        parts.extend(std::iter::repeat_n("0".to_string(), self.free_rank));
        write!(f, "[{}]", parts.join(","))
    }
}

/// Diagonal of the Smith normal form, of length min(rows, cols), in divisibility order
/// with trailing zeros.
pub fn smith_diagonal(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_entry(&a, t, t..rows, t..cols) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let s = &q * &a[t][j];
                        a[i][j] -= s;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let s = &q * &row[t];
                        row[j] -= s;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                let (pi, pj) = pivot_in_cross(&a, t, rows, cols);
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                continue;
            }
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let s = a[i][j].clone();
                        a[t][j] += s;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag.resize(rows.min(cols), BigInt::zero());
    diag
}

fn min_entry(
    a: &[Vec<BigInt>],
    _t: usize,
    rs: std::ops::Range<usize>,
    cs: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rs {
        for j in cs.clone() {
            if !a[i][j].is_zero()
                && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
            {
                best = Some((i, j));
            }
        }
    }
    best
}

fn pivot_in_cross(a: &[Vec<BigInt>], t: usize, rows: usize, cols: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut cands: Vec<(usize, usize)> = (t + 1..rows).map(|i| (i, t)).collect();
    cands.extend((t + 1..cols).map(|j| (t, j)));
    for (i, j) in cands {
        if !a[i][j].is_zero() && (a[best.0][best.1].is_zero() || a[i][j].abs() < a[best.0][best.1].abs()) {
            best = (i, j);
        }
    }
    best
}

/// Cokernel of M viewed as a map Z^cols -> Z^rows.
pub fn smith_invariants(m: &[Vec<BigInt>]) -> AbelianInvariants {
    let rows = m.len();
    let diag = smith_diagonal(m);
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let divisors = diag.into_iter().filter(|d| d > &BigInt::one()).collect();
    AbelianInvariants {
        divisors,
        free_rank: rows - rank,
    }
}

/// Kernel of x -> Mx on (Z/n)^cols, as the product of Z/gcd(d_i, n) over the Smith diagonal.
pub fn kernel_mod(m: &[Vec<BigInt>], n: &BigInt) -> AbelianInvariants {
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = smith_diagonal(m);
    diag.resize(cols, BigInt::zero());
    let orders: Vec<BigInt> = diag.iter().map(|d| d.gcd(n)).collect();
    AbelianInvariants::from_cyclic(&orders)
}

/// Row Hermite normal form: the nonzero rows of an echelon basis of the row lattice,
/// pivots positive, entries above each pivot reduced into [0, pivot).
pub fn hnf_rows(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for j in 0..cols {
        loop {
            let Some(piv) = (r..a.len())
                .filter(|&i| !a[i][j].is_zero())
                .min_by(|&x, &y| a[x][j].abs().cmp(&a[y][j].abs()))
            else {
                break;
            };
            a.swap(r, piv);
            let mut done = true;
            for i in r + 1..a.len() {
                if !a[i][j].is_zero() {
                    let q = a[i][j].div_floor(&a[r][j]);
                    for k in 0..cols {
                        let s = &q * &a[r][k];
                        a[i][k] -= s;
                    }
                    done &= a[i][j].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][j].is_zero() {
            if a[r][j].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let q = a[i][j].div_floor(&a[r][j]);
                for k in 0..cols {
                    let s = &q * &a[r][k];
                    a[i][k] -= s;
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a
}
