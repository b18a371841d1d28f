//! Integer arithmetic on an order in its basis, and reduction modulo N.

use exact_math::{AbelianInvariants, BigInt};
use num_integer::Integer;
use num_traits::ToPrimitive;
use quaternion_orders::{QuatElt, QuatOrder};

use crate::{ActionError, Result};

pub type Vec4 = [i64; 4];
pub type Mat4 = [[i64; 4]; 4];

/// Multiplication table, unit and canonical involution of an order, with i64 entries.
#[derive(Debug, Clone)]
pub struct IntOrder {
    table: [[[i64; 4]; 4]; 4],
    one: Vec4,
    trd: Vec4,
    disc: i64,
}

fn small(x: &BigInt) -> i64 {
    x.to_i64().expect("coordinate fits in i64")
}

impl IntOrder {
    pub fn new(o: &QuatOrder) -> Self {
        let t = o.structure_constants();
        let table = std::array::from_fn(|i| std::array::from_fn(|j| std::array::from_fn(|k| small(&t[i][j][k]))));
        let one = o.int_coords(&o.algebra().one()).expect("an order contains 1");
        IntOrder {
            table,
            one: std::array::from_fn(|k| small(&one[k])),
            trd: o.trd_form(),
            disc: small(&o.algebra().discriminant()),
        }
    }

    pub fn discriminant(&self) -> i64 {
        self.disc
    }

    pub fn one(&self) -> Vec4 {
        self.one
    }

    pub fn mul(&self, x: &Vec4, y: &Vec4) -> Vec4 {
        let mut out = [0i64; 4];
        for i in 0..4 {
            if x[i] == 0 {
                continue;
            }
            for j in 0..4 {
                if y[j] == 0 {
                    continue;
                }
                let s = x[i] * y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    *o += s * self.table[i][j][k];
                }
            }
        }
        out
    }

    pub fn trd(&self, x: &Vec4) -> i64 {
        (0..4).map(|i| self.trd[i] * x[i]).sum()
    }

    pub fn conj(&self, x: &Vec4) -> Vec4 {
        let t = self.trd(x);
        std::array::from_fn(|k| t * self.one[k] - x[k])
    }

    pub fn nrd(&self, x: &Vec4) -> i64 {
        // x conj(x) = nrd(x) * 1.
        let p = self.mul(x, &self.conj(x));
        let k = (0..4).find(|&k| self.one[k] != 0).expect("1 is nonzero");
        p[k] / self.one[k]
    }

    /// Matrix of x -> b^-1 x b in the order basis, if b normalizes the order.
    pub fn right_conjugation(&self, b: &Vec4) -> Option<Mat4> {
        let n = self.nrd(b);
        if n == 0 {
            return None;
        }
        let bc = self.conj(b);
        let mut m = [[0i64; 4]; 4];
        for k in 0..4 {
            let mut e = [0i64; 4];
            e[k] = 1;
            let img = self.mul(&self.mul(&bc, &e), b);
            for r in 0..4 {
                if img[r] % n != 0 {
                    return None;
                }
                m[r][k] = img[r] / n;
            }
        }
        Some(m)
    }
}

pub fn int_coords(o: &QuatOrder, x: &QuatElt) -> Result<Vec4> {
    let c = o
        .int_coords(x)
        .ok_or_else(|| ActionError::Domain(format!("{x} is not in the order")))?;
    c.iter()
        .map(|v| v.to_i64().ok_or_else(|| ActionError::Domain("coordinates too large".into())))
        .collect::<Result<Vec<_>>>()
        .map(|v| [v[0], v[1], v[2], v[3]])
}

pub fn reduce(x: &Vec4, n: i64) -> Vec4 {
    std::array::from_fn(|k| x[k].rem_euclid(n))
}

pub fn mat_vec(m: &Mat4, x: &Vec4) -> Vec4 {
    std::array::from_fn(|r| (0..4).map(|c| m[r][c] * x[c]).sum())
}

pub fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    std::array::from_fn(|r| std::array::from_fn(|c| (0..4).map(|k| a[r][k] * b[k][c]).sum()))
}

pub fn mat_reduce(m: &Mat4, n: i64) -> Mat4 {
    std::array::from_fn(|r| std::array::from_fn(|c| m[r][c].rem_euclid(n)))
}

pub fn identity() -> Mat4 {
    std::array::from_fn(|r| std::array::from_fn(|c| i64::from(r == c)))
}

/// All of (Z/n)^4 in lexicographic order.
pub fn all_residues(n: i64) -> impl Iterator<Item = Vec4> {
    (0..n.pow(4)).map(move |mut code| {
        let mut x = [0i64; 4];
        for v in x.iter_mut().rev() {
            *v = code % n;
            code /= n;
        }
        x
    })
}

/// Invariants of a finite subgroup H of (Z/n)^4 given by its elements, read off from
/// the sizes of the d-torsion subgroups H[p^k].
pub fn invariants_of_subgroup(elements: &[Vec4], n: i64) -> AbelianInvariants {
    let mut cyclic: Vec<BigInt> = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while rest > 1 {
        if rest % p != 0 {
            p += 1;
            continue;
        }
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        let count = |d: i64| {
            elements
                .iter()
                .filter(|x| x.iter().all(|&c| (c * d).rem_euclid(n) == 0))
                .count()
        };
        let log_p = |mut c: usize| {
            let mut k = 0;
            while c > 1 {
                assert_eq!(c % p as usize, 0, "subgroup torsion counts are powers of p");
                c /= p as usize;
                k += 1;
            }
            k
        };
        // Number of cyclic p-factors of order >= p^k is log_p(|H[p^k]| / |H[p^(k-1)]|).
        let mut ranks = Vec::new();
        let mut prev = 1usize;
        for k in 1..=e {
            let c = count(p.pow(k));
            ranks.push(log_p(c / prev));
            prev = c;
        }
        for k in 0..e as usize {
            let at_least = ranks[k];
            let next = ranks.get(k + 1).copied().unwrap_or(0);
            for _ in 0..at_least - next {
                cyclic.push(BigInt::from(p.pow(k as u32 + 1)));
            }
        }
        p += 1;
    }
    AbelianInvariants::from_cyclic(&cyclic)
}

/// Row-reduced echelon basis over F_l of the span of `vs`.
pub fn echelon_mod(vs: &[Vec4], l: i64) -> Vec<Vec4> {
    let mut rows: Vec<Vec4> = vs.iter().map(|v| reduce(v, l)).collect();
    let mut out_rank = 0;
    for col in 0..4 {
        let Some(p) = (out_rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(out_rank, p);
        let inv = inv_mod(rows[out_rank][col], l);
        for c in 0..4 {
            rows[out_rank][c] = rows[out_rank][c] * inv % l;
        }
        for r in 0..rows.len() {
            if r != out_rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in 0..4 {
                    rows[r][c] = (rows[r][c] - f * rows[out_rank][c]).rem_euclid(l);
                }
            }
        }
        out_rank += 1;
    }
    rows.truncate(out_rank);
    rows
}

pub fn inv_mod(a: i64, n: i64) -> i64 {
    let g = a.extended_gcd(&n);
    assert_eq!(g.gcd.abs(), 1, "{a} is not invertible mod {n}");
    (g.x * g.gcd).rem_euclid(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_from_elements() {
        // Z/2 x Z/4 inside (Z/4)^4.
        let h: Vec<Vec4> = (0..2).flat_map(|a| (0..4).map(move |b| [2 * a, b, 0, 0])).collect();
        assert_eq!(invariants_of_subgroup(&h, 4), AbelianInvariants::from_divisors(&[2, 4]));
        let all: Vec<Vec4> = all_residues(3).collect();
        assert_eq!(invariants_of_subgroup(&all, 3), AbelianInvariants::from_divisors(&[3, 3, 3, 3]));
        assert_eq!(invariants_of_subgroup(&[[0; 4]], 6), AbelianInvariants::trivial());
    }

    #[test]
    fn echelon_rank() {
        let b = echelon_mod(&[[1, 2, 0, 0], [2, 4, 0, 0], [0, 0, 1, 1]], 5);
        assert_eq!(b, vec![[1, 2, 0, 0], [0, 0, 1, 1]]);
    }
}
