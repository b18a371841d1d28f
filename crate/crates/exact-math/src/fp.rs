//! Dense polynomials over a prime field F_p with word-size p.

use num_bigint::BigUint;
use num_traits::One;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

/// Euler's criterion; 0 for a = 0 mod p. Requires odd p.
pub fn legendre(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

pub fn reduce_i64(a: i64, p: u64) -> u64 {
    a.rem_euclid(p as i64) as u64
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    pub p: u64,
    /// Coefficients, lowest degree first, no trailing zeros.
    pub c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_i64(p: u64, c: &[i64]) -> Self {
        Self::new(p, c.iter().map(|&x| reduce_i64(x, p)).collect())
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: vec![] }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn constant(p: u64, a: u64) -> Self {
        Self::new(p, vec![a])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with -1 for the zero polynomial.
    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lead(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        Self::new(p, (0..n).map(|i| (self.coeff(i) + o.coeff(i)) % p).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        Self::new(p, (0..n).map(|i| (self.coeff(i) + p - o.coeff(i)) % p).collect())
    }

    pub fn neg(&self) -> Self {
        Self::zero(self.p).sub(self)
    }

    pub fn scale(&self, a: u64) -> Self {
        Self::new(self.p, self.c.iter().map(|&x| mul_mod(x, a, self.p)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut r = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                r[i + j] = (r[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::new(p, r)
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let mut r = self.c.clone();
        let dl = d.c.len();
        if r.len() < dl {
            return (Self::zero(p), self.clone());
        }
        let inv = inv_mod(d.lead(), p);
        let mut q = vec![0u64; r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let coef = mul_mod(r[k + dl - 1], inv, p);
            q[k] = coef;
            if coef != 0 {
                for (j, &dj) in d.c.iter().enumerate() {
                    r[k + j] = (r[k + j] + p - mul_mod(coef, dj, p)) % p;
                }
            }
        }
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lead(), self.p))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with s*self + t*o = g and g monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.lead(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.c.iter().enumerate().skip(1).map(|(i, &a)| mul_mod(a, i as u64 % p, p)).collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c.iter().rev().fold(0, |acc, &a| (mul_mod(acc, x, self.p) + a) % self.p)
    }

    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let mut r = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            r = r.mul(&r).rem(m);
            if e.bit(i) {
                r = r.mul(&base).rem(m);
            }
        }
        r
    }

    pub fn is_squarefree(&self) -> bool {
        self.deg() <= 0 || self.gcd(&self.derivative()).deg() == 0
    }
}

/// Splits a monic squarefree polynomial into monic irreducible factors
/// (distinct-degree then Cantor–Zassenhaus). Requires odd p.
pub fn factor_squarefree(f: &FpPoly) -> Vec<FpPoly> {
    let p = f.p;
    assert!(p % 2 == 1, "equal-degree splitting needs odd p");
    let mut out = Vec::new();
    let mut rest = f.monic();
    let x = FpPoly::x(p);
    let pb = BigUint::from(p);
    let mut h = x.clone();
    let mut d = 1usize;
    while rest.deg() >= 2 * d as isize {
        h = h.powmod(&pb, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.deg() > 0 {
            split_equal_degree(&g, d, &mut out);
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
        }
        d += 1;
    }
    if rest.deg() > 0 {
        out.push(rest.monic());
    }
    out.sort_by(|a, b| (a.deg(), &a.c).cmp(&(b.deg(), &b.c)));
    out
}

fn split_equal_degree(g: &FpPoly, d: usize, out: &mut Vec<FpPoly>) {
    let p = g.p;
    if g.deg() as usize == d {
        out.push(g.monic());
        return;
    }
    let e: BigUint = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
    let mut seed = 0x9e37_79b9_7f4a_7c15u64 ^ (g.c.iter().fold(p, |h, &c| h.wrapping_mul(31).wrapping_add(c)));
    loop {
        let coeffs: Vec<u64> = (0..g.deg() as usize)
            .map(|_| {
                seed ^= seed << 13;
                seed ^= seed >> 7;
                seed ^= seed << 17;
                seed % p
            })
            .collect();
        let a = FpPoly::new(p, coeffs);
        if a.deg() <= 0 {
            continue;
        }
        let b = a.powmod(&e, g).sub(&FpPoly::one(p));
        let c = b.gcd(g);
        if c.deg() > 0 && c.deg() < g.deg() {
            let other = g.divrem(&c).0;
            split_equal_degree(&c, d, out);
            split_equal_degree(&other, d, out);
            return;
        }
    }
}

/// Roots in F_p of a nonzero polynomial, sorted, without multiplicity.
pub fn roots(f: &FpPoly) -> Vec<u64> {
    if f.p == 2 || f.p < 64 {
        return (0..f.p).filter(|&x| f.eval(x) == 0).collect();
    }
    let x = FpPoly::x(f.p);
    let g = x.powmod(&BigUint::from(f.p), &f.monic()).sub(&x).gcd(f);
    if g.deg() <= 0 {
        return vec![];
    }
    let sqf = g.monic();
    let mut r: Vec<u64> = factor_squarefree(&sqf).iter().map(|l| (f.p - l.c[0]) % f.p).collect();
    r.sort_unstable();
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = 7;
        let a = FpPoly::from_i64(p, &[1, 2, 3]);
        let b = FpPoly::from_i64(p, &[-1, 1]);
        let (q, r) = a.mul(&b).add(&FpPoly::constant(p, 5)).divrem(&b);
        assert_eq!(q, a);
        assert_eq!(r, FpPoly::constant(p, 5));
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(legendre(2, 7), 1);
        assert_eq!(legendre(3, 7), -1);
    }

    fn brute_irreducible(f: &FpPoly) -> bool {
        let p = f.p;
        let n = f.deg() as u32;
        for d in 1..=n / 2 {
            for k in 0..p.pow(d) {
                let mut c: Vec<u64> = (0..d).map(|i| (k / p.pow(i)) % p).collect();
                c.push(1);
                if f.rem(&FpPoly::new(p, c)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn factorization_against_brute_force() {
        for p in [3u64, 5, 7] {
            for k in 0..p.pow(4) {
                let mut c: Vec<u64> = (0..4).map(|i| (k / p.pow(i)) % p).collect();
                c.push(1);
                let f = FpPoly::new(p, c);
                if !f.is_squarefree() {
                    continue;
                }
                let fs = factor_squarefree(&f);
                let prod = fs.iter().fold(FpPoly::one(p), |a, b| a.mul(b));
                assert_eq!(prod, f);
                for g in &fs {
                    assert!(brute_irreducible(g));
                }
            }
        }
    }

    #[test]
    fn root_finding() {
        let p = 101;
        let f = FpPoly::from_i64(p, &[-6, 11, -6, 1]);
        assert_eq!(roots(&f), vec![1, 2, 3]);
        let g = FpPoly::from_i64(p, &[1, 0, 1]);
        assert_eq!(roots(&g), vec![10, 91]);
    }
}
