//! Weil polynomials T^4 + a1 T^3 + a2 T^2 + q a1 T + q^2 and T^2 + a T + q.

use std::fmt;

use exact_math::{BigInt, IntPoly};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Result, WeilError};

/// Characteristic polynomial of Frobenius of an abelian surface over F_q.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeilPoly2 {
    pub q: BigInt,
    pub a1: BigInt,
    pub a2: BigInt,
}

/// Characteristic polynomial of Frobenius of an elliptic curve over F_q.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeilPoly1 {
    pub q: BigInt,
    pub a: BigInt,
}

impl WeilPoly1 {
    pub fn new(q: impl Into<BigInt>, a: impl Into<BigInt>) -> Self {
        WeilPoly1 { q: q.into(), a: a.into() }
    }

    pub fn is_valid(&self) -> bool {
        &self.a * &self.a <= BigInt::from(4) * &self.q
    }

    pub fn square(&self) -> WeilPoly2 {
        // (T^2 + aT + q)^2 = T^4 + 2a T^3 + (a^2 + 2q) T^2 + 2aq T + q^2
        WeilPoly2 {
            q: self.q.clone(),
            a1: BigInt::from(2) * &self.a,
            a2: &self.a * &self.a + BigInt::from(2) * &self.q,
        }
    }
}

impl WeilPoly2 {
    pub fn new(q: impl Into<BigInt>, a1: impl Into<BigInt>, a2: impl Into<BigInt>) -> Self {
        WeilPoly2 { q: q.into(), a1: a1.into(), a2: a2.into() }
    }

    /// Coefficients from the constant term up.
    pub fn coeffs(&self) -> [BigInt; 5] {
        [
            &self.q * &self.q,
            &self.q * &self.a1,
            self.a2.clone(),
            self.a1.clone(),
            BigInt::one(),
        ]
    }

    pub fn poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs().to_vec())
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.poly().eval(t)
    }

    /// f(1), the number of F_q-points of any surface in the class.
    pub fn point_count(&self) -> BigInt {
        self.eval(&BigInt::one())
    }

    /// All roots have absolute value sqrt(q): h(x) = x^2 + a1 x + (a2 - 2q) has real roots
    /// in [-2 sqrt q, 2 sqrt q]. Each condition is an integer inequality.
    pub fn is_valid(&self) -> bool {
        if !self.q.is_positive() {
            return false;
        }
        let four = BigInt::from(4);
        let c = &self.a2 - BigInt::from(2) * &self.q;
        let a1sq = &self.a1 * &self.a1;
        // Real roots.
        if a1sq < &four * &c {
            return false;
        }
        // Vertex -a1/2 inside the interval: a1^2 <= 16 q.
        if a1sq > BigInt::from(16) * &self.q {
            return false;
        }
        // h(2 sqrt q) >= 0 and h(-2 sqrt q) >= 0, i.e. 2q + a2 >= 2 |a1| sqrt q.
        let s = BigInt::from(2) * &self.q + &self.a2;
        !s.is_negative() && &s * &s >= &four * &a1sq * &self.q
    }

    /// Newton power sums s_1..s_k of the roots.
    pub fn power_sums(&self, k: usize) -> Vec<BigInt> {
        power_sums(&self.coeffs(), k)
    }

    /// The polynomial whose roots are the n-th powers of the roots.
    pub fn base_change(&self, n: u32) -> WeilPoly2 {
        assert!(n >= 1, "base change degree must be positive");
        if n == 1 {
            return self.clone();
        }
        let s = self.power_sums(4 * n as usize);
        let t: Vec<BigInt> = (1..=4).map(|j| s[j * n as usize - 1].clone()).collect();
        let c = from_power_sums(&t);
        let q = self.q.pow(n);
        debug_assert_eq!(c[0], &q * &q);
        debug_assert_eq!(c[1], &q * &c[3]);
        WeilPoly2 { q, a1: c[3].clone(), a2: c[2].clone() }
    }

    /// The elliptic Weil polynomial g with self = g^2, if any.
    pub fn square_root(&self) -> Option<WeilPoly1> {
        if self.a1.is_odd() {
            return None;
        }
        let g = WeilPoly1 { q: self.q.clone(), a: &self.a1 / 2 };
        (g.square() == *self && g.is_valid()).then_some(g)
    }

    /// Smallest n <= nmax with the base change to F_{q^n} a square of an elliptic Weil
    /// polynomial, together with that polynomial.
    pub fn geometric_split_analysis(&self, nmax: u32) -> Option<(u32, WeilPoly1)> {
        (1..=nmax).find_map(|n| self.base_change(n).square_root().map(|g| (n, g)))
    }
}

impl fmt::Display for WeilPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly())
    }
}

/// Power sums s_1..s_k of the roots of a monic polynomial (coefficients constant first).
pub fn power_sums(c: &[BigInt], k: usize) -> Vec<BigInt> {
    let d = c.len() - 1;
    // e_i with sign: c[d - i] = (-1)^i e_i.
    let mut s: Vec<BigInt> = Vec::with_capacity(k);
    for m in 1..=k {
        // s_m + c_{d-1} s_{m-1} + ... + c_{d-m+1} s_1 + m c_{d-m} = 0 for m <= d,
        // and the recurrence without the last term for m > d.
        let mut acc = BigInt::zero();
        for i in 1..m.min(d + 1) {
            acc += &c[d - i] * &s[m - i - 1];
        }
        if m <= d {
            acc += BigInt::from(m) * &c[d - m];
        }
        s.push(-acc);
    }
    s
}

/// The monic polynomial of degree t.len() with the given power sums.
pub fn from_power_sums(t: &[BigInt]) -> Vec<BigInt> {
    let d = t.len();
    let mut c = vec![BigInt::zero(); d + 1];
    c[d] = BigInt::one();
    for m in 1..=d {
        let mut acc = t[m - 1].clone();
        for i in 1..m {
            acc += &c[d - i] * &t[m - i - 1];
        }
        let (quo, rem) = (-acc).div_rem(&BigInt::from(m));
        assert!(rem.is_zero(), "power sums of algebraic integers give integral coefficients");
        c[d - m] = quo;
    }
    c
}

pub(crate) fn check_q(q: &BigInt) -> Result<(BigInt, u32)> {
    let f = exact_math::factor_integer(q);
    if f.len() != 1 {
        return Err(WeilError::Domain(format!("{q} is not a prime power")));
    }
    Ok(f[0].clone())
}
