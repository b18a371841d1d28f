//! Kronecker and Hilbert symbols, square classes of rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{MathError, Result};
use crate::integer::{factor_integer, is_square};
use crate::rat::{valuation_int, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(BigInt),
    Infinity,
}

impl Place {
    pub fn prime(p: u64) -> Place {
        Place::Finite(BigInt::from(p))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

fn mod_small(a: &BigInt, m: u32) -> u32 {
    let r: BigInt = a.mod_floor(&BigInt::from(m));
    r.iter_u32_digits().next().unwrap_or(0)
}

/// Kronecker symbol (a/n), extended to even and negative n in the usual way.
pub fn kronecker_symbol(a: &BigInt, n: &BigInt) -> i8 {
    const TAB2: [i8; 8] = [0, 1, 0, -1, 0, -1, 0, 1];
    if n.is_zero() {
        return if a.abs().is_one() { 1 } else { 0 };
    }
    if a.is_even() && n.is_even() {
        return 0;
    }
    let mut a = a.clone();
    let mut b = n.clone();
    let v = b.trailing_zeros().unwrap_or(0);
    b >>= v;
    let mut k: i8 = if v % 2 == 0 { 1 } else { TAB2[mod_small(&a, 8) as usize] };
    if b.is_negative() {
        b = -b;
        if a.is_negative() {
            k = -k;
        }
    }
    loop {
        if a.is_zero() {
            return if b.is_one() { k } else { 0 };
        }
        let v = a.trailing_zeros().unwrap_or(0);
        a >>= v;
        if v % 2 == 1 {
            k *= TAB2[mod_small(&b, 8) as usize];
        }
        if mod_small(&a, 4) == 3 && mod_small(&b, 4) == 3 {
            k = -k;
        }
        let r = a.abs();
        a = b.mod_floor(&r);
        b = r;
    }
}

/// Integer in the same square class as a nonzero rational.
fn integral_rep(x: &Rat) -> BigInt {
    x.numer() * x.denom()
}

/// Hilbert symbol (a, b)_v: 1 iff the quaternion algebra (a, b) splits at v.
pub fn hilbert_symbol(a: &Rat, b: &Rat, place: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(MathError::Domain("Hilbert symbol of zero".into()));
    }
    let p = match place {
        Place::Infinity => {
            return Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 });
        }
        Place::Finite(p) => p,
    };
    let a = integral_rep(a);
    let b = integral_rep(b);
    let alpha = valuation_int(&a, p);
    let beta = valuation_int(&b, p);
    let u = &a / p.pow(alpha);
    let v = &b / p.pow(beta);
    if p == &BigInt::from(2) {
        let eps = |x: &BigInt| ((mod_small(x, 4) + 3) % 4 / 2) as u32;
        let omega = |x: &BigInt| {
            let r = mod_small(x, 8);
            u32::from(r == 3 || r == 5)
        };
        let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
        Ok(if e % 2 == 0 { 1 } else { -1 })
    } else {
        let mut s: i8 = 1;
        if alpha % 2 == 1 && beta % 2 == 1 && mod_small(p, 4) == 3 {
            s = -s;
        }
        if beta % 2 == 1 {
            s *= kronecker_symbol(&u, p);
        }
        if alpha % 2 == 1 {
            s *= kronecker_symbol(&v, p);
        }
        Ok(s)
    }
}

/// Squarefree integer representing x modulo nonzero squares, and whether x is a square.
pub fn rational_square_class(x: &Rat) -> Result<(BigInt, bool)> {
    if x.is_zero() {
        return Err(MathError::Domain("square class of zero".into()));
    }
    let mut s = BigInt::one();
    for n in [x.numer(), x.denom()] {
        for (p, e) in factor_integer(n) {
            if e % 2 == 1 {
                if (&s % &p).is_zero() {
                    s /= &p;
                } else {
                    s *= &p;
                }
            }
        }
    }
    if x.is_negative() {
        s = -s;
    }
    let square = x.is_positive() && is_square(x.numer()) && is_square(x.denom());
    Ok((s, square))
}

/// Primes at which some finite Hilbert symbol of (a, b) could be -1.
pub fn candidate_primes(a: &Rat, b: &Rat) -> Vec<BigInt> {
    let mut ps: Vec<BigInt> = vec![BigInt::from(2)];
    for x in [a.numer(), a.denom(), b.numer(), b.denom()] {
        ps.extend(factor_integer(x).into_iter().map(|(p, _)| p));
    }
    ps.sort();
    ps.dedup();
    ps
}
