//! Integer factorization by trial division and Pollard–Brent.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Miller–Rabin with the first 25 prime bases; deterministic far beyond the
/// sizes used here.
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigInt::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'bases: for &a in &SMALL_PRIMES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

fn pollard_brent(n: &BigInt) -> BigInt {
    let one = BigInt::one();
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let (mut y, m) = (BigInt::from(2), 64u32);
        let (mut g, mut r, mut q) = (one.clone(), 1u64, one.clone());
        let (mut x, mut ys) = (y.clone(), y.clone());
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min((r - k) as u32) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m as u64;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}

fn split_into(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    let r = n.sqrt();
    if &r * &r == n {
        split_into(r.clone(), out);
        split_into(r, out);
        return;
    }
    let c = n.cbrt();
    if &c * &c * &c == n {
        for _ in 0..3 {
            split_into(c.clone(), out);
        }
        return;
    }
    let d = pollard_brent(&n);
    let e = &n / &d;
    split_into(d, out);
    split_into(e, out);
}

/// Prime factorization of |n| as sorted `(prime, exponent)` pairs; empty for 0 and ±1.
pub fn factor_integer(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut primes = Vec::new();
    if n.is_zero() {
        return Vec::new();
    }
    let mut p = 2u32;
    while p < 10_000 {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        while (&n % &bp).is_zero() {
            n /= &bp;
            primes.push(bp.clone());
        }
        p += if p == 2 { 1 } else { 2 };
    }
    split_into(n, &mut primes);
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// The squarefree integer in the class of `n` modulo squares, keeping the sign.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    assert!(!n.is_zero(), "squarefree part of zero");
    let mut s = BigInt::one();
    for (p, e) in factor_integer(n) {
        if e % 2 == 1 {
            s *= p;
        }
    }
    if n.is_negative() {
        -s
    } else {
        s
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut d: Vec<u64> = (1..=n.sqrt()).filter(|k| n % k == 0).flat_map(|k| [k, n / k]).collect();
    d.sort_unstable();
    d.dedup();
    d
}

pub fn to_i64(n: &BigInt) -> Option<i64> {
    n.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(mut n: u64) -> Vec<(BigInt, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((BigInt::from(p), e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((BigInt::from(n), 1));
        }
        out
    }

    #[test]
    fn factor_matches_trial_division() {
        for n in 1u64..3000 {
            assert_eq!(factor_integer(&BigInt::from(n)), naive(n), "n = {n}");
        }
    }

    #[test]
    fn factor_large_semiprime() {
        let p: BigInt = "1000000007".parse().unwrap();
        let q: BigInt = "998244353".parse().unwrap();
        let r: BigInt = "2305843009213693951".parse().unwrap();
        let n = &p * &q * &q * &r;
        let f = factor_integer(&n);
        assert_eq!(f, vec![(q.clone(), 2), (p, 1), (r, 1)]);
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_part(&BigInt::from(18)), BigInt::from(2));
        assert_eq!(squarefree_part(&BigInt::from(-9)), BigInt::from(-1));
        assert_eq!(squarefree_part(&BigInt::from(1)), BigInt::from(1));
    }

    #[test]
    fn divisor_list() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
    }
}
