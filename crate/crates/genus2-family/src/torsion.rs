//! Rational 2-torsion from factorization patterns and torsion certification by reduction.

use exact_math::{factor_poly_q, AbelianInvariants, BigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::curve::GenusTwoCurve;
use crate::{GenusError, Result};

fn cycle_type(degrees: &[usize]) -> Result<Vec<usize>> {
    let total: usize = degrees.iter().sum();
    if degrees.contains(&0) {
        return Err(GenusError::Domain("factor degrees must be positive".into()));
    }
    match total {
        6 => Ok(degrees.to_vec()),
        // The point at infinity is the sixth branch point, fixed by Galois.
        5 => Ok(degrees.iter().copied().chain([1]).collect()),
        _ => Err(GenusError::Domain(format!("factor degrees sum to {total}, not 5 or 6"))),
    }
}

/// Fixed points of a permutation with the given cycle type on J[2], the even subsets of
/// the six branch points modulo complement. A fixed class is a union of cycles (an odd
/// cycle halves the count of even unions) since swapping a subset with its complement
/// would need a half of each cycle, of total size 3.
pub fn two_torsion_count(degrees: &[usize]) -> Result<u64> {
    let cycles = cycle_type(degrees)?;
    let k = cycles.len() as u32;
    let even_unions = if cycles.iter().any(|c| c % 2 == 1) { 1u64 << (k - 1) } else { 1u64 << k };
    Ok(even_unions / 2)
}

/// The same count by scanning all 32 even subsets.
pub fn two_torsion_count_enum(degrees: &[usize]) -> Result<u64> {
    let cycles = cycle_type(degrees)?;
    let mut perm = [0usize; 6];
    let mut start = 0;
    for c in cycles {
        for i in 0..c {
            perm[start + i] = start + (i + 1) % c;
        }
        start += c;
    }
    let image = |s: u32| (0..6).filter(|&i| s >> i & 1 == 1).fold(0u32, |acc, i| acc | 1 << perm[i]);
    let fixed = (0u32..64)
        .filter(|s| s.count_ones() % 2 == 0)
        .filter(|&s| {
            let t = image(s);
            t == s || t == 63 ^ s
        })
        .count() as u64;
    Ok(fixed / 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table2Row {
    pub torsion: Vec<u64>,
    /// Discriminant of the maximal order.
    pub disc: u64,
    pub end_field: String,
    pub f: Vec<i64>,
}

impl Table2Row {
    pub fn curve(&self) -> GenusTwoCurve {
        GenusTwoCurve::from_coeffs(&self.f).expect("printed curves are nonsingular")
    }

    pub fn claimed(&self) -> AbelianInvariants {
        AbelianInvariants::from_divisors(&self.torsion)
    }
}

/// The five printed Jacobians with torsion.
pub fn table2_rows() -> Vec<Table2Row> {
    serde_json::from_str(include_str!("../fixtures/table2.json")).expect("bundled fixture parses")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Consistent,
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertReport {
    /// (p, #J(F_p)) for every good odd p tested.
    pub orders: Vec<(u64, u64)>,
    /// Primes where the claimed order does not divide #J(F_p).
    pub failures: Vec<u64>,
    pub gcd: BigInt,
    pub factor_degrees: Vec<usize>,
    /// Rational 2-torsion classes visible from the factorization of f over Q.
    pub two_torsion_lower: u64,
    /// Size of the 2-torsion subgroup of the claimed group.
    pub claimed_two_torsion: u64,
    pub verdict: Verdict,
}

fn two_part(n: &BigInt) -> BigInt {
    let mut r = BigInt::one();
    let mut n = n.clone();
    while !n.is_zero() && n.is_even() {
        n /= 2;
        r *= 2;
    }
    r
}

/// Claimed torsion against reductions at good odd p <= pmax and the 2-torsion visible
/// from the factorization of f.
pub fn certify_torsion(c: &GenusTwoCurve, claimed: &AbelianInvariants, pmax: u64) -> Result<CertReport> {
    let primes = c.good_primes(pmax);
    if primes.is_empty() {
        return Err(GenusError::Domain(format!("no good odd primes up to {pmax}")));
    }
    let claimed_order = claimed.order().ok_or_else(|| GenusError::Domain("claimed group is infinite".into()))?;
    let mut orders = Vec::new();
    let mut failures = Vec::new();
    let mut g = BigInt::zero();
    for p in primes {
        let n = c.lpoly(p)?.point_count();
        if !(&n % &claimed_order).is_zero() {
            failures.push(p);
        }
        g = g.gcd(&n);
        orders.push((p, n.to_u64().expect("small order")));
    }
    let factor_degrees = factor_poly_q(c.f())?.degrees();
    let two_torsion_lower = two_torsion_count(&factor_degrees)?;
    let claimed_two_torsion = 1u64 << claimed.p_rank(2);
    let consistent = failures.is_empty()
        && claimed_two_torsion <= two_torsion_lower
        && BigInt::from(two_torsion_lower) <= two_part(&g);
    Ok(CertReport {
        orders,
        failures,
        gcd: g,
        factor_degrees,
        two_torsion_lower,
        claimed_two_torsion,
        verdict: if consistent { Verdict::Consistent } else { Verdict::Inconsistent },
    })
}
