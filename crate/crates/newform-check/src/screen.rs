//! Local L-factors, twist detection and the quaternion criterion.

use exact_math::{factor_integer, kronecker_symbol, BigInt, Rat};
use num_integer::Integer;
use num_traits::{One, Zero};
use quaternion_orders::QuatAlgebra;

use crate::record::NewformRecord;
use crate::{NewformError, Result};

/// Twist relations are only trusted with all a_p up to this bound.
pub const MIN_TWIST_BOUND: u64 = 100;

/// Norm from Q(sqrt m) of 1 - a_p + p, i.e. L_p(A, 1) for the attached surface.
pub fn lp_at_one(r: &NewformRecord, p: u64) -> Result<BigInt> {
    if r.level % p == 0 {
        return Err(NewformError::Domain(format!("{p} divides the level {}", r.level)));
    }
    let a = r.a_p(p).ok_or_else(|| NewformError::Domain(format!("a_{p} is not in the record {}", r.label)))?;
    let s = Rat::from_integer((1 + p).into()) - &a.u;
    let n = &s * &s - &a.v * &a.v * Rat::from_integer(r.m.into());
    if !n.is_integer() {
        return Err(NewformError::Invariant(format!("L_{p}(1) = {n} is not an integer")));
    }
    Ok(n.to_integer())
}

/// gcd of L_p(1) over the given good primes: the rational torsion of every surface in
/// the isogeny class has order dividing it.
pub fn torsion_divisor_bound(r: &NewformRecord, primes: &[u64]) -> Result<BigInt> {
    if primes.is_empty() {
        return Err(NewformError::Domain("empty prime list".into()));
    }
    let mut g = BigInt::zero();
    for &p in primes {
        g = g.gcd(&lp_at_one(r, p)?);
    }
    Ok(g)
}

/// Fundamental discriminants d != 1 supported on the primes dividing the level,
/// ordered by |d| and then sign.
pub fn candidate_discriminants(level: u64) -> Vec<i64> {
    let ps: Vec<i64> = factor_integer(&BigInt::from(level))
        .into_iter()
        .map(|(p, _)| i64::try_from(p).expect("small prime"))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << ps.len()) {
        let s: i64 = ps.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, p)| p).product();
        for s in [s, -s] {
            let d = if s.rem_euclid(4) == 1 {
                s
            } else if level % 2 == 0 {
                4 * s
            } else {
                continue;
            };
            if d != 1 && !out.contains(&d) {
                out.push(d);
            }
        }
    }
    out.sort_by_key(|&d| (d.abs(), d > 0));
    out
}

fn chi(d: i64, p: u64) -> i8 {
    kronecker_symbol(&BigInt::from(d), &BigInt::from(p))
}

/// Primes p <= bound with a_p known and p coprime to d N.
fn tested_primes(r: &NewformRecord, d: i64, bound: u64) -> impl Iterator<Item = u64> + '_ {
    r.ap.keys()
        .copied()
        .filter(move |&p| p <= bound && r.level % p != 0 && d.rem_euclid(p as i64) != 0)
}

/// a_p chi_d(p) = sigma(a_p) for all tested p.
fn is_inner_twist(r: &NewformRecord, d: i64, bound: u64) -> bool {
    tested_primes(r, d, bound).all(|p| {
        let a = &r.ap[&p];
        let lhs = if chi(d, p) == 1 { a.clone() } else { a.neg() };
        lhs == a.conj()
    })
}

/// a_p = 0 at every tested prime inert in Q(sqrt d).
fn looks_cm(r: &NewformRecord, d: i64, bound: u64) -> bool {
    d < 0 && tested_primes(r, d, bound).all(|p| chi(d, p) != -1 || r.ap[&p].is_zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistStatus {
    Conclusive,
    /// Coefficients only up to the given bound, below MIN_TWIST_BOUND.
    Inconclusive(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelfTwistSource {
    /// The record carried a CM flag.
    Flag,
    /// Read off vanishing a_p at inert primes: evidence, not a proof.
    Heuristic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistReport {
    pub status: TwistStatus,
    pub bound: u64,
    pub self_twist: bool,
    pub self_twist_source: SelfTwistSource,
    /// Discriminant of the CM field found by the heuristic, if any.
    pub cm_disc: Option<i64>,
    pub inner_twists: Vec<i64>,
}

pub fn twist_checks(r: &NewformRecord) -> TwistReport {
    let bound = r.coefficient_bound();
    let status = if bound >= MIN_TWIST_BOUND { TwistStatus::Conclusive } else { TwistStatus::Inconclusive(bound) };
    let cands = candidate_discriminants(r.level);
    let inner_twists = cands.iter().copied().filter(|&d| is_inner_twist(r, d, bound)).collect();
    let cm_disc = cands.iter().copied().find(|&d| looks_cm(r, d, bound));
    let (self_twist, self_twist_source) = match r.self_twist {
        Some(flag) => (flag, SelfTwistSource::Flag),
        None => (cm_disc.is_some(), SelfTwistSource::Heuristic),
    };
    TwistReport { status, bound, self_twist, self_twist_source, cm_disc, inner_twists }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PqmVerdict {
    pub is_pqm: bool,
    pub twist_disc: Option<i64>,
    /// Product of the finite primes ramified in (d, m); 1 when split or without a twist.
    pub quaternion_disc: BigInt,
    pub cm_heuristic: bool,
}

/// PQM iff no self-twist, a nontrivial inner twist by Q(sqrt d), and (d, m) division.
pub fn pqm_criterion(r: &NewformRecord) -> Result<PqmVerdict> {
    let t = twist_checks(r);
    if let TwistStatus::Inconclusive(b) = t.status {
        return Err(NewformError::Inconclusive(format!(
            "{} has coefficients only up to {b}, fewer than {MIN_TWIST_BOUND}",
            r.label
        )));
    }
    let twist_disc = t.inner_twists.first().copied();
    let quaternion_disc = match twist_disc {
        Some(d) => QuatAlgebra::from_ints(d, r.m).discriminant(),
        None => BigInt::one(),
    };
    let is_pqm = !t.self_twist && twist_disc.is_some() && !quaternion_disc.is_one();
    Ok(PqmVerdict {
        is_pqm,
        twist_disc,
        quaternion_disc,
        cm_heuristic: t.self_twist && t.self_twist_source == SelfTwistSource::Heuristic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidates() {
        assert_eq!(candidate_discriminants(243), vec![-3]);
        assert_eq!(candidate_discriminants(2592), vec![-3, -4, -8, 8, 12, -24, 24]);
        assert_eq!(candidate_discriminants(5), vec![5]);
    }
}
