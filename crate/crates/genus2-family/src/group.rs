//! Group structure of J(F_p) by closure under random generators.

use std::collections::HashSet;

use exact_math::AbelianInvariants;
use num_traits::ToPrimitive;
use exact_math::fp::mul_mod;
use exact_math::FpPoly;

use crate::cantor::{JacobianFp, MumfordDivisor};
use crate::curve::GenusTwoCurve;
use crate::{GenusError, Result};

/// Above this prime only the group order is reported.
pub const MAX_ENUMERATED_P: u64 = 60;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupInfo {
    pub p: u64,
    /// f(1) of the Frobenius polynomial.
    pub order: u64,
    /// None when no odd-degree model exists over F_p or p is above MAX_ENUMERATED_P.
    pub invariants: Option<AbelianInvariants>,
}

/// Every Mumford pair (u, v) over F_p, so all of J(F_p).
pub fn enumerate_jacobian(j: &JacobianFp) -> Vec<MumfordDivisor> {
    let p = j.p;
    let mut out = vec![j.identity()];
    for x0 in 0..p {
        let hx = j.h.eval(x0);
        for y in 0..p {
            if mul_mod(y, y, p) == hx {
                out.push(MumfordDivisor { u: FpPoly::new(p, vec![(p - x0) % p, 1]), v: FpPoly::constant(p, y) });
            }
        }
    }
    for s in 0..p {
        for t in 0..p {
            let u = FpPoly::new(p, vec![t, s, 1]);
            let r = j.h.rem(&u);
            let (r0, r1) = (r.coeff(0), r.coeff(1));
            // (a x + b)^2 = (2ab - a^2 s) x + (b^2 - a^2 t) mod u
            for a in 0..p {
                let a2 = mul_mod(a, a, p);
                for b in 0..p {
                    let c1 = (mul_mod(2 * a % p, b, p) + p - mul_mod(a2, s, p)) % p;
                    let c0 = (mul_mod(b, b, p) + p - mul_mod(a2, t, p)) % p;
                    if c1 == r1 && c0 == r0 {
                        out.push(MumfordDivisor { u: u.clone(), v: FpPoly::new(p, vec![b, a]) });
                    }
                }
            }
        }
    }
    out
}

/// Invariant factors of a finite abelian group given as an explicit set, from the number
/// of elements killed by each prime power.
pub fn invariants_of(j: &JacobianFp, elems: &HashSet<MumfordDivisor>) -> AbelianInvariants {
    let n = elems.len() as u64;
    let mut cyclic = Vec::new();
    for (l, e) in exact_math::factor_integer(&n.into()) {
        let l = l.to_u64().expect("small prime");
        // c[k] = #{x : l^k x = 0}
        let mut counts = vec![1u64];
        let mut lk = 1u64;
        for _ in 0..e {
            lk *= l;
            counts.push(elems.iter().filter(|x| j.order_divides(x, lk)).count() as u64);
            if *counts.last().unwrap() == l.pow(e) {
                break;
            }
        }
        // Factors of exponent >= k: log_l(c[k] / c[k-1]).
        let ge: Vec<u32> = counts.windows(2).map(|w| (w[1] / w[0]).ilog(l)).collect();
        for k in 0..ge.len() {
            let exactly = ge[k] - ge.get(k + 1).copied().unwrap_or(0);
            for _ in 0..exactly {
                cyclic.push(num_bigint::BigInt::from(l.pow(k as u32 + 1)));
            }
        }
    }
    AbelianInvariants::from_cyclic(&cyclic)
}

pub fn jacobian_group_mod_p(c: &GenusTwoCurve, p: u64) -> Result<GroupInfo> {
    let order = c.lpoly(p)?.point_count().to_u64().expect("small group");
    if p > MAX_ENUMERATED_P {
        return Ok(GroupInfo { p, order, invariants: None });
    }
    let j = match JacobianFp::from_curve(c, p) {
        Ok(j) => j,
        Err(GenusError::Unsupported(_)) => return Ok(GroupInfo { p, order, invariants: None }),
        Err(e) => return Err(e),
    };
    let elems: HashSet<MumfordDivisor> = enumerate_jacobian(&j).into_iter().collect();
    if elems.len() as u64 != order {
        return Err(GenusError::InconsistentCounts(format!(
            "{} Mumford pairs over F_{p} but f(1) = {order}",
            elems.len()
        )));
    }
    Ok(GroupInfo { p, order, invariants: Some(invariants_of(&j, &elems)) })
}
