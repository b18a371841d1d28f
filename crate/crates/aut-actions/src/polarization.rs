//! Degrees of polarizations via positive involutions, and the distinguished quadratic ring.

use exact_math::{squarefree_part, BigInt, Rat};
use num_traits::{Signed, ToPrimitive, Zero};
use quaternion_orders::{QuatElt, QuatOrder};

use crate::action::{DihedralAction, DihedralKind};
use crate::fixed::classify_c2c2_mod2;
use crate::{ActionError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizationReport {
    /// Squarefree part of disc(B) nrd(mu): the degree of the polarization up to squares.
    pub degree_class: BigInt,
    /// Squarefree d with Q(mu) = Q(sqrt d).
    pub subfield_disc: BigInt,
    /// (degree_class = 1) iff Q(mu) = Q(sqrt(-disc(B))); checked in Jacobian mode.
    pub jacobian_consistent: bool,
}

/// Analyzes the positive involution b -> mu^-1 conj(b) mu.
pub fn polarization_analysis(o: &QuatOrder, mu: &QuatElt, jacobian_mode: bool) -> Result<PolarizationReport> {
    if !mu.trd().is_zero() {
        return Err(ActionError::Domain(format!("trd({mu}) != 0")));
    }
    let sq = mu.mul(mu).as_scalar().expect("trace-zero elements square to scalars");
    if !sq.is_negative() {
        return Err(ActionError::Domain(format!("({mu})^2 = {sq} is not negative")));
    }
    let disc = o.algebra().discriminant();
    let deg = Rat::from_integer(disc.clone()) * mu.nrd();
    let degree_class = rat_squarefree(&deg);
    let subfield_disc = rat_squarefree(&sq);
    let principal = degree_class == BigInt::from(1);
    let jacobian_consistent = principal == (subfield_disc == squarefree_part(&-disc));
    if jacobian_mode && !jacobian_consistent {
        return Err(ActionError::Invariant("principal polarization without Q(mu) = Q(sqrt(-D))".into()));
    }
    Ok(PolarizationReport { degree_class, subfield_disc, jacobian_consistent })
}

fn rat_squarefree(x: &Rat) -> BigInt {
    // p/q and pq agree up to squares.
    squarefree_part(&(x.numer() * x.denom()))
}

/// For a D2 action whose mod-2 fixed points are (Z/2)^3: the polarization attached to the
/// unique imaginary stable quadratic subfield, and whether its degree class is even.
/// None when the fixed points are smaller.
pub fn c2c2_polarization_check(action: &DihedralAction) -> Result<Option<(PolarizationReport, bool)>> {
    let rep = classify_c2c2_mod2(action)?;
    if !rep.criterion {
        return Ok(None);
    }
    let (i, j) = (&action.elements()[0], &action.elements()[1]);
    let candidates = [i.clone(), j.clone(), i.mul(j)];
    let imaginary: Vec<&QuatElt> = candidates
        .iter()
        .filter(|x| x.mul(x).as_scalar().is_some_and(|s| s.is_negative()))
        .collect();
    if imaginary.len() != 1 {
        return Err(ActionError::Invariant(format!(
            "{} imaginary stable subfields, expected exactly one",
            imaginary.len()
        )));
    }
    let r = polarization_analysis(action.order(), imaginary[0], false)?;
    let even = (&r.degree_class % 2i32).is_zero();
    Ok(Some((r, even)))
}

/// The quadratic ring S = Q(s) cap O described by the kind of the action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticRing {
    /// Squarefree d with S an order of Q(sqrt d) containing Z[sqrt d] (d = -3 for Z[omega]).
    pub d: i64,
    /// Z[omega] rather than Z[sqrt d].
    pub eisenstein: bool,
    pub ring_disc: i64,
    pub maximal_away_from_2: bool,
    pub unramified_outside_6disc: bool,
}

fn fundamental_disc(d: i64) -> i64 {
    if d.rem_euclid(4) == 1 {
        d
    } else {
        4 * d
    }
}

fn prime_divisors(n: i64) -> Vec<i64> {
    exact_math::factor_integer(&BigInt::from(n.abs()))
        .into_iter()
        .map(|(p, _)| p.to_i64().expect("small"))
        .collect()
}

pub fn distinguished_subring(action: &DihedralAction) -> Result<QuadraticRing> {
    let sqf = |x: i64| squarefree_part(&BigInt::from(x)).to_i64().expect("small");
    let (d, eisenstein) = match action.kind() {
        DihedralKind::D1 => (sqf(action.m()), false),
        DihedralKind::D2 => {
            let m = action.m();
            let n = action.n().expect("D2 has n");
            let d = [m, n, -m * n]
                .into_iter()
                .find(|&s| s < 0)
                .expect("one of m, n, -mn is negative");
            (sqf(d), false)
        }
        DihedralKind::D4 => (-1, false),
        DihedralKind::D3 | DihedralKind::D6 => (-3, true),
    };
    let ring_disc = if eisenstein { -3 } else { 4 * d };
    let dk = fundamental_disc(d);
    let index_sq = ring_disc / dk;
    let maximal_away_from_2 = index_sq > 0 && (index_sq & (index_sq - 1)) == 0;
    let disc = action.order().algebra().discriminant().to_i64().expect("small");
    let unramified_outside_6disc = prime_divisors(dk).iter().all(|p| (6 * disc) % p == 0);
    if !maximal_away_from_2 || !unramified_outside_6disc {
        return Err(ActionError::Invariant(format!("quadratic ring of discriminant {ring_disc} fails the local conditions")));
    }
    Ok(QuadraticRing { d, eisenstein, ring_disc, maximal_away_from_2, unramified_outside_6disc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{disc6_actions, disc6_order};

    #[test]
    fn degree_classes() {
        let o = disc6_order();
        let alg = o.algebra().clone();
        let nu = &quaternion_orders::find_trace_zero(&o, -6, 10)[0];
        let r = polarization_analysis(&o, nu, true).unwrap();
        assert_eq!(r.degree_class, BigInt::from(1));
        assert_eq!(r.subfield_disc, BigInt::from(-6));
        assert!(r.jacobian_consistent);
        let r = polarization_analysis(&o, &alg.i(), false).unwrap();
        assert_eq!(r.degree_class, BigInt::from(6));
        assert_eq!(r.subfield_disc, BigInt::from(-1));
        assert!(polarization_analysis(&o, &alg.j(), false).is_err());
    }

    #[test]
    fn rings() {
        let acts = disc6_actions();
        let d4 = distinguished_subring(&acts[2]).unwrap();
        assert_eq!((d4.d, d4.ring_disc), (-1, -4));
        let d2 = distinguished_subring(&acts[1]).unwrap();
        assert_eq!(d2.d, -1);
        assert_eq!(24 % d2.ring_disc, 0);
    }
}
