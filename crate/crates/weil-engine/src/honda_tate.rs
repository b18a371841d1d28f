//! Honda-Tate admissibility of Weil polynomials over F_q for q = p and q = p^2.
//!
//! For each irreducible factor h of P over Q with multiplicity k, let e_h be the order of
//! the class of End^0 in Br(Q(pi)). P is the characteristic polynomial of an abelian
//! variety iff e_h divides k for every h. Here e_h is 1 or 2: the invariant at a real
//! place is 1/2, and at a place v over p it is (v(pi)/v(q)) [K_v : Q_p].

use exact_math::{factor_poly_q, kronecker_symbol, BigInt, IntPoly};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::weil::{check_q, WeilPoly2};
use crate::{Result, WeilError};

fn val(x: &BigInt, p: &BigInt) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let mut v = 0;
    let mut y = x.clone();
    while (&y % p).is_zero() {
        y /= p;
        v += 1;
    }
    Some(v)
}

/// Whether a nonzero integer is a square in Q_p.
pub fn is_padic_square(x: &BigInt, p: &BigInt) -> bool {
    let Some(v) = val(x, p) else {
        return true;
    };
    if v % 2 == 1 {
        return false;
    }
    let u = x / p.pow(v);
    if p == &BigInt::from(2) {
        u.mod_floor(&BigInt::from(8)) == BigInt::one()
    } else {
        kronecker_symbol(&u, p) == 1
    }
}

/// p-adic valuations of the roots (with multiplicity, ascending) from the Newton polygon.
pub fn newton_slopes(h: &IntPoly, p: &BigInt) -> Vec<(i64, i64)> {
    let pts: Vec<(i64, i64)> = h
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(k, c)| val(c, p).map(|v| (k as i64, v as i64)))
        .collect();
    // Lower convex hull from the constant term to the leading term.
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // Remove b if it lies on or above the segment a -> pt.
            if (b.1 - a.1) * (pt.0 - a.0) >= (pt.1 - a.1) * (b.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    // A segment of length L and drop D carries L roots of valuation D/L, stored as (D, L).
    let mut out = Vec::new();
    for w in hull.windows(2) {
        let (len, drop) = (w[1].0 - w[0].0, w[0].1 - w[1].1);
        for _ in 0..len {
            out.push((drop, len));
        }
    }
    out.reverse();
    out
}

fn multiplicative_order(p: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut k = 1;
    let mut x = p % m;
    while x != 1 {
        x = x * p % m;
        k += 1;
    }
    k
}

fn cyclotomic(m: u64) -> Vec<i64> {
    match m {
        3 => vec![1, 1, 1],
        4 => vec![1, 0, 1],
        6 => vec![1, -1, 1],
        5 => vec![1, 1, 1, 1, 1],
        8 => vec![1, 0, 0, 0, 1],
        10 => vec![1, -1, 1, -1, 1],
        12 => vec![1, 0, -1, 0, 1],
        _ => unreachable!("only cyclotomic polynomials of degree 2 and 4 occur"),
    }
}

/// Degrees of the irreducible factors of Phi_m over Q_p.
fn cyclotomic_local_degrees(m: u64, p: u64) -> Vec<u64> {
    let mut mp = m;
    let mut pk = 1;
    while mp % p == 0 {
        mp /= p;
        pk *= p;
    }
    let phi_pk = if pk == 1 { 1 } else { pk / p * (p - 1) };
    let f = multiplicative_order(p, mp);
    let phi_mp = (1..=mp).filter(|k| k.gcd(&mp) == 1).count() as u64;
    vec![phi_pk * f; (phi_mp / f) as usize]
}

/// The order (1 or 2) of the Brauer class attached to an irreducible factor h.
pub fn brauer_order(h: &IntPoly, p: &BigInt, r: u32) -> Result<u32> {
    let q = p.pow(r);
    let d = h.degree();
    // Real roots: T - sqrt(q) for even r, T^2 - q for odd r.
    let has_real_root = match d {
        1 => true,
        2 => h.coeff(1).is_zero() && h.coeff(0) == -q.clone(),
        _ => false,
    };
    if has_real_root {
        return Ok(2);
    }
    if r == 1 {
        return Ok(1);
    }
    if r != 2 {
        return Err(WeilError::Unsupported(format!("admissibility over F_{{p^{r}}}")));
    }
    let slopes = newton_slopes(h, p);
    // Valuation v_p(root) = D / L; invariant is (v_p / 2) times the local degree.
    if slopes.iter().any(|&(dr, l)| dr % l != 0) {
        return Ok(2);
    }
    let vals: Vec<i64> = slopes.iter().map(|&(dr, l)| dr / l).collect();
    let middle = vals.iter().filter(|&&v| v == 1).count();
    if middle == 0 {
        return Ok(1);
    }
    let four = BigInt::from(4);
    let odd_local_factor = match (d, middle) {
        // T^2 + aT + q with both roots of valuation 1: odd local degree iff it splits.
        (2, 2) => is_padic_square(&(h.coeff(1).pow(2) - &four * &q), p),
        // Slopes (0, 1, 1, 2): the slope-1 pair splits iff (a2 + 2q)^2 - 4q a1^2 is a square.
        (4, 2) => {
            let (a1, a2) = (h.coeff(3), h.coeff(2));
            let r = (&a2 + BigInt::from(2) * &q).pow(2) - &four * &q * &a1 * &a1;
            is_padic_square(&r, p)
        }
        // Supersingular: h = p^4 Phi_m(T / p).
        (4, 4) => {
            let pu = p.to_u64().expect("small prime");
            let m = [5u64, 8, 10, 12]
                .into_iter()
                .find(|&m| {
                    let c = cyclotomic(m);
                    (0..=4).all(|k| h.coeff(k) == BigInt::from(c[k]) * p.pow(4 - k as u32))
                })
                .ok_or_else(|| WeilError::Invariant(format!("supersingular factor {h} is not p^4 Phi_m(T/p)")))?;
            cyclotomic_local_degrees(m, pu).iter().any(|d| d % 2 == 1)
        }
        _ => return Err(WeilError::Invariant(format!("unexpected slope pattern for {h}"))),
    };
    Ok(if odd_local_factor { 2 } else { 1 })
}

/// Whether the Weil polynomial is the characteristic polynomial of Frobenius of an
/// abelian surface over F_q (q = p or p^2).
pub fn honda_tate_admissible(w: &WeilPoly2) -> Result<bool> {
    if !w.is_valid() {
        return Ok(false);
    }
    let (p, r) = check_q(&w.q)?;
    let fac = factor_poly_q(&w.poly())?;
    for (h, k) in &fac.factors {
        let e = brauer_order(h, &p, r)?;
        if k % e != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}
