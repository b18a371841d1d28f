//! Enumeration of isogeny classes of abelian surfaces over small fields and the scans
//! built on it.

use std::collections::BTreeSet;

use exact_math::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::honda_tate::honda_tate_admissible;
use crate::label::format_label;
use crate::weil::WeilPoly2;
use crate::{Result, WeilError};

pub const SUPPORTED_Q: [u64; 6] = [2, 3, 4, 5, 7, 9];
pub const DEFAULT_NMAX: u32 = 24;
pub const GCD_EXPONENT: u32 = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceClass {
    pub weil: WeilPoly2,
    pub admissible: bool,
}

impl SurfaceClass {
    pub fn label(&self) -> String {
        format_label(&self.weil)
    }
}

/// All Weil-valid (a1, a2) over F_q, ordered by (a1, a2), each flagged with Honda-Tate
/// admissibility.
pub fn enumerate_surfaces(q: u64) -> Result<Vec<SurfaceClass>> {
    if !SUPPORTED_Q.contains(&q) {
        return Err(WeilError::Domain(format!("q = {q} is outside the supported set {SUPPORTED_Q:?}")));
    }
    let qi = q as i64;
    // |a1| <= 4 sqrt q and 2|a1| sqrt q - 2q <= a2 <= a1^2/4 + 2q.
    let a1max = (16 * qi).sqrt();
    let mut out = Vec::new();
    for a1 in -a1max..=a1max {
        let hi = a1 * a1 / 4 + 2 * qi;
        for a2 in -2 * qi..=hi {
            let w = WeilPoly2::new(qi, a1, a2);
            if w.is_valid() {
                let admissible = honda_tate_admissible(&w)?;
                out.push(SurfaceClass { weil: w, admissible });
            }
        }
    }
    Ok(out)
}

pub fn admissible_classes(q: u64) -> Result<Vec<WeilPoly2>> {
    Ok(enumerate_surfaces(q)?.into_iter().filter(|c| c.admissible).map(|c| c.weil).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdScan {
    pub max_gcd: BigInt,
    pub attaining: Vec<WeilPoly2>,
}

/// max gcd(f(1), l^100) over admissible classes over F_q, optionally only over classes
/// that become the square of an elliptic curve class over some F_{q^n}, n <= 24.
pub fn torsion_gcd_scan(q: u64, ell: u64, geometric_square_only: bool) -> Result<GcdScan> {
    let lpow = BigInt::from(ell).pow(GCD_EXPONENT);
    let mut best = BigInt::zero();
    let mut attaining = Vec::new();
    for w in admissible_classes(q)? {
        if geometric_square_only && w.geometric_split_analysis(DEFAULT_NMAX).is_none() {
            continue;
        }
        let g = w.point_count().gcd(&lpow);
        if g > best {
            best = g.clone();
            attaining.clear();
        }
        if g == best {
            attaining.push(w);
        }
    }
    Ok(GcdScan { max_gcd: best, attaining })
}

/// Admissible classes over F_q whose point count is divisible by d.
pub fn classes_with_divisor(q: u64, d: u64) -> Result<Vec<WeilPoly2>> {
    let d = BigInt::from(d);
    Ok(admissible_classes(q)?
        .into_iter()
        .filter(|w| (w.point_count() % &d).is_zero())
        .collect())
}

/// Primes dividing 1 + a + q for some integer a with a^2 <= 4q.
pub fn qm_prime_bound(q: u64) -> BTreeSet<u64> {
    let qi = q as i64;
    let amax = (4 * qi).sqrt();
    let mut out = BTreeSet::new();
    for a in -amax..=amax {
        let v = 1 + a + qi;
        for (p, _) in exact_math::factor_integer(&BigInt::from(v)) {
            out.insert(p.to_u64().expect("small"));
        }
    }
    out
}

/// One entry of an isogeny class list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub label: String,
    pub a1: i64,
    pub a2: i64,
}

pub fn parse_fixture(json: &str) -> Result<Vec<FixtureEntry>> {
    let v: Vec<FixtureEntry> = serde_json::from_str(json).map_err(|e| WeilError::Fixture(e.to_string()))?;
    for e in &v {
        let w = crate::label::parse_label(&e.label)?;
        if w.a1 != BigInt::from(e.a1) || w.a2 != BigInt::from(e.a2) {
            return Err(WeilError::Fixture(format!("label {} disagrees with ({}, {})", e.label, e.a1, e.a2)));
        }
    }
    Ok(v)
}

/// Static isogeny class lists for q in {2, 3, 5, 7}.
pub fn builtin_fixture(q: u64) -> Option<&'static str> {
    match q {
        2 => Some(include_str!("../fixtures/av_q2.json")),
        3 => Some(include_str!("../fixtures/av_q3.json")),
        5 => Some(include_str!("../fixtures/av_q5.json")),
        7 => Some(include_str!("../fixtures/av_q7.json")),
        _ => None,
    }
}

/// The admissible enumeration as fixture entries.
pub fn enumeration_entries(q: u64) -> Result<BTreeSet<FixtureEntry>> {
    Ok(admissible_classes(q)?
        .into_iter()
        .map(|w| FixtureEntry {
            label: format_label(&w),
            a1: w.a1.to_i64().expect("small"),
            a2: w.a2.to_i64().expect("small"),
        })
        .collect())
}

/// Whether f(1) is a perfect square (for the "(Z/nZ)^2" readings of point counts).
pub fn point_count_is_square(w: &WeilPoly2) -> bool {
    let n = w.point_count();
    n >= BigInt::one() && {
        let r = n.sqrt();
        &r * &r == n
    }
}
