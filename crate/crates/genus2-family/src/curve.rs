//! Genus-2 curves y^2 = f(x) over Q, their reductions, and point counts.

use exact_math::fp::{legendre, mul_mod};
use exact_math::{BigInt, FpPoly, IntPoly};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use weil_engine::WeilPoly2;

use crate::{GenusError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusTwoCurve {
    f: IntPoly,
}

#[derive(Serialize, Deserialize)]
struct CurveDoc {
    f: Vec<i64>,
}

impl GenusTwoCurve {
    /// A squarefree f of degree 5 or 6 with integer coefficients.
    pub fn new(f: IntPoly) -> Result<Self> {
        let d = f.degree();
        if f.is_zero() || !(5..=6).contains(&d) {
            return Err(GenusError::Input(format!("degree {d} is not 5 or 6")));
        }
        if f.gcd(&f.derivative()).degree() > 0 {
            return Err(GenusError::Input("f has a repeated factor".into()));
        }
        Ok(GenusTwoCurve { f })
    }

    pub fn from_coeffs(c: &[i64]) -> Result<Self> {
        Self::new(IntPoly::from_i64(c))
    }

    /// Inline form such as "5x^6+21x^5-63x^4-49x^3+294x^2-343".
    pub fn parse(s: &str) -> Result<Self> {
        Self::new(IntPoly::parse(s)?)
    }

    /// JSON {"f": [c0, ..., c6]}.
    pub fn from_json(s: &str) -> Result<Self> {
        let doc: CurveDoc = serde_json::from_str(s).map_err(|e| GenusError::Input(e.to_string()))?;
        Self::from_coeffs(&doc.f)
    }

    pub fn to_json(&self) -> String {
        let f = self.f.coeffs().iter().map(|c| c.to_i64().expect("small coefficient")).collect();
        serde_json::to_string(&CurveDoc { f }).expect("serializable")
    }

    pub fn f(&self) -> &IntPoly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    pub fn reduce(&self, p: u64) -> FpPoly {
        self.f.to_fp(p)
    }

    /// p odd, p does not divide the leading coefficient, and f mod p is squarefree; this is
    /// p not dividing 2 disc(f) lead(f).
    pub fn is_good_prime(&self, p: u64) -> bool {
        if p == 2 || !exact_math::is_prime(&BigInt::from(p)) {
            return false;
        }
        let fp = self.reduce(p);
        fp.deg() == self.degree() as isize && fp.is_squarefree()
    }

    pub fn good_primes(&self, pmax: u64) -> Vec<u64> {
        (3..=pmax).filter(|&p| self.is_good_prime(p)).collect()
    }

    /// #C(F_{p^n}) for n in {1, 2}: affine points from the quadratic character of f plus
    /// the points at infinity.
    pub fn count_points(&self, p: u64, n: u32) -> Result<u64> {
        if !self.is_good_prime(p) {
            return Err(GenusError::Domain(format!("{p} is not a good odd prime for {}", self.f)));
        }
        let fp = self.reduce(p);
        match n {
            1 => {
                let affine: u64 = (0..p).map(|x| (1 + legendre(fp.eval(x), p)) as u64).sum();
                let inf = if self.degree() == 5 { 1 } else { (1 + legendre(fp.lead(), p)) as u64 };
                Ok(affine + inf)
            }
            2 => Ok(count_points_fp2(&fp, p) + if self.degree() == 5 { 1 } else { 2 }),
            _ => Err(GenusError::Domain(format!("point counts over F_{{p^{n}}} are not supported"))),
        }
    }

    /// The Frobenius polynomial of the Jacobian at a good prime.
    pub fn lpoly(&self, p: u64) -> Result<WeilPoly2> {
        lpoly_from_counts(self.count_points(p, 1)?, self.count_points(p, 2)?, p)
    }
}

/// F_{p^2} = F_p[s] / (s^2 - r) for a nonresidue r; the quadratic character of z is the
/// Legendre symbol of its norm.
fn count_points_fp2(f: &FpPoly, p: u64) -> u64 {
    let r = (2..p).find(|&a| legendre(a, p) == -1).expect("odd p has a nonresidue");
    let mut total = 0u64;
    for a in 0..p {
        for b in 0..p {
            // Horner in F_{p^2}.
            let (mut x, mut y) = (0u64, 0u64);
            for &c in f.c.iter().rev() {
                let nx = (mul_mod(x, a, p) + mul_mod(mul_mod(y, b, p), r, p) + c) % p;
                let ny = (mul_mod(x, b, p) + mul_mod(y, a, p)) % p;
                x = nx;
                y = ny;
            }
            let norm = (mul_mod(x, x, p) + p - mul_mod(mul_mod(y, y, p), r, p)) % p;
            total += (1 + legendre(norm, p)) as u64;
        }
    }
    total
}

/// a1 = c1 - p - 1 and a2 = (c2 - p^2 - 1 + a1^2) / 2 for P(T) = T^4 + a1 T^3 + a2 T^2 + p a1 T + p^2.
pub fn lpoly_from_counts(c1: u64, c2: u64, p: u64) -> Result<WeilPoly2> {
    let (c1, c2, pb) = (BigInt::from(c1), BigInt::from(c2), BigInt::from(p));
    let one = BigInt::from(1);
    let a1 = &c1 - &pb - &one;
    let (a2, rem) = (&c2 - &pb * &pb - &one + &a1 * &a1).div_rem(&BigInt::from(2));
    if !rem.is_zero() {
        return Err(GenusError::InconsistentCounts(format!("a2 is not integral for counts {c1}, {c2} at p = {p}")));
    }
    let w = WeilPoly2 { q: pb, a1, a2 };
    if !w.is_valid() {
        return Err(GenusError::InconsistentCounts(format!("{w} is not a Weil polynomial")));
    }
    Ok(w)
}
