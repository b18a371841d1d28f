//! Jacobian arithmetic over F_p in Mumford coordinates (Cantor's algorithm) for monic
//! quintic models y^2 = h(x).

use exact_math::fp::{inv_mod, legendre, mul_mod, pow_mod};
use exact_math::{fp::roots, FpPoly};
use num_bigint::BigUint;
use rand::Rng;

use crate::curve::GenusTwoCurve;
use crate::{GenusError, Result};

/// The class of div(u, v) - deg(u) infinity: u monic, deg v < deg u <= 2, u | h - v^2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MumfordDivisor {
    pub u: FpPoly,
    pub v: FpPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobianFp {
    pub p: u64,
    /// Monic of degree 5.
    pub h: FpPoly,
}

const RANDOM_ATTEMPTS: usize = 10_000;

/// F_p[x] / (x^2 + s x + t) for an irreducible quadratic, elements (c0, c1) = c0 + c1 x.
struct QuadExt {
    p: u64,
    s: u64,
    t: u64,
}

impl QuadExt {
    fn new(p: u64, s: u64, t: u64) -> Self {
        QuadExt { p, s, t }
    }

    fn mul(&self, a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
        let p = self.p;
        let hi = mul_mod(a.1, b.1, p);
        // x^2 = -s x - t
        let c0 = (mul_mod(a.0, b.0, p) + p - mul_mod(hi, self.t, p)) % p;
        let c1 = (mul_mod(a.0, b.1, p) + mul_mod(a.1, b.0, p) + p - mul_mod(hi, self.s, p)) % p;
        (c0, c1)
    }

    fn pow(&self, mut a: (u64, u64), mut e: u128) -> (u64, u64) {
        let mut acc = (1, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Tonelli-Shanks in the field of order p^2.
    fn sqrt(&self, a: (u64, u64)) -> Option<(u64, u64)> {
        if a == (0, 0) {
            return Some(a);
        }
        let order = u128::from(self.p) * u128::from(self.p) - 1;
        if self.pow(a, order / 2) != (1, 0) {
            return None;
        }
        let e = order.trailing_zeros();
        let q = order >> e;
        let z = (0..self.p)
            .flat_map(|c0| (1..self.p).map(move |c1| (c0, c1)))
            .find(|&z| self.pow(z, order / 2) != (1, 0))
            .expect("a field of odd order has non-squares");
        let (mut m, mut c, mut t, mut r) = (e, self.pow(z, q), self.pow(a, q), self.pow(a, q.div_ceil(2)));
        while t != (1, 0) {
            let mut i = 0;
            let mut t2 = t;
            while t2 != (1, 0) {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let b = self.pow(c, 1u128 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }
}

fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return Some(0);
    }
    roots(&FpPoly::new(p, vec![p - a, 0, 1])).first().copied()
}

impl JacobianFp {
    pub fn new(h: FpPoly) -> Result<Self> {
        let p = h.p;
        if p == 2 || h.deg() != 5 || h.lead() != 1 || !h.is_squarefree() {
            return Err(GenusError::Unsupported("need a squarefree monic quintic over F_p, p odd".into()));
        }
        Ok(JacobianFp { p, h })
    }

    /// An isomorphic monic quintic model of the reduction of C at p. A sextic model needs a
    /// root alpha of f mod p, sent to infinity by x = alpha + 1/z.
    pub fn from_curve(c: &GenusTwoCurve, p: u64) -> Result<Self> {
        if !c.is_good_prime(p) {
            return Err(GenusError::Domain(format!("{p} is not a good odd prime")));
        }
        let f = c.reduce(p);
        let quintic = if f.deg() == 5 {
            f
        } else {
            let alpha = *roots(&f)
                .first()
                .ok_or_else(|| GenusError::Unsupported(format!("f has no root mod {p}")))?;
            // z^6 f(alpha + 1/z) = sum c_k (alpha z + 1)^k z^(6 - k)
            let lin = FpPoly::new(p, vec![1, alpha]);
            let mut g = FpPoly::zero(p);
            let mut pw = FpPoly::one(p);
            for k in 0..=6 {
                let mut zpow = vec![0u64; 6 - k];
                zpow.push(1);
                g = g.add(&pw.mul(&FpPoly::new(p, zpow)).scale(f.coeff(k)));
                pw = pw.mul(&lin);
            }
            g
        };
        // x = X / c makes c x^5 + a4 x^4 + ... monic: coefficients a_k c^(4 - k).
        let c5 = quintic.lead();
        let cinv = inv_mod(c5, p);
        let coeffs = (0..=5)
            .map(|k| {
                let a = quintic.coeff(k);
                if k <= 4 {
                    mul_mod(a, pow_mod(c5, 4 - k as u64, p), p)
                } else {
                    mul_mod(a, cinv, p)
                }
            })
            .collect();
        Self::new(FpPoly::new(p, coeffs))
    }

    pub fn identity(&self) -> MumfordDivisor {
        MumfordDivisor { u: FpPoly::one(self.p), v: FpPoly::zero(self.p) }
    }

    pub fn is_valid(&self, d: &MumfordDivisor) -> bool {
        d.u.lead() == 1
            && d.u.deg() <= 2
            && d.v.deg() < d.u.deg()
            && self.h.sub(&d.v.mul(&d.v)).rem(&d.u).is_zero()
    }

    /// [(x0, y0) - infinity], if x0 gives a point.
    pub fn point(&self, x0: u64) -> Option<MumfordDivisor> {
        let p = self.p;
        let y = sqrt_mod(self.h.eval(x0 % p), p)?;
        Some(MumfordDivisor { u: FpPoly::new(p, vec![(p - x0 % p) % p, 1]), v: FpPoly::constant(p, y) })
    }

    /// A random generator-like divisor: a rational point, or the conjugate pair of points
    /// over an irreducible quadratic u. None if the attempt cap is hit.
    fn random_prime_divisor<R: Rng>(&self, rng: &mut R) -> Option<MumfordDivisor> {
        let p = self.p;
        for _ in 0..RANDOM_ATTEMPTS {
            let d = if rng.gen_bool(0.5) {
                let x0 = rng.gen_range(0..p);
                if legendre(self.h.eval(x0), p) < 0 {
                    continue;
                }
                self.point(x0).expect("square")
            } else {
                let (s, t) = (rng.gen_range(0..p), rng.gen_range(0..p));
                let u = FpPoly::new(p, vec![t, s, 1]);
                if legendre((mul_mod(s, s, p) + p - mul_mod(4, t, p)) % p, p) != -1 {
                    continue;
                }
                let r = self.h.rem(&u);
                let Some(v) = QuadExt::new(p, s, t).sqrt((r.coeff(0), r.coeff(1))) else { continue };
                MumfordDivisor { v: FpPoly::new(p, vec![v.0, v.1]).rem(&u), u }
            };
            return Some(if rng.gen_bool(0.5) { self.neg(&d) } else { d });
        }
        None
    }

    /// A sum of two random prime divisors (points or irreducible pairs), or the identity
    /// if the curve has neither within the attempt cap.
    pub fn random_divisor<R: Rng>(&self, rng: &mut R) -> MumfordDivisor {
        match (self.random_prime_divisor(rng), self.random_prime_divisor(rng)) {
            (Some(a), Some(b)) => self.add(&a, &b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => self.identity(),
        }
    }

    pub fn neg(&self, d: &MumfordDivisor) -> MumfordDivisor {
        MumfordDivisor { u: d.u.clone(), v: d.v.neg() }
    }

    pub fn add(&self, d1: &MumfordDivisor, d2: &MumfordDivisor) -> MumfordDivisor {
        let (u1, v1, u2, v2) = (&d1.u, &d1.v, &d2.u, &d2.v);
        // Composition.
        let (d0, e1, e2) = u1.xgcd(u2);
        let (d, c1, c2) = d0.xgcd(&v1.add(v2));
        let (s1, s2, s3) = (c1.mul(&e1), c1.mul(&e2), c2);
        let dd = d.mul(&d);
        let (mut u, r) = u1.mul(u2).divrem(&dd);
        debug_assert!(r.is_zero());
        let num = s1
            .mul(u1)
            .mul(v2)
            .add(&s2.mul(u2).mul(v1))
            .add(&s3.mul(&v1.mul(v2).add(&self.h)));
        let (q, r) = num.divrem(&d);
        debug_assert!(r.is_zero());
        let mut v = q.rem(&u);
        // Reduction.
        while u.deg() > 2 {
            let (nu, r) = self.h.sub(&v.mul(&v)).divrem(&u);
            debug_assert!(r.is_zero());
            u = nu;
            v = v.neg().rem(&u);
        }
        let u = u.monic();
        let v = v.rem(&u);
        MumfordDivisor { u, v }
    }

    pub fn double(&self, d: &MumfordDivisor) -> MumfordDivisor {
        self.add(d, d)
    }

    pub fn mul(&self, d: &MumfordDivisor, n: &BigUint) -> MumfordDivisor {
        let mut acc = self.identity();
        for i in (0..n.bits()).rev() {
            acc = self.double(&acc);
            if n.bit(i) {
                acc = self.add(&acc, d);
            }
        }
        acc
    }

    pub fn mul_u64(&self, d: &MumfordDivisor, n: u64) -> MumfordDivisor {
        self.mul(d, &BigUint::from(n))
    }

    /// Weierstrass point divisors [(alpha, 0) - infinity] for the roots alpha of h.
    pub fn weierstrass_divisors(&self) -> Vec<MumfordDivisor> {
        roots(&self.h)
            .into_iter()
            .map(|a| MumfordDivisor { u: FpPoly::new(self.p, vec![(self.p - a) % self.p, 1]), v: FpPoly::zero(self.p) })
            .collect()
    }

    pub fn is_identity(&self, d: &MumfordDivisor) -> bool {
        *d == self.identity()
    }

    pub fn order_divides(&self, d: &MumfordDivisor, n: u64) -> bool {
        self.is_identity(&self.mul_u64(d, n))
    }

    /// Err unless d is a valid Mumford pair for h.
    pub fn check(&self, d: &MumfordDivisor) -> Result<()> {
        if self.is_valid(d) {
            Ok(())
        } else {
            Err(GenusError::Domain(format!("invalid Mumford pair ({:?}, {:?})", d.u.c, d.v.c)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn small_group_laws() {
        let c = GenusTwoCurve::from_coeffs(&[1, 0, 0, 0, 0, 1]).unwrap();
        let j = JacobianFp::from_curve(&c, 7).unwrap();
        let n = c.lpoly(7).unwrap().point_count();
        let n = u64::try_from(n).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        for _ in 0..50 {
            let a = j.random_divisor(&mut rng);
            let b = j.random_divisor(&mut rng);
            j.check(&a).unwrap();
            assert_eq!(j.add(&a, &j.identity()), a);
            assert!(j.is_identity(&j.add(&a, &j.neg(&a))));
            assert_eq!(j.add(&a, &b), j.add(&b, &a));
            assert!(j.order_divides(&a, n));
        }
        for w in j.weierstrass_divisors() {
            assert!(j.is_identity(&j.double(&w)));
        }
    }

    #[test]
    fn quadratic_extension_sqrt() {
        // x^2 + 1 is irreducible mod 7.
        let f = QuadExt::new(7, 0, 1);
        let mut squares = 0;
        for c0 in 0..7 {
            for c1 in 0..7 {
                if let Some(r) = f.sqrt((c0, c1)) {
                    assert_eq!(f.mul(r, r), (c0, c1));
                    squares += 1;
                }
            }
        }
        assert_eq!(squares, 1 + (49 - 1) / 2);
    }

    #[test]
    fn pointless_curve_still_gives_divisors() {
        // y^2 = x^5 + 2 x + 2 over F_3: h takes the values 2, 2, 2, never a square.
        let h = FpPoly::new(3, vec![2, 2, 0, 0, 0, 1]);
        let j = JacobianFp::new(h).unwrap();
        assert!((0..3).all(|x| legendre(j.h.eval(x), 3) == -1));
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for _ in 0..20 {
            let d = j.random_prime_divisor(&mut rng).unwrap();
            assert!(j.is_valid(&d));
            assert_eq!(d.u.deg(), 2);
            assert!(j.is_valid(&j.random_divisor(&mut rng)));
        }
    }
}
