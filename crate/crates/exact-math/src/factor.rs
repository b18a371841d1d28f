//! Factorization over Q of integer polynomials of degree at most 8:
//! factor modulo a good prime, Hensel-lift, recombine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{MathError, Result};
use crate::fp::{factor_squarefree, inv_mod, FpPoly};
use crate::poly::IntPoly;

pub const MAX_DEGREE: usize = 8;

/// f = content * prod(factor^mult); factors primitive with positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigInt,
    pub factors: Vec<(IntPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPoly {
        self.factors
            .iter()
            .fold(IntPoly::constant(self.content.clone()), |acc, (g, e)| acc.mul(&g.pow(*e)))
    }

    /// Degrees of the irreducible factors, repeated by multiplicity, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(g, e)| std::iter::repeat_n(g.degree(), *e as usize))
            .collect();
        d.sort_unstable();
        d
    }
}

pub fn factor_poly_q(f: &IntPoly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(MathError::Domain("cannot factor the zero polynomial".into()));
    }
    if f.degree() > MAX_DEGREE {
        return Err(MathError::Unsupported(format!(
            "degree {} exceeds {MAX_DEGREE}",
            f.degree()
        )));
    }
    let mut content = f.content();
    if f.lead().is_negative() {
        content = -content;
    }
    let g = f.primitive_part();
    if g.degree() == 0 {
        return Ok(Factorization { content, factors: vec![] });
    }
    let sqf = g
        .div_exact(&g.gcd(&g.derivative()))
        .expect("gcd divides")
        .primitive_part();
    let mut factors = Vec::new();
    let mut rest = g.clone();
    for h in factor_squarefree_primitive(&sqf) {
        let mut e = 0;
        while let Some(q) = rest.div_exact(&h) {
            rest = q;
            e += 1;
        }
        factors.push((h, e));
    }
    debug_assert_eq!(rest, IntPoly::one());
    factors.sort_by(|a, b| (a.0.degree(), &a.0).cmp(&(b.0.degree(), &b.0)));
    Ok(Factorization { content, factors })
}

fn small_odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn factor_squarefree_primitive(f: &IntPoly) -> Vec<IntPoly> {
    if f.degree() <= 1 {
        return vec![f.clone()];
    }
    let lc = f.lead();
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for p in small_odd_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = f.to_fp(p);
        if !fp.is_squarefree() {
            continue;
        }
        let fs = factor_squarefree(&fp.monic());
        if fs.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|b| fs.len() < b.1.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried == 6 {
            break;
        }
    }
    let (p, fs) = best.expect("a good prime exists");
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << f.degree()) * (norm2.sqrt() + 1u32) * lc.abs() * 2u32;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        k += 1;
    }
    let lifted = lift_all(f, &fs, p, k);
    recombine(f, lifted, &m)
}

fn reduce(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m / 2;
    IntPoly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn from_fp(f: &FpPoly) -> IntPoly {
    IntPoly::new(f.c.iter().map(|&x| BigInt::from(x)).collect())
}

fn inv_mod_big(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// Lifts f = lc * prod(fs) mod p to monic factors mod p^k.
fn lift_all(f: &IntPoly, fs: &[FpPoly], p: u64, k: u32) -> Vec<IntPoly> {
    let m = BigInt::from(p).pow(k);
    if fs.len() == 1 {
        let inv = inv_mod_big(&f.lead(), &m);
        return vec![reduce(&f.scale(&inv), &m)];
    }
    let a = &fs[0];
    let lc = f.lead().mod_floor(&BigInt::from(p)).to_u64().unwrap();
    let b = fs[1..].iter().fold(FpPoly::constant(p, lc), |acc, g| acc.mul(g));
    let (big_a, big_b) = lift_pair(f, a, &b, p, k);
    let mut out = vec![big_a];
    out.extend(lift_all(&big_b, &fs[1..], p, k));
    out
}

fn lift_pair(f: &IntPoly, a: &FpPoly, b: &FpPoly, p: u64, k: u32) -> (IntPoly, IntPoly) {
    let (g, _s, t) = a.xgcd(b);
    assert_eq!(g, FpPoly::one(p), "factors must be coprime");
    let pb = BigInt::from(p);
    let (mut big_a, mut big_b) = (from_fp(a), from_fp(b));
    let mut m = pb.clone();
    for _ in 1..k {
        let diff = f.sub(&big_a.mul(&big_b));
        let e = IntPoly::new(diff.coeffs().iter().map(|c| c / &m).collect()).to_fp(p);
        let da = e.mul(&t).rem(a);
        let (db, r) = e.sub(&da.mul(b)).divrem(a);
        debug_assert!(r.is_zero());
        big_a = big_a.add(&from_fp(&da).scale(&m));
        big_b = big_b.add(&from_fp(&db).scale(&m));
        m *= &pb;
    }
    (reduce(&big_a, &m), reduce(&big_b, &m))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn recombine(f: &IntPoly, mut pool: Vec<IntPoly>, m: &BigInt) -> Vec<IntPoly> {
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= pool.len() {
        let mut found = None;
        for subset in combinations(pool.len(), s) {
            let lc = rest.lead();
            let g = subset
                .iter()
                .fold(IntPoly::constant(lc), |acc, &i| reduce(&acc.mul(&pool[i]), m));
            let g = symmetric(&g, m).primitive_part();
            if let Some(q) = rest.div_exact(&g) {
                found = Some((subset, g, q));
                break;
            }
        }
        match found {
            Some((subset, g, q)) => {
                out.push(g);
                rest = q;
                for &i in subset.iter().rev() {
                    pool.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if rest.degree() > 0 {
        out.push(rest.primitive_part());
    }
    out
}

/// Whether a monic-or-not integer polynomial of degree >= 1 is irreducible over Q.
pub fn is_irreducible(f: &IntPoly) -> bool {
    factor_poly_q(f).is_ok_and(|fz| fz.factors.len() == 1 && fz.factors[0].1 == 1)
}

/// Used by callers that need mod-p inverses of small leading coefficients.
pub fn inv_small(a: u64, p: u64) -> u64 {
    inv_mod(a, p)
}
