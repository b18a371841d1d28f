//! Dense univariate polynomials over Z.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{MathError, Result};
use crate::fp::FpPoly;
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, a: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * a).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut r = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        Self::new(r)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + Rat::from_integer(c.clone()))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect(),
        )
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Exact quotient in Z[x], or None if d does not divide self in Z[x].
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut r = self.coeffs.clone();
        let dl = d.coeffs.len();
        let ld = d.lead();
        let mut q = vec![BigInt::zero(); r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let (coef, rem) = r[k + dl - 1].div_rem(&ld);
            if !rem.is_zero() {
                return None;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] -= &coef * dj;
            }
            q[k] = coef;
        }
        r.iter().all(Zero::is_zero).then(|| Self::new(q))
    }

    /// Pseudo-remainder: lc(d)^(deg self - deg d + 1) * self mod d.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let mut r = self.clone();
        let ld = d.lead();
        while !r.is_zero() && r.degree() >= d.degree() {
            let shift = r.degree() - d.degree();
            let lr = r.lead();
            let mut t = vec![BigInt::zero(); shift];
            t.extend(d.coeffs.iter().map(|c| c * &lr));
            r = r.scale(&ld).sub(&Self::new(t));
        }
        r
    }

    /// Primitive gcd in Z[x] with positive leading coefficient.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.primitive_part(), o.primitive_part());
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    pub fn to_fp(&self, p: u64) -> FpPoly {
        let pb = BigInt::from(p);
        FpPoly::new(
            p,
            self.coeffs
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits u64"))
                .collect(),
        )
    }

    /// Parses expressions such as `5x^6+21x^5-63*x^4 - 343`.
    pub fn parse(s: &str) -> Result<Self> {
        let raw: Vec<char> = s.chars().collect();
        for w in raw.windows(3) {
            if w[0].is_ascii_digit() && w[1].is_whitespace() && w[2].is_ascii_digit() {
                return Err(MathError::Parse { pos: 0, msg: "space inside a number".into() });
            }
        }
        let chars: Vec<(usize, char)> = s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(MathError::Parse { pos: 0, msg: "empty polynomial".into() });
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut i = 0;
        let err = |i: usize, msg: &str| MathError::Parse {
            pos: chars.get(i).map_or(s.len(), |c| c.0),
            msg: msg.into(),
        };
        while i < chars.len() {
            let mut sign = BigInt::one();
            if chars[i].1 == '+' || chars[i].1 == '-' {
                if chars[i].1 == '-' {
                    sign = -sign;
                }
                i += 1;
            } else if i > 0 {
                return Err(err(i, "expected '+' or '-'"));
            }
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().map(|c| c.1).collect();
            let mut coef: BigInt = if digits.is_empty() {
                BigInt::one()
            } else {
                digits.parse().map_err(|_| err(start, "bad integer"))?
            };
            if i < chars.len() && chars[i].1 == '*' {
                i += 1;
                if i >= chars.len() || chars[i].1 != 'x' {
                    return Err(err(i, "expected 'x' after '*'"));
                }
            }
            let mut exp = 0usize;
            if i < chars.len() && chars[i].1 == 'x' {
                i += 1;
                exp = 1;
                if i < chars.len() && chars[i].1 == '^' {
                    i += 1;
                    let s0 = i;
                    while i < chars.len() && chars[i].1.is_ascii_digit() {
                        i += 1;
                    }
                    let e: String = chars[s0..i].iter().map(|c| c.1).collect();
                    exp = e.parse().map_err(|_| err(s0, "bad exponent"))?;
                }
            } else if digits.is_empty() {
                return Err(err(i, "expected a term"));
            }
            coef *= sign;
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, BigInt::zero());
            }
            coeffs[exp] += coef;
        }
        Ok(Self::new(coeffs))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let a = c.abs();
            let mag = match (i, a.is_one()) {
                (0, _) => a.to_string(),
                (_, true) => String::new(),
                _ => a.to_string(),
            };
            let var = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            write!(f, "{sign}{mag}{var}")?;
            first = false;
        }
        Ok(())
    }
}
