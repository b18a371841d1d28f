use std::fmt;

use exact_math::symbols::candidate_primes;
use exact_math::{hilbert_symbol, BigInt, Place, Rat};
use num_traits::{One, Signed, Zero};

use crate::{QuatError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuatAlgebra {
    a: Rat,
    b: Rat,
}

impl QuatAlgebra {
    pub fn new(a: Rat, b: Rat) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(QuatError::Domain("structure constants must be nonzero".into()));
        }
        Ok(QuatAlgebra { a, b })
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Self::new(Rat::from_integer(a.into()), Rat::from_integer(b.into()))
            .expect("nonzero structure constants")
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn mul_coords(&self, x: &[Rat; 4], y: &[Rat; 4]) -> [Rat; 4] {
        let (a, b) = (&self.a, &self.b);
        let ab = a * b;
        let [t1, x1, y1, z1] = x;
        let [t2, x2, y2, z2] = y;
        [
            t1 * t2 + a * x1 * x2 + b * y1 * y2 - &ab * z1 * z2,
            t1 * x2 + x1 * t2 - b * y1 * z2 + b * z1 * y2,
            t1 * y2 + y1 * t2 + a * x1 * z2 - a * z1 * x2,
            t1 * z2 + z1 * t2 + x1 * y2 - y1 * x2,
        ]
    }

    /// Finite primes where (a, b) is ramified, and whether it ramifies at infinity.
    pub fn ramified_places(&self) -> (Vec<BigInt>, bool) {
        let finite = candidate_primes(&self.a, &self.b)
            .into_iter()
            .filter(|p| hilbert_symbol(&self.a, &self.b, &Place::Finite(p.clone())).unwrap() == -1)
            .collect();
        let inf = hilbert_symbol(&self.a, &self.b, &Place::Infinity).unwrap() == -1;
        (finite, inf)
    }

    pub fn discriminant(&self) -> BigInt {
        self.ramified_places().0.into_iter().product()
    }

    pub fn is_division(&self) -> bool {
        let (f, inf) = self.ramified_places();
        !f.is_empty() || inf
    }

    pub fn elt(&self, c: [i64; 4]) -> QuatElt {
        self.elt_rat(c.map(|x| Rat::from_integer(x.into())))
    }

    pub fn elt_rat(&self, c: [Rat; 4]) -> QuatElt {
        QuatElt { alg: self.clone(), c }
    }

    pub fn one(&self) -> QuatElt {
        self.elt([1, 0, 0, 0])
    }

    pub fn i(&self) -> QuatElt {
        self.elt([0, 1, 0, 0])
    }

    pub fn j(&self) -> QuatElt {
        self.elt([0, 0, 1, 0])
    }

    pub fn k(&self) -> QuatElt {
        self.elt([0, 0, 0, 1])
    }
}

impl fmt::Display for QuatAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// An element t + x i + y j + z ij.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuatElt {
    alg: QuatAlgebra,
    c: [Rat; 4],
}

impl QuatElt {
    pub fn algebra(&self) -> &QuatAlgebra {
        &self.alg
    }

    pub fn coords(&self) -> &[Rat; 4] {
        &self.c
    }

    fn same(&self, o: &Self) -> Result<()> {
        if self.alg == o.alg {
            Ok(())
        } else {
            Err(QuatError::MixedAlgebras)
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(self.alg.elt_rat(std::array::from_fn(|k| &self.c[k] + &o.c[k])))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(self.alg.elt_rat(std::array::from_fn(|k| &self.c[k] - &o.c[k])))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(self.alg.elt_rat(self.alg.mul_coords(&self.c, &o.c)))
    }

    /// Panics on mixed algebras; see `checked_mul`.
    pub fn mul(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("same algebra")
    }

    pub fn add(&self, o: &Self) -> Self {
        self.checked_add(o).expect("same algebra")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.checked_sub(o).expect("same algebra")
    }

    pub fn neg(&self) -> Self {
        self.alg.elt_rat(self.c.clone().map(|x| -x))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        self.alg.elt_rat(self.c.clone().map(|x| x * s))
    }

    pub fn conj(&self) -> Self {
        let [t, x, y, z] = self.c.clone();
        self.alg.elt_rat([t, -x, -y, -z])
    }

    pub fn trd(&self) -> Rat {
        &self.c[0] * Rat::from_integer(2.into())
    }

    pub fn nrd(&self) -> Rat {
        let [t, x, y, z] = &self.c;
        let (a, b) = (&self.alg.a, &self.alg.b);
        t * t - a * x * x - b * y * y + a * b * z * z
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// The scalar value if the element lies in Q.
    pub fn as_scalar(&self) -> Option<Rat> {
        self.c[1..].iter().all(Zero::is_zero).then(|| self.c[0].clone())
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.nrd();
        if n.is_zero() {
            return Err(QuatError::Domain("element is not invertible".into()));
        }
        Ok(self.conj().scale(&n.recip()))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(self.alg.one(), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for QuatElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "i", "j", "ij"];
        let mut out = String::new();
        for (c, n) in self.c.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if out.is_empty() { "" } else { "+" };
            let a = c.abs();
            let mag = if a.is_one() && !n.is_empty() { String::new() } else { a.to_string() };
            let sep = if mag.is_empty() || n.is_empty() { "" } else { "*" };
            out.push_str(&format!("{sign}{mag}{sep}{n}"));
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out}")
    }
}
