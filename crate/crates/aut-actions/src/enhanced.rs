//! The group Aut(O) x| (O/NO)^x with (g1, x1)(g2, x2) = (g1 g2, x1^g2 x2).

use num_integer::Integer;
use quaternion_orders::QuatOrder;

use crate::action::AutClass;
use crate::residue::{identity, inv_mod, mat_mul, mat_reduce, mat_vec, reduce, IntOrder, Mat4, Vec4};
use crate::{ActionError, Result};

/// O/NO with its multiplication, for building enhanced elements.
#[derive(Debug, Clone)]
pub struct ResidueRing {
    io: IntOrder,
    n: i64,
}

/// (gamma, x) with gamma the matrix of the right action x -> x^gamma on O/NO.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnhancedElement {
    pub gamma: Mat4,
    pub x: Vec4,
}

impl ResidueRing {
    pub fn new(o: &QuatOrder, n: i64) -> Result<Self> {
        if n < 2 {
            return Err(ActionError::Domain(format!("modulus {n} < 2")));
        }
        Ok(ResidueRing { io: IntOrder::new(o), n })
    }

    pub fn modulus(&self) -> i64 {
        self.n
    }

    pub fn one(&self) -> Vec4 {
        reduce(&self.io.one(), self.n)
    }

    pub fn mul(&self, x: &Vec4, y: &Vec4) -> Vec4 {
        reduce(&self.io.mul(x, y), self.n)
    }

    pub fn is_unit(&self, x: &Vec4) -> bool {
        self.io.nrd(x).gcd(&self.n) == 1
    }

    /// x^-1 = conj(x) / nrd(x).
    pub fn inverse(&self, x: &Vec4) -> Result<Vec4> {
        if !self.is_unit(x) {
            return Err(ActionError::Invariant(format!("{x:?} is not a unit mod {}", self.n)));
        }
        let s = inv_mod(self.io.nrd(x).rem_euclid(self.n), self.n);
        Ok(reduce(&self.io.conj(x).map(|c| c * s), self.n))
    }

    pub fn act(&self, gamma: &Mat4, x: &Vec4) -> Vec4 {
        reduce(&mat_vec(gamma, x), self.n)
    }

    pub fn element(&self, gamma: &Mat4, x: &Vec4) -> Result<EnhancedElement> {
        let x = reduce(x, self.n);
        if !self.is_unit(&x) {
            return Err(ActionError::Invariant(format!("{x:?} is not a unit mod {}", self.n)));
        }
        Ok(EnhancedElement { gamma: mat_reduce(gamma, self.n), x })
    }

    pub fn from_class(&self, g: &AutClass, x: &Vec4) -> Result<EnhancedElement> {
        self.element(&g.matrix(), x)
    }

    pub fn identity(&self) -> EnhancedElement {
        EnhancedElement { gamma: identity(), x: self.one() }
    }

    /// The gamma part composes as a right action: x^(g1 g2) = (x^g1)^g2.
    pub fn compose(&self, g1: &Mat4, g2: &Mat4) -> Mat4 {
        mat_reduce(&mat_mul(g2, g1), self.n)
    }

    pub fn enhanced_mul(&self, e1: &EnhancedElement, e2: &EnhancedElement) -> Result<EnhancedElement> {
        for e in [e1, e2] {
            if !self.is_unit(&e.x) {
                return Err(ActionError::Invariant(format!("{:?} is not a unit mod {}", e.x, self.n)));
            }
        }
        Ok(EnhancedElement {
            gamma: self.compose(&e1.gamma, &e2.gamma),
            x: self.mul(&self.act(&e2.gamma, &e1.x), &e2.x),
        })
    }

    /// (g, x)^-1 = (g^-1, (x^-1)^(g^-1)); g^-1 is found as a power of g.
    pub fn enhanced_inverse(&self, e: &EnhancedElement) -> Result<EnhancedElement> {
        let id = mat_reduce(&identity(), self.n);
        let mut prev = id;
        let mut cur = e.gamma;
        let mut steps = 0;
        while cur != id {
            prev = cur;
            cur = self.compose(&cur, &e.gamma);
            steps += 1;
            if steps > 100_000 {
                return Err(ActionError::Invariant("gamma part has no finite order".into()));
            }
        }
        let ginv = if e.gamma == id { id } else { prev };
        let xinv = self.inverse(&e.x)?;
        Ok(EnhancedElement { gamma: ginv, x: self.act(&ginv, &xinv) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::disc6_order;

    #[test]
    fn trivial_laws() {
        let o = disc6_order();
        let r = ResidueRing::new(&o, 4).unwrap();
        let x = [1, 1, 0, 0];
        let y = r.mul(&x, &[1, 0, 2, 0]);
        assert!(r.is_unit(&y));
        let ex = r.element(&identity(), &x).unwrap();
        let ey = r.element(&identity(), &y).unwrap();
        assert_eq!(r.enhanced_mul(&ex, &ey).unwrap().x, r.mul(&x, &y));
        let g = AutClass::new(&o, &o.algebra().j()).unwrap();
        let eg = r.from_class(&g, &r.one()).unwrap();
        let p = r.enhanced_mul(&eg, &ex).unwrap();
        assert_eq!(p, r.from_class(&g, &x).unwrap());
        assert!(r.element(&identity(), &[0, 0, 0, 0]).is_err());
    }
}
