//! The family j(T) on the Atkin-Lehner quotient of the discriminant-6 Shimura curve and
//! its Igusa invariants.

use exact_math::{IntPoly, Rat};
use num_traits::{One, Zero};
use quaternion_orders::QuatAlgebra;

use crate::{GenusError, Result};

/// Numerator and denominator of j(T) as displayed, constant term first.
const J_NUM: [i64; 21] = [0, 0, 0, 0, -64, 0, 0, 0, 256, 0, 0, 0, -384, 0, 0, 0, 256, 0, 0, 0, -64];
const J_DEN: [i64; 25] = [1, 0, 0, 0, 42, 0, 0, 0, 591, 0, 0, 0, 2828, 0, 0, 0, 591, 0, 0, 0, 42, 0, 0, 0, 1];

pub fn j_numerator() -> IntPoly {
    IntPoly::from_i64(&J_NUM)
}

pub fn j_denominator() -> IntPoly {
    IntPoly::from_i64(&J_DEN)
}

fn r(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// j(t), rejecting the parameters where the curve degenerates: j = 0 (J10 = 0) and
/// 27 j + 16 = 0 (the field of moduli and Mestre conic degenerate).
pub fn family_j(t: &Rat) -> Result<Rat> {
    let den = j_denominator().eval_rat(t);
    if den.is_zero() {
        return Err(GenusError::Singular(format!("denominator of j vanishes at t = {t}")));
    }
    let j = j_numerator().eval_rat(t) / den;
    if j.is_zero() {
        return Err(GenusError::Singular(format!("j({t}) = 0")));
    }
    if (r(27) * &j + r(16)).is_zero() {
        return Err(GenusError::Singular(format!("j({t}) = -16/27")));
    }
    Ok(j)
}

/// Igusa invariants (J2, J4, J6, J8, J10), weights 2, 4, 6, 8, 10.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IgusaPoint {
    pub j2: Rat,
    pub j4: Rat,
    pub j6: Rat,
    pub j8: Rat,
    pub j10: Rat,
}

impl IgusaPoint {
    pub fn from_j(j: &Rat) -> Self {
        let j2_ = j * j;
        let j3_ = &j2_ * j;
        // J8 = (J2 J6 - J4^2) / 4 expanded in j.
        let j8 = r(3) * &j2_ * &j2_ - r(30) * &j3_ - r(51) * &j2_ - r(6) * j + r(3);
        IgusaPoint {
            j2: r(12) * (j + Rat::one()),
            j4: r(6) * (&j2_ + j + Rat::one()),
            j6: r(4) * (&j3_ - r(2) * &j2_ + Rat::one()),
            j8,
            j10: j3_,
        }
    }

    /// 4 J8 = J2 J6 - J4^2.
    pub fn j8_identity_holds(&self) -> bool {
        r(4) * &self.j8 == &self.j2 * &self.j6 - &self.j4 * &self.j4
    }

    pub fn is_nonsingular(&self) -> bool {
        !self.j10.is_zero()
    }
}

pub fn family_igusa(t: &Rat) -> Result<IgusaPoint> {
    let p = IgusaPoint::from_j(&family_j(t)?);
    if !p.j8_identity_holds() {
        return Err(GenusError::Singular(format!("J8 identity fails at t = {t}")));
    }
    Ok(p)
}

fn is_rational_square(x: &Rat) -> bool {
    use num_traits::Signed;
    !x.is_negative() && exact_math::integer::is_square(x.numer()) && exact_math::integer::is_square(x.denom())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelChecks {
    /// -27 - 16/j is a rational square, so the field of moduli is Q.
    pub field_of_moduli_ok: bool,
    /// The Mestre algebra (-6j, -2(27j + 16)) is unramified at every finite prime.
    pub mestre_splits: bool,
}

pub fn model_checks_for_j(j: &Rat) -> Result<ModelChecks> {
    if j.is_zero() || (r(27) * j + r(16)).is_zero() {
        return Err(GenusError::Singular(format!("j = {j}")));
    }
    let field_of_moduli_ok = is_rational_square(&(r(-27) - r(16) / j));
    let alg = QuatAlgebra::new(r(-6) * j, r(-2) * (r(27) * j + r(16))).map_err(|e| GenusError::Singular(e.to_string()))?;
    let mestre_splits = alg.ramified_places().0.is_empty();
    Ok(ModelChecks { field_of_moduli_ok, mestre_splits })
}

pub fn rational_model_checks(t: &Rat) -> Result<ModelChecks> {
    model_checks_for_j(&family_j(t)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn displayed_j_factors() {
        // -64 T^4 (T^4 - 1)^4 and (T^8 + 14 T^4 + 1)^3.
        let t4m1 = IntPoly::from_i64(&[-1, 0, 0, 0, 1]);
        let num = IntPoly::from_i64(&[0, 0, 0, 0, -64]).mul(&t4m1.pow(4));
        assert_eq!(num, j_numerator());
        assert_eq!(IntPoly::from_i64(&[1, 0, 0, 0, 14, 0, 0, 0, 1]).pow(3), j_denominator());
    }

    #[test]
    fn examples() {
        let p = family_igusa(&r(2)).unwrap();
        assert!(p.j8_identity_holds());
        let j3 = family_j(&r(3)).unwrap();
        assert_eq!(family_igusa(&r(3)).unwrap().j10, &j3 * &j3 * &j3);
        assert!(matches!(family_j(&r(0)), Err(GenusError::Singular(_))));
        assert!(matches!(family_j(&r(1)), Err(GenusError::Singular(_))));
        for t in [r(2), Rat::new(1.into(), 3.into())] {
            assert_eq!(rational_model_checks(&t).unwrap(), ModelChecks { field_of_moduli_ok: true, mestre_splits: true });
        }
        // j = 1: -43 is not a square.
        assert!(!model_checks_for_j(&r(1)).unwrap().field_of_moduli_ok);
    }
}
