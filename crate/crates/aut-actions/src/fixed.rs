//! Fixed points of G on O/NO and the mod-2 and mod-4 involution checks.

use exact_math::{kernel_mod, AbelianInvariants, BigInt};
use num_integer::Integer;
use quaternion_orders::{QuatElt, QuatOrder};

use crate::action::{DihedralAction, DihedralKind};
use crate::residue::{all_residues, int_coords, invariants_of_subgroup, mat_vec, reduce, IntOrder, Mat4, Vec4};
use crate::{ActionError, Result};

fn stacked(mats: &[Mat4]) -> Vec<Vec<BigInt>> {
    let mut rows = Vec::with_capacity(4 * mats.len());
    for m in mats {
        for r in 0..4 {
            rows.push((0..4).map(|c| BigInt::from(m[r][c] - i64::from(r == c))).collect());
        }
    }
    rows
}

/// Elements of (Z/n)^4 fixed by every matrix.
pub fn fixed_elements(mats: &[Mat4], n: i64) -> Vec<Vec4> {
    all_residues(n)
        .filter(|x| mats.iter().all(|m| reduce(&mat_vec(m, x), n) == *x))
        .collect()
}

/// Kernel of the stacked maps (g - 1) on (Z/n)^4, via Smith form.
pub fn fixed_subgroup_smith(mats: &[Mat4], n: i64) -> AbelianInvariants {
    kernel_mod(&stacked(mats), &BigInt::from(n))
}

/// Fixed subgroup by enumeration of all n^4 residues.
pub fn fixed_subgroup_enum(mats: &[Mat4], n: i64) -> AbelianInvariants {
    invariants_of_subgroup(&fixed_elements(mats, n), n)
}

/// (O/NO)^G: enumeration for N <= 4, Smith form of the stacked kernel conditions otherwise.
pub fn residue_fixed_subgroup(action: &DihedralAction, n: i64) -> Result<AbelianInvariants> {
    if n < 2 {
        return Err(ActionError::Domain(format!("modulus {n} < 2")));
    }
    let mats = action.matrices();
    Ok(if n <= 4 {
        fixed_subgroup_enum(&mats, n)
    } else {
        fixed_subgroup_smith(&mats, n)
    })
}

/// The possible structures of (O/NO)^G listed by the classification theorem, for N
/// coprime to 6 and N in {2, 3}; None for other moduli.
pub fn theorem_option_set(kind: DihedralKind, n: u64) -> Option<Vec<AbelianInvariants>> {
    use DihedralKind::*;
    let inv = |ds: &[u64]| AbelianInvariants::from_divisors(ds);
    let sets: Vec<Vec<u64>> = if n.gcd(&6) == 1 {
        match kind {
            D1 => vec![vec![n, n]],
            _ => vec![vec![n]],
        }
    } else if n == 3 {
        match kind {
            D1 => vec![vec![3, 3]],
            D3 => vec![vec![3], vec![3, 3]],
            _ => vec![vec![3]],
        }
    } else if n == 2 {
        match kind {
            D1 => vec![vec![2, 2], vec![2, 2, 2], vec![2, 2, 2, 2]],
            D2 => vec![vec![2, 2], vec![2, 2, 2]],
            D4 => vec![vec![2, 2]],
            D3 | D6 => vec![vec![2]],
        }
    } else {
        return None;
    };
    Some(sets.iter().map(|d| inv(d)).collect())
}

fn check_involution(o: &QuatOrder, b: &QuatElt) -> Result<(IntOrder, Vec4, i64, Mat4)> {
    let io = IntOrder::new(o);
    let c = int_coords(o, b)?;
    let m = b
        .mul(b)
        .as_scalar()
        .filter(|s| s.is_integer() && b.as_scalar().is_none())
        .ok_or_else(|| ActionError::Domain(format!("({b})^2 is not an integer")))?;
    let m = i64::try_from(m.to_integer()).map_err(|_| ActionError::Domain("b^2 too large".into()))?;
    if m == 1 || m == 0 || io.discriminant() % m.abs() != 0 {
        return Err(ActionError::Domain(format!("b^2 = {m} must be != 1 and divide disc(B)")));
    }
    let mat = io
        .right_conjugation(&c)
        .ok_or_else(|| ActionError::Domain(format!("{b} does not normalize O")))?;
    Ok((io, c, m, mat))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionReport {
    pub m: i64,
    pub fixed: AbelianInvariants,
    /// fixed is (Z/2)^3.
    pub criterion: bool,
    /// 2 | disc(B) and m = 3 mod 4.
    pub predicted: bool,
}

/// Fixed points of conjugation by b on O/2O, for b in O normalizing O with b^2 = m.
pub fn classify_involution_mod2(o: &QuatOrder, b: &QuatElt) -> Result<InvolutionReport> {
    let (io, _, m, mat) = check_involution(o, b)?;
    let fixed = fixed_subgroup_enum(&[mat], 2);
    Ok(InvolutionReport {
        m,
        criterion: fixed == AbelianInvariants::from_divisors(&[2, 2, 2]),
        predicted: io.discriminant() % 2 == 0 && m.rem_euclid(4) == 3,
        fixed,
    })
}

/// Residues x of O/4O (optionally only those with x = 1 mod 2O) with b^-1 x b x = -1.
pub fn mod4_anticommutator_witnesses(o: &QuatOrder, b: &QuatElt, lift_of_one: bool) -> Result<Vec<Vec4>> {
    let (io, _, _, mat) = check_involution(o, b)?;
    let one = io.one();
    let minus_one = reduce(&one.map(|v| -v), 4);
    Ok(all_residues(4)
        .filter(|x| !lift_of_one || reduce(x, 2) == reduce(&one, 2))
        .filter(|x| reduce(&io.mul(&mat_vec(&mat, x), x), 4) == minus_one)
        .collect())
}

/// The exhaustive search over x in O/4O with x = 1 mod 2O for b^-1 x b x = -1, for b
/// whose mod-2 fixed points are (Z/2)^3.
pub fn search_mod4_anticommutator(o: &QuatOrder, b: &QuatElt) -> Result<Option<Vec4>> {
    if !classify_involution_mod2(o, b)?.criterion {
        return Err(ActionError::Domain(format!("{b} does not have (Z/2)^3 fixed points mod 2")));
    }
    Ok(mod4_anticommutator_witnesses(o, b, true)?.into_iter().next())
}

/// Every trace-zero b in the coordinate box with b^2 = m for some m != 1 dividing
/// disc(B) (up to sign), together with its mod-2 report.
pub fn involutions_in_box(o: &QuatOrder, height: i64) -> Result<Vec<(QuatElt, InvolutionReport)>> {
    let io = IntOrder::new(o);
    let disc = io.discriminant();
    let mut out = Vec::new();
    for d in exact_math::integer::divisors(disc as u64) {
        for m in [-(d as i64), d as i64] {
            if m == 1 {
                continue;
            }
            for b in quaternion_orders::find_trace_zero(o, m, height) {
                let r = classify_involution_mod2(o, &b)?;
                out.push((b, r));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C2C2Report {
    pub m: i64,
    pub n: i64,
    pub fixed: AbelianInvariants,
    pub criterion: bool,
    /// 2 | disc(B) and m, n = 3 mod 4.
    pub predicted: bool,
}

/// (O/2O)^G for a D2 action.
pub fn classify_c2c2_mod2(action: &DihedralAction) -> Result<C2C2Report> {
    if action.kind() != DihedralKind::D2 {
        return Err(ActionError::Domain(format!("expected D2, got {}", action.kind())));
    }
    let fixed = fixed_subgroup_enum(&action.matrices(), 2);
    let (m, n) = (action.m(), action.n().expect("D2 has n"));
    let disc = IntOrder::new(action.order()).discriminant();
    Ok(C2C2Report {
        m,
        n,
        criterion: fixed == AbelianInvariants::from_divisors(&[2, 2, 2]),
        predicted: disc % 2 == 0 && m.rem_euclid(4) == 3 && n.rem_euclid(4) == 3,
        fixed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{disc6_actions, disc6_order};

    #[test]
    fn cyclic_order_four_mod2() {
        let o = disc6_order();
        let alg = o.algebra().clone();
        let g = crate::action::AutClass::new(&o, &alg.one().add(&alg.i())).unwrap();
        let f = fixed_subgroup_enum(&[g.matrix()], 2);
        assert_eq!(f, AbelianInvariants::from_divisors(&[2, 2]));
    }

    #[test]
    fn d1_mod2_and_d2_mod5() {
        let acts = disc6_actions();
        assert_eq!(residue_fixed_subgroup(&acts[0], 2).unwrap(), AbelianInvariants::from_divisors(&[2, 2, 2]));
        assert_eq!(residue_fixed_subgroup(&acts[1], 5).unwrap(), AbelianInvariants::from_divisors(&[5]));
        assert_eq!(residue_fixed_subgroup(&acts[2], 2).unwrap(), AbelianInvariants::from_divisors(&[2, 2]));
    }

    #[test]
    fn involution_reports() {
        let o = disc6_order();
        let alg = o.algebra().clone();
        let r = classify_involution_mod2(&o, &alg.i()).unwrap();
        assert_eq!(r.fixed, AbelianInvariants::from_divisors(&[2, 2, 2]));
        assert!(r.criterion && r.predicted);
        let r = classify_involution_mod2(&o, &alg.k()).unwrap();
        assert_eq!(r.m, 6);
        assert_eq!(r.fixed, AbelianInvariants::from_divisors(&[2, 2]));
        assert!(!r.criterion && !r.predicted);
        assert_eq!(search_mod4_anticommutator(&o, &alg.i()).unwrap(), None);
        assert!(classify_involution_mod2(&o, &alg.one()).is_err());
    }
}
