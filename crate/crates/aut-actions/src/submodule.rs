//! Left O-submodules of O/lO for a prime l.

use std::collections::BTreeSet;

use quaternion_orders::QuatOrder;

use crate::residue::{all_residues, echelon_mod, reduce, IntOrder, Vec4};
use crate::{ActionError, Result};

/// An F_l-subspace of O/lO stored by its reduced echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Submodule {
    pub ell: i64,
    pub basis: Vec<Vec4>,
}

impl Submodule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Number of elements, l^dim.
    pub fn order(&self) -> u64 {
        (self.ell as u64).pow(self.dim() as u32)
    }

    pub fn contains(&self, x: &Vec4) -> bool {
        let mut vs = self.basis.clone();
        vs.push(*x);
        echelon_mod(&vs, self.ell).len() == self.dim()
    }

    fn sum(&self, other: &Submodule) -> Submodule {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().copied());
        Submodule { ell: self.ell, basis: echelon_mod(&vs, self.ell) }
    }
}

fn check_prime(ell: i64) -> Result<()> {
    if ell < 2 || !exact_math::is_prime(&ell.into()) {
        return Err(ActionError::Domain(format!("{ell} is not prime")));
    }
    Ok(())
}

fn generated(io: &IntOrder, ell: i64, x: &Vec4) -> Submodule {
    let images: Vec<Vec4> = (0..4)
        .map(|i| {
            let mut e = [0i64; 4];
            e[i] = 1;
            io.mul(&e, x)
        })
        .collect();
    Submodule { ell, basis: echelon_mod(&images, ell) }
}

/// The left submodule O x of O/lO.
pub fn generated_by(o: &QuatOrder, ell: i64, x: &Vec4) -> Result<Submodule> {
    check_prime(ell)?;
    Ok(generated(&IntOrder::new(o), ell, &reduce(x, ell)))
}

/// All left O-submodules of O/lO: the cyclic ones O x, closed under sums.
pub fn submodule_lattice_mod_ell(o: &QuatOrder, ell: i64) -> Result<Vec<Submodule>> {
    check_prime(ell)?;
    let io = IntOrder::new(o);
    let mut all: BTreeSet<Submodule> = all_residues(ell).map(|x| generated(&io, ell, &x)).collect();
    loop {
        let list: Vec<Submodule> = all.iter().cloned().collect();
        let before = all.len();
        for a in &list {
            for b in &list {
                all.insert(a.sum(b));
            }
        }
        if all.len() == before {
            break;
        }
    }
    let mut out: Vec<Submodule> = all.into_iter().collect();
    out.sort_by_key(|s| (s.dim(), s.basis.clone()));
    Ok(out)
}

/// Number of left ideals of O/lO predicted by its structure: M_2(F_l) has l + 1 proper
/// nonzero left ideals, the ramified quotient has exactly one.
pub fn expected_submodule_count(o: &QuatOrder, ell: i64) -> usize {
    let disc = IntOrder::new(o).discriminant();
    if disc % ell == 0 {
        3
    } else {
        ell as usize + 3
    }
}

/// Scans a 3-dimensional subspace V of O/lO for an element generating O/lO as a left
/// O-module. Units of O/lO are scanned first, ordered by support size, then by the last
/// nonzero coordinate, then lexicographically.
pub fn three_dim_generator_check(o: &QuatOrder, ell: i64, v: &[Vec4; 3]) -> Result<Vec4> {
    check_prime(ell)?;
    let basis = echelon_mod(v, ell);
    if basis.len() != 3 {
        return Err(ActionError::Domain(format!("V has dimension {}, expected 3", basis.len())));
    }
    let io = IntOrder::new(o);
    let mut elems: Vec<Vec4> = Vec::new();
    for a in 0..ell {
        for b in 0..ell {
            for c in 0..ell {
                let x = std::array::from_fn(|k| a * basis[0][k] + b * basis[1][k] + c * basis[2][k]);
                elems.push(reduce(&x, ell));
            }
        }
    }
    let key = |x: &Vec4| {
        let unit = io.nrd(x).rem_euclid(ell) != 0;
        let support = x.iter().filter(|&&c| c != 0).count();
        let last = x.iter().rposition(|&c| c != 0).unwrap_or(0);
        (!unit, support, last, *x)
    };
    elems.sort_by_key(key);
    for x in elems {
        if generated(&io, ell, &x).dim() == 4 {
            return Ok(x);
        }
    }
    panic!("no generator in a 3-dimensional subspace of O/{ell}O: arithmetic bug");
}
