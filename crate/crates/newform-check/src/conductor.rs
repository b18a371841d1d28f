//! Conductors 2^{2i} 3^{2j} N^4 of PQM surfaces.

use exact_math::{factor_integer, BigInt};
use num_traits::{One, Signed};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConductorShape {
    pub i: u32,
    pub j: u32,
    /// Squarefree and coprime to 6.
    pub n: BigInt,
}

/// The decomposition cond = 2^{2i} 3^{2j} N^4 with i <= 10, j <= 5, if there is one.
pub fn conductor_admissible(cond: &BigInt) -> Option<ConductorShape> {
    if !cond.is_positive() {
        return None;
    }
    let mut shape = ConductorShape { i: 0, j: 0, n: BigInt::one() };
    for (p, e) in factor_integer(cond) {
        if p == BigInt::from(2) {
            if e % 2 == 1 || e > 20 {
                return None;
            }
            shape.i = e / 2;
        } else if p == BigInt::from(3) {
            if e % 2 == 1 || e > 10 {
                return None;
            }
            shape.j = e / 2;
        } else if e == 4 {
            shape.n *= p;
        } else {
            return None;
        }
    }
    Some(shape)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let c = |n: u64| conductor_admissible(&BigInt::from(n));
        assert_eq!(c(3u64.pow(10)), Some(ConductorShape { i: 0, j: 5, n: BigInt::one() }));
        assert_eq!(c(625).map(|s| s.n), Some(BigInt::from(5)));
        assert_eq!(c(8), None);
        assert_eq!(c(1), Some(ConductorShape { i: 0, j: 0, n: BigInt::one() }));
        assert_eq!(c(3u64.pow(12)), None);
        assert_eq!(c(2u64.pow(22)), None);
        assert_eq!(c(5u64.pow(8)), None);
        assert_eq!(c(2u64.pow(20) * 3u64.pow(8) * 7u64.pow(4)).map(|s| (s.i, s.j)), Some((10, 4)));
    }
}
