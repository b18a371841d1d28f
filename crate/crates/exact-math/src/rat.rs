use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{MathError, Result};

/// Rationals are kept reduced with positive denominator by `BigRational` itself.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = |pos: usize| MathError::Parse {
        pos,
        msg: format!("invalid rational {s:?}"),
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad(0))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad(n.to_string().len() + 1))?;
            if d.is_zero() {
                return Err(bad(s.len() - 1));
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad(0))?)),
    }
}

/// Always writes the denominator, e.g. `"3/1"`.
pub fn fmt_rat(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Exponent of `p` in a nonzero integer.
pub fn valuation_int(n: &BigInt, p: &BigInt) -> u32 {
    debug_assert!(!n.is_zero());
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn padic_valuation(x: &Rat, p: &BigInt) -> Result<i64> {
    if x.is_zero() {
        return Err(MathError::Domain("valuation of zero".into()));
    }
    if p < &BigInt::from(2) {
        return Err(MathError::Domain(format!("{p} is not prime")));
    }
    Ok(valuation_int(x.numer(), p) as i64 - valuation_int(x.denom(), p) as i64)
}
