//! Bounded searches over coordinate boxes in an order basis.

use std::collections::BTreeMap;

use exact_math::integer::divisors;
use num_traits::ToPrimitive;

use crate::{QuatElt, QuatError, QuatOrder, Result};

pub const DEFAULT_HEIGHT: i64 = 30;

fn eval_nrd(q: &[[i64; 4]; 4], c: &[i64; 4]) -> i128 {
    let mut s = 0i128;
    for i in 0..4 {
        for j in i..4 {
            s += q[i][j] as i128 * c[i] as i128 * c[j] as i128;
        }
    }
    s
}

/// Order coordinates in [-h, h]^4 with trd = `trace` and nrd = `norm`.
fn solve_box(o: &QuatOrder, h: i64, trace: i64, norm: Option<i128>) -> Vec<[i64; 4]> {
    let t = o.trd_form();
    let q = o.nrd_form();
    let k = (0..4).max_by_key(|&i| (t[i] != 0, -(t[i].abs()))).unwrap();
    let free: Vec<usize> = (0..4).filter(|&i| i != k).collect();
    let mut out = Vec::new();
    let side = 2 * h + 1;
    for code in 0..side.pow(3) {
        let mut c = [0i64; 4];
        let mut rest = code;
        for &i in &free {
            c[i] = rest % side - h;
            rest /= side;
        }
        let partial: i64 = free.iter().map(|&i| t[i] * c[i]).sum();
        let cands: Vec<i64> = if t[k] == 0 {
            if partial != trace {
                continue;
            }
            (-h..=h).collect()
        } else {
            let num = trace - partial;
            if num % t[k] != 0 {
                continue;
            }
            let v = num / t[k];
            if v.abs() > h {
                continue;
            }
            vec![v]
        };
        for v in cands {
            c[k] = v;
            if norm.is_none_or(|n| eval_nrd(&q, &c) == n) {
                out.push(c);
            }
        }
    }
    out.sort_by_key(|c| canonical_key(c));
    out
}

fn canonical_key(c: &[i64; 4]) -> (i64, [i64; 4]) {
    (c.iter().map(|x| x.abs()).max().unwrap_or(0), *c)
}

/// All elements of the order with coordinates bounded by `height`, trd 0 and square m.
pub fn find_trace_zero(o: &QuatOrder, m: i64, height: i64) -> Vec<QuatElt> {
    // For trd(x) = 0, x^2 = -nrd(x).
    solve_box(o, height, 0, Some(-(m as i128)))
        .into_iter()
        .map(|c| o.elt(c))
        .collect()
}

/// All elements in the coordinate box with the given reduced trace and norm.
pub fn box_elements(o: &QuatOrder, height: i64, trace: i64, norm: i128) -> Vec<QuatElt> {
    solve_box(o, height, trace, Some(norm)).into_iter().map(|c| o.elt(c)).collect()
}

/// Representatives w_m in O of the normalizer with |nrd(w_m)| = m for each m | disc.
/// Preference: trace zero, then positive norm, then smallest coordinates.
pub fn atkin_lehner_group(o: &QuatOrder, height: i64) -> Result<BTreeMap<u64, QuatElt>> {
    if !o.is_maximal() {
        return Err(QuatError::Domain("Atkin-Lehner representatives need a maximal order".into()));
    }
    let disc = o.algebra().discriminant().to_u64().expect("small discriminant");
    let mut out = BTreeMap::new();
    for m in divisors(disc) {
        if m == 1 {
            out.insert(1, o.algebra().one());
            continue;
        }
        let mut found = None;
        for h in [height.min(6), height] {
            if found.is_some() {
                break;
            }
            let mut best: Option<(i64, bool, (i64, [i64; 4]))> = None;
            for norm in [m as i128, -(m as i128)] {
                for tr in 0..=2 * h.min(6) {
                    for t in [tr, -tr] {
                        for c in solve_box(o, h, t, Some(norm)) {
                            let key = (tr, norm < 0, canonical_key(&c));
                            if best.as_ref().is_some_and(|b| b <= &key) {
                                continue;
                            }
                            if o.is_in_normalizer(&o.elt(c))? {
                                best = Some(key);
                            }
                        }
                    }
                }
            }
            found = best.map(|(_, _, (_, c))| o.elt(c));
        }
        out.insert(m, found.ok_or(QuatError::NotFound(m))?);
    }
    Ok(out)
}
