//! Isogeny class labels "2.q.c1_c2" with base-26 letter coefficients.

use exact_math::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::weil::WeilPoly2;
use crate::{Result, WeilError};

fn err(pos: usize, msg: impl Into<String>) -> WeilError {
    WeilError::Parse { pos, msg: msg.into() }
}

/// Base-26 digits a..z; a leading "a" followed by more letters negates.
pub fn encode_coeff(n: &BigInt) -> String {
    let mut m = n.abs();
    let mut digits = Vec::new();
    loop {
        let (q, r) = m.div_rem(&BigInt::from(26));
        digits.push(b'a' + r.to_u8().expect("digit"));
        m = q;
        if m.is_zero() {
            break;
        }
    }
    if n.is_negative() {
        digits.push(b'a');
    }
    digits.reverse();
    String::from_utf8(digits).expect("ascii")
}

pub fn decode_coeff(s: &str, offset: usize) -> Result<BigInt> {
    if s.is_empty() {
        return Err(err(offset, "empty coefficient"));
    }
    let (neg, body, start) = if s.len() > 1 && s.starts_with('a') {
        (true, &s[1..], offset + 1)
    } else {
        (false, s, offset)
    };
    if body.len() > 1 && body.starts_with('a') {
        return Err(err(start, "leading zero digit"));
    }
    let mut v = BigInt::zero();
    for (k, ch) in body.bytes().enumerate() {
        if !ch.is_ascii_lowercase() {
            return Err(err(start + k, format!("unexpected character {:?}", ch as char)));
        }
        v = v * 26 + BigInt::from(ch - b'a');
    }
    Ok(if neg { -v } else { v })
}

pub fn parse_label(s: &str) -> Result<WeilPoly2> {
    let parts: Vec<&str> = s.split('.').collect();
    if parts.len() != 3 {
        return Err(err(0, "expected g.q.coefficients"));
    }
    if parts[0] != "2" {
        return Err(err(0, "only dimension 2 is supported"));
    }
    let qpos = 2;
    if parts[1].is_empty() || !parts[1].bytes().all(|b| b.is_ascii_digit()) || parts[1].starts_with('0') {
        return Err(err(qpos, "bad field size"));
    }
    let q: BigInt = parts[1].parse().map_err(|_| err(qpos, "bad field size"))?;
    crate::weil::check_q(&q).map_err(|_| err(qpos, format!("{q} is not a prime power")))?;
    let cpos = qpos + parts[1].len() + 1;
    let cs: Vec<&str> = parts[2].split('_').collect();
    if cs.len() != 2 {
        return Err(err(cpos, "expected two coefficients"));
    }
    let a1 = decode_coeff(cs[0], cpos)?;
    let a2 = decode_coeff(cs[1], cpos + cs[0].len() + 1)?;
    Ok(WeilPoly2 { q, a1, a2 })
}

pub fn format_label(w: &WeilPoly2) -> String {
    format!("2.{}.{}_{}", w.q, encode_coeff(&w.a1), encode_coeff(&w.a2))
}

/// The isogeny class labels cited in the text, in order of appearance.
pub const CITED_LABELS: [&str; 11] = [
    "2.2.a_e", "2.2.b_b", "2.3.a_ac", "2.3.a_c", "2.3.a_g", "2.5.a_ac", "2.5.a_k", "2.5.d_e", "2.5.f_q", "2.7.a_ac",
    "2.7.i_be",
];
