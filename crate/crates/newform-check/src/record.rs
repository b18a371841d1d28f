//! Newform records: coefficients a_p = u + v sqrt(m) stored as exact rational pairs.

use std::collections::BTreeMap;

use exact_math::{is_prime, BigInt, Rat};
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::{NewformError, Result};

/// u + v sqrt(m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadElt {
    pub u: Rat,
    pub v: Rat,
}

impl QuadElt {
    pub fn new(u: Rat, v: Rat) -> Self {
        QuadElt { u, v }
    }

    pub fn conj(&self) -> Self {
        QuadElt { u: self.u.clone(), v: -self.v.clone() }
    }

    pub fn neg(&self) -> Self {
        QuadElt { u: -self.u.clone(), v: -self.v.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn norm(&self, m: i64) -> Rat {
        &self.u * &self.u - &self.v * &self.v * Rat::from_integer(m.into())
    }

    /// |u| + |v| sqrt(m) <= 2 sqrt(p), so both real embeddings satisfy the Ramanujan bound.
    pub fn within_weil_bound(&self, m: i64, p: u64) -> bool {
        let mr = Rat::from_integer(m.into());
        let four_p = Rat::from_integer((4 * p).into());
        // u^2 + v^2 m + 2|uv| sqrt(m) <= 4p
        let r = four_p - &self.u * &self.u - &self.v * &self.v * &mr;
        if r.is_negative() {
            return false;
        }
        let uv = &self.u * &self.v;
        Rat::from_integer(4.into()) * &uv * &uv * mr <= &r * &r
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewformRecord {
    pub label: String,
    pub level: u64,
    pub weight: u32,
    /// The coefficient field is Q(sqrt m).
    pub m: i64,
    pub ap: BTreeMap<u64, QuadElt>,
    pub inner_twists: Vec<i64>,
    /// CM flag from the source, if it carried one.
    pub self_twist: Option<bool>,
}

impl NewformRecord {
    pub fn a_p(&self, p: u64) -> Option<&QuadElt> {
        self.ap.get(&p)
    }

    /// Largest P such that a_p is present for every prime p <= P.
    pub fn coefficient_bound(&self) -> u64 {
        let mut bound = 1;
        let mut p = 2u64;
        loop {
            if is_prime(&BigInt::from(p)) {
                if !self.ap.contains_key(&p) {
                    return bound;
                }
                bound = p;
            }
            p += 1;
        }
    }

    pub fn to_json(&self) -> Value {
        let ap: Map<String, Value> = self
            .ap
            .iter()
            .map(|(p, a)| {
                let c = [a.u.numer(), a.u.denom(), a.v.numer(), a.v.denom()];
                let c: Vec<Value> = c.iter().map(|x| json!(x.to_i64().expect("small coefficient"))).collect();
                (p.to_string(), Value::Array(c))
            })
            .collect();
        let mut doc = json!({
            "label": self.label,
            "level": self.level,
            "weight": self.weight,
            "m": self.m,
            "ap": ap,
            "inner_twists": self.inner_twists,
        });
        if let Some(s) = self.self_twist {
            doc["self_twist"] = json!(s);
        }
        doc
    }
}

fn ingest(field: &str, msg: impl Into<String>) -> NewformError {
    NewformError::Ingest { field: field.into(), msg: msg.into() }
}

fn get<'a>(doc: &'a Map<String, Value>, field: &str) -> Result<&'a Value> {
    doc.get(field).ok_or_else(|| ingest(field, "missing"))
}

fn get_i64(doc: &Map<String, Value>, field: &str) -> Result<i64> {
    get(doc, field)?.as_i64().ok_or_else(|| ingest(field, "expected an integer"))
}

fn is_square_i64(m: i64) -> bool {
    m >= 0 && {
        let r = (m as f64).sqrt().round() as i64;
        (r - 1..=r + 1).any(|s| s >= 0 && s * s == m)
    }
}

fn parse_ap(p_key: &str, v: &Value) -> Result<(u64, QuadElt)> {
    let field = format!("ap.{p_key}");
    let p: u64 = p_key.parse().map_err(|_| ingest(&field, "key is not an integer"))?;
    if !is_prime(&BigInt::from(p)) {
        return Err(ingest(&field, format!("{p} is not prime")));
    }
    let c = v.as_array().ok_or_else(|| ingest(&field, "expected [u_num, u_den, v_num, v_den]"))?;
    if c.len() != 4 {
        return Err(ingest(&field, "expected four integers"));
    }
    let mut n = [0i64; 4];
    for (k, x) in c.iter().enumerate() {
        n[k] = x.as_i64().ok_or_else(|| ingest(&field, "expected integers"))?;
    }
    if n[1] == 0 || n[3] == 0 {
        return Err(ingest(&field, "zero denominator"));
    }
    let r = |a: i64, b: i64| Rat::new(a.into(), b.into());
    Ok((p, QuadElt::new(r(n[0], n[1]), r(n[2], n[3]))))
}

/// Parse and validate one record in the fixture schema.
pub fn load_record(doc: &Value) -> Result<NewformRecord> {
    let doc = doc.as_object().ok_or_else(|| ingest("<root>", "expected an object"))?;
    let label = get(doc, "label")?.as_str().ok_or_else(|| ingest("label", "expected a string"))?.to_string();
    let level = get_i64(doc, "level")?;
    if level < 1 {
        return Err(ingest("level", "must be positive"));
    }
    let weight = get_i64(doc, "weight")?;
    if weight != 2 {
        return Err(ingest("weight", format!("only weight 2 is supported, got {weight}")));
    }
    let m = get_i64(doc, "m")?;
    if m <= 1 || is_square_i64(m) {
        return Err(ingest("m", format!("{m} does not give a real quadratic field")));
    }
    let ap_doc = get(doc, "ap")?.as_object().ok_or_else(|| ingest("ap", "expected an object"))?;
    let mut ap = BTreeMap::new();
    for (k, v) in ap_doc {
        let (p, a) = parse_ap(k, v)?;
        if level as u64 % p != 0 && !a.within_weil_bound(m, p) {
            return Err(ingest(&format!("ap.{k}"), "violates the Ramanujan bound"));
        }
        ap.insert(p, a);
    }
    let inner_twists = get(doc, "inner_twists")?
        .as_array()
        .ok_or_else(|| ingest("inner_twists", "expected a list"))?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| ingest("inner_twists", "expected integers")))
        .collect::<Result<Vec<_>>>()?;
    let self_twist = match doc.get("self_twist") {
        None | Some(Value::Null) => None,
        Some(v) => Some(v.as_bool().ok_or_else(|| ingest("self_twist", "expected a boolean"))?),
    };
    if self_twist != Some(true) && ap.values().all(|a| a.v.is_zero()) {
        return Err(ingest("ap", "no coefficient generates Q(sqrt m)"));
    }
    Ok(NewformRecord { label, level: level as u64, weight: 2, m, ap, inner_twists, self_twist })
}

/// A JSON array of records.
pub fn load_records(json: &str) -> Result<Vec<NewformRecord>> {
    let v: Value = serde_json::from_str(json).map_err(|e| ingest("<root>", e.to_string()))?;
    v.as_array().ok_or_else(|| ingest("<root>", "expected an array"))?.iter().map(load_record).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc() -> Value {
        json!({"label": "x", "level": 243, "weight": 2, "m": 6,
               "ap": {"2": [0, 1, 1, 1], "5": [0, 1, -1, 1]}, "inner_twists": [-3], "self_twist": false})
    }

    #[test]
    fn round_trip() {
        let r = load_record(&doc()).unwrap();
        assert_eq!(r.coefficient_bound(), 2);
        assert_eq!(load_record(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn schema_errors_name_the_field() {
        for (field, bad) in [("weight", Value::Null), ("m", json!(4)), ("weight", json!(4))] {
            let mut d = doc();
            if bad.is_null() {
                d.as_object_mut().unwrap().remove(field);
            } else {
                d[field] = bad;
            }
            match load_record(&d) {
                Err(NewformError::Ingest { field: f, .. }) => assert_eq!(f, field),
                other => panic!("expected an ingest error, got {other:?}"),
            }
        }
        let mut d = doc();
        d["ap"]["7"] = json!([6, 1, 0, 1]);
        assert!(matches!(load_record(&d), Err(NewformError::Ingest { field, .. }) if field == "ap.7"));
    }

    #[test]
    fn weil_bound_both_embeddings() {
        let r = |a: i64| Rat::from_integer(a.into());
        // 1 + sqrt 2 <= 2 sqrt 2 but 2 + sqrt 2 > 2 sqrt 2.
        assert!(QuadElt::new(r(1), r(1)).within_weil_bound(2, 2));
        assert!(!QuadElt::new(r(2), r(-1)).within_weil_bound(2, 2));
        assert!(QuadElt::new(r(0), r(1)).within_weil_bound(6, 2));
    }
}
