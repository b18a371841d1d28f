//! LMFDB JSON API client. Two endpoint shapes are known: isogeny classes of abelian
//! surfaces by q, and classical newforms by label (the mf_newforms and mf_hecke_nf
//! tables). Responses go through the cache; offline mode never touches the network.

use std::cell::Cell;
use std::time::{Duration, Instant};

use exact_math::{squarefree_part, BigInt, Rat};
use newform_check::{load_record, twist_checks, NewformRecord};
use serde_json::{json, Map, Value};
use weil_engine::{parse_label, FixtureEntry, WeilPoly2};

use crate::cache::{Cache, CacheEntry};
use crate::config::QueryConfig;
use crate::{CliError, Result};

/// Safety cap on followed "next" links.
const MAX_PAGES: usize = 50;

pub struct LmfdbClient {
    cfg: QueryConfig,
    cache: Cache,
    http: Option<reqwest::blocking::Client>,
    last_request: Cell<Option<Instant>>,
}

fn bad(url: &str, msg: impl Into<String>) -> CliError {
    CliError::Response { url: url.to_string(), msg: msg.into() }
}

impl LmfdbClient {
    pub fn new(cfg: QueryConfig) -> Result<Self> {
        let http = if cfg.offline {
            None
        } else {
            Some(
                reqwest::blocking::Client::builder()
                    .timeout(Duration::from_secs(60))
                    .user_agent(concat!("qt/", env!("CARGO_PKG_VERSION")))
                    .build()
                    .map_err(|e| CliError::Transport(e.to_string()))?,
            )
        };
        let cache = Cache::new(cfg.cache_dir.clone());
        Ok(LmfdbClient { cfg, cache, http, last_request: Cell::new(None) })
    }

    pub fn cache(&self) -> &Cache {
        &self.cache
    }

    pub fn config(&self) -> &QueryConfig {
        &self.cfg
    }

    fn url(&self, path_and_query: &str) -> String {
        format!("{}{}", self.cfg.base_url.trim_end_matches('/'), path_and_query)
    }

    fn throttle(&self) {
        if let Some(t) = self.last_request.get() {
            let wait = self.cfg.min_interval().saturating_sub(t.elapsed());
            if !wait.is_zero() {
                std::thread::sleep(wait);
            }
        }
        self.last_request.set(Some(Instant::now()));
    }

    /// The body for url, from the cache or else the network (then cached).
    pub fn get(&self, url: &str) -> Result<Vec<u8>> {
        if let Some(e) = self.cache.get(url)? {
            return e.body_bytes();
        }
        let http = self.http.as_ref().ok_or_else(|| CliError::CacheMiss(url.to_string()))?;
        let mut delay = self.cfg.backoff;
        for attempt in 0..=self.cfg.max_retries {
            self.throttle();
            let resp = http.get(url).send().map_err(|e| CliError::Transport(format!("{url}: {e}")))?;
            let status = resp.status();
            if status.is_success() {
                let body = resp.bytes().map_err(|e| CliError::Transport(format!("{url}: {e}")))?.to_vec();
                self.cache.put(&CacheEntry::new(url, &body))?;
                return Ok(body);
            }
            let retryable = status.as_u16() == 429 || status.is_server_error();
            if !retryable {
                return Err(bad(url, format!("HTTP {status}")));
            }
            if attempt < self.cfg.max_retries {
                std::thread::sleep(delay);
                delay *= 2;
            }
        }
        Err(CliError::Transport(format!("{url}: still failing after {} retries", self.cfg.max_retries)))
    }

    fn get_json(&self, url: &str) -> Result<Value> {
        let body = self.get(url)?;
        serde_json::from_slice(&body).map_err(|e| bad(url, format!("not JSON: {e}")))
    }

    /// All rows of a query, following "next" links.
    fn rows(&self, first: String) -> Result<Vec<Value>> {
        let mut out = Vec::new();
        let mut url = Some(first);
        for _ in 0..MAX_PAGES {
            let Some(u) = url.take() else { return Ok(out) };
            let doc = self.get_json(&u)?;
            let data = doc.get("data").and_then(Value::as_array).ok_or_else(|| bad(&u, "no data array"))?;
            out.extend(data.iter().cloned());
            url = match doc.get("next") {
                Some(Value::String(n)) if !n.is_empty() => {
                    Some(if n.starts_with("http") { n.clone() } else { self.url(n) })
                }
                _ => None,
            };
        }
        Err(bad(&self.cfg.base_url, format!("more than {MAX_PAGES} pages")))
    }

    pub fn av_classes_url(&self, q: u64) -> String {
        self.url(&format!("/api/av_fq_isog/?g=2&q={q}&_format=json&_fields=label,poly"))
    }

    /// Isogeny classes of abelian surfaces over F_q as (label, a1, a2).
    pub fn fetch_av_classes(&self, q: u64) -> Result<Vec<FixtureEntry>> {
        let url = self.av_classes_url(q);
        let mut out = Vec::new();
        for row in self.rows(url.clone())? {
            out.push(normalize_av_row(&row).map_err(|m| bad(&url, m))?);
        }
        out.sort();
        Ok(out)
    }

    pub fn newform_url(&self, table: &str, label: &str) -> String {
        self.url(&format!("/api/{table}/?label={label}&_format=json"))
    }

    pub fn fetch_newform(&self, label: &str) -> Result<NewformRecord> {
        let (u1, u2) = (self.newform_url("mf_newforms", label), self.newform_url("mf_hecke_nf", label));
        let form = self.rows(u1.clone())?.into_iter().next().ok_or_else(|| bad(&u1, "no such newform"))?;
        let hecke = self.rows(u2.clone())?.into_iter().next().ok_or_else(|| bad(&u2, "no Hecke data"))?;
        normalize_newform(label, &form, &hecke).map_err(|m| bad(&u2, m))
    }
}

fn as_i64(v: &Value, what: &str) -> std::result::Result<i64, String> {
    v.as_i64().ok_or_else(|| format!("{what} is not an integer"))
}

/// A row {"label", "poly": [1, a1, a2, q a1, q^2]}, checked against the label codec.
pub fn normalize_av_row(row: &Value) -> std::result::Result<FixtureEntry, String> {
    let label = row.get("label").and_then(Value::as_str).ok_or("row without label")?;
    let poly = row.get("poly").and_then(Value::as_array).ok_or_else(|| format!("{label}: no poly"))?;
    if poly.len() != 5 {
        return Err(format!("{label}: poly has {} coefficients", poly.len()));
    }
    let (a1, a2) = (as_i64(&poly[1], "a1")?, as_i64(&poly[2], "a2")?);
    let w = parse_label(label).map_err(|e| format!("{label}: {e}"))?;
    let q = w.q.clone();
    if w != WeilPoly2::new(q, a1, a2) {
        return Err(format!("{label} does not encode ({a1}, {a2})"));
    }
    Ok(FixtureEntry { label: label.to_string(), a1, a2 })
}

fn primes_upto_count(n: usize) -> Vec<u64> {
    let mut ps = Vec::with_capacity(n);
    let mut k = 2u64;
    while ps.len() < n {
        if ps.iter().take_while(|&&p| p * p <= k).all(|&p| k % p != 0) {
            ps.push(k);
        }
        k += 1;
    }
    ps
}

fn rat_json(x: &Rat) -> [Value; 2] {
    [json!(i64::try_from(x.numer().clone()).unwrap_or(0)), json!(i64::try_from(x.denom().clone()).unwrap_or(1))]
}

/// Rewrite Hecke eigenvalues given in the LMFDB Hecke ring basis as u + v sqrt(m), then
/// validate through the newform-check schema. Inner twists are recomputed locally.
pub fn normalize_newform(label: &str, form: &Value, hecke: &Value) -> std::result::Result<NewformRecord, String> {
    let get = |v: &Value, k: &str| v.get(k).cloned().ok_or_else(|| format!("missing field {k}"));
    let level = as_i64(&get(form, "level")?, "level")?;
    let weight = as_i64(&get(form, "weight")?, "weight")?;
    let fp: Vec<i64> = serde_json::from_value(get(hecke, "field_poly")?).map_err(|e| format!("field_poly: {e}"))?;
    if fp.len() != 3 || fp[2] != 1 {
        return Err(format!("field_poly {fp:?} is not a monic quadratic"));
    }
    // nu = (-c1 + s sqrt m) / 2 with c1^2 - 4 c0 = s^2 m.
    let disc = BigInt::from(fp[1] * fp[1] - 4 * fp[0]);
    if disc <= BigInt::from(0) {
        return Err("coefficient field is not real quadratic".into());
    }
    let m = squarefree_part(&disc);
    let s2 = &disc / &m;
    let s = s2.sqrt();
    let half = |n: BigInt| Rat::new(n, BigInt::from(2));
    let nu = (half(BigInt::from(-fp[1])), half(s));
    let nums: Vec<Vec<i64>> = match hecke.get("hecke_ring_numerators") {
        Some(Value::Null) | None => vec![vec![1, 0], vec![0, 1]],
        Some(v) => serde_json::from_value(v.clone()).map_err(|e| format!("hecke_ring_numerators: {e}"))?,
    };
    let dens: Vec<i64> = match hecke.get("hecke_ring_denominators") {
        Some(Value::Null) | None => vec![1, 1],
        Some(v) => serde_json::from_value(v.clone()).map_err(|e| format!("hecke_ring_denominators: {e}"))?,
    };
    if nums.len() != 2 || dens.len() != 2 || nums.iter().any(|n| n.len() != 2) {
        return Err("Hecke ring basis is not of rank 2".into());
    }
    let basis: Vec<(Rat, Rat)> = (0..2)
        .map(|i| {
            let d = Rat::from_integer(dens[i].into());
            let c0 = Rat::from_integer(nums[i][0].into());
            let c1 = Rat::from_integer(nums[i][1].into());
            ((&c0 + &c1 * &nu.0) / &d, &c1 * &nu.1 / &d)
        })
        .collect();
    let ap: Vec<Vec<i64>> = serde_json::from_value(get(hecke, "ap")?).map_err(|e| format!("ap: {e}"))?;
    let mut ap_doc = Map::new();
    for (p, c) in primes_upto_count(ap.len()).into_iter().zip(&ap) {
        if c.len() != 2 {
            return Err(format!("a_{p} has {} coordinates", c.len()));
        }
        let (x, y) = (Rat::from_integer(c[0].into()), Rat::from_integer(c[1].into()));
        let u = &x * &basis[0].0 + &y * &basis[1].0;
        let v = &x * &basis[0].1 + &y * &basis[1].1;
        let [un, ud] = rat_json(&u);
        let [vn, vd] = rat_json(&v);
        ap_doc.insert(p.to_string(), json!([un, ud, vn, vd]));
    }
    let self_twist = form.get("is_cm").and_then(Value::as_bool);
    let mut doc = json!({
        "label": label, "level": level, "weight": weight,
        "m": i64::try_from(m).map_err(|_| "m too large")?,
        "ap": ap_doc, "inner_twists": [],
    });
    if let Some(s) = self_twist {
        doc["self_twist"] = json!(s);
    }
    let mut rec = load_record(&doc).map_err(|e| e.to_string())?;
    rec.inner_twists = twist_checks(&rec).inner_twists;
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn av_rows() {
        let e = normalize_av_row(&json!({"label": "2.5.f_q", "poly": [1, 5, 16, 25, 25]})).unwrap();
        assert_eq!((e.a1, e.a2), (5, 16));
        assert!(normalize_av_row(&json!({"label": "2.5.f_q", "poly": [1, 5, 15, 25, 25]})).is_err());
    }

    #[test]
    fn hecke_basis_conversion() {
        // x^2 - 6 with power basis: a_2 = nu = sqrt 6, a_3 = 0, a_5 = -nu.
        let form = json!({"level": 243, "weight": 2, "is_cm": false});
        let hecke = json!({"field_poly": [-6, 0, 1], "hecke_ring_numerators": null,
                           "ap": [[0, 1], [0, 0], [0, -1]]});
        let r = normalize_newform("x", &form, &hecke).unwrap();
        assert_eq!(r.m, 6);
        assert_eq!(r.a_p(2).unwrap().v, Rat::from_integer(1.into()));
        assert_eq!(r.a_p(5).unwrap().v, Rat::from_integer((-1).into()));
        // x^2 - x - 1: nu = (1 + sqrt 5) / 2, so a = 2 nu - 1 = sqrt 5.
        let hecke = json!({"field_poly": [-1, -1, 1], "ap": [[-1, 2]]});
        let r = normalize_newform("y", &json!({"level": 5, "weight": 2}), &hecke).unwrap();
        assert_eq!(r.m, 5);
        assert_eq!(r.a_p(2).unwrap().u, Rat::from_integer(0.into()));
        assert_eq!(r.a_p(2).unwrap().v, Rat::from_integer(1.into()));
    }

    #[test]
    fn primes() {
        assert_eq!(primes_upto_count(6), vec![2, 3, 5, 7, 11, 13]);
    }
}
