//! Weil polynomials of abelian surfaces over finite fields: label codec, validity,
//! Honda-Tate admissibility, enumeration, base change and torsion scans.

pub mod enumerate;
pub mod honda_tate;
pub mod label;
pub mod weil;

pub use enumerate::{
    admissible_classes, builtin_fixture, classes_with_divisor, enumerate_surfaces, enumeration_entries,
    parse_fixture, point_count_is_square, qm_prime_bound, torsion_gcd_scan, FixtureEntry, GcdScan, SurfaceClass,
    DEFAULT_NMAX,
};
pub use honda_tate::honda_tate_admissible;
pub use label::{format_label, parse_label, CITED_LABELS};
pub use weil::{WeilPoly1, WeilPoly2};

use exact_math::MathError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeilError {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("bad fixture: {0}")]
    Fixture(String),
    #[error(transparent)]
    Math(#[from] MathError),
}

pub type Result<T> = std::result::Result<T, WeilError>;
