//! Weight-2 newforms with real quadratic coefficient field: ingestion, local L-factors at
//! good primes, inner twist and CM detection, the quaternion criterion for PQM, and the
//! conductor shape of PQM surfaces with bad reduction only at 2 and 3 and N.

pub mod conductor;
pub mod record;
pub mod screen;
pub mod table;

pub use conductor::{conductor_admissible, ConductorShape};
pub use record::{load_record, load_records, NewformRecord, QuadElt};
pub use screen::{
    lp_at_one, pqm_criterion, torsion_divisor_bound, twist_checks, PqmVerdict, SelfTwistSource, TwistReport,
    TwistStatus, MIN_TWIST_BOUND,
};
pub use table::{builtin_records, TableRow, TABLE1};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NewformError {
    #[error("ingest error in field `{field}`: {msg}")]
    Ingest { field: String, msg: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, NewformError>;
