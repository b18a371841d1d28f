//! Genus-2 curves with quaternionic multiplication: the one-parameter family of Igusa
//! invariants with (Z/2)^2 rational 2-torsion, point counting, Jacobian arithmetic over
//! F_p, and torsion certification of explicit curves.

pub mod cantor;
pub mod curve;
pub mod family;
pub mod group;
pub mod torsion;

pub use cantor::{JacobianFp, MumfordDivisor};
pub use curve::{lpoly_from_counts, GenusTwoCurve};
pub use family::{family_igusa, family_j, model_checks_for_j, rational_model_checks, IgusaPoint, ModelChecks};
pub use group::{enumerate_jacobian, jacobian_group_mod_p, GroupInfo, MAX_ENUMERATED_P};
pub use torsion::{
    certify_torsion, table2_rows, two_torsion_count, two_torsion_count_enum, CertReport, Table2Row, Verdict,
};

use exact_math::MathError;
use thiserror::Error;
use weil_engine::WeilError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenusError {
    #[error("singular parameter: {0}")]
    Singular(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported model: {0}")]
    Unsupported(String),
    #[error("inconsistent point counts: {0}")]
    InconsistentCounts(String),
    #[error("bad curve input: {0}")]
    Input(String),
    #[error(transparent)]
    Math(#[from] MathError),
    #[error(transparent)]
    Weil(#[from] WeilError),
}

pub type Result<T> = std::result::Result<T, GenusError>;
