//! Finite dihedral groups of automorphisms of a maximal quaternion order O, their action
//! on O/NO, left submodules of O/lO and the enhanced group Aut(O) x| (O/NO)^x.

pub mod action;
pub mod enhanced;
pub mod fixed;
pub mod polarization;
pub mod residue;
pub mod submodule;

pub use action::{
    build_dihedral_action, disc6_actions, disc6_order, find_omega, maximal_order, search_action, ActionDoc,
    AutClass, DihedralAction, DihedralKind,
};
pub use enhanced::{EnhancedElement, ResidueRing};
pub use fixed::{
    classify_c2c2_mod2, classify_involution_mod2, involutions_in_box, mod4_anticommutator_witnesses,
    residue_fixed_subgroup, search_mod4_anticommutator, theorem_option_set, C2C2Report, InvolutionReport,
};
pub use polarization::{c2c2_polarization_check, distinguished_subring, polarization_analysis, PolarizationReport, QuadraticRing};
pub use submodule::{generated_by, submodule_lattice_mod_ell, three_dim_generator_check, Submodule};

use quaternion_orders::QuatError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("relation violated: {0}")]
    Relation(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("bad action document: {0}")]
    Document(String),
    #[error(transparent)]
    Quat(#[from] QuatError),
}

pub type Result<T> = std::result::Result<T, ActionError>;
