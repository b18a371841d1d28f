//! Exact arithmetic substrate: rationals, local symbols, Smith normal form,
//! and factorization of small-degree integer polynomials over Q.
//!
//! Nothing in this crate touches floating point.

pub mod error;
pub mod factor;
pub mod fp;
pub mod integer;
pub mod poly;
pub mod rat;
pub mod snf;
pub mod symbols;

pub use error::MathError;
pub use factor::{factor_poly_q, Factorization};
pub use fp::FpPoly;
pub use integer::{factor_integer, is_prime, squarefree_part};
pub use poly::IntPoly;
pub use rat::{fmt_rat, int, padic_valuation, parse_rat, rat, Rat};
pub use snf::{hnf_rows, kernel_mod, smith_diagonal, smith_invariants, AbelianInvariants};
pub use symbols::{hilbert_symbol, kronecker_symbol, rational_square_class, Place};

pub use num_bigint::BigInt;
