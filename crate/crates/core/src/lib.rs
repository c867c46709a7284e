//! Exact ideal zeta functions of the rings `Z[x]/x(x-α)(x-β)`, and of the
//! rings generated by integer matrices with three distinct integer
//! eigenvalues.
//!
//! The zeta function factors as `∏_p δ_p(p^{-s}) · ζ(s)^3` over the primes
//! dividing `αβ(β-α)`. [`localzeta`] computes each `δ_p` in closed form from
//! the valuation profile, [`dirichlet`] assembles the coefficient table and
//! [`oracle`] counts ideals by exhaustive lattice enumeration to check both.

pub mod cli;
pub mod dirichlet;
pub mod error;
pub mod exactnum;
pub mod localzeta;
pub mod oracle;
pub mod polyring;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
