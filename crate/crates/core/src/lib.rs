//! Exact and asymptotic coefficients of real powers of theta-type products
//!
//! For a product
//! `G(q) = ∏ (q^m, q^{n-m}; q^n)_∞^u` and a real exponent `δ`, this crate
//! computes the coefficients `c_δ(n)` of `G(q)^δ` exactly as polynomials in
//! `δ`, evaluates the circle-method main term with an explicit error bound,
//! and assembles certificates for periodic sign patterns of `c_δ(n)`.

pub mod arith;
pub mod asymptotic;
pub mod modular;
pub mod qseries;
pub mod signpattern;
pub mod special;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("growth condition fails at residue pair ({0}, {1})")]
    GrowthCondition(u64, u64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
