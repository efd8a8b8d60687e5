//! Sign patterns of `c_δ(n)`: exact verification of the first coefficients,
//! asymptotic certificates for the rest, critical `δ` and range tables.

mod certify;
mod envelope;
mod exact;
mod pattern;

pub use certify::{certify, critical_delta, table_ranges, Certificate, Rounding, Status, TableRow};
pub use envelope::{asymptotic_certificate, AsymptoticCertificate, CrossCheck, LevelReport};
pub use exact::{verify_exact, ExactResult, ExactVerdict};
pub use pattern::{Sign, SignPattern};
