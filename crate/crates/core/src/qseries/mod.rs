//! Exact truncated q-series in a symbolic exponent `δ`, with rigorous range
//! bounding and real-root isolation for the coefficient polynomials.

pub mod delta;
pub mod product;
pub mod range;
pub mod roots;
pub mod series;

pub use delta::{expand_real_power, DeltaPolynomial, DeltaSeries};
pub use product::{Factor, ProductSpec};
pub use range::{
    named_constant, poly_range_over_interval, range_over_delta_range, sign_over_interval, sign_over_range,
    AlgebraicNumber, DeltaRange, Endpoint, RationalInterval, SignVerdict,
};
pub use roots::{count_roots, isolate_real_roots};
pub use series::{exp_series, expand_integer_product, expand_rational_power, log_series};
