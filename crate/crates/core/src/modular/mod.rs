//! Dedekind sums, `(h, k)` frames, residue classes and the growth condition.

mod classify;
mod dedekind;
mod frame;

pub use classify::{
    check_growth_condition, classify_residue_pairs, growth_limit, max_growth_ratio, Classification, GrowthRatio,
    ResidueClass,
};
pub use dedekind::dedekind_sum;
pub use frame::{
    build_frame, coprime_pairs, lambda_pair, residue_class, residue_delta, upsilon, FactorFrame, ModularFrame,
};
