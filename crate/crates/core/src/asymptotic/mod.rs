//! Circle-method main term, explicit error bound and the modular
//! transformation identity as a numerical self-test.

mod classes;
mod estimate;
mod transform;

pub use classes::{class_factors, class_weight, growing_frames, pochhammer_log_bound, ClassFactors, GrowingFrame};
pub use estimate::{
    big_x, default_n, error_bound, estimate_coefficient, frame_value, inflate, main_term, main_term_from_frames,
    CertifiedSign, Estimate, MainTerm, SLACK_BITS,
};
pub use transform::{branch_lifts, lifted_phase, transformation_check};
