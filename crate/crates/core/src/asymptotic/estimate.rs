//! The circle-method main term, its error bound and their combination.

use std::fmt;

use rug::{Float, Rational};

use super::classes::{class_factors, class_weight, growing_frames, GrowingFrame};
use crate::arith::{cis_pi, pi};
use crate::modular::check_growth_condition;
use crate::qseries::ProductSpec;
use crate::special::bessel_i1;
use crate::{domain, Result};

/// Relative and absolute slack added to every certified comparison.
pub const SLACK_BITS: u32 = 96;

/// `X = 24nδ + δ²Ω`, which must be positive.
pub fn big_x(spec: &ProductSpec, delta: &Rational, n: u64) -> Result<Rational> {
    let x = Rational::from(24 * n) * delta + Rational::from(delta * delta) * spec.omega();
    if x <= 0 {
        return domain(format!("need n > -delta*Omega/24, got n = {n}"));
    }
    Ok(x)
}

/// `⌈√(4π(n + δΩ/24))⌉`.
pub fn default_n(spec: &ProductSpec, delta: &Rational, n: u64) -> Result<u64> {
    let shifted = Rational::from(n) + Rational::from(delta * spec.omega()) / 24;
    if shifted <= 0 {
        return domain(format!("need n > -delta*Omega/24, got n = {n}"));
    }
    let prec = 128;
    let v = (Float::with_val(prec, &shifted) * pi(prec) * 4u32).sqrt().ceil();
    Ok(v.to_integer().and_then(|i| i.to_u64()).expect("N fits in u64"))
}

fn check_preconditions(spec: &ProductSpec, delta: &Rational, n: u64) -> Result<Rational> {
    if *delta <= 0 {
        return domain("the main term needs delta > 0; rewrite negative powers with the inverse product");
    }
    check_growth_condition(spec, delta)?;
    big_x(spec, delta, n)
}

/// Real and imaginary parts of the main term.
#[derive(Clone, Debug)]
pub struct MainTerm {
    pub re: Float,
    pub im: Float,
}

/// Value of one growing frame at `(δ, n)`: `(re, im)`.
pub fn frame_value(fr: &GrowingFrame, delta: &Rational, n: u64, x: &Rational, prec: u32) -> Result<(Float, Float)> {
    let work = prec + 32;
    let p = pi(work);
    let dx = Float::with_val(work, &fr.big_delta);
    let xf = Float::with_val(work, x);
    let arg = Float::with_val(work, &dx * &xf).sqrt() * &p / (6 * fr.k);
    let bes = bessel_i1(&arg, work)?;
    let amp = Float::with_val(work, delta * Float::with_val(work, &p * 2u32)) / fr.k
        * Float::with_val(work, &fr.pi_log_modulus * Float::with_val(work, delta)).exp()
        * (dx / xf).sqrt()
        * bes;
    let phase = Rational::from(delta * &fr.phase) - Rational::from((2 * n as i64 * fr.h as i64, fr.k as i64));
    let (c, s) = cis_pi(&phase, work);
    Ok((Float::with_val(prec, &amp * c), Float::with_val(prec, amp * s)))
}

/// The main term summed over frames with `Δ > 0` and `k ≤ big_n`.
pub fn main_term(spec: &ProductSpec, delta: &Rational, n: u64, big_n: u64, prec: u32) -> Result<MainTerm> {
    let x = check_preconditions(spec, delta, n)?;
    let frames = growing_frames(spec, big_n, prec)?;
    main_term_from_frames(&frames, delta, n, &x, prec)
}

pub fn main_term_from_frames(
    frames: &[GrowingFrame],
    delta: &Rational,
    n: u64,
    x: &Rational,
    prec: u32,
) -> Result<MainTerm> {
    let mut re = Float::new(prec + 16);
    let mut im = Float::new(prec + 16);
    for fr in frames {
        let (a, b) = frame_value(fr, delta, n, x, prec + 16)?;
        re += a;
        im += b;
    }
    Ok(MainTerm { re: Float::with_val(prec, re), im: Float::with_val(prec, im) })
}

/// Upper bound for `|E_{δ,N}(n)|`.
pub fn error_bound(spec: &ProductSpec, delta: &Rational, n: u64, big_n: u64, prec: u32) -> Result<Float> {
    check_preconditions(spec, delta, n)?;
    if big_n == 0 {
        return domain("N must be positive");
    }
    let work = prec + 32;
    let p = pi(work);
    let d = Float::with_val(work, delta);
    // exp((24πn + δπΩ)/(6N²))
    let shift = Rational::from(24 * n) + Rational::from(delta * spec.omega());
    let lead = (Float::with_val(work, &shift) * &p / (6 * big_n * big_n)).exp();
    let two_over = Float::with_val(work, 2) / (big_n + 1);
    let root2_over = Float::with_val(work, 2u32).sqrt() * &p / big_n;
    let mut total = Float::new(work);
    for cf in class_factors(spec, work) {
        let w = class_weight(spec, &cf.class, big_n);
        if w == 0 {
            continue;
        }
        let w = Float::with_val(work, &w);
        let growth = Float::with_val(work, &cf.class.delta) * &p / 12u32 + &cf.log_root;
        let base = Float::with_val(work, &growth * &d).exp();
        let poch = Float::with_val(work, &cf.log_poch * &d).exp();
        let inner = if cf.class.delta > 0 {
            Float::with_val(work, &two_over * (poch - 1u32)) + &root2_over
        } else {
            Float::with_val(work, &two_over * poch)
        };
        total += base * inner * w;
    }
    total *= lead;
    Ok(Float::with_val(prec, inflate(&total, work)))
}

/// `x (1 + 2^{−96}) + 2^{−96}`.
pub fn inflate(x: &Float, prec: u32) -> Float {
    let eps = Float::with_val(prec, 1) >> SLACK_BITS;
    Float::with_val(prec, x * Float::with_val(prec, 1 + &eps)) + eps
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertifiedSign {
    Positive,
    Negative,
    Undetermined,
}

impl fmt::Display for CertifiedSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertifiedSign::Positive => "+",
            CertifiedSign::Negative => "-",
            CertifiedSign::Undetermined => "undetermined",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Estimate {
    pub n: u64,
    pub delta: Rational,
    pub big_n: u64,
    pub main: Float,
    pub imag_residue: Float,
    pub bound: Float,
    pub sign_certified: CertifiedSign,
}

/// Main term, error bound and the sign they certify. A negative `δ` is
/// handled as the power `−δ` of the inverse product.
pub fn estimate_coefficient(spec: &ProductSpec, delta: &Rational, n: u64, prec: u32) -> Result<Estimate> {
    let (spec, d) = if *delta < 0 { (spec.inverse(), Rational::from(-delta)) } else { (spec.clone(), delta.clone()) };
    let big_n = default_n(&spec, &d, n)?;
    let m = main_term(&spec, &d, n, big_n, prec)?;
    let bound = error_bound(&spec, &d, n, big_n, prec)?;
    let sign_certified = if Float::with_val(prec, m.re.abs_ref()) > bound {
        if m.re > 0 {
            CertifiedSign::Positive
        } else {
            CertifiedSign::Negative
        }
    } else {
        CertifiedSign::Undetermined
    };
    Ok(Estimate { n, delta: delta.clone(), big_n, main: m.re, imag_residue: m.im, bound, sign_certified })
}
