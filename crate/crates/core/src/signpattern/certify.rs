use std::fmt;

use rug::{Integer, Rational};

use super::envelope::{asymptotic_certificate, AsymptoticCertificate};
use super::exact::{verify_exact, ExactResult, ExactVerdict};
use super::pattern::SignPattern;
use crate::qseries::{
    expand_real_power, isolate_real_roots, range_over_delta_range, DeltaRange, ProductSpec, RationalInterval,
};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Proven,
    /// The first `n` whose exact sign contradicts the pattern.
    Refuted(u64),
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Proven => f.write_str("proven"),
            Status::Refuted(n) => write!(f, "refuted({n})"),
            Status::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub spec: ProductSpec,
    pub delta_range: DeltaRange,
    pub pattern: SignPattern,
    /// Whether the analysis ran on the inverse product with `δ′ = −δ`.
    pub inverted: bool,
    /// Exact verification covers `0 ≤ n < exact_upto`.
    pub exact_upto: u64,
    pub exact_results: Vec<ExactResult>,
    pub asymptotic: Option<AsymptoticCertificate>,
    pub status: Status,
    pub diagnostics: Vec<String>,
}

impl Certificate {
    pub fn weak_points(&self) -> Vec<u64> {
        self.exact_results.iter().filter(|r| r.verdict == ExactVerdict::Weak).map(|r| r.n).collect()
    }
}

/// Exact check below `n₀` plus the asymptotic certificate from `n₀` on.
///
/// `thresholds` are the `n₀` to try per level (see
/// [`asymptotic_certificate`]); empty means search. A negative range is
/// rewritten as the inverse product with `δ′ = −δ`.
pub fn certify(
    spec: &ProductSpec,
    range: &DeltaRange,
    pattern: &SignPattern,
    thresholds: &[u64],
    prec: u32,
) -> Certificate {
    let mut diagnostics = Vec::new();
    let (work_spec, work_range, inverted) =
        if range.is_negative() { (spec.inverse(), range.neg(), true) } else { (spec.clone(), range.clone(), false) };
    let asymptotic = if work_range.is_positive() {
        match asymptotic_certificate(&work_spec, &work_range, pattern, thresholds, prec) {
            Ok(a) => {
                diagnostics.extend(a.notes.iter().cloned());
                Some(a)
            }
            Err(e) => {
                diagnostics.push(format!("asymptotic stage: {e}"));
                None
            }
        }
    } else {
        diagnostics.push("the δ-range must not contain 0".into());
        None
    };
    let asym_ok = asymptotic.as_ref().is_some_and(|a| a.success);
    let exact_upto = match &asymptotic {
        Some(a) if a.success => a.n0(),
        _ => thresholds.iter().copied().max().unwrap_or(200),
    };
    let exact_results =
        if exact_upto > 0 { verify_exact(&work_spec, &work_range, pattern, exact_upto - 1) } else { Vec::new() };
    let violation = exact_results.iter().find(|r| r.verdict == ExactVerdict::Violation).map(|r| r.n);
    let undetermined: Vec<u64> =
        exact_results.iter().filter(|r| r.verdict == ExactVerdict::Undetermined).map(|r| r.n).collect();
    if !undetermined.is_empty() {
        diagnostics.push(format!("exact stage undetermined at n = {undetermined:?}"));
    }
    let status = match violation {
        Some(n) => Status::Refuted(n),
        None if asym_ok && undetermined.is_empty() => Status::Proven,
        None => Status::Inconclusive,
    };
    Certificate {
        spec: spec.clone(),
        delta_range: range.clone(),
        pattern: pattern.clone(),
        inverted,
        exact_upto,
        exact_results,
        asymptotic,
        status,
        diagnostics,
    }
}

/// Brackets of width at most `width` around the real roots of `c_δ(n)` as a
/// polynomial in `δ`, within `search`.
pub fn critical_delta(
    spec: &ProductSpec,
    n: u64,
    search: &RationalInterval,
    width: &Rational,
) -> Result<Vec<RationalInterval>> {
    if n == 0 {
        return crate::domain("c_δ(0) = 1 has no roots");
    }
    let series = expand_real_power(spec, n as usize);
    isolate_real_roots(series.coeff(n as usize), search, width)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub n: u64,
    pub lo: Rational,
    pub hi: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    /// Rounded away from the interior; the rows stay rigorous enclosures.
    Outward,
    /// Tight enclosures rounded to the nearest displayed value, as printed
    /// tables usually are. Not rigorous.
    Nearest,
}

fn round_to(x: &Rational, scale: &Integer, mode: Rounding, up: bool) -> Rational {
    let scaled = Rational::from(x * scale);
    let r = match mode {
        Rounding::Outward if up => scaled.ceil(),
        Rounding::Outward => scaled.floor(),
        Rounding::Nearest => scaled.round(),
    };
    r / scale
}

/// Ranges of `c_δ(n)` over the `δ`-range for `0 ≤ n ≤ n_max`, rounded to
/// `decimals` places.
pub fn table_ranges(
    spec: &ProductSpec,
    range: &DeltaRange,
    n_max: u64,
    decimals: u32,
    rounding: Rounding,
) -> Vec<TableRow> {
    let scale = Integer::from(Integer::u_pow_u(10, decimals));
    let extra = if rounding == Rounding::Nearest { 10_000 } else { 10 };
    let tol = Rational::from((1, Integer::from(&scale * extra)));
    let series = expand_real_power(spec, n_max as usize);
    (0..=n_max)
        .map(|n| {
            let iv = range_over_delta_range(series.coeff(n as usize), range, &tol);
            let lo = round_to(iv.lo(), &scale, rounding, false);
            let hi = round_to(iv.hi(), &scale, rounding, true);
            TableRow { n, lo, hi }
        })
        .collect()
}
