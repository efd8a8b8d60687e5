use std::fmt;

use rug::Rational;

use super::pattern::{Sign, SignPattern};
use crate::qseries::{expand_rational_power, expand_real_power, sign_over_range, DeltaRange, ProductSpec, SignVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactVerdict {
    /// The sign is strict over the whole range.
    Strict,
    /// The right sign, with zero attained somewhere in the range.
    Weak,
    /// Identically zero where the pattern has `0`.
    Zero,
    Violation,
    /// The range bounding could not decide.
    Undetermined,
}

impl ExactVerdict {
    pub fn is_consistent(self) -> bool {
        matches!(self, ExactVerdict::Strict | ExactVerdict::Weak | ExactVerdict::Zero)
    }
}

impl fmt::Display for ExactVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExactVerdict::Strict => "strict",
            ExactVerdict::Weak => "weak",
            ExactVerdict::Zero => "zero",
            ExactVerdict::Violation => "violation",
            ExactVerdict::Undetermined => "undetermined",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactResult {
    pub n: u64,
    pub expected: Sign,
    pub observed: SignVerdict,
    pub verdict: ExactVerdict,
}

fn judge(expected: Sign, observed: SignVerdict, point: bool) -> ExactVerdict {
    use SignVerdict as V;
    match (expected, observed) {
        (_, V::Undetermined) => ExactVerdict::Undetermined,
        (Sign::Zero, V::Zero) => ExactVerdict::Zero,
        (Sign::Zero, _) => ExactVerdict::Violation,
        (Sign::Plus, V::Positive) | (Sign::Minus, V::Negative) => ExactVerdict::Strict,
        (Sign::Plus, V::NonNegative) | (Sign::Minus, V::NonPositive) => ExactVerdict::Weak,
        // A single vanishing value still satisfies the weak sign; a
        // polynomial vanishing on a whole interval does not.
        (_, V::Zero) if point => ExactVerdict::Weak,
        _ => ExactVerdict::Violation,
    }
}

fn point_verdict(v: &Rational) -> SignVerdict {
    match v.cmp0() {
        std::cmp::Ordering::Greater => SignVerdict::Positive,
        std::cmp::Ordering::Less => SignVerdict::Negative,
        std::cmp::Ordering::Equal => SignVerdict::Zero,
    }
}

/// Sign of every `c_δ(n)`, `0 ≤ n ≤ n_max`, against the pattern, rigorously
/// over the whole `δ`-range. A rational point uses the exact coefficients at
/// that `δ`; anything else uses the coefficient polynomials in `δ`.
pub fn verify_exact(spec: &ProductSpec, range: &DeltaRange, pattern: &SignPattern, n_max: u64) -> Vec<ExactResult> {
    let order = n_max as usize;
    let observed: Vec<SignVerdict> = match range.as_rational_point() {
        Some(d) => expand_rational_power(spec, d, order).iter().map(point_verdict).collect(),
        None => {
            let series = expand_real_power(spec, order);
            (0..=order).map(|n| sign_over_range(series.coeff(n), range)).collect()
        }
    };
    let point = range.is_point();
    observed
        .into_iter()
        .enumerate()
        .map(|(n, obs)| {
            let expected = pattern.at(n as u64);
            ExactResult { n: n as u64, expected, observed: obs, verdict: judge(expected, obs, point) }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::Endpoint;

    #[test]
    fn q12_vanishing_residues() {
        let spec = ProductSpec::preset("Q12").unwrap();
        let pat: SignPattern = "+-+0-+-+-0+-".parse().unwrap();
        let res = verify_exact(&spec, &DeltaRange::point(Rational::from(1)), &pat, 60);
        assert!(res.iter().all(|r| r.verdict.is_consistent()), "{:?}", res.iter().find(|r| !r.verdict.is_consistent()));
        for r in &res {
            assert_eq!(r.verdict == ExactVerdict::Zero, r.n % 6 == 3);
        }
    }

    #[test]
    fn q5_range_has_weak_entries() {
        let spec = ProductSpec::preset("Q5").unwrap();
        let range =
            DeltaRange::new(Endpoint::Exact(Rational::from(1)), Endpoint::parse("sqrt97m5over2").unwrap()).unwrap();
        let pat: SignPattern = "+-+--".parse().unwrap();
        let res = verify_exact(&spec, &range, &pat, 20);
        assert_eq!(res[0].verdict, ExactVerdict::Strict);
        assert_eq!(res[1].verdict, ExactVerdict::Strict);
        assert!(res.iter().all(|r| r.verdict.is_consistent()));
        assert!(res.iter().any(|r| r.verdict == ExactVerdict::Weak));
    }

    #[test]
    fn trivial_all_plus() {
        let spec = ProductSpec::preset("Q5").unwrap();
        let res = verify_exact(&spec, &DeltaRange::point(Rational::from(1)), &"+".parse().unwrap(), 0);
        assert_eq!(res.len(), 1);
        assert_eq!(res[0].verdict, ExactVerdict::Strict);
    }
}
