//! Residue classes `(ϰ, κ)` and the growth condition.

use rug::Rational;

use super::frame::{lambda_pair, residue_delta, upsilon};
use crate::arith::gcd;
use crate::qseries::ProductSpec;
use crate::{domain, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueClass {
    pub varkappa: u64,
    pub kappa: u64,
    pub delta: Rational,
    /// `L`, the modulus of `k`.
    pub modulus: u64,
}

impl ResidueClass {
    /// Whether the class holds any coprime `(h, k)`; otherwise it contributes
    /// no summands. A prime dividing `gcd(ϰ, κ)` divides every `h`, and it
    /// divides every `k ≡ κ (mod L)` exactly when it also divides `L`.
    pub fn is_admissible(&self) -> bool {
        gcd(gcd(self.varkappa, self.kappa), self.modulus) == 1
    }

    /// Least `k ≡ κ (mod L)` with a coprime `h ≡ ϰ (mod κ)` below it.
    pub fn least_modulus(&self) -> Option<u64> {
        if !self.is_admissible() {
            return None;
        }
        let mut k = self.kappa;
        loop {
            if (self.varkappa..k).step_by(self.kappa as usize).any(|h| gcd(h, k) == 1) {
                return Some(k);
            }
            k += self.modulus;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub le0: Vec<ResidueClass>,
    pub gt0: Vec<ResidueClass>,
}

impl Classification {
    pub fn gt0_pairs(&self) -> Vec<(u64, u64)> {
        self.gt0.iter().map(|c| (c.varkappa, c.kappa)).collect()
    }
}

/// Splits all `1 ≤ κ ≤ L`, `0 ≤ ϰ < κ` by the sign of `Δ(ϰ, κ)`.
pub fn classify_residue_pairs(spec: &ProductSpec) -> Classification {
    let l = spec.modulus();
    let mut out = Classification { le0: Vec::new(), gt0: Vec::new() };
    for kappa in 1..=l {
        for varkappa in 0..kappa {
            let delta = residue_delta(spec, varkappa, kappa);
            let class = ResidueClass { varkappa, kappa, delta, modulus: l };
            if class.delta > 0 {
                out.gt0.push(class);
            } else {
                out.le0.push(class);
            }
        }
    }
    out
}

fn upsilon_min(spec: &ProductSpec, h: u64, k: u64) -> Rational {
    spec.factors()
        .iter()
        .map(|f| {
            let d = gcd(f.n, k);
            upsilon(&lambda_pair(f.m, f.n, h, k).1) * Rational::from((d * d, f.n))
        })
        .min()
        .unwrap_or_default()
}

/// `min_i Υ(λ*_i) d_i²/n_i ≥ δΔ/24` on every class in `ℒ_{>0}`. For a
/// `δ`-range pass its upper endpoint. Fails with the first violating class.
pub fn check_growth_condition(spec: &ProductSpec, delta: &Rational) -> Result<()> {
    if *delta <= 0 {
        return domain("growth condition needs delta > 0");
    }
    for c in classify_residue_pairs(spec).gt0 {
        let rhs = Rational::from(delta * &c.delta) / 24;
        if upsilon_min(spec, c.varkappa, c.kappa) < rhs {
            return Err(Error::GrowthCondition(c.varkappa, c.kappa));
        }
    }
    Ok(())
}

/// Largest `δ` for which the growth condition holds, or `None` if it holds
/// for every `δ > 0`.
pub fn growth_limit(spec: &ProductSpec) -> Option<Rational> {
    classify_residue_pairs(spec).gt0.iter().map(|c| 24 * upsilon_min(spec, c.varkappa, c.kappa) / &c.delta).min()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRatio {
    /// `Δ/k²`, the square of the maximal `√Δ/k`.
    pub value: Rational,
    /// Attaining `(ϰ, κ, k)`.
    pub witnesses: Vec<(u64, u64, u64)>,
}

/// Maximum of `Δ(ϰ,κ)/k²` over `ℒ_{>0}`, where `k` is the least modulus of
/// the class that carries a coprime `h`. Classes without coprime frames are
/// skipped.
pub fn max_growth_ratio(spec: &ProductSpec) -> Result<GrowthRatio> {
    let mut best: Option<GrowthRatio> = None;
    for c in classify_residue_pairs(spec).gt0 {
        let Some(k) = c.least_modulus() else { continue };
        let v = Rational::from(&c.delta / (k * k));
        let w = (c.varkappa, c.kappa, k);
        match &mut best {
            Some(b) if b.value == v => b.witnesses.push(w),
            Some(b) if b.value > v => {}
            _ => best = Some(GrowthRatio { value: v, witnesses: vec![w] }),
        }
    }
    best.ok_or_else(|| Error::Domain("no exponential main term: the set of growing classes is empty".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(name: &str) -> ProductSpec {
        ProductSpec::preset(name).unwrap()
    }

    #[test]
    fn growing_classes() {
        assert_eq!(classify_residue_pairs(&q("Q5")).gt0_pairs(), vec![(2, 5), (3, 5)]);
        let mut q6 = classify_residue_pairs(&q("Q6")).gt0_pairs();
        q6.sort();
        assert_eq!(q6, vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 6), (3, 4), (3, 6), (4, 6)]);
        assert_eq!(classify_residue_pairs(&q("Q8")).gt0_pairs(), vec![(3, 8), (5, 8)]);
        // (2,5), (3,5), (4,10), (6,10) also have positive Δ, though smaller.
        assert_eq!(
            classify_residue_pairs(&q("Q10")).gt0_pairs(),
            vec![(2, 5), (3, 5), (3, 10), (4, 10), (6, 10), (7, 10)]
        );
        assert_eq!(classify_residue_pairs(&q("Q12")).gt0_pairs(), vec![(5, 12), (7, 12)]);
        assert_eq!(classify_residue_pairs(&q("Q5").inverse()).gt0_pairs(), vec![(1, 5), (4, 5)]);
        assert_eq!(classify_residue_pairs(&q("Q12").inverse()).gt0_pairs(), vec![(1, 12), (11, 12)]);
    }

    #[test]
    fn admissibility() {
        let c = classify_residue_pairs(&q("Q5"));
        let zero_two = c.le0.iter().find(|c| (c.varkappa, c.kappa) == (0, 2)).unwrap();
        // (2, 7) is coprime although gcd(0, 2) = 2.
        assert!(zero_two.is_admissible());
        assert_eq!(zero_two.least_modulus(), Some(7));
        let c = classify_residue_pairs(&q("Q6"));
        let three_six = c.gt0.iter().find(|c| (c.varkappa, c.kappa) == (3, 6)).unwrap();
        assert!(!three_six.is_admissible());
        assert_eq!(three_six.least_modulus(), None);
    }

    #[test]
    fn partition_covers_all_pairs() {
        let c = classify_residue_pairs(&q("Q10"));
        assert_eq!(c.le0.len() + c.gt0.len(), 10 * 11 / 2);
    }

    #[test]
    fn growth_condition() {
        assert!(check_growth_condition(&q("Q5"), &Rational::from(5)).is_ok());
        assert!(check_growth_condition(&q("Q5"), &Rational::from((51, 10))).is_err());
        assert!(check_growth_condition(&q("Q5"), &Rational::from((1, 1000))).is_ok());
        assert!(check_growth_condition(&q("Q12"), &Rational::from(1)).is_ok());
        assert!(matches!(check_growth_condition(&q("Q12"), &Rational::from(2)), Err(Error::GrowthCondition(..))));
        assert!(check_growth_condition(&q("Q5"), &Rational::new()).is_err());
        assert_eq!(growth_limit(&q("Q5")), Some(Rational::from(5)));
    }

    #[test]
    fn maximal_ratio() {
        let r = max_growth_ratio(&q("Q5")).unwrap();
        assert_eq!(r.value, Rational::from((24, 125)));
        assert_eq!(r.witnesses, vec![(2, 5, 5), (3, 5, 5)]);
        let r = max_growth_ratio(&q("Q12")).unwrap();
        assert_eq!(r.value, Rational::from((1, 6)));
        assert_eq!(r.witnesses, vec![(5, 12, 12), (7, 12, 12)]);
        assert_eq!(max_growth_ratio(&q("Q10")).unwrap().value, Rational::from((18, 125)));
        assert_eq!(max_growth_ratio(&q("Q8")).unwrap().value, Rational::from((3, 16)));
        assert!(max_growth_ratio(&ProductSpec::default()).is_err());
    }
}
