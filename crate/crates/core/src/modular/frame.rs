//! Per-`(h, k)` circle-method data.

use rug::{Float, Rational};

use super::dedekind::dedekind_sum;
use crate::arith::{gcd, mod_inverse, pi};
use crate::qseries::{Factor, ProductSpec};
use crate::{domain, Result};

/// `(λ, λ*)` with `λ = ⌈mh / gcd(n,k)⌉` and `λ* = λ − mh/gcd(n,k) ∈ [0,1)`.
pub fn lambda_pair(m: u64, n: u64, h: u64, k: u64) -> (i64, Rational) {
    let d = gcd(n, k);
    let x = Rational::from((m * h, d));
    let lambda = x.clone().ceil();
    let star = Rational::from(&lambda - &x);
    (lambda.numer().to_i64().expect("λ fits in i64"), star)
}

/// `Υ(x)`: 0 at 0, `x` on `(0, 1/2]`, `1 − x` on `(1/2, 1)`.
pub fn upsilon(x: &Rational) -> Rational {
    if *x == 0 {
        Rational::new()
    } else if *x <= Rational::from((1, 2)) {
        x.clone()
    } else {
        Rational::from(1 - x)
    }
}

/// `Δ(h, k)` from `λ*` alone; no coprimality is needed.
pub fn residue_delta(spec: &ProductSpec, h: u64, k: u64) -> Rational {
    let mut acc = Rational::new();
    for f in spec.factors() {
        let d = gcd(f.n, k);
        let (_, star) = lambda_pair(f.m, f.n, h, k);
        let d2n = Rational::from((d * d, f.n));
        let sq = Rational::from(&star * &star);
        let term = 12 * d2n.clone() * (star - sq) - 2 * d2n;
        acc += term * f.u;
    }
    acc
}

/// The class `(ϰ, κ)` with `1 ≤ κ ≤ L`, `κ ≡ k (mod L)` and `ϰ ≡ h (mod κ)`.
pub fn residue_class(spec: &ProductSpec, h: u64, k: u64) -> (u64, u64) {
    let l = spec.modulus();
    let kappa = (k - 1) % l + 1;
    (h % kappa, kappa)
}

/// Data of one factor in a frame.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorFrame {
    pub factor: Factor,
    pub d: u64,
    pub lambda: i64,
    pub lambda_star: Rational,
    pub h_prime: u64,
    pub b: i64,
    /// `r` with `q̂⁽¹⁾ = exp(2πr)`.
    pub qhat1: Rational,
    /// `r` with `q̂⁽²⁾ = exp(2πr)`.
    pub qhat2: Rational,
    /// For `λ* = 0`: `θ ∈ (0, 1)` with `ζ = exp(2πiθ)` the root of unity in `Π`.
    pub zeta: Option<Rational>,
    /// Unit-exponent phase `1/2 + λ − 2s(hn/d, k/d) + θ-part`, correct modulo 2.
    pub phase: Rational,
}

/// All `(h, k)`-dependent data of one summand. Phases are rational
/// multiples of `π`; the `δ`-th powers multiply them by `δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularFrame {
    pub h: u64,
    pub k: u64,
    pub factors: Vec<FactorFrame>,
    pub i0: Vec<usize>,
    pub i1: Vec<usize>,
    pub i0_plus: Vec<usize>,
    pub i0_minus: Vec<usize>,
    pub delta_hk: Rational,
    pub omega_phase: Rational,
    pub theta_phase: Rational,
    pub front_phase: Rational,
}

pub fn build_frame(spec: &ProductSpec, h: u64, k: u64) -> Result<ModularFrame> {
    if k == 0 || h >= k {
        return domain(format!("frame needs 0 <= h < k, got h={h}, k={k}"));
    }
    if gcd(h, k) != 1 {
        return domain(format!("frame needs gcd(h,k) = 1, got h={h}, k={k}"));
    }
    let mut factors = Vec::with_capacity(spec.factors().len());
    let (mut i0, mut i1, mut i0_plus, mut i0_minus) = (vec![], vec![], vec![], vec![]);
    let mut omega_phase = Rational::new();
    let mut theta_phase = Rational::new();
    let mut front_phase = Rational::new();
    for (idx, f) in spec.factors().iter().enumerate() {
        let d = gcd(f.n, k);
        let kd = k / d;
        let nd = f.n / d;
        let (lambda, lambda_star) = lambda_pair(f.m, f.n, h, k);
        let hn = (h as i128 * nd as i128 % kd as i128) as i64;
        let h_prime = if kd == 1 {
            0
        } else {
            let inv = mod_inverse(hn, kd as i64).expect("h n/d is a unit mod k/d");
            (-inv).rem_euclid(kd as i64) as u64
        };
        let num = h_prime as i128 * h as i128 * nd as i128 + 1;
        debug_assert_eq!(num % kd as i128, 0);
        let b = (num / kd as i128) as i64;
        let qhat1 = -Rational::from(&lambda_star * Rational::from((d * d, f.n)));
        let qhat2 = -Rational::from((d * d, f.n));
        let zeta = if lambda_star == 0 {
            let t = Rational::from((
                f.m as i128 * d as i128 + lambda as i128 * f.n as i128 * h_prime as i128 * d as i128,
                k as i128 * f.n as i128,
            ));
            let frac = Rational::from(&t - t.clone().floor());
            if frac == 0 {
                return domain(format!("root of unity equals 1 at h={h}, k={k}, factor {idx}"));
            }
            Some(frac)
        } else {
            None
        };
        if zeta.is_some() {
            i0.push(idx);
            if f.u > 0 {
                i0_plus.push(idx);
            } else {
                i0_minus.push(idx);
            }
        } else {
            i1.push(idx);
        }
        let u = Rational::from(f.u);
        let s = dedekind_sum((f.n / d * h) as i64, kd as i64)?;
        let kn = Rational::from(k * f.n);
        let md = Rational::from(f.m * d);
        let lam = Rational::from(lambda);
        let th = Rational::from((f.m * h, k)) - Rational::from(&md / &kn)
            + 2 * Rational::from(&lambda_star * &md) / &kn
            + (Rational::from(&lam * &lam) - &lam) * Rational::from((h_prime * d, k));
        let front = Rational::from((1, 2)) + &lam;
        let phase = Rational::from(&front - 2 * s.clone()) + &th;
        omega_phase -= 2 * Rational::from(&u * &s);
        theta_phase += th * &u;
        front_phase += front * &u;
        factors.push(FactorFrame { factor: *f, d, lambda, lambda_star, h_prime, b, qhat1, qhat2, zeta, phase });
    }
    Ok(ModularFrame {
        h,
        k,
        factors,
        i0,
        i1,
        i0_plus,
        i0_minus,
        delta_hk: residue_delta(spec, h, k),
        omega_phase,
        theta_phase,
        front_phase,
    })
}

impl ModularFrame {
    /// `Σ_{I0} u (θ − 1/2)`, so that `arg Π = πδ·` this value (principal branch).
    pub fn pi_phase(&self) -> Rational {
        self.i0.iter().fold(Rational::new(), |acc, &i| {
            let f = &self.factors[i];
            let t = Rational::from(f.zeta.as_ref().unwrap() - Rational::from((1, 2)));
            acc + t * f.factor.u
        })
    }

    /// `Σ_{I0} u log(2 sin πθ)`, so that `|Π| = exp(δ·` this value`)`.
    pub fn pi_log_modulus(&self, prec: u32) -> Float {
        let work = prec + 16;
        let mut acc = Float::new(work);
        for &i in &self.i0 {
            let f = &self.factors[i];
            let x = Float::with_val(work, f.zeta.as_ref().unwrap()) * pi(work);
            let s = Float::with_val(work, x.sin() * 2u32).ln();
            acc += s * f.factor.u;
        }
        Float::with_val(prec, acc)
    }

    /// `φ_F + φ_ω + φ_Θ`. Only its class modulo 2 is meaningful; for
    /// non-integer `δ` the branch has to be lifted (see `asymptotic::lifted_phase`).
    pub fn literal_phase(&self) -> Rational {
        Rational::from(&self.front_phase + &self.omega_phase) + &self.theta_phase
    }

    /// `min_i Υ(λ*_i) d_i² / n_i`, the left side of the growth condition.
    pub fn upsilon_min(&self) -> Rational {
        self.factors
            .iter()
            .map(|f| upsilon(&f.lambda_star) * Rational::from((f.d * f.d, f.factor.n)))
            .min()
            .unwrap_or_default()
    }
}

/// Every coprime `(h, k)` with `0 ≤ h < k ≤ n_max`, ordered by `k` then `h`.
pub fn coprime_pairs(n_max: u64) -> impl Iterator<Item = (u64, u64)> {
    (1..=n_max).flat_map(|k| (0..k).filter(move |&h| gcd(h, k) == 1).map(move |h| (h, k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(name: &str) -> ProductSpec {
        ProductSpec::preset(name).unwrap()
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_pair(1, 5, 2, 5), (1, Rational::from((3, 5))));
        assert_eq!(lambda_pair(3, 7, 0, 4), (0, Rational::new()));
        assert_eq!(lambda_pair(2, 5, 2, 5), (1, Rational::from((1, 5))));
    }

    #[test]
    fn q5_frame_two_five() {
        let f = build_frame(&q("Q5"), 2, 5).unwrap();
        assert_eq!(f.delta_hk, Rational::from((24, 5)));
        assert!(f.i0.is_empty());
        assert_eq!(f.upsilon_min(), 1);
    }

    #[test]
    fn trivial_frame() {
        for name in ["Q5", "Q8", "Q12"] {
            let spec = q(name);
            let f = build_frame(&spec, 0, 1).unwrap();
            assert!(f.factors.iter().all(|x| x.lambda_star == 0));
            assert_eq!(f.i0.len(), spec.factors().len());
            let expect = spec.factors().iter().fold(Rational::new(), |a, x| a - Rational::from((2 * x.u, x.n as i64)));
            assert_eq!(f.delta_hk, expect);
        }
    }

    #[test]
    fn frame_invariants() {
        for name in ["Q5", "Q6", "Q8", "Q10", "Q12", "G3"] {
            let spec = q(name);
            for (h, k) in coprime_pairs(40) {
                let fr = build_frame(&spec, h, k).unwrap();
                for x in &fr.factors {
                    let f = x.factor;
                    let kd = k / x.d;
                    assert!(x.h_prime < kd.max(1));
                    let lhs = x.h_prime as i128 * h as i128 * (f.n / x.d) as i128 + 1;
                    assert_eq!(lhs, x.b as i128 * kd as i128);
                    assert!(x.lambda_star >= 0 && x.lambda_star < 1);
                    if x.lambda_star == 0 {
                        assert_eq!(f.m % x.d, 0);
                        assert_eq!(x.qhat1, 0);
                    } else {
                        assert!(x.qhat1 < 0);
                    }
                }
                assert_eq!(fr.delta_hk, {
                    let (a, b) = residue_class(&spec, h, k);
                    residue_delta(&spec, a, b)
                });
            }
        }
        assert!(build_frame(&q("Q5"), 2, 4).is_err());
        assert!(build_frame(&q("Q5"), 5, 5).is_err());
    }
}
