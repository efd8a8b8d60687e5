//! Per-class constants of the error bound and per-frame data of the main
//! term. Everything here is independent of `δ` and `n`.

use rug::{Float, Rational};

use super::transform::lifted_phase;
use crate::arith::{gcd, pi};
use crate::modular::{build_frame, classify_residue_pairs, lambda_pair, ResidueClass};
use crate::qseries::ProductSpec;
use crate::Result;

/// Upper bound for `−Σ_{j≥0} log(1 − a q^j)` with `a = e^{2πα}`,
/// `q = e^{2πβ}`, `α ≤ 0`, `β < 0` and `a < 1`.
///
/// The product is truncated once `a q^J < 2^{−prec/2}`; the tail is bounded by
/// `a q^J / ((1 − q)(1 − a q^J))` from `−log(1 − x) ≤ x/(1 − x)`.
pub fn pochhammer_log_bound(alpha: &Rational, beta: &Rational, prec: u32) -> Float {
    let work = prec + 32;
    let two_pi = pi(work) * 2u32;
    let a = Float::with_val(work, alpha * &two_pi).exp();
    let q = Float::with_val(work, beta * &two_pi).exp();
    let cutoff = Float::with_val(work, 1) >> (prec / 2);
    let mut x = a;
    let mut acc = Float::new(work);
    while x >= cutoff {
        let t = Float::with_val(work, -&x).ln_1p();
        acc -= t;
        x *= &q;
    }
    let one_q = Float::with_val(work, 1 - &q);
    let one_x = Float::with_val(work, 1 - &x);
    acc += x / (one_q * one_x);
    Float::with_val(prec, acc)
}

/// The `δ`-free factors of one residue class in the error bound:
/// `exp(δ·log_root)` is the product of `2^{uδ}` and `|1 − e^{2πi/n}|^{uδ}`
/// over `I0`, and `exp(δ·log_poch)` bounds the `q̂`-Pochhammer products.
#[derive(Clone, Debug)]
pub struct ClassFactors {
    pub class: ResidueClass,
    pub log_root: Float,
    pub log_poch: Float,
}

pub fn class_factors(spec: &ProductSpec, prec: u32) -> Vec<ClassFactors> {
    let c = classify_residue_pairs(spec);
    c.le0
        .into_iter()
        .chain(c.gt0)
        .filter(|cl| cl.is_admissible())
        .map(|class| {
            let work = prec + 16;
            let mut log_root = Float::new(work);
            let mut log_poch = Float::new(work);
            for f in spec.factors() {
                let d = gcd(f.n, class.kappa);
                let (_, star) = lambda_pair(f.m, f.n, class.varkappa, class.kappa);
                let d2n = Rational::from((d * d, f.n));
                let beta = -d2n.clone();
                let au = f.u.unsigned_abs();
                if star == 0 {
                    if f.u > 0 {
                        log_root += Float::with_val(work, 2).ln() * f.u;
                    } else {
                        let s = Float::with_val(work, pi(work) / f.n).sin() * 2u32;
                        log_root += s.ln() * f.u;
                    }
                    // (q̂2, q̂2; q̂2)
                    log_poch += pochhammer_log_bound(&beta, &beta, work) * au * 2u32;
                } else {
                    let a1 = -Rational::from(&star * &d2n);
                    let a2 = -Rational::from((1 - star) * &d2n);
                    log_poch += (pochhammer_log_bound(&a1, &beta, work) + pochhammer_log_bound(&a2, &beta, work)) * au;
                }
            }
            ClassFactors { class, log_root: Float::with_val(prec, log_root), log_poch: Float::with_val(prec, log_poch) }
        })
        .collect()
}

/// `Σ 1/k` over coprime `(h, k)` in the class with `k ≤ big_n`.
pub fn class_weight(spec: &ProductSpec, class: &ResidueClass, big_n: u64) -> Rational {
    let l = spec.modulus();
    let mut acc = Rational::new();
    let mut k = class.kappa;
    while k <= big_n {
        let count = (class.varkappa..k).step_by(class.kappa as usize).filter(|&h| gcd(h, k) == 1).count();
        if count > 0 {
            acc += Rational::from((count as u64, k));
        }
        k += l;
    }
    acc
}

/// One summand of the main term, stripped of `δ` and `n`.
#[derive(Clone, Debug)]
pub struct GrowingFrame {
    pub h: u64,
    pub k: u64,
    pub big_delta: Rational,
    /// `log|Π| / δ`.
    pub pi_log_modulus: Float,
    /// `φ` with the summand phase equal to `π(δφ − 2nh/k)`.
    pub phase: Rational,
}

/// All frames with `Δ > 0` and `k ≤ k_max`, ordered by `k` then `h`.
pub fn growing_frames(spec: &ProductSpec, k_max: u64, prec: u32) -> Result<Vec<GrowingFrame>> {
    let l = spec.modulus();
    let classes = classify_residue_pairs(spec).gt0;
    let mut out = Vec::new();
    for k in 1..=k_max {
        let kappa = (k - 1) % l + 1;
        for c in classes.iter().filter(|c| c.kappa == kappa && c.is_admissible()) {
            let mut h = c.varkappa;
            while h < k {
                if gcd(h, k) == 1 {
                    let fr = build_frame(spec, h, k)?;
                    out.push(GrowingFrame {
                        h,
                        k,
                        big_delta: c.delta.clone(),
                        pi_log_modulus: fr.pi_log_modulus(prec),
                        phase: lifted_phase(spec, &fr)? + fr.pi_phase(),
                    });
                }
                h += c.kappa;
            }
        }
    }
    out.sort_by_key(|f| (f.k, f.h));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_bound_is_above_truncation() {
        let alpha = Rational::from((-1, 5));
        let beta = Rational::from((-1, 2));
        let b = pochhammer_log_bound(&alpha, &beta, 128).to_f64();
        let mut direct = 0.0;
        for j in 0..200 {
            let x = (2.0 * std::f64::consts::PI * (-0.2 - 0.5 * j as f64)).exp();
            direct -= (-x).ln_1p();
        }
        // Agreement to f64 accuracy; the tail itself is below 2^-64.
        assert!((b / direct - 1.0).abs() < 1e-14, "{b} {direct}");
    }

    #[test]
    fn root_factor_bounds_every_frame() {
        use crate::modular::{coprime_pairs, residue_class};
        for name in ["Q5", "Q6", "Q8", "Q10", "Q12", "G3"] {
            for spec in [ProductSpec::preset(name).unwrap(), ProductSpec::preset(name).unwrap().inverse()] {
                let cfs = class_factors(&spec, 128);
                for (h, k) in coprime_pairs(60) {
                    let (a, b) = residue_class(&spec, h, k);
                    let cf = cfs.iter().find(|c| c.class.varkappa == a && c.class.kappa == b).unwrap();
                    let plm = build_frame(&spec, h, k).unwrap().pi_log_modulus(128);
                    assert!(plm <= Float::with_val(128, &cf.log_root + 1e-30), "{name} ({h},{k})");
                }
            }
        }
    }

    #[test]
    fn class_weights_count_coprime_frames() {
        let spec = ProductSpec::preset("Q5").unwrap();
        let c = classify_residue_pairs(&spec).gt0[0].clone();
        // k = 5: h = 2; k = 10: h = 7; k = 15: h = 2, 7.
        let w = class_weight(&spec, &c, 15);
        assert_eq!(w, Rational::from((1, 5)) + Rational::from((1, 10)) + Rational::from((2, 15)));
    }
}
