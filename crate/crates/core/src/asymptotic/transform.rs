//! Numerical check of the modular transformation of `G(q)^δ`:
//! `G(e^{2πih/k − 2πz/k²})^δ = e^{iπδφ} exp((δπ/12k)(Ωz/k + Δk/z)) Ĝ(h,k,z)^δ`.

use rug::{Float, Rational};

use crate::arith::{gcd, pi};
use crate::modular::{build_frame, ModularFrame};
use crate::qseries::{Factor, ProductSpec};
use crate::{domain, Result};

const MAX_TERMS: u64 = 2_000_000;

#[derive(Clone, Debug)]
struct Cx {
    re: Float,
    im: Float,
}

impl Cx {
    fn new(re: Float, im: Float) -> Self {
        Cx { re, im }
    }

    fn prec(&self) -> u32 {
        self.re.prec()
    }

    fn real(x: Float) -> Self {
        let p = x.prec();
        Cx { re: x, im: Float::new(p) }
    }

    fn add(&self, o: &Cx) -> Cx {
        let p = self.prec();
        Cx::new(Float::with_val(p, &self.re + &o.re), Float::with_val(p, &self.im + &o.im))
    }

    fn sub(&self, o: &Cx) -> Cx {
        let p = self.prec();
        Cx::new(Float::with_val(p, &self.re - &o.re), Float::with_val(p, &self.im - &o.im))
    }

    fn mul(&self, o: &Cx) -> Cx {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        Cx::new(re, im)
    }

    fn scale(&self, s: &Float) -> Cx {
        let p = self.prec();
        Cx::new(Float::with_val(p, &self.re * s), Float::with_val(p, &self.im * s))
    }

    fn recip(&self) -> Cx {
        let p = self.prec();
        let n = self.norm_sq();
        Cx::new(Float::with_val(p, &self.re / &n), Float::with_val(p, -&self.im) / &n)
    }

    fn norm_sq(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, &self.re * &self.re) + Float::with_val(p, &self.im * &self.im)
    }

    fn abs(&self) -> Float {
        self.norm_sq().sqrt()
    }

    fn exp(&self) -> Cx {
        let p = self.prec();
        let r = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Cx::new(Float::with_val(p, &r * c), r * s)
    }

    /// Principal logarithm.
    fn ln(&self) -> Cx {
        let p = self.prec();
        let m = Float::with_val(p, self.norm_sq().ln()) / 2u32;
        let a = Float::with_val(p, self.im.atan2_ref(&self.re));
        Cx::new(m, a)
    }

    /// Principal `Log(1 − self)`.
    fn ln_one_minus(&self) -> Cx {
        let p = self.prec();
        Cx::real(Float::with_val(p, 1)).sub(self).ln()
    }
}

/// Both sides of the logarithmic form of the identity at `δ = 1`: the
/// principal `Σ u Log(1 − q^a)` and `iπφ + (π/12k)(Ωz/k + Δk/z) + Σ u Σ_j Log(1 − ·)`
/// with the unlifted phase `φ = φ_F + φ_ω + φ_Θ`.
fn log_sides(spec: &ProductSpec, h: u64, k: u64, z_re: &Float, z_im: &Float, prec: u32) -> Result<(Cx, Cx)> {
    if *z_re <= 0 {
        return domain("transformation check needs Re z > 0");
    }
    let frame = build_frame(spec, h, k)?;
    let work = prec + 64;
    let p = pi(work);
    let two_pi = Float::with_val(work, &p * 2u32);
    let z = Cx::new(Float::with_val(work, z_re), Float::with_val(work, z_im));
    let zinv = z.recip();
    let eps = Float::with_val(work, 1) >> (prec + 16);

    let k2 = Float::with_val(work, k * k);
    let w = Cx::new(
        -Float::with_val(work, &two_pi * &z.re) / &k2,
        Float::with_val(work, &two_pi * h) / k - Float::with_val(work, &two_pi * &z.im) / &k2,
    );
    let decay = Float::with_val(work, -&w.re);
    let terms = Float::with_val(work, (prec + 24) as f64 * std::f64::consts::LN_2) / &decay;
    let terms = terms.to_f64().ceil() as u64 + 1;
    if terms > MAX_TERMS {
        return domain(format!("series would need {terms} terms; choose a larger Re z or smaller k"));
    }
    let e = spec.binomial_exponents(terms as usize);
    let mut lhs = Cx::real(Float::new(work));
    for (a, &ea) in e.iter().enumerate().skip(1) {
        if ea == 0 {
            continue;
        }
        let qa = w.scale(&Float::with_val(work, a)).exp();
        lhs = lhs.add(&qa.ln_one_minus().scale(&Float::with_val(work, ea)));
    }

    let phase = frame.factors.iter().fold(Rational::new(), |acc, x| acc + Rational::from(&x.phase * x.factor.u));
    let omega = Float::with_val(work, &spec.omega());
    let big_delta = Float::with_val(work, &frame.delta_hk);
    let mut rhs = z
        .scale(&Float::with_val(work, &omega / k))
        .add(&zinv.scale(&Float::with_val(work, &big_delta * k)))
        .scale(&(Float::with_val(work, &p) / (12 * k)))
        .add(&Cx::new(Float::new(work), Float::with_val(work, &phase * &p)));
    for x in &frame.factors {
        let f = x.factor;
        let kn = Rational::from(k * f.n);
        let arg1 = Rational::from((f.m * x.d) as i64 + x.lambda * (f.n * x.h_prime * x.d) as i64) / &kn;
        let re1 = Rational::from((f.m * x.d * h) as i64 - x.lambda * (x.d * x.d) as i64) / Rational::from(f.n);
        let q1 = zinv
            .scale(&Float::with_val(work, &re1 * &two_pi))
            .add(&Cx::new(Float::new(work), Float::with_val(work, &arg1 * &two_pi)))
            .exp();
        let q2 = Cx::new(Float::new(work), Float::with_val(work, Rational::from((x.h_prime * x.d, k)) * &two_pi))
            .sub(&zinv.scale(&Float::with_val(work, Rational::from((x.d * x.d, f.n)) * &two_pi)))
            .exp();
        let mut a = q1.clone();
        let mut b = q1.recip().mul(&q2);
        let mut acc = Cx::real(Float::new(work));
        let mut count = 0u64;
        loop {
            acc = acc.add(&a.ln_one_minus()).add(&b.ln_one_minus());
            a = a.mul(&q2);
            b = b.mul(&q2);
            count += 1;
            if a.abs() < eps && b.abs() < eps {
                break;
            }
            if count > MAX_TERMS {
                return domain("transformed product does not converge at this precision");
            }
        }
        rhs = rhs.add(&acc.scale(&Float::with_val(work, f.u)));
    }
    Ok((lhs, rhs))
}

/// Per factor, the integer `j` such that the principal `Σ Log(1 − q^a)` of
/// the unit-exponent factor equals the right side with phase `φ_i + 2j`.
///
/// Both sides are analytic on `Re z > 0` and agree at `δ = 1`, so their
/// difference is a constant in `2πiℤ`; it is read off at the point
/// `z = kd/√n` where `|q| = |q⁽²⁾|`. Only integer `δ` is blind to `j`.
pub fn branch_lifts(spec: &ProductSpec, h: u64, k: u64) -> Result<Vec<i64>> {
    const PREC: u32 = 48;
    let mut out = Vec::with_capacity(spec.factors().len());
    for f in spec.factors() {
        let single = ProductSpec::new(vec![Factor { u: 1, ..*f }])?;
        let d = gcd(f.n, k);
        let z = Float::with_val(PREC + 64, k * d) / Float::with_val(PREC + 64, f.n).sqrt();
        let (l, r) = log_sides(&single, h, k, &z, &Float::new(PREC + 64), PREC)?;
        let diff = l.sub(&r);
        let turns = Float::with_val(l.prec(), &diff.im / (pi(l.prec()) * 2u32));
        let j = turns.to_f64().round();
        if diff.re.to_f64().abs() > 1e-6 || (turns.to_f64() - j).abs() > 1e-6 {
            return domain(format!("no consistent branch for factor {}:{} at h={h}, k={k}", f.m, f.n));
        }
        out.push(j as i64);
    }
    Ok(out)
}

/// `Σ u (φ_i + 2j_i)`: the phase of the transformation factor on the branch
/// of the principal logarithm, so that `e^{iπδφ}` is right for every `δ`.
pub fn lifted_phase(spec: &ProductSpec, frame: &ModularFrame) -> Result<Rational> {
    let lifts = branch_lifts(spec, frame.h, frame.k)?;
    Ok(frame
        .factors
        .iter()
        .zip(lifts)
        .fold(Rational::new(), |acc, (x, j)| acc + Rational::from(&x.phase + 2 * j) * x.factor.u))
}

/// Relative disagreement of the two sides at `q = exp(2πih/k − 2πz/k²)`.
///
/// Needs `Re z > 0`, which makes both `|q|` and `|q⁽²⁾|` less than 1. Each
/// side is a principal-branch `exp(δ·Σ u Log(1 − ·))`, the right one with
/// the lifted phase.
pub fn transformation_check(
    spec: &ProductSpec,
    delta: &Rational,
    h: u64,
    k: u64,
    z_re: &Float,
    z_im: &Float,
    prec: u32,
) -> Result<Float> {
    let (lhs, rhs) = log_sides(spec, h, k, z_re, z_im, prec)?;
    let lifts = branch_lifts(spec, h, k)?;
    let shift = spec.factors().iter().zip(lifts).fold(0i64, |acc, (f, j)| acc + 2 * j * f.u);
    let work = lhs.prec();
    let rhs = rhs.add(&Cx::new(Float::new(work), pi(work) * shift));
    let d = Float::with_val(work, delta);
    let l = lhs.scale(&d).exp();
    let r = rhs.scale(&d).exp();
    Ok(Float::with_val(prec, l.sub(&r).abs() / l.abs()))
}
