//! The modified Bessel function `I₋₁ = I₁`, the sum bounds built from it and
//! the monotone ratios `M` and `M̂`.

use rug::Float;

use crate::arith::euler_gamma;
use crate::{domain, Result};

/// `I₋₁(z) = Σ_{n≥0} (z/2)^{2n+1} / (n!(n+1)!)` for `z ≥ 0`.
///
/// All terms are positive, so summing in `prec + guard` bits until the term
/// drops below `2^{-prec-8}` of the running sum is stable.
pub fn bessel_i1(z: &Float, prec: u32) -> Result<Float> {
    if z.is_sign_negative() && !z.is_zero() {
        return domain("bessel_i1 needs z >= 0");
    }
    if z.is_nan() {
        return domain("bessel_i1 of NaN");
    }
    if z.is_zero() {
        return Ok(Float::new(prec));
    }
    let guard = 32 + (z.to_f64().max(1.0).log2() as u32) * 2;
    let work = prec + guard;
    let half = Float::with_val(work, z / 2u32);
    let sq = Float::with_val(work, &half * &half);
    let mut term = half.clone();
    let mut sum = half;
    let scale = Float::with_val(work, 1) << (prec + 8);
    let mut n = 0u32;
    loop {
        n += 1;
        term *= &sq;
        term /= n;
        term /= n + 1;
        sum += &term;
        if Float::with_val(work, &term * &scale) < sum && Float::with_val(work, &sq / ((n + 1) * (n + 2))) < 0.5 {
            break;
        }
    }
    Ok(Float::with_val(prec, sum))
}

/// `I₀(z) = Σ_{n≥0} (z/2)^{2n} / n!²` for `z ≥ 0`.
pub fn bessel_i0(z: &Float, prec: u32) -> Result<Float> {
    if z.is_nan() || (z.is_sign_negative() && !z.is_zero()) {
        return domain("bessel_i0 needs z >= 0");
    }
    let guard = 32 + (z.to_f64().max(1.0).log2() as u32) * 2;
    let work = prec + guard;
    let half = Float::with_val(work, z / 2u32);
    let sq = Float::with_val(work, &half * &half);
    let mut term = Float::with_val(work, 1);
    let mut sum = Float::with_val(work, 1);
    let scale = Float::with_val(work, 1) << (prec + 8);
    let mut n = 0u32;
    loop {
        n += 1;
        term *= &sq;
        term /= n;
        term /= n;
        sum += &term;
        if Float::with_val(work, &term * &scale) < sum && Float::with_val(work, &sq / ((n + 1) * (n + 1))) < 0.5 {
            break;
        }
    }
    Ok(Float::with_val(prec, sum))
}

/// `g(t) = t I₁'(t) / I₁(t) = t I₀(t)/I₁(t) − 1` for `t > 0`. It increases
/// from 1, so `I₁(at)/I₁(bt)` decreases in `t` whenever `0 ≤ a < b`.
pub fn i1_log_derivative(t: &Float, prec: u32) -> Result<Float> {
    if *t <= 0 {
        return domain("i1_log_derivative needs t > 0");
    }
    let work = prec + 16;
    let r = Float::with_val(work, bessel_i0(t, work)? / bessel_i1(t, work)?);
    Ok(Float::with_val(prec, r * t - 1u32))
}

/// Convenience wrapper for `f64` arguments.
pub fn bessel_i1_f64(z: f64, prec: u32) -> Result<Float> {
    bessel_i1(&Float::with_val(prec, z), prec)
}

/// Upper bound for `Σ_{j=j0}^{y} I₋₁(2x/j)`, valid for `j0 ≥ 2`:
/// `x(log y + γ + 1/(2y) − H_{j0−1}) + j0 (I₋₁(2x/j0) − x/j0)`.
///
/// The harmonic part uses `H_y ≤ log y + γ + 1/(2y)`; the rest uses that
/// `I₋₁(w) − w/2` has only powers `≥ 3`, so its terms shrink like `(j0/j)³`
/// and `j0³ Σ_{j≥j0} j^{-3} ≤ 1 + j0/2 ≤ j0`.
pub fn bessel_sum_bound_from(x: &Float, y: u64, j0: u64, prec: u32) -> Result<Float> {
    if j0 < 2 {
        return domain("bessel sum bound needs start >= 2");
    }
    if y <= j0 {
        return domain(format!("bessel sum bound needs y > {j0}, got y = {y}"));
    }
    if *x <= 0 {
        return domain("bessel sum bound needs x > 0");
    }
    let work = prec + 16;
    let yf = Float::with_val(work, y);
    let mut harm = Float::new(work);
    for j in 1..j0 {
        harm += Float::with_val(work, 1) / j;
    }
    let lead = Float::with_val(work, yf.clone().ln()) + euler_gamma(work) + Float::with_val(work, 0.5) / &yf - harm;
    let w = Float::with_val(work, x * 2u32) / j0;
    let i = bessel_i1(&w, work)?;
    let tail = (i - Float::with_val(work, x / j0)) * j0;
    Ok(Float::with_val(prec, lead * x + tail))
}

/// The two-start and three-start forms:
/// `x log y + 2 I₋₁(x) − (2 − γ − 1/(2y)) x` and
/// `x log y + 3 I₋₁(2x/3) − (5/2 − γ − 1/(2y)) x`.
pub fn bessel_sum_bound(x: &Float, y: u64, start: u64, prec: u32) -> Result<Float> {
    if start != 2 && start != 3 {
        return domain("bessel_sum_bound start must be 2 or 3");
    }
    bessel_sum_bound_from(x, y, start, prec)
}

/// `M(s, t) = (t log t + 2 I₋₁(t) + s t) / I₋₁(2t)`, decreasing for `t ≥ 3`.
pub fn ratio_m(s: &Float, t: &Float, prec: u32) -> Result<Float> {
    if *t < 3 {
        return domain("ratio_M is only asserted monotone for t >= 3");
    }
    let work = prec + 16;
    let tl = Float::with_val(work, t * Float::with_val(work, t.ln_ref()));
    let num = tl + bessel_i1(t, work)? * 2u32 + Float::with_val(work, s * t);
    let den = bessel_i1(&Float::with_val(work, t * 2u32), work)?;
    Ok(Float::with_val(prec, num / den))
}

/// `M̂(s, t) = (t log t + 3 I₋₁(2t/3) + s t) / I₋₁(t)`, decreasing for `t ≥ 5`.
pub fn ratio_mhat(s: &Float, t: &Float, prec: u32) -> Result<Float> {
    if *t < 5 {
        return domain("ratio_Mhat is only asserted monotone for t >= 5");
    }
    let work = prec + 16;
    let tl = Float::with_val(work, t * Float::with_val(work, t.ln_ref()));
    let two_thirds = Float::with_val(work, t * 2u32) / 3u32;
    let num = tl + bessel_i1(&two_thirds, work)? * 3u32 + Float::with_val(work, s * t);
    let den = bessel_i1(t, work)?;
    Ok(Float::with_val(prec, num / den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    fn f(x: f64) -> Float {
        Float::with_val(192, x)
    }

    #[test]
    fn bessel_values() {
        assert!(bessel_i1(&f(0.0), 192).unwrap().is_zero());
        // Exact partial sum at z = 2: Σ 1/(n!(n+1)!).
        let mut exact = Rational::new();
        let mut fact = rug::Integer::from(1);
        for n in 0..40u32 {
            let next = rug::Integer::from(&fact * (n + 1));
            exact += Rational::from((rug::Integer::from(1), rug::Integer::from(&fact * &next)));
            fact = next;
        }
        let v = bessel_i1(&f(2.0), 192).unwrap();
        let diff = Float::with_val(192, &v - Float::with_val(192, &exact)).abs();
        assert!(diff < 1e-50, "{diff}");
        let big = bessel_i1(&f(50.0), 192).unwrap().to_f64();
        let approx = 50f64.exp() / (2.0 * std::f64::consts::PI * 50.0).sqrt();
        assert!((big / approx - 1.0).abs() < 0.02);
        assert!(bessel_i1(&f(-1.0), 192).is_err());
    }

    #[test]
    fn log_derivative_increases() {
        let g1 = i1_log_derivative(&f(1.0), 192).unwrap().to_f64();
        let g5 = i1_log_derivative(&f(5.0), 192).unwrap().to_f64();
        let g40 = i1_log_derivative(&f(40.0), 192).unwrap().to_f64();
        assert!(1.0 < g1 && g1 < g5 && g5 < g40);
        // Large-t behaviour: g(t) ≈ t − 1/2.
        assert!((g40 - 39.5).abs() < 0.05, "{g40}");
        // I₀(1) = 1.2660658777520082
        assert!((bessel_i0(&f(1.0), 192).unwrap().to_f64() - 1.2660658777520082).abs() < 1e-15);
    }

    #[test]
    fn sum_bounds() {
        for start in [2u64, 3] {
            let b = bessel_sum_bound(&f(5.0), 10, start, 192).unwrap();
            let mut direct = Float::new(192);
            for k in start..=10 {
                direct += bessel_i1(&f(10.0 / k as f64), 192).unwrap();
            }
            assert!(b >= direct);
        }
        assert!(bessel_sum_bound(&f(5.0), 2, 2, 192).is_err());
        assert!(bessel_sum_bound(&f(5.0), 10, 4, 192).is_err());
        assert!(bessel_sum_bound(&f(1e-9), 10, 2, 192).unwrap() < 1e-7);
    }

    #[test]
    fn monotone_ratios() {
        let one = f(1.0);
        let m3 = ratio_m(&one, &f(3.0), 192).unwrap();
        let m4 = ratio_m(&one, &f(4.0), 192).unwrap();
        let m10 = ratio_m(&one, &f(10.0), 192).unwrap();
        assert!(m3 > m4 && m4 > m10);
        let s = f(25564.0);
        assert!(ratio_mhat(&s, &f(5.0), 192).unwrap() > ratio_mhat(&s, &f(6.0), 192).unwrap());
        assert!(ratio_m(&one, &f(50.0), 192).unwrap() < 1e-6);
        assert!(ratio_m(&one, &f(2.9), 192).is_err());
        assert!(ratio_mhat(&one, &f(4.9), 192).is_err());
    }
}
