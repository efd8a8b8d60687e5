//! Polynomials in `δ` with exact rational coefficients, and the series
//! `G(q)^δ = Σ c_δ(n) q^n` whose coefficients are such polynomials.

use std::fmt;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::product::ProductSpec;
use crate::arith::Interval;

/// `Σ num[j] δ^j / den` with `den > 0`, trimmed and in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaPolynomial {
    num: Vec<Integer>,
    den: Integer,
}

impl DeltaPolynomial {
    pub fn zero() -> Self {
        DeltaPolynomial { num: Vec::new(), den: Integer::from(1) }
    }

    pub fn constant(c: Rational) -> Self {
        DeltaPolynomial::from_rationals(&[c])
    }

    /// Builds `Σ num[j] δ^j / den` and normalizes it.
    pub fn from_scaled(mut num: Vec<Integer>, mut den: Integer) -> Self {
        assert!(den != 0, "zero denominator");
        if den < 0 {
            den = -den;
            for c in num.iter_mut() {
                *c = -c.clone();
            }
        }
        while num.last().map_or(false, |c| *c == 0) {
            num.pop();
        }
        if num.is_empty() {
            return DeltaPolynomial::zero();
        }
        let mut g = den.clone();
        for c in &num {
            if g == 1 {
                break;
            }
            g.gcd_mut(c);
        }
        if g != 1 {
            for c in num.iter_mut() {
                c.div_exact_mut(&g);
            }
            den.div_exact_mut(&g);
        }
        DeltaPolynomial { num, den }
    }

    pub fn from_rationals(coeffs: &[Rational]) -> Self {
        let mut den = Integer::from(1);
        for c in coeffs {
            den.lcm_mut(c.denom());
        }
        let num = coeffs.iter().map(|c| Integer::from(c.numer() * Integer::from(&den / c.denom()))).collect();
        DeltaPolynomial::from_scaled(num, den)
    }

    /// Ascending coefficients as exact rationals.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num.iter().map(|c| Rational::from((c.clone(), self.den.clone()))).collect()
    }

    pub fn coeff(&self, j: usize) -> Rational {
        match self.num.get(j) {
            Some(c) => Rational::from((c.clone(), self.den.clone())),
            None => Rational::new(),
        }
    }

    pub fn numerators(&self) -> &[Integer] {
        &self.num
    }

    pub fn denominator(&self) -> &Integer {
        &self.den
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.num.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        // Homogenized Horner in integers: Σ num_j a^j b^{d−j} / (den b^d).
        if self.num.is_empty() {
            return Rational::new();
        }
        let a = x.numer();
        let b = x.denom();
        let mut acc = Integer::new();
        let mut bpow = Integer::from(1);
        for c in self.num.iter().rev() {
            acc *= a;
            acc += Integer::from(c * &bpow);
            bpow *= b;
        }
        let d = self.num.len() - 1;
        let scale = Integer::from(b.pow(d as u32)) * &self.den;
        Rational::from((acc, scale))
    }

    pub fn eval_integer(&self, x: i64) -> Rational {
        self.eval_rational(&Rational::from(x))
    }

    /// Horner evaluation in `prec`-bit floating point.
    pub fn eval_float(&self, x: &Float, prec: u32) -> Float {
        let work = prec + 32;
        let mut acc = Float::new(work);
        for c in self.num.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc /= &self.den;
        Float::with_val(prec, acc)
    }

    /// Interval Horner evaluation; encloses `p(x)` for every `x` in `x`.
    pub fn eval_interval(&self, x: &Interval) -> Interval {
        let prec = x.prec();
        let mut acc = Interval::zero(prec);
        let den_inv = Rational::from((Integer::from(1), self.den.clone()));
        for c in self.num.iter().rev() {
            acc = acc.mul(x);
            acc = acc.add(&Interval::from_rational(prec, &(Rational::from(c) * &den_inv)));
        }
        acc
    }

    pub fn derivative(&self) -> DeltaPolynomial {
        let num = self.num.iter().enumerate().skip(1).map(|(j, c)| Integer::from(c * j as u64)).collect();
        DeltaPolynomial::from_scaled(num, self.den.clone())
    }

    /// `p(−δ)`.
    pub fn reflect(&self) -> DeltaPolynomial {
        let num = self.num.iter().enumerate().map(|(j, c)| if j % 2 == 1 { -c.clone() } else { c.clone() }).collect();
        DeltaPolynomial::from_scaled(num, self.den.clone())
    }

    /// Bit length of the largest numerator, a rough size measure.
    pub fn max_bits(&self) -> u32 {
        self.num.iter().map(|c| c.significant_bits()).max().unwrap_or(0)
    }
}

impl fmt::Display for DeltaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs().iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let neg = *c < 0;
            let a = Rational::from(c.abs_ref());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (j, a == 1) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "d")?,
                (1, false) => write!(f, "{a}*d")?,
                (_, true) => write!(f, "d^{j}")?,
                (_, false) => write!(f, "{a}*d^{j}")?,
            }
        }
        Ok(())
    }
}

/// Truncated `G(q)^δ`: `coeffs[n]` is `c_δ(n)`.
#[derive(Clone, Debug)]
pub struct DeltaSeries {
    spec: ProductSpec,
    coeffs: Vec<DeltaPolynomial>,
}

impl DeltaSeries {
    pub fn spec(&self) -> &ProductSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[DeltaPolynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &DeltaPolynomial {
        &self.coeffs[n]
    }

    /// All coefficients evaluated at a rational `δ`.
    pub fn eval_rational(&self, delta: &Rational) -> Vec<Rational> {
        self.coeffs.iter().map(|p| p.eval_rational(delta)).collect()
    }
}

/// `G(q)^δ = exp(δ log G)` with symbolic `δ`, modulo `q^{order+1}`.
///
/// With `log G = −Σ σ_k q^k / k` the scaled coefficients
/// `P_n = n! c_δ(n) ∈ ℤ[δ]` satisfy
/// `P_n = −δ Σ_k σ_k (n−1)!/(n−k)! P_{n−k}`. The inner sum is evaluated by
/// Horner's scheme over `j = n − k`, so each step is a polynomial times a
/// machine word.
pub fn expand_real_power(spec: &ProductSpec, order: usize) -> DeltaSeries {
    let sigma = spec.log_weights(order);
    let mut p: Vec<Vec<Integer>> = Vec::with_capacity(order + 1);
    p.push(vec![Integer::from(1)]);
    let mut coeffs = vec![DeltaPolynomial::constant(Rational::from(1))];
    let mut fact = Integer::from(1);
    for n in 1..=order {
        // acc has degree ≤ n − 1 in δ.
        let mut acc: Vec<Integer> = vec![Integer::new(); n];
        for j in 0..n {
            if j > 0 {
                for c in acc[..j].iter_mut() {
                    *c *= j as u64;
                }
            }
            let s = sigma[n - j];
            if s != 0 {
                for (c, pj) in acc.iter_mut().zip(p[j].iter()) {
                    *c += Integer::from(pj * s);
                }
            }
        }
        let mut pn = Vec::with_capacity(n + 1);
        pn.push(Integer::new());
        for c in acc {
            pn.push(-c);
        }
        while pn.last().map_or(false, |c| *c == 0) {
            pn.pop();
        }
        fact *= n as u64;
        coeffs.push(DeltaPolynomial::from_scaled(pn.clone(), fact.clone()));
        p.push(pn);
    }
    DeltaSeries { spec: spec.clone(), coeffs }
}
