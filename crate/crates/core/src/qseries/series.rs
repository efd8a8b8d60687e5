//! Dense truncated power series with exact integer or rational coefficients.

use rug::{Integer, Rational};

use super::product::ProductSpec;
use crate::{domain, Result};

/// Expands `G(q)` with integer exponents modulo `q^{order+1}`.
///
/// Positive exponents multiply by `(1 − q^a)`; negative ones divide, which is
/// a running sum with stride `a`.
pub fn expand_integer_product(spec: &ProductSpec, order: usize) -> Vec<Integer> {
    let e = spec.binomial_exponents(order);
    let mut c = vec![Integer::new(); order + 1];
    c[0] = Integer::from(1);
    for (a, &ea) in e.iter().enumerate().skip(1) {
        if ea > 0 {
            for _ in 0..ea {
                for i in (a..=order).rev() {
                    let t = c[i - a].clone();
                    c[i] -= t;
                }
            }
        } else {
            for _ in 0..(-ea) {
                for i in a..=order {
                    let t = c[i - a].clone();
                    c[i] += t;
                }
            }
        }
    }
    c
}

/// Formal logarithm of a series with constant term 1.
pub fn log_series(s: &[Rational], order: usize) -> Result<Vec<Rational>> {
    if s.first().map_or(true, |c| *c != 1) {
        return domain("log_series needs constant term 1");
    }
    let get = |i: usize| s.get(i).cloned().unwrap_or_default();
    let mut l = vec![Rational::new(); order + 1];
    // n l_n = n s_n − Σ_{k<n} k l_k s_{n−k}
    for n in 1..=order {
        let mut acc = Rational::from(n) * get(n);
        for k in 1..n {
            if l[k] != 0 {
                let sk = get(n - k);
                if sk != 0 {
                    acc -= Rational::from(k) * &l[k] * sk;
                }
            }
        }
        l[n] = acc / Rational::from(n);
    }
    Ok(l)
}

/// Formal exponential of a series with constant term 0.
pub fn exp_series(s: &[Rational], order: usize) -> Result<Vec<Rational>> {
    if s.first().map_or(false, |c| *c != 0) {
        return domain("exp_series needs constant term 0");
    }
    let get = |i: usize| s.get(i).cloned().unwrap_or_default();
    let mut e = vec![Rational::new(); order + 1];
    e[0] = Rational::from(1);
    // n e_n = Σ_{k=1}^{n} k s_k e_{n−k}
    for n in 1..=order {
        let mut acc = Rational::new();
        for k in 1..=n {
            let sk = get(k);
            if sk != 0 && e[n - k] != 0 {
                acc += Rational::from(k) * sk * &e[n - k];
            }
        }
        e[n] = acc / Rational::from(n);
    }
    Ok(e)
}

/// Coefficients of `G(q)^δ` for a fixed rational `δ = p/r`.
///
/// Uses the integer recurrence for `e_n = r^n n! c_n`,
/// `e_n = −p Σ_k σ_k r^{k−1} (n−1)!/(n−k)! e_{n−k}`, evaluated by a Horner
/// scheme so that every step multiplies a big integer by a machine word.
pub fn expand_rational_power(spec: &ProductSpec, delta: &Rational, order: usize) -> Vec<Rational> {
    if *delta.denom() == 1 {
        if let Some(d) = delta.numer().to_i64() {
            return expand_integer_product(&spec.scaled(d), order).into_iter().map(Rational::from).collect();
        }
    }
    let p = delta.numer().clone();
    let r = delta.denom().clone();
    let sigma = spec.log_weights(order);
    let mut e: Vec<Integer> = Vec::with_capacity(order + 1);
    e.push(Integer::from(1));
    let mut out = vec![Rational::from(1)];
    let mut scale = Integer::from(1);
    for n in 1..=order {
        let mut acc = Integer::from(&e[0] * sigma[n]);
        for j in 1..n {
            acc *= j as u64;
            acc *= &r;
            if sigma[n - j] != 0 {
                acc += Integer::from(&e[j] * sigma[n - j]);
            }
        }
        let en = -Integer::from(&acc * &p);
        scale *= &r;
        scale *= n as u64;
        out.push(Rational::from((en.clone(), scale.clone())));
        e.push(en);
    }
    out
}

/// Converts an integer series to rationals.
pub fn to_rational(s: &[Integer]) -> Vec<Rational> {
    s.iter().map(|c| Rational::from(c)).collect()
}
