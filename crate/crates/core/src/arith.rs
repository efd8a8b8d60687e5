//! Outward-rounded MPFR intervals and small exact-arithmetic helpers.

use std::cmp::Ordering;

use rug::float::{Constant, Round};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// Closed interval `[lo, hi]` whose endpoints are MPFR floats. Every
/// operation rounds the lower end down and the upper end up, so the result
/// always contains the exact result of the operation on any members.
#[derive(Clone, Debug)]
pub struct Interval {
    lo: Float,
    hi: Float,
}

impl Interval {
    pub fn new(lo: Float, hi: Float) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn zero(prec: u32) -> Self {
        Interval { lo: Float::new(prec), hi: Float::new(prec) }
    }

    pub fn from_rational(prec: u32, r: &Rational) -> Self {
        let (lo, _) = Float::with_val_round(prec, r, Round::Down);
        let (hi, _) = Float::with_val_round(prec, r, Round::Up);
        Interval { lo, hi }
    }

    pub fn from_rational_bounds(prec: u32, lo: &Rational, hi: &Rational) -> Self {
        let (lo, _) = Float::with_val_round(prec, lo, Round::Down);
        let (hi, _) = Float::with_val_round(prec, hi, Round::Up);
        Interval { lo, hi }
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0 && self.hi >= 0
    }

    pub fn add(&self, other: &Interval) -> Interval {
        let p = self.prec();
        let (lo, _) = Float::with_val_round(p, &self.lo + &other.lo, Round::Down);
        let (hi, _) = Float::with_val_round(p, &self.hi + &other.hi, Round::Up);
        Interval { lo, hi }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let p = self.prec();
        let pairs = [(&self.lo, &other.lo), (&self.lo, &other.hi), (&self.hi, &other.lo), (&self.hi, &other.hi)];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let (d, _) = Float::with_val_round(p, a * b, Round::Down);
            let (u, _) = Float::with_val_round(p, a * b, Round::Up);
            lo = Some(match lo {
                Some(x) if x <= d => x,
                _ => d,
            });
            hi = Some(match hi {
                Some(x) if x >= u => x,
                _ => u,
            });
        }
        Interval { lo: lo.unwrap(), hi: hi.unwrap() }
    }

    /// Multiplication by an exactly representable scalar.
    pub fn mul_exact(&self, s: &Float) -> Interval {
        let p = self.prec();
        let (a, _) = Float::with_val_round(p, &self.lo * s, Round::Down);
        let (b, _) = Float::with_val_round(p, &self.hi * s, Round::Up);
        if *s >= 0 {
            Interval { lo: a, hi: b }
        } else {
            let (a, _) = Float::with_val_round(p, &self.hi * s, Round::Down);
            let (b, _) = Float::with_val_round(p, &self.lo * s, Round::Up);
            Interval { lo: a, hi: b }
        }
    }

    /// Upper bound on `|x|` over the interval.
    pub fn mag(&self) -> Float {
        let a = Float::with_val(self.prec(), self.lo.abs_ref());
        let b = Float::with_val(self.prec(), self.hi.abs_ref());
        if a > b {
            a
        } else {
            b
        }
    }

    /// Convex hull of two intervals.
    pub fn hull(&self, other: &Interval) -> Interval {
        let lo = if self.lo <= other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi >= other.hi { self.hi.clone() } else { other.hi.clone() };
        Interval { lo, hi }
    }
}

/// Upward-rounded `a * b` for non-negative operands.
pub fn mul_up(prec: u32, a: &Float, b: &Float) -> Float {
    Float::with_val_round(prec, a * b, Round::Up).0
}

/// Upward-rounded `a + b`.
pub fn add_up(prec: u32, a: &Float, b: &Float) -> Float {
    Float::with_val_round(prec, a + b, Round::Up).0
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub fn euler_gamma(prec: u32) -> Float {
    Float::with_val(prec, Constant::Euler)
}

/// Reduces a rational multiple of π to the representative in `[0, 2)`.
pub fn reduce_mod2(r: &Rational) -> Rational {
    let two = Rational::from(2);
    let q = Rational::from(r / &two).floor();
    Rational::from(r - q * two)
}

/// `(cos πr, sin πr)` for exact rational `r`.
pub fn cis_pi(r: &Rational, prec: u32) -> (Float, Float) {
    let t = reduce_mod2(r);
    let x = Float::with_val(prec + 16, &t) * pi(prec + 16);
    let (s, c) = x.sin_cos(Float::new(prec + 16));
    (Float::with_val(prec, c), Float::with_val(prec, s))
}

/// Exact rational from a decimal or fractional literal such as `-0.99`,
/// `7/2` or `1e-12`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((a, b)) = s.split_once('/') {
        let a = parse_rational(a)?;
        let b = parse_rational(b)?;
        if b == 0 {
            return None;
        }
        return Some(a / b);
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((a, b)) => (a, b),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all = format!("{}{}", int_part, frac_part);
    let num = Integer::from_str_radix(if all.is_empty() { "0" } else { &all }, 10).ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = Integer::from(10);
    let mut r = Rational::from(num);
    match scale.cmp(&0) {
        Ordering::Greater => r *= Rational::from(ten.pow(scale as u32)),
        Ordering::Less => r /= Rational::from(ten.pow((-scale) as u32)),
        Ordering::Equal => {}
    }
    if neg {
        r = -r;
    }
    Some(r)
}

/// Formats a float with `digits` significant decimal digits.
pub fn fmt_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64()
}

/// Least common multiple of two positive integers.
pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Inverse of `a` modulo `m` for coprime arguments, in `[0, m)`.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m))
}
