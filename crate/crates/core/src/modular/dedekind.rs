//! Dedekind sums.

use rug::Rational;

use crate::arith::gcd;
use crate::{domain, Result};

const DIRECT_LIMIT: i64 = 10_000;

/// `s(d, c) = Σ_{n mod c} ((dn/c))((n/c))`.
pub fn dedekind_sum(d: i64, c: i64) -> Result<Rational> {
    if c <= 0 {
        return domain(format!("dedekind_sum needs c >= 1, got {c}"));
    }
    let g = gcd(d.unsigned_abs(), c as u64) as i64;
    let (d, c) = (d / g, c / g);
    if c <= DIRECT_LIMIT {
        Ok(direct(d, c))
    } else {
        Ok(reciprocity(d.rem_euclid(c), c))
    }
}

/// Direct summation in integers: each term is `(2r − c)(2n − c) / 4c²`.
fn direct(d: i64, c: i64) -> Rational {
    let mut acc: i128 = 0;
    for n in 1..c {
        let r = (d as i128 * n as i128).rem_euclid(c as i128);
        if r != 0 {
            acc += (2 * r - c as i128) * (2 * n as i128 - c as i128);
        }
    }
    Rational::from((acc, 4 * (c as i128) * (c as i128)))
}

/// Euclidean recursion on `s(d,c) + s(c,d) = −1/4 + (d/c + c/d + 1/(dc))/12`
/// for coprime `0 ≤ d < c`.
fn reciprocity(mut d: i64, mut c: i64) -> Rational {
    let mut acc = Rational::new();
    let mut sign = 1i32;
    while d != 0 {
        let (dr, cr) = (Rational::from(d), Rational::from(c));
        let term = Rational::from((-1, 4))
            + (Rational::from(&dr / &cr) + Rational::from(&cr / &dr) + Rational::from((1, d as i128 * c as i128))) / 12;
        if sign > 0 {
            acc += term;
        } else {
            acc -= term;
        }
        sign = -sign;
        (d, c) = (c.rem_euclid(d), d);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(dedekind_sum(0, 1).unwrap(), 0);
        assert_eq!(dedekind_sum(1, 3).unwrap(), Rational::from((1, 18)));
        assert_eq!(dedekind_sum(2, 5).unwrap(), 0);
        assert!(dedekind_sum(1, 0).is_err());
    }

    #[test]
    fn symmetries() {
        for c in 1..40 {
            for d in -50..50 {
                let s = dedekind_sum(d, c).unwrap();
                assert_eq!(dedekind_sum(-d, c).unwrap(), -s.clone());
                assert_eq!(dedekind_sum(d + c, c).unwrap(), s);
            }
        }
    }

    #[test]
    fn recursion_matches_direct() {
        for c in [97i64, 1000, 9973] {
            for d in [1i64, 2, 13, 500, 96] {
                if gcd(d as u64, c as u64) == 1 {
                    assert_eq!(reciprocity(d % c, c), direct(d, c), "s({d},{c})");
                }
            }
        }
    }
}
