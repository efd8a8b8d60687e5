//! Product specifications `∏ (q^m, q^{n-m}; q^n)_∞^u`.

use std::fmt;
use std::str::FromStr;

use rug::Rational;

use crate::arith::lcm;
use crate::{Error, Result};

/// One factor `(q^m, q^{n-m}; q^n)_∞^u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub m: u64,
    pub n: u64,
    pub u: i64,
}

impl Factor {
    pub fn new(m: u64, n: u64, u: i64) -> Result<Self> {
        if m < 1 || m >= n {
            return Err(Error::Domain(format!("factor needs 1 <= m < n, got m={m}, n={n}")));
        }
        if u == 0 {
            return Err(Error::Domain("factor exponent u must be nonzero".into()));
        }
        Ok(Factor { m, n, u })
    }

    /// `12m²/n − 12m + 2n`, the factor's contribution to Ω before weighting.
    pub fn omega_part(&self) -> Rational {
        let m = Rational::from(self.m);
        let n = Rational::from(self.n);
        Rational::from(12 * m.clone() * &m / &n) - 12 * m + 2 * n
    }
}

/// A finite list of factors. `L` and `Ω` are derived on demand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ProductSpec {
    factors: Vec<Factor>,
}

impl ProductSpec {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        for f in &factors {
            Factor::new(f.m, f.n, f.u)?;
        }
        Ok(ProductSpec { factors })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// `L = lcm(n_1, …, n_I)`; 1 for the empty product.
    pub fn modulus(&self) -> u64 {
        self.factors.iter().fold(1, |acc, f| lcm(acc, f.n))
    }

    /// `Ω = Σ u (12m²/n − 12m + 2n)`.
    pub fn omega(&self) -> Rational {
        self.factors.iter().fold(Rational::new(), |acc, f| acc + f.omega_part() * Rational::from(f.u))
    }

    /// The same product with every exponent negated, i.e. `G(q)^{-1}`.
    pub fn inverse(&self) -> ProductSpec {
        self.scaled(-1)
    }

    /// The same product with every exponent multiplied by `d`, i.e. `G(q)^d`.
    pub fn scaled(&self, d: i64) -> ProductSpec {
        if d == 0 {
            return ProductSpec::default();
        }
        ProductSpec { factors: self.factors.iter().map(|f| Factor { u: f.u * d, ..*f }).collect() }
    }

    /// `e[a]` for `1 ≤ a ≤ order`: the exponent of `(1 − q^a)` in `G`.
    pub fn binomial_exponents(&self, order: usize) -> Vec<i64> {
        let mut e = vec![0i64; order + 1];
        for f in &self.factors {
            for start in [f.m, f.n - f.m] {
                let mut a = start as usize;
                while a <= order {
                    e[a] += f.u;
                    a += f.n as usize;
                }
            }
        }
        e
    }

    /// `σ[k] = Σ_{a | k} a·e[a]`, so that `log G = −Σ σ[k] q^k / k`.
    pub fn log_weights(&self, order: usize) -> Vec<i64> {
        let e = self.binomial_exponents(order);
        let mut s = vec![0i64; order + 1];
        for a in 1..=order {
            if e[a] == 0 {
                continue;
            }
            let w = a as i64 * e[a];
            let mut k = a;
            while k <= order {
                s[k] += w;
                k += a;
            }
        }
        s
    }

    /// Named presets: `Q5`, `Q6`, `Q8`, `Q10`, `Q12`, `G3` and `BORWEIN:p`.
    pub fn preset(name: &str) -> Option<ProductSpec> {
        let spec =
            |v: &[(u64, u64, i64)]| ProductSpec::new(v.iter().map(|&(m, n, u)| Factor { m, n, u }).collect()).ok();
        let upper = name.trim().to_ascii_uppercase();
        match upper.as_str() {
            "Q5" => spec(&[(1, 5, 1), (2, 5, -1)]),
            "Q6" => spec(&[(1, 6, 1)]),
            "Q8" => spec(&[(1, 8, 1), (3, 8, -1)]),
            "Q10" => spec(&[(1, 10, 1), (3, 10, -1)]),
            "Q12" => spec(&[(1, 12, 1), (5, 12, -1)]),
            "G3" => spec(&[(1, 3, 1)]),
            _ => {
                let p: u64 = upper.strip_prefix("BORWEIN:")?.parse().ok()?;
                ProductSpec::borwein(p)
            }
        }
    }

    /// `(q;q)_∞/(q^p;q^p)_∞`, the product over all `a ≢ 0 (mod p)`.
    pub fn borwein(p: u64) -> Option<ProductSpec> {
        if p < 2 {
            return None;
        }
        let mut factors: Vec<Factor> = (1..p.div_ceil(2)).map(|m| Factor { m, n: p, u: 1 }).collect();
        if p % 2 == 0 {
            // (q^{p/2}; q^p) on its own is the pair (q^{p/2}, q^{3p/2}; q^{2p}).
            factors.push(Factor { m: p / 2, n: 2 * p, u: 1 });
        }
        ProductSpec::new(factors).ok()
    }
}

impl FromStr for ProductSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(p) = ProductSpec::preset(s) {
            return Ok(p);
        }
        if s.is_empty() {
            return Ok(ProductSpec::default());
        }
        let mut factors = Vec::new();
        for part in s.split(',') {
            let fields: Vec<&str> = part.trim().split(':').collect();
            if fields.len() != 3 {
                return Err(Error::Parse(format!("expected m:n:u, got '{}'", part.trim())));
            }
            let bad = |_| Error::Parse(format!("bad factor '{}'", part.trim()));
            let m: u64 = fields[0].trim().parse().map_err(bad)?;
            let n: u64 = fields[1].trim().parse().map_err(bad)?;
            let u: i64 = fields[2].trim().parse().map_err(bad)?;
            factors.push(Factor::new(m, n, u)?);
        }
        ProductSpec::new(factors)
    }
}

impl fmt::Display for ProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| format!("{}:{}:{}", x.m, x.n, x.u)).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_of_presets() {
        let cases = [("Q5", (24, 5)), ("Q6", (2, 1)), ("Q8", (12, 1)), ("Q10", (72, 5)), ("Q12", (24, 1))];
        for (name, (p, q)) in cases {
            assert_eq!(ProductSpec::preset(name).unwrap().omega(), Rational::from((p, q)), "{name}");
        }
    }

    #[test]
    fn parses_grammar() {
        let p: ProductSpec = "1:5:1, 2:5:-1".parse().unwrap();
        assert_eq!(p, ProductSpec::preset("Q5").unwrap());
        assert_eq!(p.to_string(), "1:5:1,2:5:-1");
        assert!("2:2:1".parse::<ProductSpec>().is_err());
        assert!("1:3:0".parse::<ProductSpec>().is_err());
        assert!("1:3".parse::<ProductSpec>().is_err());
    }

    #[test]
    fn modulus_is_lcm() {
        let p: ProductSpec = "1:4:1,1:6:2".parse().unwrap();
        assert_eq!(p.modulus(), 12);
        assert_eq!(ProductSpec::default().modulus(), 1);
    }

    #[test]
    fn borwein_exponents_skip_multiples_of_p() {
        for p in 2..8u64 {
            let spec = ProductSpec::borwein(p).unwrap();
            let e = spec.binomial_exponents(40);
            for (a, &ea) in e.iter().enumerate().skip(1) {
                assert_eq!(ea, if a as u64 % p == 0 { 0 } else { 1 }, "p={p}, a={a}");
            }
        }
    }
}
