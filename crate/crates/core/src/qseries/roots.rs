//! Real-root isolation with Sturm sequences.

use rug::{Integer, Rational};

use super::delta::DeltaPolynomial;
use super::range::RationalInterval;
use crate::{domain, Result};

type Poly = Vec<Rational>;

fn trim(p: &mut Poly) {
    while p.last().map_or(false, |c| *c == 0) {
        p.pop();
    }
}

/// Scales `p` by a positive rational so that its coefficients are coprime
/// integers. Signs are preserved, which Sturm sequences rely on.
fn primitive(p: &Poly) -> Poly {
    let mut den = Integer::from(1);
    for c in p {
        den.lcm_mut(c.denom());
    }
    let mut g = Integer::new();
    let ints: Vec<Integer> = p
        .iter()
        .map(|c| {
            let v = Integer::from(c.numer() * Integer::from(&den / c.denom()));
            g.gcd_mut(&v);
            v
        })
        .collect();
    if g == 0 {
        return Vec::new();
    }
    ints.into_iter().map(|v| Rational::from(v / &g)).collect()
}

fn rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let f = Rational::from(r.last().unwrap() / &lb);
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= Rational::from(&f * c);
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = primitive(&rem(&x, &y));
        x = y;
        y = r;
    }
    primitive(&x)
}

fn exact_div(a: &Poly, b: &Poly) -> Poly {
    let db = b.len() - 1;
    let mut r = a.clone();
    let mut q = vec![Rational::new(); a.len() - db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let f = Rational::from(r.last().unwrap() / &b[db]);
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= Rational::from(&f * c);
        }
        q[shift] = f;
        r.pop();
    }
    q
}

fn derivative(p: &Poly) -> Poly {
    p.iter().enumerate().skip(1).map(|(j, c)| Rational::from(c * j as u64)).collect()
}

fn eval(p: &Poly, x: &Rational) -> Rational {
    let mut acc = Rational::new();
    for c in p.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

/// Sturm chain of a squarefree polynomial.
pub struct SturmChain {
    chain: Vec<Poly>,
}

impl SturmChain {
    fn new(p: &Poly) -> Self {
        let mut chain = vec![p.clone(), primitive(&derivative(p))];
        loop {
            let n = chain.len();
            if chain[n - 1].is_empty() {
                chain.pop();
                break;
            }
            let r = rem(&chain[n - 2], &chain[n - 1]);
            if r.is_empty() {
                break;
            }
            chain.push(primitive(&r).into_iter().map(|c| -c).collect());
        }
        SturmChain { chain }
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = 0i32;
        for p in &self.chain {
            let s = eval(p, x).cmp0() as i32;
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Squarefree part `p / gcd(p, p′)`, as a primitive rational polynomial.
pub fn squarefree(p: &DeltaPolynomial) -> Result<Vec<Rational>> {
    if p.is_zero() {
        return domain("zero polynomial has no isolated roots");
    }
    let poly = primitive(&p.coeffs());
    if poly.len() <= 2 {
        return Ok(poly);
    }
    let g = gcd(&poly, &derivative(&poly));
    if g.len() <= 1 {
        return Ok(poly);
    }
    Ok(primitive(&exact_div(&poly, &g)))
}

/// Number of distinct real roots of `p` in the closed interval `iv`.
pub fn count_roots(p: &DeltaPolynomial, iv: &RationalInterval) -> Result<usize> {
    let sf = squarefree(p)?;
    if sf.len() <= 1 {
        return Ok(0);
    }
    let chain = SturmChain::new(&sf);
    let at_lo = usize::from(eval(&sf, iv.lo()) == 0);
    Ok(chain.count(iv.lo(), iv.hi()) + at_lo)
}

/// Polynomial greatest common divisor over ℚ, as a primitive polynomial.
pub fn poly_gcd(a: &DeltaPolynomial, b: &DeltaPolynomial) -> DeltaPolynomial {
    if a.is_zero() {
        return DeltaPolynomial::from_rationals(&primitive(&b.coeffs()));
    }
    if b.is_zero() {
        return DeltaPolynomial::from_rationals(&primitive(&a.coeffs()));
    }
    DeltaPolynomial::from_rationals(&gcd(&primitive(&a.coeffs()), &primitive(&b.coeffs())))
}

/// Disjoint brackets of width at most `width`, one per distinct real root of
/// `p` in the closed interval `iv`, in increasing order.
pub fn isolate_real_roots(
    p: &DeltaPolynomial,
    iv: &RationalInterval,
    width: &Rational,
) -> Result<Vec<RationalInterval>> {
    if *width <= 0 {
        return domain("bracket width must be positive");
    }
    let sf = squarefree(p)?;
    if sf.len() <= 1 {
        return Ok(Vec::new());
    }
    let chain = SturmChain::new(&sf);
    let mut out = Vec::new();
    if eval(&sf, iv.lo()) == 0 {
        out.push(RationalInterval::point(iv.lo().clone()));
    }
    // Work list of half-open intervals (a, b] with their root counts.
    let mut stack = vec![(iv.lo().clone(), iv.hi().clone(), chain.count(iv.lo(), iv.hi()))];
    let mut found = Vec::new();
    while let Some((a, b, c)) = stack.pop() {
        if c == 0 {
            continue;
        }
        if c == 1 {
            found.push(refine_simple(&sf, a, b, width));
            continue;
        }
        let m = Rational::from(&a + &b) / 2;
        let left = chain.count(&a, &m);
        stack.push((m.clone(), b, c - left));
        stack.push((a, m, left));
    }
    found.sort_by(|x, y| x.lo().cmp(y.lo()));
    out.extend(found);
    Ok(out)
}

/// Shrinks `(a, b]`, known to hold exactly one simple root, to width ≤ `w`.
fn refine_simple(p: &Poly, mut a: Rational, mut b: Rational, w: &Rational) -> RationalInterval {
    let fb = eval(p, &b);
    if fb == 0 {
        return RationalInterval::point(b);
    }
    let sb = fb.cmp0();
    while Rational::from(&b - &a) > *w {
        let m = Rational::from(&a + &b) / 2;
        let fm = eval(p, &m);
        if fm == 0 {
            return RationalInterval::point(m);
        }
        if fm.cmp0() == sb {
            b = m;
        } else {
            a = m;
        }
    }
    RationalInterval::new(a, b).expect("ordered bracket")
}
