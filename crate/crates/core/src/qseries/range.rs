//! Rigorous ranges of `δ`-polynomials over intervals of `δ`.
//!
//! Enclosures come from Taylor expansions about dyadic centres computed in
//! outward-rounded interval arithmetic. A piece on which the derivative
//! enclosure excludes zero is monotone and contributes its exact endpoint
//! values instead.

use std::fmt;

use rug::float::Round;
use rug::{Float, Rational};

use super::delta::DeltaPolynomial;
use super::roots::{count_roots, poly_gcd, squarefree};
use crate::arith::{parse_rational, Interval};
use crate::{domain, Error, Result};

/// Closed interval with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return domain(format!("empty interval [{lo}, {hi}]"));
        }
        Ok(RationalInterval { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        RationalInterval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        Rational::from(&self.hi - &self.lo)
    }

    pub fn midpoint(&self) -> Rational {
        Rational::from(&self.lo + &self.hi) / 2
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn neg(&self) -> RationalInterval {
        RationalInterval { lo: Rational::from(-&self.hi), hi: Rational::from(-&self.lo) }
    }

    pub fn hull(&self, other: &RationalInterval) -> RationalInterval {
        RationalInterval { lo: self.lo.clone().min(other.lo.clone()), hi: self.hi.clone().max(other.hi.clone()) }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A real algebraic number: the unique root of `poly` in `bracket`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicNumber {
    name: String,
    poly: DeltaPolynomial,
    bracket: RationalInterval,
}

impl AlgebraicNumber {
    pub fn new(name: &str, poly: DeltaPolynomial, bracket: RationalInterval) -> Result<Self> {
        let sf = DeltaPolynomial::from_rationals(&squarefree(&poly)?);
        if count_roots(&sf, &bracket)? != 1 {
            return domain(format!("bracket {bracket} does not isolate a single root"));
        }
        Ok(AlgebraicNumber { name: name.to_string(), poly: sf, bracket })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn poly(&self) -> &DeltaPolynomial {
        &self.poly
    }

    pub fn bracket(&self) -> &RationalInterval {
        &self.bracket
    }

    /// The same number with its bracket shrunk to width ≤ `width`.
    pub fn refined(&self, width: &Rational) -> AlgebraicNumber {
        let mut a = self.bracket.lo.clone();
        let mut b = self.bracket.hi.clone();
        let fa = self.poly.eval_rational(&a);
        let fb = self.poly.eval_rational(&b);
        if fa == 0 {
            b = a.clone();
        } else if fb == 0 {
            a = b.clone();
        }
        let sa = fa.cmp0();
        while Rational::from(&b - &a) > *width {
            let m = Rational::from(&a + &b) / 2;
            let fm = self.poly.eval_rational(&m);
            if fm == 0 {
                a = m.clone();
                b = m;
                break;
            }
            if fm.cmp0() == sa {
                a = m;
            } else {
                b = m;
            }
        }
        AlgebraicNumber { name: self.name.clone(), poly: self.poly.clone(), bracket: RationalInterval { lo: a, hi: b } }
    }

    pub fn neg(&self) -> AlgebraicNumber {
        let name = match self.name.strip_prefix('-') {
            Some(s) => s.to_string(),
            None => format!("-{}", self.name),
        };
        AlgebraicNumber { name, poly: self.poly.reflect(), bracket: self.bracket.neg() }
    }

    pub fn to_f64(&self) -> f64 {
        self.bracket.midpoint().to_f64()
    }

    /// Whether `p` vanishes at this number, decided exactly through
    /// `gcd(p, poly)`.
    pub fn is_root_of(&self, p: &DeltaPolynomial) -> bool {
        if p.is_zero() {
            return true;
        }
        let g = poly_gcd(p, &self.poly);
        g.degree().unwrap_or(0) > 0 && count_roots(&g, &self.bracket).map_or(false, |c| c > 0)
    }
}

/// The critical constants of the sign-pattern conjectures, by name.
pub fn named_constant(name: &str) -> Option<AlgebraicNumber> {
    let ints = |c: &[i64]| DeltaPolynomial::from_rationals(&c.iter().map(|&x| Rational::from(x)).collect::<Vec<_>>());
    let iv = |a: i64, b: i64| RationalInterval::new(Rational::from(a), Rational::from(b)).unwrap();
    let (poly, bracket) = match name {
        // δ² + 5δ − 18: the root (√97 − 5)/2.
        "sqrt97m5over2" => (ints(&[-18, 5, 1]), iv(2, 3)),
        "alpha" => (ints(&[282240, -184752, 104300, -14336, -6055, 7, 35, 1]), iv(2, 3)),
        // δ² − 7δ − 6: the root (7 − √73)/2.
        "7msqrt73over2" => (ints(&[-6, -7, 1]), iv(-1, 0)),
        "beta" => (
            ints(&[
                49816166400,
                94379731200,
                -40887173664,
                3333687384,
                774767020,
                -837509646,
                -3683653,
                1892346,
                -537081,
                30486,
                1457,
                -90,
                1,
            ]),
            iv(2, 3),
        ),
        // δ² − 9δ + 2: the root (9 − √73)/2.
        "9msqrt73over2" => (ints(&[2, -9, 1]), iv(0, 1)),
        _ => return None,
    };
    AlgebraicNumber::new(name, poly, bracket).ok()
}

/// One end of a `δ`-range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Exact(Rational),
    Algebraic(AlgebraicNumber),
}

impl Endpoint {
    /// Parses a rational (`3`, `-0.99`, `7/2`) or a named constant with an
    /// optional bracket width, e.g. `sqrt97m5over2(1e-12)` or `-alpha`.
    pub fn parse(s: &str) -> Result<Endpoint> {
        let s = s.trim();
        if let Some(r) = parse_rational(s) {
            return Ok(Endpoint::Exact(r));
        }
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (name, width) = match body.split_once('(') {
            Some((n, w)) => {
                let w = w.strip_suffix(')').ok_or_else(|| Error::Parse(format!("unclosed '(' in '{s}'")))?;
                let w = parse_rational(w).ok_or_else(|| Error::Parse(format!("bad bracket width in '{s}'")))?;
                (n, w)
            }
            None => (body, Rational::from((1, 1_000_000_000_000i64))),
        };
        if width <= 0 {
            return Err(Error::Parse(format!("bracket width must be positive in '{s}'")));
        }
        let c = named_constant(name).ok_or_else(|| Error::Parse(format!("unknown constant '{name}'")))?;
        let c = c.refined(&width);
        Ok(Endpoint::Algebraic(if neg { c.neg() } else { c }))
    }

    pub fn lower(&self) -> &Rational {
        match self {
            Endpoint::Exact(r) => r,
            Endpoint::Algebraic(a) => a.bracket.lo(),
        }
    }

    pub fn upper(&self) -> &Rational {
        match self {
            Endpoint::Exact(r) => r,
            Endpoint::Algebraic(a) => a.bracket.hi(),
        }
    }

    pub fn neg(&self) -> Endpoint {
        match self {
            Endpoint::Exact(r) => Endpoint::Exact(Rational::from(-r)),
            Endpoint::Algebraic(a) => Endpoint::Algebraic(a.neg()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Endpoint::Exact(r) => r.to_f64(),
            Endpoint::Algebraic(a) => a.to_f64(),
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Exact(r) => write!(f, "{r}"),
            Endpoint::Algebraic(a) => write!(f, "{}", a.name),
        }
    }
}

/// A closed `δ`-range whose ends may be irrational algebraic numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaRange {
    lo: Endpoint,
    hi: Endpoint,
}

impl DeltaRange {
    pub fn new(lo: Endpoint, hi: Endpoint) -> Result<Self> {
        if lo.lower() > hi.upper() {
            return domain(format!("empty δ-range {lo}..{hi}"));
        }
        Ok(DeltaRange { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        DeltaRange { lo: Endpoint::Exact(x.clone()), hi: Endpoint::Exact(x) }
    }

    pub fn interval(a: Rational, b: Rational) -> Result<Self> {
        DeltaRange::new(Endpoint::Exact(a), Endpoint::Exact(b))
    }

    /// Parses `a..b` or a single endpoint.
    pub fn parse(s: &str) -> Result<Self> {
        match s.split_once("..") {
            Some((a, b)) => DeltaRange::new(Endpoint::parse(a)?, Endpoint::parse(b)?),
            None => {
                let e = Endpoint::parse(s)?;
                Ok(DeltaRange { lo: e.clone(), hi: e })
            }
        }
    }

    pub fn lo(&self) -> &Endpoint {
        &self.lo
    }

    pub fn hi(&self) -> &Endpoint {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// The exact value of a rational point range.
    pub fn as_rational_point(&self) -> Option<&Rational> {
        match (&self.lo, &self.hi) {
            (Endpoint::Exact(a), Endpoint::Exact(b)) if a == b => Some(a),
            _ => None,
        }
    }

    /// Smallest rational interval known to contain the range.
    pub fn enclosure(&self) -> RationalInterval {
        RationalInterval { lo: self.lo.lower().clone(), hi: self.hi.upper().clone() }
    }

    /// `{−δ : δ in self}`.
    pub fn neg(&self) -> DeltaRange {
        DeltaRange { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn is_positive(&self) -> bool {
        *self.lo.lower() > 0
    }

    pub fn is_negative(&self) -> bool {
        *self.hi.upper() < 0
    }
}

impl fmt::Display for DeltaRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// Sign information for a polynomial over a range of `δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignVerdict {
    /// Identically zero on the range.
    Zero,
    Positive,
    Negative,
    /// `≥ 0` with an exact zero attained.
    NonNegative,
    /// `≤ 0` with an exact zero attained.
    NonPositive,
    /// Exact values of both signs were found.
    Mixed,
    /// The search budget ran out before the sign was settled.
    Undetermined,
}

const MAX_PIECES: usize = 4096;

/// Precomputed interval coefficients of a polynomial.
struct Enclosurer {
    poly: DeltaPolynomial,
    coeffs: Vec<Interval>,
    prec: u32,
}

struct Piece {
    lo: Rational,
    hi: Rational,
    f_lo: Rational,
    f_hi: Rational,
    /// Interval enclosure, or `None` when the piece is monotone.
    enclosure: Option<(Rational, Rational)>,
}

impl Piece {
    fn bounds(&self) -> (Rational, Rational) {
        match &self.enclosure {
            Some((a, b)) => (a.clone(), b.clone()),
            None => {
                if self.f_lo <= self.f_hi {
                    (self.f_lo.clone(), self.f_hi.clone())
                } else {
                    (self.f_hi.clone(), self.f_lo.clone())
                }
            }
        }
    }
}

impl Enclosurer {
    fn new(p: &DeltaPolynomial, iv: &RationalInterval, extra_bits: u32) -> Self {
        // Working precision: enough to resolve Σ|a_j| R^j with room to spare.
        let r = iv.lo().clone().abs().max(iv.hi().clone().abs()).to_f64().max(1.0);
        let den_bits = p.denominator().significant_bits() as f64;
        let mut log_mag: f64 = 0.0;
        for (j, c) in p.numerators().iter().enumerate() {
            if *c != 0 {
                let b = c.significant_bits() as f64 - den_bits + j as f64 * r.log2();
                log_mag = log_mag.max(b);
            }
        }
        let d = p.degree().unwrap_or(0) as f64 + 1.0;
        let prec = (log_mag.max(0.0) + 2.0 * d.log2() + 96.0 + extra_bits as f64).ceil() as u32;
        let prec = prec.max(128);
        let coeffs = p.coeffs().iter().map(|c| Interval::from_rational(prec, c)).collect();
        Enclosurer { poly: p.clone(), coeffs, prec }
    }

    /// Taylor-form enclosures of `p` and `p′` over `[lo, hi]`.
    fn enclose(&self, lo: &Rational, hi: &Rational) -> (Interval, Interval) {
        let prec = self.prec;
        let mid = Rational::from(lo + hi) / 2;
        // Dyadic centre close to the midpoint, exactly representable.
        let c = Float::with_val(64.min(prec), &mid);
        let c = Float::with_val(prec, c);
        let cr = c.to_rational().expect("finite centre");
        let rho_q = Rational::from(&cr - lo).max(Rational::from(hi - &cr));
        let rho = Float::with_val_round(prec, &rho_q, Round::Up).0;
        let d = self.coeffs.len();
        let mut b = self.coeffs.clone();
        for i in 0..d.saturating_sub(1) {
            for j in (i..d - 1).rev() {
                let t = b[j + 1].mul_exact(&c);
                b[j] = b[j].add(&t);
            }
        }
        let mut s = Float::new(prec);
        let mut sd = Float::new(prec);
        let mut rpow = Float::with_val(prec, 1);
        for (j, bj) in b.iter().enumerate().skip(1) {
            let m = bj.mag();
            // j |b_j| ρ^{j−1} for the derivative, |b_j| ρ^j for the value.
            if j >= 2 {
                let t = Float::with_val_round(prec, &m * &rpow, Round::Up).0;
                let t = Float::with_val_round(prec, &t * (j as u32), Round::Up).0;
                sd = Float::with_val_round(prec, &sd + &t, Round::Up).0;
            }
            rpow = Float::with_val_round(prec, &rpow * &rho, Round::Up).0;
            let t = Float::with_val_round(prec, &m * &rpow, Round::Up).0;
            s = Float::with_val_round(prec, &s + &t, Round::Up).0;
        }
        let value = b[0].add(&Interval::new(-s.clone(), s));
        let deriv = match b.get(1) {
            Some(b1) => b1.add(&Interval::new(-sd.clone(), sd)),
            None => Interval::zero(prec),
        };
        (value, deriv)
    }

    fn piece(&self, lo: Rational, hi: Rational, f_lo: Rational, f_hi: Rational) -> Piece {
        let (value, deriv) = self.enclose(&lo, &hi);
        let enclosure = if deriv.contains_zero() {
            let a = value.lo().to_rational().expect("finite bound");
            let b = value.hi().to_rational().expect("finite bound");
            Some((a, b))
        } else {
            None
        };
        Piece { lo, hi, f_lo, f_hi, enclosure }
    }

    fn split(&self, p: &Piece) -> (Piece, Piece) {
        let m = Rational::from(&p.lo + &p.hi) / 2;
        let fm = self.poly.eval_rational(&m);
        (
            self.piece(p.lo.clone(), m.clone(), p.f_lo.clone(), fm.clone()),
            self.piece(m, p.hi.clone(), fm, p.f_hi.clone()),
        )
    }

    fn initial(&self, iv: &RationalInterval) -> Piece {
        let f_lo = self.poly.eval_rational(iv.lo());
        let f_hi = self.poly.eval_rational(iv.hi());
        self.piece(iv.lo().clone(), iv.hi().clone(), f_lo, f_hi)
    }
}

/// Rigorous enclosure of `{p(δ) : δ ∈ iv}` whose width exceeds the true
/// range width by at most `tol` (unless the refinement budget runs out, in
/// which case the enclosure is still valid but looser).
pub fn poly_range_over_interval(p: &DeltaPolynomial, iv: &RationalInterval, tol: &Rational) -> RationalInterval {
    if p.degree().unwrap_or(0) == 0 || iv.is_point() {
        return RationalInterval::point(p.eval_rational(iv.lo()));
    }
    let tol_bits = (-tol.to_f64().log2()).max(0.0).ceil() as u32;
    let enc = Enclosurer::new(p, iv, tol_bits);
    let half = Rational::from(tol / 2u32);
    let mut pieces = vec![enc.initial(iv)];
    loop {
        let mut exact_min = pieces[0].f_lo.clone();
        let mut exact_max = exact_min.clone();
        for pc in &pieces {
            for v in [&pc.f_lo, &pc.f_hi] {
                if *v < exact_min {
                    exact_min = v.clone();
                }
                if *v > exact_max {
                    exact_max = v.clone();
                }
            }
        }
        let low_cut = Rational::from(&exact_min - &half);
        let high_cut = Rational::from(&exact_max + &half);
        let loose = |pc: &Piece| match &pc.enclosure {
            Some((a, b)) => *a < low_cut || *b > high_cut,
            None => false,
        };
        let n_loose = pieces.iter().filter(|pc| loose(pc)).count();
        if n_loose == 0 || pieces.len() + n_loose > MAX_PIECES {
            let mut lo = exact_min;
            let mut hi = exact_max;
            for pc in &pieces {
                let (a, b) = pc.bounds();
                if a < lo {
                    lo = a;
                }
                if b > hi {
                    hi = b;
                }
            }
            return RationalInterval { lo, hi };
        }
        let mut next = Vec::with_capacity(pieces.len() + n_loose);
        for pc in pieces {
            if loose(&pc) {
                let (a, b) = enc.split(&pc);
                next.push(a);
                next.push(b);
            } else {
                next.push(pc);
            }
        }
        pieces = next;
    }
}

/// Sign of `p` over a rational interval.
pub fn sign_over_interval(p: &DeltaPolynomial, iv: &RationalInterval) -> SignVerdict {
    if p.is_zero() {
        return SignVerdict::Zero;
    }
    if iv.is_point() || p.degree() == Some(0) {
        return point_sign(&p.eval_rational(iv.lo()));
    }
    let enc = Enclosurer::new(p, iv, 0);
    let mut pieces = vec![enc.initial(iv)];
    loop {
        let mut pos = false;
        let mut neg = false;
        let mut zero = false;
        for pc in &pieces {
            for v in [&pc.f_lo, &pc.f_hi] {
                match v.cmp0() {
                    std::cmp::Ordering::Greater => pos = true,
                    std::cmp::Ordering::Less => neg = true,
                    std::cmp::Ordering::Equal => zero = true,
                }
            }
        }
        if pos && neg {
            return SignVerdict::Mixed;
        }
        // Only non-monotone pieces whose enclosure straddles zero are open.
        let open = |pc: &Piece| matches!(&pc.enclosure, Some((a, b)) if *a < 0 && *b > 0);
        let n_open = pieces.iter().filter(|pc| open(pc)).count();
        if n_open == 0 {
            let mut lo_all: Option<Rational> = None;
            let mut hi_all: Option<Rational> = None;
            for pc in &pieces {
                let (a, b) = pc.bounds();
                lo_all = Some(match lo_all {
                    Some(x) if x <= a => x,
                    _ => a,
                });
                hi_all = Some(match hi_all {
                    Some(x) if x >= b => x,
                    _ => b,
                });
            }
            let lo_all = lo_all.unwrap();
            let hi_all = hi_all.unwrap();
            return if lo_all > 0 {
                SignVerdict::Positive
            } else if hi_all < 0 {
                SignVerdict::Negative
            } else if lo_all >= 0 && zero {
                SignVerdict::NonNegative
            } else if hi_all <= 0 && zero {
                SignVerdict::NonPositive
            } else {
                SignVerdict::Undetermined
            };
        }
        if pieces.len() + n_open > MAX_PIECES {
            return SignVerdict::Undetermined;
        }
        let mut next = Vec::with_capacity(pieces.len() + n_open);
        for pc in pieces {
            if open(&pc) {
                let (a, b) = enc.split(&pc);
                next.push(a);
                next.push(b);
            } else {
                next.push(pc);
            }
        }
        pieces = next;
    }
}

fn point_sign(v: &Rational) -> SignVerdict {
    match v.cmp0() {
        std::cmp::Ordering::Greater => SignVerdict::Positive,
        std::cmp::Ordering::Less => SignVerdict::Negative,
        std::cmp::Ordering::Equal => SignVerdict::Zero,
    }
}

/// How an algebraic end of a range contributes: the tiny piece between the
/// inner rational boundary and the number itself.
struct EndPiece {
    /// Enclosure of the values on the piece.
    range: RationalInterval,
    /// Sign verdict on the piece.
    sign: SignVerdict,
}

fn end_piece(p: &DeltaPolynomial, a: &AlgebraicNumber, inner: &Rational) -> EndPiece {
    let mut a = a.clone();
    for _ in 0..8 {
        let br = a.bracket().clone();
        let f_inner = p.eval_rational(inner);
        let enc = Enclosurer::new(p, &br, 0);
        let (value, deriv) = enc.enclose(br.lo(), br.hi());
        let v_lo = value.lo().to_rational().expect("finite");
        let v_hi = value.hi().to_rational().expect("finite");
        if a.is_root_of(p) {
            // p(a) = 0 exactly; on the piece p keeps the sign of p(inner)
            // provided a is its only root on the bracket.
            if count_roots(p, &br).unwrap_or(2) == 1 && f_inner != 0 && !deriv.contains_zero() {
                return if f_inner > 0 {
                    EndPiece {
                        range: RationalInterval { lo: Rational::new(), hi: v_hi.max(f_inner) },
                        sign: SignVerdict::NonNegative,
                    }
                } else {
                    EndPiece {
                        range: RationalInterval { lo: v_lo.min(f_inner), hi: Rational::new() },
                        sign: SignVerdict::NonPositive,
                    }
                };
            }
        } else if v_lo > 0 || v_hi < 0 {
            let range = RationalInterval { lo: v_lo.clone(), hi: v_hi };
            let sign = if v_lo > 0 { SignVerdict::Positive } else { SignVerdict::Negative };
            return EndPiece { range, sign };
        }
        let w = Rational::from(br.width() / 1024u32);
        a = a.refined(&w);
    }
    let br = a.bracket().clone();
    let enc = Enclosurer::new(p, &br, 0);
    let (value, _) = enc.enclose(br.lo(), br.hi());
    EndPiece {
        range: RationalInterval {
            lo: value.lo().to_rational().expect("finite"),
            hi: value.hi().to_rational().expect("finite"),
        },
        sign: SignVerdict::Undetermined,
    }
}

fn inner_interval(range: &DeltaRange) -> Option<RationalInterval> {
    let a = match range.lo() {
        Endpoint::Exact(r) => r.clone(),
        Endpoint::Algebraic(x) => x.bracket().hi().clone(),
    };
    let b = match range.hi() {
        Endpoint::Exact(r) => r.clone(),
        Endpoint::Algebraic(x) => x.bracket().lo().clone(),
    };
    RationalInterval::new(a, b).ok()
}

fn combine_signs(signs: &[SignVerdict]) -> SignVerdict {
    use SignVerdict::*;
    if signs.iter().all(|s| *s == Zero) {
        return Zero;
    }
    if signs.contains(&Undetermined) {
        return Undetermined;
    }
    let has_pos = signs.iter().any(|s| matches!(s, Positive | NonNegative));
    let has_neg = signs.iter().any(|s| matches!(s, Negative | NonPositive));
    if signs.contains(&Mixed) || (has_pos && has_neg) {
        return Mixed;
    }
    let weak = signs.iter().any(|s| matches!(s, NonNegative | NonPositive | Zero));
    match (has_pos, has_neg, weak) {
        (true, false, false) => Positive,
        (true, false, true) => NonNegative,
        (false, true, false) => Negative,
        (false, true, true) => NonPositive,
        _ => Undetermined,
    }
}

/// Sign of `p` over a `δ`-range, handling algebraic endpoints exactly.
pub fn sign_over_range(p: &DeltaPolynomial, range: &DeltaRange) -> SignVerdict {
    if p.is_zero() {
        return SignVerdict::Zero;
    }
    if let Some(x) = range.as_rational_point() {
        return point_sign(&p.eval_rational(x));
    }
    if range.is_point() {
        if let Endpoint::Algebraic(a) = range.lo() {
            if a.is_root_of(p) {
                // A nonzero polynomial vanishing at the point.
                return SignVerdict::Zero;
            }
            return end_piece(p, a, a.bracket().lo()).sign;
        }
    }
    let inner = match inner_interval(range) {
        Some(iv) => iv,
        None => return SignVerdict::Undetermined,
    };
    let mut signs = vec![sign_over_interval(p, &inner)];
    if let Endpoint::Algebraic(a) = range.lo() {
        signs.push(end_piece(p, a, inner.lo()).sign);
    }
    if let Endpoint::Algebraic(a) = range.hi() {
        signs.push(end_piece(p, a, inner.hi()).sign);
    }
    combine_signs(&signs)
}

/// Enclosure of `{p(δ) : δ ∈ range}` with algebraic endpoints handled by
/// tiny end pieces.
pub fn range_over_delta_range(p: &DeltaPolynomial, range: &DeltaRange, tol: &Rational) -> RationalInterval {
    if let Some(x) = range.as_rational_point() {
        return RationalInterval::point(p.eval_rational(x));
    }
    let inner = match inner_interval(range) {
        Some(iv) => iv,
        None => return poly_range_over_interval(p, &range.enclosure(), tol),
    };
    let mut out = poly_range_over_interval(p, &inner, tol);
    if let Endpoint::Algebraic(a) = range.lo() {
        out = out.hull(&end_piece(p, a, inner.lo()).range);
    }
    if let Endpoint::Algebraic(a) = range.hi() {
        out = out.hull(&end_piece(p, a, inner.hi()).range);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> DeltaPolynomial {
        DeltaPolynomial::from_rationals(&c.iter().map(|&x| Rational::from(x)).collect::<Vec<_>>())
    }

    fn q(p: i64, d: i64) -> Rational {
        Rational::from((p, d))
    }

    #[test]
    fn linear_range_is_exact() {
        let iv = RationalInterval::new(q(1, 1), q(24244, 10000)).unwrap();
        let r = poly_range_over_interval(&poly(&[0, -1]), &iv, &q(1, 100));
        assert_eq!(r, RationalInterval::new(q(-24244, 10000), q(-1, 1)).unwrap());
    }

    #[test]
    fn constant_range() {
        let iv = RationalInterval::new(q(-3, 1), q(7, 1)).unwrap();
        assert_eq!(poly_range_over_interval(&poly(&[1]), &iv, &q(1, 10)), RationalInterval::point(q(1, 1)));
    }

    #[test]
    fn interior_minimum_within_tolerance() {
        // (δ − 1/3)² − 1 on [0, 1]: true range [−1, −5/9].
        let p = DeltaPolynomial::from_rationals(&[q(-8, 9), q(-2, 3), q(1, 1)]);
        let iv = RationalInterval::new(q(0, 1), q(1, 1)).unwrap();
        let tol = q(1, 1000);
        let r = poly_range_over_interval(&p, &iv, &tol);
        assert!(*r.lo() <= -1 && *r.lo() >= q(-1001, 1000));
        assert_eq!(*r.hi(), q(-5, 9));
    }

    #[test]
    fn signs() {
        let iv = RationalInterval::new(q(1, 1), q(2, 1)).unwrap();
        assert_eq!(sign_over_interval(&poly(&[0, 1]), &iv), SignVerdict::Positive);
        assert_eq!(sign_over_interval(&poly(&[-1, 1]), &iv), SignVerdict::NonNegative);
        assert_eq!(sign_over_interval(&poly(&[-3, 2]), &iv), SignVerdict::Mixed);
        assert_eq!(sign_over_interval(&poly(&[-2, 1]), &iv), SignVerdict::NonPositive);
        assert_eq!(sign_over_interval(&DeltaPolynomial::zero(), &iv), SignVerdict::Zero);
    }

    #[test]
    fn algebraic_endpoint_zero_is_weak() {
        let r = DeltaRange::parse("1..sqrt97m5over2(1e-12)").unwrap();
        // δ² + 5δ − 18 is negative on [1, (√97−5)/2) and zero at the end.
        let p = poly(&[-18, 5, 1]);
        assert_eq!(sign_over_range(&p, &r), SignVerdict::NonPositive);
        let widened = DeltaRange::parse("1..3").unwrap();
        assert_eq!(sign_over_range(&p, &widened), SignVerdict::Mixed);
    }

    #[test]
    fn parse_ranges() {
        let r = DeltaRange::parse("-0.99..7msqrt73over2(1e-12)").unwrap();
        assert!(r.is_negative());
        let n = r.neg();
        assert!(n.is_positive());
        let c = n.lo().to_f64();
        assert!((c - (73f64.sqrt() - 7.0) / 2.0).abs() < 1e-11);
        assert!(DeltaRange::parse("unknown(1e-3)").is_err());
        assert!(DeltaRange::parse("3..2").is_err());
    }

    #[test]
    fn named_constants_are_accurate() {
        let c = |s: &str| Endpoint::parse(s).unwrap().to_f64();
        assert!((c("sqrt97m5over2") - 2.424428900898).abs() < 1e-11);
        assert!((c("alpha") - 2.571366313289).abs() < 1e-11);
        assert!((c("beta") - 2.664479110226972).abs() < 1e-11);
        assert!((c("7msqrt73over2") + 0.77200187265877).abs() < 1e-11);
        assert!((c("9msqrt73over2") - (9.0 - 73f64.sqrt()) / 2.0).abs() < 1e-11);
    }
}
