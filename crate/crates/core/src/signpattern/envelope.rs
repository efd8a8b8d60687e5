//! Asymptotic sign certificates: for every `n ≥ n₀` the dominant frames of
//! the main term outweigh everything else.
//!
//! Write `D(n) = a_ref X^{−1/2} I₁(β s)` with `s = √X` for a reference frame
//! of the dominant level. On a residue `r` of `n` the dominant frames sum to
//! `D(n) C(r)`. All other contributions, divided by `D(n)`, are bounded by
//! three pieces, each decreasing in `s`:
//! * frames with `k ≤ K` and a smaller `Δ/k²`, one by one, through
//!   `I₁(β_f s)/I₁(β s)`;
//! * frames with `k > K`, class by class, through the Bessel sum bound with
//!   start `J0 = (K + 1)/L`;
//! * the error term, through an `n`-uniform bound on `E` and `s/I₁(β s)`.
//!
//! So one inequality at `n₀` settles every `n ≥ n₀`. Residues where the
//! dominant frames cancel exactly move on to the next level.

use rug::{Float, Rational};

use crate::arith::{euler_gamma, gcd, lcm, pi, Interval};
use crate::asymptotic::{class_factors, default_n, estimate_coefficient, lifted_phase, CertifiedSign, ClassFactors};
use crate::modular::{build_frame, check_growth_condition, classify_residue_pairs, ResidueClass};
use crate::qseries::{DeltaRange, ProductSpec};
use crate::special::{bessel_i1, i1_log_derivative};
use crate::{domain, Result};

use super::pattern::{Sign, SignPattern};

/// Deepest level tried when the dominant frames cancel.
const MAX_LEVEL: usize = 3;
/// Bisection depth for `δ`-ranges.
const MAX_SPLIT_DEPTH: u32 = 12;

/// One growing frame.
#[derive(Clone, Debug)]
struct Frame {
    h: u64,
    k: u64,
    delta: Rational,
    rate: Rational,
    plm: Float,
    /// Determines `|Π|` exactly: `(factor, u, min(θ, 1 − θ))` over `I0`.
    key: Vec<(usize, i64, Rational)>,
}

#[derive(Clone, Debug)]
struct LevelFrame {
    frame: Frame,
    /// `ψ` with the summand's phase `π(δψ − 2nh/k)`.
    psi: Rational,
}

struct Catalogue {
    spec: ProductSpec,
    l: u64,
    omega: Rational,
    classes: Vec<ResidueClass>,
    factors: Vec<ClassFactors>,
    frames: Vec<Frame>,
    kmax: u64,
}

impl Catalogue {
    fn new(spec: &ProductSpec, kmax: u64, prec: u32) -> Result<Self> {
        let l = spec.modulus();
        let classes: Vec<ResidueClass> =
            classify_residue_pairs(spec).gt0.into_iter().filter(|c| c.is_admissible()).collect();
        let factors = class_factors(spec, prec);
        let mut frames = Vec::new();
        for k in 1..=kmax {
            let kappa = (k - 1) % l + 1;
            for c in classes.iter().filter(|c| c.kappa == kappa) {
                for h in (c.varkappa..k).step_by(c.kappa as usize).filter(|&h| gcd(h, k) == 1) {
                    let fr = build_frame(spec, h, k)?;
                    let mut key: Vec<(usize, i64, Rational)> = fr
                        .i0
                        .iter()
                        .map(|&i| {
                            let t = fr.factors[i].zeta.clone().expect("I0 factor has a root of unity");
                            let c = Rational::from(1 - &t);
                            (i, fr.factors[i].factor.u, if c < t { c } else { t })
                        })
                        .collect();
                    key.sort();
                    frames.push(Frame {
                        h,
                        k,
                        rate: Rational::from(&c.delta / (k * k)),
                        delta: c.delta.clone(),
                        plm: fr.pi_log_modulus(prec),
                        key,
                    });
                }
            }
        }
        Ok(Catalogue { spec: spec.clone(), l, omega: spec.omega(), classes, factors, frames, kmax })
    }

    /// Distinct rates `Δ/k²`, largest first, down to level `MAX_LEVEL`.
    fn level_rates(&self) -> Vec<Rational> {
        let mut rates: Vec<Rational> = self.frames.iter().map(|f| f.rate.clone()).collect();
        rates.sort_by(|a, b| b.cmp(a));
        rates.dedup();
        rates.truncate(MAX_LEVEL);
        rates
    }

    /// Largest rate any frame beyond the catalogue can have.
    fn rate_beyond(&self) -> Rational {
        let k = self.kmax + 1;
        self.classes.iter().map(|c| Rational::from(&c.delta / (k * k))).max().unwrap_or_default()
    }

    fn level_frames(&self, rate: &Rational) -> Result<Vec<LevelFrame>> {
        self.frames
            .iter()
            .filter(|f| f.rate == *rate)
            .map(|f| {
                let fr = build_frame(&self.spec, f.h, f.k)?;
                let psi = lifted_phase(&self.spec, &fr)? + fr.pi_phase();
                Ok(LevelFrame { frame: f.clone(), psi })
            })
            .collect()
    }

    fn class_factor(&self, c: &ResidueClass) -> &ClassFactors {
        self.factors
            .iter()
            .find(|f| f.class.varkappa == c.varkappa && f.class.kappa == c.kappa)
            .expect("every admissible class has factors")
    }
}

/// Whether `Σ cos(π(aδ − b))` over the terms vanishes identically on the
/// range: single terms with `a = 0`, `b ∈ 1/2 + ℤ`, and pairs of equal
/// weight that differ by a half turn.
fn cancels_exactly(terms: &[(Rational, Rational, &Vec<(usize, i64, Rational)>)]) -> bool {
    let two = Rational::from(2);
    let norm = |b: &Rational| -> Rational {
        let q = Rational::from(b / &two).floor();
        Rational::from(b - q * 2)
    };
    let mut rest: Vec<(Rational, Rational, &Vec<(usize, i64, Rational)>)> = Vec::new();
    for (a, b, key) in terms {
        let (a, b) = if *a < 0 { (Rational::from(-a), Rational::from(-b)) } else { (a.clone(), b.clone()) };
        let b = norm(&b);
        if a == 0 && Rational::from(&b - Rational::from((1, 2))).denom() == &1u32 {
            continue;
        }
        rest.push((a, b, key));
    }
    let mut used = vec![false; rest.len()];
    for i in 0..rest.len() {
        if used[i] {
            continue;
        }
        let (a, b, key) = &rest[i];
        let mut partners = vec![norm(&Rational::from(b + 1))];
        if *a == 0 {
            partners.push(norm(&Rational::from(1 - b.clone())));
        }
        let found = (i + 1..rest.len())
            .find(|&j| !used[j] && rest[j].0 == *a && rest[j].2 == *key && partners.contains(&rest[j].1));
        match found {
            Some(j) => {
                used[i] = true;
                used[j] = true;
            }
            None => return false,
        }
    }
    true
}

/// Enclosure of `cos(πx)` for `x ∈ [lo, hi]`.
fn cos_pi_range(lo: &Rational, hi: &Rational, prec: u32) -> Interval {
    let work = prec + 32;
    let eps = Float::with_val(work, 1) >> (prec - 8);
    let p = pi(work);
    let c = |x: &Rational| Float::with_val(work, Float::with_val(work, x) * &p).cos();
    let (a, b) = (c(lo), c(hi));
    let mut mn = Float::with_val(work, a.min_ref(&b)) - &eps;
    let mut mx = Float::with_val(work, a.max_ref(&b)) + &eps;
    let first = lo.clone().ceil();
    let last = hi.clone().floor();
    let mut m = first;
    while m <= last {
        if m.numer().is_even() {
            mx = Float::with_val(work, 1);
        } else {
            mn = Float::with_val(work, -1);
        }
        m += 1;
    }
    Interval::new(mn.max(&Float::with_val(work, -1)), mx.min(&Float::with_val(work, 1)))
}

/// `[min, max]` of `exp(δx)` over `δ ∈ [dl, du]`, widened slightly.
fn exp_range(x: &Float, dl: &Rational, du: &Rational, prec: u32) -> (Float, Float) {
    let a = Float::with_val(prec, x * Float::with_val(prec, dl)).exp();
    let b = Float::with_val(prec, x * Float::with_val(prec, du)).exp();
    let slack = Float::with_val(prec, 1) >> (prec - 8);
    let lo = Float::with_val(prec, a.min_ref(&b)) * Float::with_val(prec, 1 - &slack);
    let hi = Float::with_val(prec, a.max_ref(&b)) * Float::with_val(prec, 1 + &slack);
    (lo, hi)
}

/// Result of the tail inequality for one level on one `δ`-piece.
#[derive(Clone, Debug)]
struct PieceOutcome {
    ratio: Float,
    min_cos: Float,
    /// Residues whose sign came out wrong or too small.
    failures: Vec<u64>,
    wrong_sign: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct LevelReport {
    pub level: usize,
    /// `Δ/k²` of the level's frames.
    pub rate: Rational,
    pub frames: Vec<(u64, u64)>,
    /// Residues modulo `residue_modulus` whose sign this level decides.
    pub residues: Vec<u64>,
    pub n0: u64,
    /// `N` at `n₀` (smallest over the range).
    pub big_n0: u64,
    /// Head/tail split: frames with `k ≤ K` are bounded one by one.
    pub head_k: u64,
    /// Largest bound on (everything else)/`D` over the `δ`-pieces.
    pub ratio_bound: Float,
    /// Smallest `|C(r)|` over the residues and `δ`-pieces.
    pub min_cos: Float,
    pub pieces: usize,
    pub success: bool,
}

#[derive(Clone, Debug)]
pub struct CrossCheck {
    pub n: u64,
    pub delta: Rational,
    pub main: Float,
    pub bound: Float,
    pub sign: CertifiedSign,
    pub agrees: bool,
}

#[derive(Clone, Debug)]
pub struct AsymptoticCertificate {
    pub residue_modulus: u64,
    pub levels: Vec<LevelReport>,
    /// Residues with pattern symbol `0`: the dominant frames cancel exactly,
    /// and vanishing for all `n` rests on a coefficient identity.
    pub zero_residues: Vec<u64>,
    pub cross_checks: Vec<CrossCheck>,
    pub success: bool,
    pub notes: Vec<String>,
}

impl AsymptoticCertificate {
    /// The threshold from which every level holds.
    pub fn n0(&self) -> u64 {
        self.levels.iter().map(|l| l.n0).max().unwrap_or(0)
    }
}

struct Level {
    rate: Rational,
    frames: Vec<LevelFrame>,
}

struct Setup<'a> {
    cat: &'a Catalogue,
    levels: &'a [Level],
    prec: u32,
}

impl Setup<'_> {
    /// The tail inequality for level `li` on residues `res` over one piece.
    fn evaluate(&self, li: usize, res: &[(u64, Sign)], n0: u64, dl: &Rational, du: &Rational) -> Result<PieceOutcome> {
        let prec = self.prec;
        let cat = self.cat;
        let level = &self.levels[li];
        let reference = &level.frames[0].frame;
        let p = pi(prec);
        let x_at = |d: &Rational| Rational::from(24 * n0) * d + Rational::from(d * d) * &cat.omega;
        let x_min = x_at(dl).min(x_at(du));
        if x_min <= 0 {
            return domain(format!("n0 = {n0} is below -δΩ/24"));
        }
        let s0 = Float::with_val(prec, &x_min).sqrt();
        let big_n0 = default_n(&cat.spec, dl, n0)?.min(default_n(&cat.spec, du, n0)?);
        let l = cat.l;
        let j0 = (big_n0 / l).saturating_sub(1);
        if j0 < 2 {
            return domain(format!("N = {big_n0} at n0 = {n0} is too small for the tail bound"));
        }
        // Every tail argument must stay below the level's: L·J0 > k_ref √(Δ_c/Δ_ref).
        for c in &cat.classes {
            let lhs = Rational::from((l * j0) * (l * j0)) * &reference.delta;
            let rhs = Rational::from(reference.k * reference.k) * &c.delta;
            if lhs <= rhs {
                return domain(format!("n0 = {n0} leaves the tail too close to level {}", li + 1));
            }
        }
        let head_k = l * j0 - 1;
        if head_k > cat.kmax {
            return domain("frame catalogue is too short");
        }
        let beta = Float::with_val(prec, &reference.delta).sqrt() * &p / (6 * reference.k);
        let t0 = Float::with_val(prec, &beta * &s0);
        let i_t0 = bessel_i1(&t0, prec)?;
        let dref = Float::with_val(prec, &reference.delta);

        // Frames with k ≤ K below this level.
        let mut ratio = Float::new(prec);
        for f in cat.frames.iter().filter(|f| f.k <= head_k && f.rate < level.rate) {
            let d = Float::with_val(prec, &f.plm - &reference.plm);
            let (_, w) = exp_range(&d, dl, du, prec);
            let scale = Float::with_val(prec, &f.delta / &dref).sqrt() * reference.k / f.k;
            let bf = Float::with_val(prec, &f.delta).sqrt() * &p / (6 * f.k);
            let i = bessel_i1(&Float::with_val(prec, &bf * &s0), prec)?;
            ratio += w * scale * i / &i_t0;
        }

        // Frames with k > K, class by class.
        let dl_f = Float::with_val(prec, dl);
        let du_f = Float::with_val(prec, du);
        let kappa0_max = Float::with_val(prec, &p / (dl_f.clone() * 6u32)).sqrt();
        let kappa0_min = Float::with_val(prec, &p / (du_f.clone() * 6u32)).sqrt();
        let mut harmonic = Float::new(prec);
        for j in 1..j0 {
            harmonic += Float::with_val(prec, 1) / j;
        }
        let y_factor = Float::with_val(prec, 1 + Float::with_val(prec, 1) / Float::with_val(prec, &kappa0_min * &s0));
        let cc = Float::with_val(prec, kappa0_max * y_factor / l).ln()
            + euler_gamma(prec)
            + Float::with_val(prec, 1) / (2 * j0 + 2)
            - harmonic;
        let g0 = i1_log_derivative(&t0, prec)?;
        let ln_t0 = Float::with_val(prec, t0.ln_ref());
        for c in &cat.classes {
            let cf = cat.class_factor(c);
            let rho = Float::with_val(prec, 1) / c.kappa + Float::with_val(prec, 1) / (head_k + 1);
            let d = Float::with_val(prec, &cf.log_root - &reference.plm);
            let (_, w) = exp_range(&d, dl, du, prec);
            let scale = Float::with_val(prec, &c.delta / &dref).sqrt() * reference.k;
            let coef = rho * w * scale;
            let gamma_c = Float::with_val(prec, &c.delta).sqrt() * &p / (12 * l);
            // γ_c s (log s + cc − 1) = (γ_c/β) t (log t + κ).
            let kappa = Float::with_val(prec, &cc - 1u32) - Float::with_val(prec, beta.ln_ref());
            let needed = Float::with_val(prec, 1) / Float::with_val(prec, &g0 - 1u32) - &ln_t0;
            let kappa = kappa.max(&(needed + (Float::with_val(prec, 1) >> 20)));
            let a = Float::with_val(prec, &gamma_c / &beta) * &t0 * Float::with_val(prec, &ln_t0 + &kappa) / &i_t0;
            let arg = Float::with_val(prec, &gamma_c * &s0) * 2u32 / j0;
            let b = bessel_i1(&arg, prec)? * j0 / &i_t0;
            ratio += coef * (a + b);
        }

        // The error term: E ≤ e Σ exp(δ(πΔ/12 + log_root)) inner(δ) sup W/N.
        let e = Float::with_val(prec, 1).exp();
        let mut e_star = Float::new(prec);
        for cf in &cat.factors {
            let c = &cf.class;
            if !c.is_admissible() {
                continue;
            }
            let g = Float::with_val(prec, &c.delta) * &p / 12u32 + &cf.log_root - &reference.plm;
            let (_, w) = exp_range(&g, dl, du, prec);
            let poch = Float::with_val(prec, &cf.log_poch * &du_f).exp();
            let inner = if c.delta > 0 {
                Float::with_val(prec, poch - 1u32) * 2u32 + Float::with_val(prec, 2u32).sqrt() * &p
            } else {
                poch * 2u32
            };
            e_star += w * inner * weight_density(c, l, big_n0, prec)?;
        }
        let a_ref_inv = Float::with_val(prec, reference.k) / (Float::with_val(prec, &dref).sqrt() * &p * 2u32 * &dl_f);
        ratio += e * e_star * a_ref_inv * &s0 / &i_t0;
        ratio *= Float::with_val(prec, 1 + (Float::with_val(prec, 1) >> 64));

        // The dominant sum per residue.
        let mut min_cos: Option<Float> = None;
        let mut failures = Vec::new();
        let mut wrong_sign = Vec::new();
        for (r, sign) in res {
            let mut sum = Interval::zero(prec);
            for lf in &level.frames {
                let f = &lf.frame;
                let d = Float::with_val(prec, &f.plm - &reference.plm);
                let (wl, wh) = exp_range(&d, dl, du, prec);
                let shift = Rational::from((2 * r * f.h, f.k));
                let a1 = Rational::from(dl * &lf.psi) - &shift;
                let a2 = Rational::from(du * &lf.psi) - &shift;
                let (lo, hi) = if a1 <= a2 { (a1, a2) } else { (a2, a1) };
                let cosr = cos_pi_range(&lo, &hi, prec);
                sum = sum.add(&cosr.mul(&Interval::new(wl, wh)));
            }
            let signed = if *sign == Sign::Minus { sum.neg() } else { sum };
            let margin = signed.lo().clone();
            if *signed.hi() < 0 {
                wrong_sign.push(*r);
            }
            if margin <= ratio {
                failures.push(*r);
            }
            let m = Float::with_val(prec, margin.abs_ref());
            min_cos = Some(match min_cos {
                Some(x) if x < m => x,
                _ => m,
            });
        }
        Ok(PieceOutcome { ratio, min_cos: min_cos.unwrap_or_else(|| Float::new(prec)), failures, wrong_sign })
    }
}

/// `sup_{N ≥ N0} W(N)/N` with `W(N) = Σ_{k ≤ N} #h/k` over the class.
fn weight_density(c: &ResidueClass, l: u64, n0: u64, prec: u32) -> Result<Float> {
    let kappa = c.kappa;
    if (n0 as f64) < std::f64::consts::E * kappa as f64 {
        return domain("N too small for the error-term density bound");
    }
    let one = || Float::with_val(prec, 1);
    let first = one() / (kappa * l) + Float::with_val(prec, Rational::from((l - kappa, l))) / (kappa * n0);
    let harmonic = one() / kappa + Float::with_val(prec, Rational::from((n0, kappa))).ln() / l;
    let second = Float::with_val(prec, Rational::from((kappa - 1, kappa))) * harmonic / n0;
    Ok(first + second)
}

/// Splits `[lo, hi]` until every piece passes or the depth runs out.
fn cover(
    setup: &Setup,
    li: usize,
    res: &[(u64, Sign)],
    n0: u64,
    lo: &Rational,
    hi: &Rational,
    depth: u32,
    acc: &mut Vec<PieceOutcome>,
) -> Result<bool> {
    let out = setup.evaluate(li, res, n0, lo, hi)?;
    let ok = out.failures.is_empty();
    if ok || depth == 0 || lo == hi || !out.wrong_sign.is_empty() && lo == hi {
        acc.push(out);
        return Ok(ok);
    }
    let mid = Rational::from(lo + hi) / 2;
    let a = cover(setup, li, res, n0, lo, &mid, depth - 1, acc)?;
    let b = cover(setup, li, res, n0, &mid, hi, depth - 1, acc)?;
    Ok(a && b)
}

/// Certifies that for `n ≥ n₀` the sign of `c_δ(n)` follows `pattern` on the
/// whole range, for `δ > 0`. `thresholds[i]` is the `n₀` tried for level
/// `i + 1` (the last entry repeats); with no thresholds the smallest working
/// `n₀` is searched for.
pub fn asymptotic_certificate(
    spec: &ProductSpec,
    range: &DeltaRange,
    pattern: &SignPattern,
    thresholds: &[u64],
    prec: u32,
) -> Result<AsymptoticCertificate> {
    let enc = range.enclosure();
    if *enc.lo() <= 0 {
        return domain("asymptotic certificate needs delta > 0; rewrite with the inverse product");
    }
    check_growth_condition(spec, enc.hi())?;
    let (dl, du) = (enc.lo().clone(), enc.hi().clone());
    let mut notes = Vec::new();

    // Catalogue large enough for the largest threshold; searching extends it.
    let n_hint = thresholds.iter().copied().max().unwrap_or(4096);
    let kmax = default_n(spec, &du, n_hint)?.max(default_n(spec, &dl, n_hint)?) + spec.modulus();
    let cat = Catalogue::new(spec, kmax, prec)?;
    let rates = cat.level_rates();
    if rates.is_empty() {
        return domain("no growing frames: the main term has no exponential part");
    }
    let beyond = cat.rate_beyond();
    let mut levels = Vec::new();
    for rate in rates.into_iter().filter(|r| *r > beyond) {
        let frames = cat.level_frames(&rate)?;
        levels.push(Level { rate, frames });
    }

    let mut modulus = pattern.period() as u64;
    for lv in &levels {
        for f in &lv.frames {
            modulus = lcm(modulus, f.frame.k);
        }
    }

    // Assign each residue to the first level that does not cancel exactly.
    let point = range.as_rational_point().cloned();
    let mut by_level: Vec<Vec<(u64, Sign)>> = vec![Vec::new(); levels.len()];
    let mut zero_residues = Vec::new();
    let mut success = true;
    for r in 0..modulus {
        let sign = pattern.at(r);
        let mut assigned = None;
        for (li, lv) in levels.iter().enumerate() {
            let terms: Vec<_> = lv
                .frames
                .iter()
                .map(|lf| {
                    let shift = Rational::from((2 * r * lf.frame.h, lf.frame.k));
                    match &point {
                        Some(d) => (Rational::new(), shift - Rational::from(d * &lf.psi), &lf.frame.key),
                        None => (lf.psi.clone(), shift, &lf.frame.key),
                    }
                })
                .collect();
            if !cancels_exactly(&terms) {
                assigned = Some(li);
                break;
            }
            if sign == Sign::Zero {
                break;
            }
        }
        match (sign, assigned) {
            (Sign::Zero, None) => zero_residues.push(r),
            (Sign::Zero, Some(_)) => {
                success = false;
                notes.push(format!("residue {r}: pattern has 0 but the dominant frames do not cancel"));
            }
            (_, Some(li)) => by_level[li].push((r, sign)),
            (_, None) => {
                success = false;
                notes.push(format!("residue {r}: every available level cancels"));
            }
        }
    }
    if !zero_residues.is_empty() {
        notes.push(format!(
            "residues {zero_residues:?} mod {modulus}: the dominant frames cancel exactly; vanishing for all n rests on a coefficient identity"
        ));
    }

    let setup = Setup { cat: &cat, levels: &levels, prec };
    let mut reports = Vec::new();
    let mut cross_checks = Vec::new();
    for (li, res) in by_level.iter().enumerate() {
        if res.is_empty() {
            continue;
        }
        let run = |n0: u64| -> Result<(bool, Vec<PieceOutcome>)> {
            let mut acc = Vec::new();
            let depth = if dl == du { 0 } else { MAX_SPLIT_DEPTH };
            let ok = cover(&setup, li, res, n0, &dl, &du, depth, &mut acc)?;
            Ok((ok, acc))
        };
        let threshold = thresholds.get(li).or(thresholds.last()).copied();
        let (n0, ok, pieces) = match threshold {
            Some(n0) => match run(n0) {
                Ok((ok, p)) => (n0, ok, p),
                Err(e) => {
                    notes.push(format!("level {}: {e}", li + 1));
                    (n0, false, Vec::new())
                }
            },
            None => search(&run, &cat, &dl, &du)?,
        };
        if !ok {
            success = false;
            let mut wrong: Vec<u64> = pieces.iter().flat_map(|p| p.wrong_sign.iter().copied()).collect();
            wrong.sort_unstable();
            wrong.dedup();
            if !wrong.is_empty() {
                notes.push(format!("level {}: dominant sign disagrees with the pattern at residues {wrong:?}", li + 1));
            }
        }
        let ratio = pieces.iter().map(|p| p.ratio.clone()).fold(Float::new(prec), |a, b| a.max(&b));
        let min_cos =
            pieces.iter().map(|p| p.min_cos.clone()).reduce(|a, b| a.min(&b)).unwrap_or_else(|| Float::new(prec));
        let big_n0 = default_n(spec, &dl, n0)?.min(default_n(spec, &du, n0)?);
        reports.push(LevelReport {
            level: li + 1,
            rate: levels[li].rate.clone(),
            frames: levels[li].frames.iter().map(|f| (f.frame.h, f.frame.k)).collect(),
            residues: res.iter().map(|(r, _)| *r).collect(),
            n0,
            big_n0,
            head_k: (big_n0 / spec.modulus()).saturating_sub(1) * spec.modulus() - 1,
            ratio_bound: ratio,
            min_cos,
            pieces: pieces.len(),
            success: ok,
        });
        // Direct comparison at the first n ≥ n0 on this level's residues.
        if ok {
            let n = (n0..n0 + modulus).find(|n| res.iter().any(|(r, _)| *r == n % modulus)).unwrap_or(n0);
            let d = dl.clone();
            let est = estimate_coefficient(spec, &d, n, prec)?;
            let expected = match pattern.at(n) {
                Sign::Plus => CertifiedSign::Positive,
                Sign::Minus => CertifiedSign::Negative,
                Sign::Zero => CertifiedSign::Undetermined,
            };
            let agrees = est.sign_certified == expected;
            if !agrees {
                notes.push(format!("direct comparison at n = {n}, δ = {d} gives {}", est.sign_certified));
            }
            cross_checks.push(CrossCheck {
                n,
                delta: d,
                main: est.main,
                bound: est.bound,
                sign: est.sign_certified,
                agrees,
            });
        }
    }
    Ok(AsymptoticCertificate { residue_modulus: modulus, levels: reports, zero_residues, cross_checks, success, notes })
}

/// Smallest `n₀` found by doubling and bisection. The tail inequality is
/// monotone in `n₀` up to the rounding of `N`, so the result is the first
/// success of the scan, confirmed directly.
fn search(
    run: &dyn Fn(u64) -> Result<(bool, Vec<PieceOutcome>)>,
    cat: &Catalogue,
    dl: &Rational,
    du: &Rational,
) -> Result<(u64, bool, Vec<PieceOutcome>)> {
    let limit = {
        // Largest n the catalogue supports.
        let mut n = 1u64;
        while default_n(&cat.spec, dl, n * 2)?.max(default_n(&cat.spec, du, n * 2)?) + cat.l <= cat.kmax {
            n *= 2;
        }
        n * 2
    };
    let mut lo = 1u64;
    let mut hi = None;
    let mut n = 16u64;
    while n <= limit {
        if matches!(run(n), Ok((true, _))) {
            hi = Some(n);
            break;
        }
        lo = n;
        n *= 2;
    }
    let Some(mut hi) = hi else {
        return Ok((limit, false, Vec::new()));
    };
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if matches!(run(mid), Ok((true, _))) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let (ok, pieces) = run(hi)?;
    Ok((hi, ok, pieces))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(name: &str) -> ProductSpec {
        ProductSpec::preset(name).unwrap()
    }

    #[test]
    fn cos_range_encloses() {
        let r = cos_pi_range(&Rational::from((-1, 4)), &Rational::from((1, 4)), 128);
        assert!(*r.hi() >= 1 && r.lo().to_f64() < 0.7072 && r.lo().to_f64() > 0.7070);
        let r = cos_pi_range(&Rational::from((3, 4)), &Rational::from((5, 4)), 128);
        assert!(*r.lo() <= -1);
    }

    #[test]
    fn exact_cancellation() {
        let key = vec![];
        let half = Rational::from((1, 2));
        assert!(cancels_exactly(&[(Rational::new(), half.clone(), &key)]));
        let t = |a: i64, b: (i64, i64)| (Rational::from(a), Rational::from(b), &key);
        assert!(cancels_exactly(&[t(1, (1, 3)), t(1, (4, 3))]));
        assert!(!cancels_exactly(&[t(1, (1, 3)), t(1, (1, 3))]));
        assert!(cancels_exactly(&[t(0, (1, 3)), t(0, (2, 3))]));
    }

    #[test]
    fn q5_at_published_threshold() {
        let pat: SignPattern = "+-+--".parse().unwrap();
        let c = asymptotic_certificate(&q("Q5"), &DeltaRange::point(Rational::from(1)), &pat, &[176], 192).unwrap();
        assert!(c.success, "{:?}", c.notes);
        assert_eq!(c.levels.len(), 1);
        assert!(c.cross_checks.iter().all(|x| x.agrees));
    }
}
