use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand};
use rug::{Float, Rational};
use serde_json::{json, Value};

use borwein_core::arith::{fmt_float, parse_rational};
use borwein_core::asymptotic::{
    default_n, error_bound, estimate_coefficient, lifted_phase, main_term, transformation_check,
};
use borwein_core::modular::{
    build_frame, check_growth_condition, classify_residue_pairs, dedekind_sum, growth_limit, max_growth_ratio,
};
use borwein_core::qseries::{expand_rational_power, expand_real_power, DeltaRange, ProductSpec, RationalInterval};
use borwein_core::signpattern::{
    certify, critical_delta, table_ranges, verify_exact, Certificate, ExactVerdict, Rounding, SignPattern, Status,
};

mod repro;

#[derive(Parser)]
#[command(name = "borwein", version, about = "Coefficients and sign patterns of real powers of theta-type products")]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, env = "BORWEIN_PRECISION", default_value_t = 192)]
    precision: u32,
    /// Series order for `expand`.
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ProductArg {
    /// Preset (Q5, Q6, Q8, Q10, Q12, G3, borwein:p) or factors `m:n:u,...`.
    #[arg(long)]
    product: String,
}

impl ProductArg {
    fn spec(&self) -> Result<ProductSpec> {
        self.product.parse().map_err(|e| anyhow!("{e}"))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients c_δ(n) for n ≤ order: polynomials in δ, or values at a rational δ.
    Expand {
        #[command(flatten)]
        product: ProductArg,
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<String>,
    },
    /// One exact coefficient at a rational δ.
    Coeff {
        #[command(flatten)]
        product: ProductArg,
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
    },
    /// Dedekind sum s(d, c).
    Dedekind {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        c: i64,
    },
    /// All (h, k)-dependent data of one summand.
    Frame {
        #[command(flatten)]
        product: ProductArg,
        #[arg(long)]
        h: u64,
        #[arg(long)]
        k: u64,
    },
    /// Residue classes, Ω, the maximal growth rate and the growth limit.
    Classify {
        #[command(flatten)]
        product: ProductArg,
    },
    /// Main term at (δ, n).
    Mainterm(PointArgs),
    /// Error bound at (δ, n).
    Errorbound(PointArgs),
    /// Main term, error bound and the sign they certify.
    Estimate(PointArgs),
    /// Certify a sign pattern over a δ-range.
    Verify {
        #[command(flatten)]
        product: ProductArg,
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, allow_hyphen_values = true)]
        pattern: String,
        /// Exact check only, for 0 ≤ n ≤ nmax.
        #[arg(long)]
        nmax: Option<u64>,
        /// Thresholds per level, comma separated; default searches.
        #[arg(long, value_delimiter = ',')]
        n0: Vec<u64>,
    },
    /// Real roots of c_δ(n) as a polynomial in δ.
    Critical {
        #[command(flatten)]
        product: ProductArg,
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        lo: String,
        #[arg(long, allow_hyphen_values = true)]
        hi: String,
        #[arg(long, default_value = "1e-12")]
        width: String,
    },
    /// CSV of rounded enclosures n,lo,hi over a δ-range (outward unless --nearest).
    Table {
        #[command(flatten)]
        product: ProductArg,
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long)]
        nmax: u64,
        #[arg(long, default_value_t = 1)]
        decimals: u32,
        /// Round tight enclosures to nearest instead of outward.
        #[arg(long)]
        nearest: bool,
    },
    /// Relative error of the modular transformation at one point.
    TransformCheck {
        #[command(flatten)]
        product: ProductArg,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        #[arg(long)]
        h: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        z_re: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        z_im: f64,
    },
    /// Replay the published constants, roots and theorem certificates.
    Repro,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    product: ProductArg,
    #[arg(long, allow_hyphen_values = true)]
    delta: String,
    #[arg(long)]
    n: u64,
    /// Truncation N; defaults to ⌈√(4π(n + δΩ/24))⌉.
    #[arg(long)]
    big_n: Option<u64>,
}

#[derive(Args)]
struct RangeArgs {
    /// A single δ (rational or named constant).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "delta_range")]
    delta: Option<String>,
    /// `a..b` with rationals or named constants such as `sqrt97m5over2(1e-12)`.
    #[arg(long, allow_hyphen_values = true)]
    delta_range: Option<String>,
}

impl RangeArgs {
    fn range(&self) -> Result<DeltaRange> {
        let s = self
            .delta
            .as_ref()
            .or(self.delta_range.as_ref())
            .ok_or_else(|| anyhow!("give --delta or --delta-range"))?;
        DeltaRange::parse(s).map_err(|e| anyhow!("{e}"))
    }
}

fn rational(s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| anyhow!("not a rational number: '{s}'"))
}

fn q(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn fl(x: &Float) -> Value {
    json!({ "decimal": fmt_float(x, 30), "bits": x.prec() })
}

fn emit(json_mode: bool, value: Value, text: impl FnOnce() -> String) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(&value).expect("JSON serializes"));
    } else {
        println!("{}", text());
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let prec = cli.precision;
    let js = cli.json;
    match &cli.command {
        Command::Expand { product, delta } => {
            let spec = product.spec()?;
            let order = cli.order.unwrap_or(20);
            match delta {
                Some(d) => {
                    let d = rational(d)?;
                    let c = expand_rational_power(&spec, &d, order);
                    emit(js, json!({ "delta": q(&d), "coefficients": c.iter().map(q).collect::<Vec<_>>() }), || {
                        c.iter().enumerate().map(|(n, v)| format!("{n}: {v}")).collect::<Vec<_>>().join("\n")
                    });
                }
                None => {
                    let s = expand_real_power(&spec, order);
                    let polys: Vec<Value> =
                        s.coeffs().iter().map(|p| Value::Array(p.coeffs().iter().map(q).collect())).collect();
                    emit(js, json!({ "coefficients": polys }), || {
                        s.coeffs().iter().enumerate().map(|(n, p)| format!("{n}: {p}")).collect::<Vec<_>>().join("\n")
                    });
                }
            }
            Ok(0)
        }
        Command::Coeff { product, n, delta } => {
            let spec = product.spec()?;
            let d = rational(delta)?;
            let c = expand_rational_power(&spec, &d, *n as usize);
            let v = &c[*n as usize];
            emit(js, json!({ "n": n, "delta": q(&d), "value": q(v) }), || v.to_string());
            Ok(0)
        }
        Command::Dedekind { d, c } => {
            let s = dedekind_sum(*d, *c)?;
            emit(js, json!({ "d": d, "c": c, "value": q(&s) }), || s.to_string());
            Ok(0)
        }
        Command::Frame { product, h, k } => {
            let spec = product.spec()?;
            let fr = build_frame(&spec, *h, *k)?;
            let lifted = lifted_phase(&spec, &fr)?;
            let factors: Vec<Value> = fr
                .factors
                .iter()
                .map(|x| {
                    json!({
                        "m": x.factor.m, "n": x.factor.n, "u": x.factor.u, "d": x.d,
                        "lambda": x.lambda, "lambda_star": q(&x.lambda_star), "h_prime": x.h_prime, "b": x.b,
                        "qhat1": q(&x.qhat1), "qhat2": q(&x.qhat2),
                        "zeta": x.zeta.as_ref().map(q), "phase": q(&x.phase),
                    })
                })
                .collect();
            let plm = fr.pi_log_modulus(prec);
            let v = json!({
                "h": h, "k": k, "Delta": q(&fr.delta_hk), "I0": fr.i0, "I1": fr.i1,
                "front_phase": q(&fr.front_phase), "omega_phase": q(&fr.omega_phase),
                "theta_phase": q(&fr.theta_phase), "literal_phase": q(&fr.literal_phase()),
                "lifted_phase": q(&lifted), "pi_phase": q(&fr.pi_phase()), "pi_log_modulus": fl(&plm),
                "factors": factors,
            });
            emit(js, v.clone(), || serde_json::to_string_pretty(&v).expect("JSON serializes"));
            Ok(0)
        }
        Command::Classify { product } => {
            let spec = product.spec()?;
            let c = classify_residue_pairs(&spec);
            let list = |v: &[borwein_core::modular::ResidueClass]| -> Vec<Value> {
                v.iter()
                    .map(|c| json!({ "varkappa": c.varkappa, "kappa": c.kappa, "Delta": q(&c.delta), "admissible": c.is_admissible() }))
                    .collect()
            };
            let ratio = max_growth_ratio(&spec).ok();
            let limit = growth_limit(&spec);
            let v = json!({
                "L": spec.modulus(), "Omega": q(&spec.omega()),
                "gt0": list(&c.gt0), "le0": list(&c.le0),
                "max_rate": ratio.as_ref().map(|r| q(&r.value)),
                "witnesses": ratio.as_ref().map(|r| r.witnesses.clone()),
                "growth_limit": limit.as_ref().map(q),
            });
            emit(js, v, || {
                let mut out = vec![format!("L = {}, Omega = {}", spec.modulus(), spec.omega())];
                let fmt = |v: &[borwein_core::modular::ResidueClass]| {
                    v.iter()
                        .map(|c| {
                            format!(
                                "({},{}) Δ={}{}",
                                c.varkappa,
                                c.kappa,
                                c.delta,
                                if c.is_admissible() { "" } else { " [no coprime frames]" }
                            )
                        })
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                out.push(format!("L>0: {}", fmt(&c.gt0)));
                out.push(format!("L<=0: {}", fmt(&c.le0)));
                if let Some(r) = &ratio {
                    out.push(format!("max Δ/k² = {} at {:?}", r.value, r.witnesses));
                }
                if let Some(l) = &limit {
                    out.push(format!("growth condition holds for 0 < δ < {l}"));
                }
                out.join("\n")
            });
            Ok(0)
        }
        Command::Mainterm(p) | Command::Errorbound(p) | Command::Estimate(p) => point_command(cli, p),
        Command::Verify { product, range, pattern, nmax, n0 } => {
            let spec = product.spec()?;
            let range = range.range()?;
            let pattern: SignPattern = pattern.parse()?;
            if let Some(nmax) = nmax {
                let (s, r) =
                    if range.is_negative() { (spec.inverse(), range.neg()) } else { (spec.clone(), range.clone()) };
                let res = verify_exact(&s, &r, &pattern, *nmax);
                let ok = res.iter().all(|r| r.verdict.is_consistent());
                let rows: Vec<Value> = res
                    .iter()
                    .map(|r| json!({ "n": r.n, "expected": r.expected.as_char().to_string(), "verdict": r.verdict.to_string() }))
                    .collect();
                emit(js, json!({ "consistent": ok, "results": rows }), || {
                    let bad: Vec<String> = res
                        .iter()
                        .filter(|r| !r.verdict.is_consistent())
                        .map(|r| format!("{} ({})", r.n, r.verdict))
                        .collect();
                    let weak: Vec<u64> = res.iter().filter(|r| r.verdict == ExactVerdict::Weak).map(|r| r.n).collect();
                    format!(
                        "exact check 0..={nmax}: {}\nweak: {weak:?}{}",
                        if ok { "consistent" } else { "inconsistent" },
                        if bad.is_empty() {
                            String::new()
                        } else {
                            format!("\nviolations/undetermined: {}", bad.join(", "))
                        }
                    )
                });
                return Ok(if ok { 0 } else { 1 });
            }
            let cert = certify(&spec, &range, &pattern, n0, prec);
            emit(js, certificate_json(&cert), || certificate_text(&cert));
            Ok(if cert.status == Status::Proven { 0 } else { 1 })
        }
        Command::Critical { product, n, lo, hi, width } => {
            let spec = product.spec()?;
            let iv = RationalInterval::new(rational(lo)?, rational(hi)?)?;
            let roots = critical_delta(&spec, *n, &iv, &rational(width)?)?;
            let v: Vec<Value> = roots
                .iter()
                .map(
                    |r| json!({ "lo": q(r.lo()), "hi": q(r.hi()), "approx": format!("{:.15}", r.midpoint().to_f64()) }),
                )
                .collect();
            emit(js, json!({ "n": n, "roots": v }), || {
                roots
                    .iter()
                    .map(|r| format!("{:.15}  [{}, {}]", r.midpoint().to_f64(), r.lo(), r.hi()))
                    .collect::<Vec<_>>()
                    .join("\n")
            });
            Ok(0)
        }
        Command::Table { product, range, nmax, decimals, nearest } => {
            let spec = product.spec()?;
            let rounding = if *nearest { Rounding::Nearest } else { Rounding::Outward };
            let rows = table_ranges(&spec, &range.range()?, *nmax, *decimals, rounding);
            let show = |r: &Rational| format!("{:.*}", *decimals as usize, r.to_f64());
            if js {
                let v: Vec<Value> = rows.iter().map(|r| json!({ "n": r.n, "lo": q(&r.lo), "hi": q(&r.hi) })).collect();
                emit(true, Value::Array(v), String::new);
            } else {
                println!("n,lo,hi");
                for r in &rows {
                    println!("{},{},{}", r.n, show(&r.lo), show(&r.hi));
                }
            }
            Ok(0)
        }
        Command::TransformCheck { product, delta, h, k, z_re, z_im } => {
            let spec = product.spec()?;
            let d = rational(delta)?;
            let e = transformation_check(
                &spec,
                &d,
                *h,
                *k,
                &Float::with_val(prec, *z_re),
                &Float::with_val(prec, *z_im),
                prec,
            )?;
            emit(js, json!({ "relative_error": fl(&e) }), || fmt_float(&e, 6));
            Ok(0)
        }
        Command::Repro => repro::run(prec, js),
    }
}

fn point_command(cli: &Cli, p: &PointArgs) -> Result<u8> {
    let prec = cli.precision;
    let spec = p.product.spec()?;
    let delta = rational(&p.delta)?;
    let (s, d) = if delta < 0 { (spec.inverse(), Rational::from(-&delta)) } else { (spec.clone(), delta.clone()) };
    check_growth_condition(&s, &d)?;
    let big_n = match p.big_n {
        Some(n) => n,
        None => default_n(&s, &d, p.n)?,
    };
    match &cli.command {
        Command::Mainterm(_) => {
            let m = main_term(&s, &d, p.n, big_n, prec)?;
            emit(
                cli.json,
                json!({ "n": p.n, "delta": q(&delta), "N": big_n, "re": fl(&m.re), "im": fl(&m.im) }),
                || format!("{} (imaginary residue {}, N = {big_n})", fmt_float(&m.re, 20), fmt_float(&m.im, 3)),
            );
        }
        Command::Errorbound(_) => {
            let e = error_bound(&s, &d, p.n, big_n, prec)?;
            emit(cli.json, json!({ "n": p.n, "delta": q(&delta), "N": big_n, "bound": fl(&e) }), || {
                format!("{} (N = {big_n})", fmt_float(&e, 20))
            });
        }
        _ => {
            if p.big_n.is_some() {
                bail!("estimate always uses the default N");
            }
            let e = estimate_coefficient(&spec, &delta, p.n, prec)?;
            emit(
                cli.json,
                json!({
                    "n": p.n, "delta": q(&delta), "N": e.big_n, "main": fl(&e.main),
                    "imag_residue": fl(&e.imag_residue), "bound": fl(&e.bound), "sign": e.sign_certified.to_string(),
                }),
                || {
                    format!(
                        "main  = {}\nbound = {}\nN     = {}\nsign  = {}",
                        fmt_float(&e.main, 20),
                        fmt_float(&e.bound, 20),
                        e.big_n,
                        e.sign_certified
                    )
                },
            );
        }
    }
    Ok(0)
}

pub(crate) fn certificate_json(c: &Certificate) -> Value {
    let asym = c.asymptotic.as_ref().map(|a| {
        json!({
            "success": a.success,
            "n0": a.n0(),
            "residue_modulus": a.residue_modulus,
            "zero_residues": a.zero_residues,
            "levels": a.levels.iter().map(|l| json!({
                "level": l.level, "rate": q(&l.rate), "frames": l.frames, "residues": l.residues,
                "n0": l.n0, "N": l.big_n0, "K": l.head_k, "ratio_bound": fl(&l.ratio_bound),
                "min_cos": fl(&l.min_cos), "pieces": l.pieces, "success": l.success,
            })).collect::<Vec<_>>(),
            "cross_checks": a.cross_checks.iter().map(|x| json!({
                "n": x.n, "delta": q(&x.delta), "main": fl(&x.main), "bound": fl(&x.bound),
                "sign": x.sign.to_string(), "agrees": x.agrees,
            })).collect::<Vec<_>>(),
        })
    });
    json!({
        "product": c.spec.to_string(),
        "delta_range": c.delta_range.to_string(),
        "pattern": c.pattern.to_string(),
        "inverted": c.inverted,
        "exact_upto": c.exact_upto,
        "exact_results": c.exact_results.iter().map(|r| json!({
            "n": r.n, "expected": r.expected.as_char().to_string(), "verdict": r.verdict.to_string(),
        })).collect::<Vec<_>>(),
        "asymptotic": asym,
        "status": c.status.to_string(),
        "diagnostics": c.diagnostics,
    })
}

pub(crate) fn certificate_text(c: &Certificate) -> String {
    let mut out = vec![format!("product {} over δ ∈ {}, pattern {}", c.spec, c.delta_range, c.pattern)];
    if c.inverted {
        out.push("negative δ: analysed as the inverse product with δ′ = −δ".into());
    }
    let count = |v: ExactVerdict| c.exact_results.iter().filter(|r| r.verdict == v).count();
    out.push(format!(
        "exact 0 ≤ n < {}: strict {}, weak {}, zero {}, violation {}, undetermined {}",
        c.exact_upto,
        count(ExactVerdict::Strict),
        count(ExactVerdict::Weak),
        count(ExactVerdict::Zero),
        count(ExactVerdict::Violation),
        count(ExactVerdict::Undetermined)
    ));
    let weak = c.weak_points();
    if !weak.is_empty() {
        out.push(format!("weak signs at n = {weak:?}"));
    }
    if let Some(a) = &c.asymptotic {
        for l in &a.levels {
            out.push(format!(
                "level {}: Δ/k² = {}, frames {:?}, {} residues mod {}, n0 = {}, N = {}, ratio ≤ {}, min |C| = {}{}",
                l.level,
                l.rate,
                l.frames,
                l.residues.len(),
                a.residue_modulus,
                l.n0,
                l.big_n0,
                fmt_float(&l.ratio_bound, 6),
                fmt_float(&l.min_cos, 6),
                if l.success { "" } else { "  FAILED" }
            ));
        }
        for x in &a.cross_checks {
            out.push(format!(
                "direct check n = {}: main {} vs bound {} → {}",
                x.n,
                fmt_float(&x.main, 8),
                fmt_float(&x.bound, 6),
                x.sign
            ));
        }
    }
    for d in &c.diagnostics {
        out.push(format!("note: {d}"));
    }
    out.push(format!("status: {}", c.status));
    out.join("\n")
}
