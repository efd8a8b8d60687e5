//! Replays the published constants, roots and sign-pattern theorems.

use anyhow::Result;
use rug::{Float, Rational};
use serde_json::{json, Value};

use borwein_core::asymptotic::transformation_check;
use borwein_core::modular::{classify_residue_pairs, max_growth_ratio};
use borwein_core::qseries::{expand_rational_power, DeltaRange, ProductSpec, RationalInterval};
use borwein_core::signpattern::{certify, critical_delta, Status};

struct Line {
    name: String,
    pass: bool,
    detail: String,
}

fn preset(name: &str) -> ProductSpec {
    ProductSpec::preset(name).expect("preset exists")
}

/// Published sign-pattern theorems with their thresholds per level.
pub const THEOREMS: &[(&str, &str, &str, &[u64])] = &[
    ("Q5", "1..sqrt97m5over2", "+-+--", &[176]),
    ("Q5", "alpha..4", "+-+-+", &[176]),
    ("Q5", "-1", "++---", &[143]),
    ("Q5", "-3..-2", "+++--", &[143]),
    ("Q6", "3..4", "+-+-+-", &[57]),
    ("Q8", "2", "+-++-+--+--+-++-", &[565]),
    ("Q8", "-0.99..7msqrt73over2", "+++----+", &[479]),
    ("Q8", "-2", "+++++----+++----", &[567]),
    ("Q10", "1", "+-++--+--+", &[241]),
    ("Q10", "-1", "++++-----+", &[211]),
    ("Q12", "1", "+-+0-+-+-0+-", &[326]),
    ("Q12", "-1", "+++++0-----0", &[328]),
    ("Q12", "-1/2", "+++++------+++++------++", &[439, 1859]),
];

fn structural(out: &mut Vec<Line>) {
    let omegas = [("Q5", (24, 5)), ("Q6", (2, 1)), ("Q8", (12, 1)), ("Q10", (72, 5)), ("Q12", (24, 1))];
    for (name, (p, q)) in omegas {
        let got = preset(name).omega();
        let want = Rational::from((p, q));
        out.push(Line {
            name: format!("Omega {name}"),
            pass: got == want,
            detail: format!("{got} (published {want})"),
        });
    }
    let listings: [(&str, &[(u64, u64)]); 5] = [
        ("Q5", &[(2, 5), (3, 5)]),
        ("Q6", &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 6), (3, 4), (3, 6), (4, 6)]),
        ("Q8", &[(3, 8), (5, 8)]),
        ("Q10", &[(3, 10), (7, 10)]),
        ("Q12", &[(5, 12), (7, 12)]),
    ];
    for (name, want) in listings {
        let mut got = classify_residue_pairs(&preset(name)).gt0_pairs();
        got.sort();
        out.push(Line {
            name: format!("L>0 {name}"),
            pass: got == want,
            detail: format!("{got:?} (published {want:?})"),
        });
    }
    let rates = [("Q5", (24, 125)), ("Q8", (3, 16)), ("Q10", (18, 625)), ("Q12", (1, 6))];
    for (name, (p, q)) in rates {
        let want = Rational::from((p, q));
        let (pass, detail) = match max_growth_ratio(&preset(name)) {
            Ok(r) => (r.value == want, format!("{} at {:?} (published {want})", r.value, r.witnesses)),
            Err(e) => (false, e.to_string()),
        };
        out.push(Line { name: format!("max rate {name}"), pass, detail });
    }
}

fn critical(out: &mut Vec<Line>) {
    let cases = [
        ("Q5", 4, (0, 5), 2.424428900898),
        ("Q5", 9, (2, 3), 2.571366313289),
        ("Q8", 4, (-1, 0), -0.77200187265877),
        ("Q8", 14, (2, 3), 2.664479110226972),
        ("G3", 3, (0, 1), 0.2279981273412),
    ];
    let width = Rational::from((1, 1_000_000_000_000_000i64));
    for (name, n, (a, b), want) in cases {
        let iv = RationalInterval::new(Rational::from(a), Rational::from(b)).expect("ordered");
        let (pass, detail) = match critical_delta(&preset(name), n, &iv, &width) {
            Ok(roots) => {
                let best = roots
                    .iter()
                    .map(|r| r.midpoint().to_f64())
                    .min_by(|x, y| (x - want).abs().partial_cmp(&(y - want).abs()).expect("finite"));
                match best {
                    Some(x) => ((x - want).abs() < 1e-9, format!("{x:.15} (published {want})")),
                    None => (false, "no root".into()),
                }
            }
            Err(e) => (false, e.to_string()),
        };
        out.push(Line { name: format!("critical {name} n={n}"), pass, detail });
    }
}

fn theorems(out: &mut Vec<Line>, prec: u32) {
    for (name, range, pattern, n0) in THEOREMS {
        let r = DeltaRange::parse(range).expect("range parses");
        let p = pattern.parse().expect("pattern parses");
        let c = certify(&preset(name), &r, &p, n0, prec);
        let weak = c.weak_points();
        let mut detail = format!("{} at n0 = {:?}", c.status, n0);
        if !weak.is_empty() {
            detail.push_str(&format!(", weak at {weak:?}"));
        }
        if c.status != Status::Proven {
            let searched = certify(&preset(name), &r, &p, &[], prec);
            let n = searched.asymptotic.as_ref().map(|a| a.n0()).unwrap_or(0);
            detail.push_str(&format!("; own search: {} from n0 = {n}", searched.status));
        }
        out.push(Line { name: format!("theorem {name} {range} {pattern}"), pass: c.status == Status::Proven, detail });
    }
}

fn vanishing(out: &mut Vec<Line>) {
    for (delta, residue) in [(1i64, 3usize), (-1, 5)] {
        let c = expand_rational_power(&preset("Q12"), &Rational::from(delta), 600);
        let bad: Vec<usize> = (residue..=600).step_by(6).filter(|&n| c[n] != 0).collect();
        out.push(Line {
            name: format!("vanishing Q12 δ={delta} n≡{residue} (6)"),
            pass: bad.is_empty(),
            detail: if bad.is_empty() { "all zero to 600".into() } else { format!("nonzero at {bad:?}") },
        });
    }
}

fn transformation(out: &mut Vec<Line>) {
    let cases = [
        ("Q5", (1, 1), 2, 5, 0.8),
        ("Q8", (5, 2), 3, 7, 1.2),
        ("Q12", (3, 10), 5, 12, 1.0),
        ("Q10", (3, 10), 3, 10, 0.9),
    ];
    for (name, (a, b), h, k, z) in cases {
        let e = transformation_check(
            &preset(name),
            &Rational::from((a, b)),
            h,
            k,
            &Float::with_val(256, z),
            &Float::new(256),
            256,
        );
        let (pass, detail) = match e {
            Ok(e) => (e < 1e-10, format!("{:.3e}", e.to_f64())),
            Err(e) => (false, e.to_string()),
        };
        out.push(Line { name: format!("transformation {name} δ={a}/{b} ({h},{k})"), pass, detail });
    }
}

pub fn run(prec: u32, json_mode: bool) -> Result<u8> {
    let mut lines = Vec::new();
    structural(&mut lines);
    critical(&mut lines);
    vanishing(&mut lines);
    transformation(&mut lines);
    theorems(&mut lines, prec);
    let all = lines.iter().all(|l| l.pass);
    if json_mode {
        let v: Vec<Value> =
            lines.iter().map(|l| json!({ "check": l.name, "pass": l.pass, "detail": l.detail })).collect();
        println!("{}", serde_json::to_string_pretty(&json!({ "pass": all, "checks": v }))?);
    } else {
        for l in &lines {
            println!("{} {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.name, l.detail);
        }
        let failed = lines.iter().filter(|l| !l.pass).count();
        println!("{} checks, {} failed", lines.len(), failed);
    }
    Ok(if all { 0 } else { 1 })
}
