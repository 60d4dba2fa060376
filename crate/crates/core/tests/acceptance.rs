//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Run with `cargo test -p hardyz --test acceptance`.

use std::process::Command;
use std::time::{Duration, Instant};

use hardyz::exactq::{format_rational, parse_rational, rat, MPoly};
use hardyz::hardy::{self, HardyIndex};
use hardyz::moments::{self, mc, MollifierPoly, ThetaLaurent};
use hardyz::survey;
use hardyz::zfun;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hardyz"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn within(elapsed: Duration, limit_s: u64) -> bool {
    elapsed < Duration::from_secs(limit_s)
}

fn laurent(terms: &[(i32, i64, i64)]) -> ThetaLaurent {
    let mut l = ThetaLaurent::zero();
    for &(p, n, d) in terms {
        l.add_term(p, rat(n, d));
    }
    l
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let (code, text) = cli(&["hardy-table", "6", "--format", "csv"]);
    let elapsed = start.elapsed();
    let rows: Vec<Vec<String>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect();
    let matched = rows.iter().filter(|r| r[6] == "true").count();
    let spot = rows.iter().any(|r| r[..4] == ["6", "0", "0", "0"] && r[4] == "-1/2688")
        && rows.iter().any(|r| r[..4] == ["2", "2", "1", "1"] && r[4] == "19/604800");
    outcome(
        code == 0 && rows.len() == 9 && matched == 9 && spot && within(elapsed, 10),
        format!("{matched}/9 printed values match, {:.2?}", elapsed),
    )
}

fn ac2() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for (total, expected_rows) in [(8u8, 15usize), (10, 23)] {
        let rows = hardy::hardy_table(total).expect("even total");
        let cmp = hardy::compare_with_printed(&rows);
        let printed = cmp.iter().filter(|c| c.printed.is_some()).count();
        let differ: Vec<_> = cmp.iter().filter(|c| c.matches == Some(false)).collect();
        let matched = cmp.iter().filter(|c| c.matches == Some(true)).count();
        // every printed entry is accounted for: either equal or reported
        ok &= rows.len() == expected_rows && printed == expected_rows && matched + differ.len() == printed;
        // the report is also emitted by the CLI
        let (code, text) = cli(&["hardy-table", &total.to_string()]);
        ok &= code == 0 && text.contains(&format!("discrepancy report: {} of {printed}", differ.len()));
        for c in &differ {
            ok &= text.contains(&format_rational(&c.computed));
        }
        notes.push(format!("total {total}: {matched} match, {} reported", differ.len()));
    }
    let elapsed = start.elapsed();
    outcome(ok && within(elapsed, 300), format!("{}, {:.2?}", notes.join("; "), elapsed))
}

fn ac3() -> Outcome {
    let mut checked = 0;
    let mut nonzero = Vec::new();
    for total in (1..=9u8).step_by(2) {
        for idx in hardy::ordered_tuples(total) {
            checked += 1;
            if !hardy::hardy(idx).value.eq(&rat(0, 1)) {
                nonzero.push(idx.as_array());
            }
        }
    }
    outcome(nonzero.is_empty(), format!("{checked} odd-sum tuples, {} nonzero", nonzero.len()))
}

fn ac4() -> Outcome {
    let v = hardy::hardy(HardyIndex::new(0, 0, 0, 0).unwrap()).value;
    outcome(v == rat(1, 2), format!("HARDY(0,0,0,0) = {}", format_rational(&v)))
}

fn ac5() -> Outcome {
    let r = hardy::conjecture_scan(10).expect("scan");
    outcome(
        r.counterexamples.is_empty() && r.agreements == r.checked && r.checked > 0,
        format!("{} even-sum tuples, {} counterexamples", r.checked, r.counterexamples.len()),
    )
}

fn ac6() -> Outcome {
    let s = moments::s_coefficient(0, 2, &MollifierPoly::monomial(2)).expect("s");
    let want = laurent(&[(0, -1, 4), (-1, -1, 9)]);
    outcome(s.value == want, format!("S_(0,2) = {}", s.value))
}

fn ac7() -> Outcome {
    let start = Instant::now();
    let p = MollifierPoly::monomial(2);
    let t = moments::t_coefficient(0, 2, &p).expect("t");
    let want = laurent(&[(1, 52, 1215), (0, 491, 5040), (-1, 563, 6300), (-2, 659, 16200), (-3, 8, 945), (-4, 1, 1512)]);
    let exact = t.value.eval_f64(0.1);
    let m = mc::t_coefficient_mc(0, 2, &p, 0.1, 10_000_000, 20240607);
    let rel = (m.estimate - exact).abs() / exact;
    let elapsed = start.elapsed();
    outcome(
        t.value == want && rel < 0.005 && within(elapsed, 600),
        format!(
            "exact form {}, MC {:.4} +/- {:.4} vs {:.4} (rel {:.2e}), {:.1?}",
            if t.value == want { "matches" } else { "DIFFERS" },
            m.estimate,
            m.std_error,
            exact,
            rel,
            elapsed
        ),
    )
}

fn ac8() -> Outcome {
    let (code, text) = cli(&["bound", "--k", "0", "--l", "2", "--P", "x^2", "--theta", "1/8"]);
    let value = text
        .lines()
        .find_map(|l| l.strip_prefix("bound = "))
        .and_then(|s| parse_rational(s).ok());
    let ok = match &value {
        Some(b) => *b >= rat(3, 25) && text.contains("≥ 3/25: yes") && text.contains("decimal = 0.1239"),
        None => false,
    };
    outcome(
        code == 0 && ok,
        format!("bound = {}", value.map(|v| format_rational(&v)).unwrap_or_else(|| "?".into())),
    )
}

fn ac9() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for i in 0..200 {
        let t = 50.0 * 200f64.powf(i as f64 / 199.0);
        let a = zfun::z_rs(t).unwrap().value;
        let b = zfun::z_em(t).unwrap().value;
        worst = worst.max((a - b).abs());
    }
    let scan = zfun::count_zeros_sign_scan(100.0, 0.01).unwrap();
    let theta = zfun::count_zeros_theta(100.0).unwrap();
    let elapsed = start.elapsed();
    outcome(
        worst < 1e-6 && scan == 29 && theta == 29 && within(elapsed, 60),
        format!("max |RS - EM| = {worst:.2e}, zeros {scan} (scan) / {theta} (theta), {:.2?}", elapsed),
    )
}

fn ac10() -> Outcome {
    let a = survey::sign_measure(0, 2, 500.0, 530.0, 0.02).unwrap();
    let a2 = survey::sign_measure(0, 2, 500.0, 530.0, 0.01).unwrap();
    let b = survey::sign_measure(0, 2, 1000.0, 2000.0, 0.02).unwrap();
    let b2 = survey::sign_measure(0, 2, 1000.0, 2000.0, 0.01).unwrap();
    let (fa, fb) = (a.fraction_negative(), b.fraction_negative());
    let drift = (fa - a2.fraction_negative()).abs().max((fb - b2.fraction_negative()).abs());
    outcome(
        fa > 0.7 && fb > 3.0 / 25.0 && drift < 0.01,
        format!("negative fraction {fa:.4} on [500,530], {fb:.4} on [1000,2000], resolution drift {drift:.1e}"),
    )
}

fn ac11() -> Outcome {
    let m = survey::moment_check(0, 2, 2000.0).unwrap();
    let log = (2000.0 / (2.0 * std::f64::consts::PI)).ln();
    let lead = -2000.0 * log.powi(3) / 12.0;
    let ratio = m.numeric_integral / lead;
    outcome(
        m.numeric_integral < 0.0 && (0.3..=3.0).contains(&ratio),
        format!("integral {:.2}, leading {:.2}, ratio {ratio:.4}", m.numeric_integral, lead),
    )
}

fn ac12() -> Outcome {
    let one = MPoly::one(&[]);
    let mut errs = Vec::new();
    for y in [1_000u64, 10_000, 100_000] {
        let r = moments::em_lemma_check([&one, &one, &one, &one], y).unwrap();
        errs.push(r.scaled_error);
    }
    let non_increasing = errs.windows(2).all(|w| w[1] <= w[0]);
    let bounded = errs.iter().all(|e| e.is_finite() && *e < 1.0);
    outcome(
        non_increasing && bounded,
        format!("scaled errors {:.4} / {:.4} / {:.4}", errs[0], errs[1], errs[2]),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("AC1  table of total degree 6", ac1),
        ("AC2  tables 8 and 10 with discrepancy report", ac2),
        ("AC3  odd sums vanish", ac3),
        ("AC4  HARDY(0,0,0,0) = 1/2", ac4),
        ("AC5  sign conjecture up to total 10", ac5),
        ("AC6  S_(0,2) for P = x^2", ac6),
        ("AC7  T_(0,2) exact and Monte Carlo", ac7),
        ("AC8  bound at theta = 1/8", ac8),
        ("AC9  dual-path Z and zero count", ac9),
        ("AC10 sign survey", ac10),
        ("AC11 moment sign", ac11),
        ("AC12 lemma error trend", ac12),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!("{} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
