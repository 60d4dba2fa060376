use std::collections::BTreeMap;
use std::process::{Command, Output};

use serde::de::DeserializeOwned;
use serde::Deserialize;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hardyz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json<T: DeserializeOwned>(args: &[&str]) -> T {
    let mut full = args.to_vec();
    full.push("--json");
    let text = stdout(&full);
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}"))
}

type Laurent = BTreeMap<String, String>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HardyJson {
    tuple: [u8; 4],
    value: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableRow {
    tuple: [u8; 4],
    computed: String,
    printed: Option<String>,
    matches: Option<bool>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableJson {
    total: u8,
    rows: Vec<TableRow>,
    discrepancies: Vec<[u8; 4]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScanRow {
    tuple: [u8; 4],
    value: String,
    sign: i8,
    unit_sum_norm_sq: u32,
    predicted_sign: i8,
    agrees: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScanJson {
    max_total: u8,
    checked: usize,
    agreements: usize,
    counterexamples: Vec<ScanRow>,
    rows: Vec<ScanRow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct McJson {
    k: u32,
    l: u32,
    theta: f64,
    samples: u64,
    seed: u64,
    estimate: f64,
    std_error: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct McBlock {
    report: McJson,
    exact: f64,
    relative_error: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstantJson {
    kind: String,
    k: u32,
    l: u32,
    #[serde(rename = "P")]
    p: String,
    t_power: u32,
    log_power: u32,
    value: Laurent,
    monte_carlo: Option<McBlock>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundJson {
    k: u32,
    l: u32,
    #[serde(rename = "P")]
    p: String,
    theta: String,
    s_value: String,
    t_value: String,
    bound: String,
    decimal: f64,
    sign_set: String,
    at_least_3_25: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LemmaJson {
    y: u64,
    sum: f64,
    main_term: f64,
    region_integral: f64,
    scaled_error: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ZJson {
    t: f64,
    k: usize,
    value: f64,
    abs_error_est: f64,
    method: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SignJson {
    k: usize,
    l: usize,
    interval: (f64, f64),
    measure_negative: f64,
    measure_positive: f64,
    refined_sign_changes: usize,
    grid_resolution: f64,
    excluded: Vec<(f64, f64)>,
    fraction_negative: f64,
    fraction_positive: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MomentJson {
    k: usize,
    l: usize,
    #[serde(rename = "T")]
    t: f64,
    numeric_integral: f64,
    leading_term: f64,
    ratio: f64,
    head_integral: f64,
    panels: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairJson {
    zero_k: f64,
    zero_l: f64,
    distance: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairingJson {
    k: usize,
    l: usize,
    interval: (f64, f64),
    zeros_k: Vec<f64>,
    zeros_l: Vec<f64>,
    pairs: Vec<PairJson>,
    unpaired_k: Vec<f64>,
    unpaired_l: Vec<f64>,
    median_distance: Option<f64>,
    mean_spacing: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FigureRowJson {
    t: f64,
    z_k: f64,
    z_l: f64,
    product: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FigureJson {
    k: usize,
    l: usize,
    rows: Vec<FigureRowJson>,
}

#[test]
fn text_examples() {
    assert_eq!(stdout(&["hardy", "6", "0", "0", "0"]).trim(), "-1/2688");
    assert_eq!(stdout(&["hardy", "1", "0", "0", "0"]).trim(), "0");
    let b = stdout(&["bound", "--k", "0", "--l", "2", "--P", "x^2", "--theta", "1/8"]);
    assert!(b.contains("bound = 882525/7120069"), "{b}");
    assert!(b.contains("≥ 3/25: yes"), "{b}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["hardy", "1", "2"]).status.code(), Some(2));
    assert_eq!(run(&["bound", "--k", "0", "--l", "2", "--P", "x^2", "--theta", "abc"]).status.code(), Some(2));
    // well-formed flags, rejected by the computation
    assert_eq!(run(&["bound", "--k", "0", "--l", "2", "--P", "x^2", "--theta", "3/2"]).status.code(), Some(1));
    assert_eq!(run(&["s-coeff", "--k", "0", "--l", "1", "--P", "x^2"]).status.code(), Some(1));
    assert_eq!(run(&["z-eval", "--t", "5"]).status.code(), Some(1));
    assert_eq!(run(&["s-coeff", "--k", "0", "--l", "2", "--P", "x^"]).status.code(), Some(2));
    assert_eq!(run(&["s-coeff", "--k", "0", "--l", "2", "--P", "1+x"]).status.code(), Some(1));
    let bad = run(&["sign-survey", "--k", "0", "--l", "2", "--from", "10", "--to", "20"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(!bad.stderr.is_empty());
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn help_documents_every_flag() {
    let cases: &[(&str, &[&str])] = &[
        ("hardy", &["<K>", "<L>", "<M>", "<N>"]),
        ("hardy-table", &["<TOTAL>"]),
        ("conjecture-scan", &["--max-total"]),
        ("s-coeff", &["--k", "--l", "--P"]),
        ("t-coeff", &["--k", "--l", "--P", "--mc-samples", "--theta", "--seed"]),
        ("bound", &["--k", "--l", "--P", "--theta"]),
        ("em-check", &["--y", "--f"]),
        ("z-eval", &["--t", "--k", "--method", "--batch"]),
        ("sign-survey", &["--k", "--l", "--from", "--to", "--resolution"]),
        ("moment-check", &["--k", "--l", "--T"]),
        ("zero-pairing", &["--k", "--l", "--from", "--to"]),
        ("figure-data", &["--figure", "--from", "--to", "--step"]),
    ];
    for (cmd, flags) in cases {
        let help = stdout(&[cmd, "--help"]);
        for f in flags.iter().chain(&["--format", "--json", "--out", "--threads"]) {
            assert!(help.contains(f), "{cmd} --help lacks {f}:\n{help}");
        }
    }
}

#[test]
fn json_round_trip_exact_commands() {
    let h: HardyJson = json(&["hardy", "6", "0", "0", "0"]);
    assert_eq!((h.tuple, h.value.as_str()), ([6, 0, 0, 0], "-1/2688"));

    let t: TableJson = json(&["hardy-table", "8"]);
    assert_eq!((t.total, t.rows.len()), (8, 15));
    assert_eq!(t.discrepancies.len(), 2);
    for d in &t.discrepancies {
        let row = t.rows.iter().find(|r| r.tuple == *d).expect("listed tuple is a row");
        assert!(row.matches == Some(false) && row.printed.is_some());
    }
    assert!(t.rows.iter().all(|r| r.tuple.iter().map(|&x| x as u32).sum::<u32>() == 8 && !r.computed.is_empty()));

    let c: ScanJson = json(&["conjecture-scan", "--max-total", "6"]);
    assert_eq!(c.max_total, 6);
    assert_eq!(c.checked, c.rows.len());
    assert_eq!(c.agreements, c.checked);
    assert!(c.counterexamples.is_empty());
    for r in &c.rows {
        assert!(r.agrees && r.sign == r.predicted_sign && r.unit_sum_norm_sq <= 16 && !r.value.is_empty());
        assert_eq!(r.tuple.iter().map(|&x| x as u32).sum::<u32>() % 2, 0);
    }

    let s: ConstantJson = json(&["s-coeff", "--k", "0", "--l", "2", "--P", "x^2"]);
    assert_eq!((s.kind.as_str(), s.k, s.l, s.p.as_str()), ("S", 0, 2, "x^2"));
    assert_eq!((s.t_power, s.log_power), (1, 2));
    assert_eq!(s.value["0"], "-1/4");
    assert_eq!(s.value["-1"], "-1/9");
    assert!(s.monte_carlo.is_none());

    let t: ConstantJson = json(&["t-coeff", "--k", "0", "--l", "2", "--P", "x^2", "--mc-samples", "20000", "--seed", "7"]);
    assert_eq!((t.kind.as_str(), t.log_power), ("T", 4));
    assert_eq!(t.value["1"], "52/1215");
    assert_eq!(t.value["-4"], "1/1512");
    let mc = t.monte_carlo.expect("requested");
    assert_eq!((mc.report.k, mc.report.l, mc.report.samples, mc.report.seed), (0, 2, 20000, 7));
    assert_eq!(mc.report.theta, 0.1);
    assert!(mc.report.std_error > 0.0);
    assert!((mc.report.estimate - mc.exact).abs() < 5.0 * mc.report.std_error);
    assert!(mc.relative_error >= 0.0);

    let b: BoundJson = json(&["bound", "--k", "0", "--l", "2", "--P", "x^2", "--theta", "1/8"]);
    assert_eq!((b.k, b.l, b.p.as_str(), b.theta.as_str()), (0, 2, "x^2", "1/8"));
    assert_eq!(b.s_value, "-41/36");
    assert_eq!(b.t_value, "7120069/680400");
    assert_eq!(b.bound, "882525/7120069");
    assert!((b.decimal - 0.123949).abs() < 1e-6);
    assert_eq!(b.sign_set, "Negative");
    assert!(b.at_least_3_25);

    let e: LemmaJson = json(&["em-check", "--y", "1000", "--f", "1", "--f", "1", "--f", "1", "--f", "1"]);
    assert_eq!(e.y, 1000);
    assert!((e.region_integral - 1.0 / 6.0).abs() < 1e-15);
    assert!((e.main_term - e.region_integral * 1000f64.ln().powi(4)).abs() < 1e-9 * e.main_term);
    assert!(((e.sum - e.main_term).abs() / 1000f64.ln().powi(3) - e.scaled_error).abs() < 1e-9);
}

#[test]
fn json_round_trip_numeric_commands() {
    let z: ZJson = json(&["z-eval", "--t", "100", "--k", "1"]);
    assert_eq!((z.t, z.k, z.method.as_str()), (100.0, 1, "riemann-siegel"));
    assert!(z.abs_error_est > 0.0 && z.value.is_finite());
    let batch = std::env::temp_dir().join(format!("hardyz-batch-{}.txt", std::process::id()));
    std::fs::write(&batch, "100\n200\n\n300\n").unwrap();
    let zs: Vec<ZJson> = json(&["z-eval", "--k", "0", "--method", "euler-maclaurin", "--batch", batch.to_str().unwrap()]);
    std::fs::remove_file(&batch).unwrap();
    assert_eq!(zs.len(), 3);
    assert!(zs.iter().all(|z| z.method == "euler-maclaurin"));

    let s: SignJson = json(&["sign-survey", "--k", "0", "--l", "2", "--from", "500", "--to", "502"]);
    assert_eq!((s.k, s.l, s.interval), (0, 2, (500.0, 502.0)));
    assert!(s.excluded.is_empty() && s.refined_sign_changes > 0 && s.grid_resolution <= 0.01);
    assert!((s.measure_negative + s.measure_positive - 2.0).abs() < 1e-12);
    assert!((s.fraction_negative - s.measure_negative / 2.0).abs() < 1e-12);
    assert!((s.fraction_positive - s.measure_positive / 2.0).abs() < 1e-12);

    let m: MomentJson = json(&["moment-check", "--k", "0", "--l", "0", "--T", "500"]);
    assert_eq!((m.k, m.l, m.t), (0, 0, 500.0));
    assert!(m.numeric_integral > 0.0 && m.panels > 0 && m.head_integral > 0.0);
    assert!((m.ratio - m.numeric_integral / m.leading_term).abs() < 1e-12);

    let p: PairingJson = json(&["zero-pairing", "--k", "0", "--l", "2", "--from", "500", "--to", "505"]);
    assert_eq!((p.k, p.l, p.interval), (0, 2, (500.0, 505.0)));
    assert_eq!(p.pairs.len() + p.unpaired_k.len(), p.zeros_k.len());
    assert_eq!(p.pairs.len() + p.unpaired_l.len(), p.zeros_l.len());
    assert!(p.pairs.iter().all(|q| (q.zero_k - q.zero_l).abs() == q.distance));
    assert!(p.median_distance.is_some() && p.mean_spacing > 1.0);

    let f: FigureJson = json(&["figure-data", "--figure", "3", "--from", "500", "--to", "500.1", "--step", "0.05"]);
    assert_eq!((f.k, f.l, f.rows.len()), (4, 6, 3));
    assert!(f.rows.iter().all(|r| (r.z_k * r.z_l - r.product).abs() <= 1e-12 * r.product.abs().max(1.0)));
    assert_eq!(f.rows[2].t, 500.1);
}

#[test]
fn csv_outputs_have_headers() {
    let fig = stdout(&["figure-data", "--figure", "2", "--from", "500", "--to", "500.02"]);
    let mut lines = fig.lines();
    assert_eq!(lines.next(), Some("t,z0,z2,product"));
    assert_eq!(lines.count(), 3);
    let empty = stdout(&["figure-data", "--figure", "2", "--from", "510", "--to", "510"]);
    assert_eq!(empty.trim(), "t,z0,z2,product");

    let table = stdout(&["hardy-table", "6", "--format", "csv"]);
    assert_eq!(table.lines().count(), 10);
    assert!(table.lines().next().unwrap().starts_with("k,l,m,n,"));

    let survey = stdout(&["sign-survey", "--k", "0", "--l", "2", "--from", "500", "--to", "501", "--format", "csv"]);
    let rows: Vec<_> = survey.lines().collect();
    assert_eq!(rows.len(), 2, "{survey}");
    assert_eq!(rows[0].split(',').count(), rows[1].split(',').count());
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("hardyz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig.csv");
    let p = path.to_str().unwrap();
    let printed = stdout(&["figure-data", "--figure", "4", "--from", "500", "--to", "500.03", "--out", p]);
    assert!(printed.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("t,z3,z7,product\n"));
    assert_eq!(written.lines().count(), 5);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn thread_cap_does_not_change_results() {
    let args = ["sign-survey", "--k", "1", "--l", "3", "--from", "700", "--to", "705", "--json"];
    let one = stdout(&[&args[..], &["--threads", "1"]].concat());
    let two = stdout(&[&args[..], &["--threads", "2"]].concat());
    assert_eq!(one, two);
}
