//! Command-line front end for the `hardyz` binary.

mod poly;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::exactq::{format_rational, parse_rational, rat, to_f64, Rational, Var};
use crate::hardy::{self, HardyIndex};
use crate::moments::{self, mc, MollifierPoly, MomentConstant};
use crate::survey;
use crate::zfun::{self, Method, ZEval};
use crate::{Error, Result};

pub use poly::parse_poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "hardyz", version, about = "Exact moment constants and sign statistics for derivatives of Hardy's Z-function")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output encoding (survey commands treat text as CSV).
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Cap on worker threads.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct Orders {
    /// Derivative order k.
    #[arg(long)]
    pub k: usize,
    /// Derivative order l.
    #[arg(long)]
    pub l: usize,
}

#[derive(Debug, Args)]
pub struct Mollifier {
    /// Mollifier polynomial in x, e.g. `x^2` or `2x^3-x^2`.
    #[arg(long = "P", value_name = "POLY", default_value = "x^2", value_parser = poly_flag)]
    pub p: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// HARDY(k, l, m, n) as an exact rational.
    Hardy {
        k: u8,
        l: u8,
        m: u8,
        n: u8,
    },
    /// All sorted tuples of an even total degree, compared with the printed tables.
    HardyTable {
        /// Even total degree k+l+m+n (at most 16).
        total: u8,
    },
    /// Checks the sign conjecture on every ordered tuple up to a total degree.
    ConjectureScan {
        #[arg(long, default_value_t = 10)]
        max_total: u8,
    },
    /// Mollified second-moment constant S_{k,l} as a Laurent polynomial in theta.
    SCoeff {
        #[command(flatten)]
        orders: Orders,
        #[command(flatten)]
        mollifier: Mollifier,
    },
    /// Mollified fourth-moment constant T_{k,l} as a Laurent polynomial in theta.
    TCoeff {
        #[command(flatten)]
        orders: Orders,
        #[command(flatten)]
        mollifier: Mollifier,
        /// Also run a Monte Carlo estimate with this many samples.
        #[arg(long, value_name = "N")]
        mc_samples: Option<u64>,
        /// Theta for the Monte Carlo estimate (`p/q`).
        #[arg(long, default_value = "1/10", value_parser = rational_flag)]
        theta: String,
        /// Seed for the Monte Carlo estimate.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Lower bound S^2/T for the measure of the predicted sign set.
    Bound {
        #[command(flatten)]
        orders: Orders,
        #[command(flatten)]
        mollifier: Mollifier,
        /// Mollifier exponent in (0, 1), as `p/q`.
        #[arg(long, value_parser = rational_flag)]
        theta: String,
    },
    /// Compares the quadruple divisor sum with its region-integral main term.
    EmCheck {
        /// Summation bound y (at least 10).
        #[arg(long)]
        y: u64,
        /// Weight polynomials f1..f4 in x (repeat up to four times; missing ones are 1).
        #[arg(long = "f", value_name = "POLY", value_parser = poly_flag)]
        f: Vec<String>,
    },
    /// Evaluates Z^(k)(t).
    ZEval {
        /// Height t.
        #[arg(long, required_unless_present = "batch")]
        t: Option<f64>,
        /// Derivative order (0 to 8).
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Evaluation path; defaults to Riemann-Siegel from t = 50, Euler-Maclaurin below.
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        /// File with one t per line; output is CSV (t, k, value, err).
        #[arg(long, value_name = "PATH", conflicts_with = "t")]
        batch: Option<PathBuf>,
    },
    /// Measures where Z^(k) Z^(l) is negative and positive.
    SignSurvey {
        #[command(flatten)]
        orders: Orders,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        /// Grid step, at most 0.05.
        #[arg(long, default_value_t = 0.01)]
        resolution: f64,
    },
    /// Integrates Z^(k) Z^(l) over [0, T] and compares with the leading term.
    MomentCheck {
        #[command(flatten)]
        orders: Orders,
        /// Upper limit T in [500, 1e5].
        #[arg(long = "T", value_name = "T")]
        t: f64,
    },
    /// Pairs the zeros of Z^(k) with the nearest zeros of Z^(l).
    ZeroPairing {
        #[command(flatten)]
        orders: Orders,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
    },
    /// Tabulates (t, Z^(k), Z^(l), product) for figures 1 to 4.
    FigureData {
        /// Figure number: 1 and 2 use (0,2), 3 uses (4,6), 4 uses (3,7).
        #[arg(long)]
        figure: u32,
        #[arg(long, default_value_t = 500.0)]
        from: f64,
        #[arg(long, default_value_t = 530.0)]
        to: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    RiemannSiegel,
    EulerMaclaurin,
    FiniteDifference,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::RiemannSiegel => Method::RiemannSiegel,
            MethodArg::EulerMaclaurin => Method::EulerMaclaurin,
            MethodArg::FiniteDifference => Method::FiniteDifference,
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code: 0 on success, 1 on computation errors, 2 on flag
/// errors.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(rendered.as_bytes()) } else { stderr.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            let _ = writeln!(stderr, "error: --threads must be at least 1");
            return 2;
        }
        // fails only if a pool already exists (repeated calls in one process)
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let format = if cli.json { Format::Json } else { cli.format };
    let output = match execute(&cli.command, format) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 1;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, output.as_bytes()),
        None => stdout.write_all(output.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return 1;
    }
    0
}

// Syntax is checked while parsing flags so that malformed values exit with 2.
fn rational_flag(src: &str) -> std::result::Result<String, String> {
    parse_rational(src).map(|_| src.to_owned()).map_err(|_| "expected p/q or an integer".into())
}

fn poly_flag(src: &str) -> std::result::Result<String, String> {
    parse_poly(src).map(|_| src.to_owned()).map_err(|e| e.to_string())
}

fn mollifier(src: &str) -> Result<MollifierPoly> {
    Ok(MollifierPoly::from_coeffs(parse_poly(src)?))
}

fn rational_arg(name: &str, src: &str) -> Result<Rational> {
    parse_rational(src).map_err(|_| Error::InvalidArgument(format!("--{name} expects p/q or an integer, got {src:?}")))
}

fn u32_orders(o: &Orders) -> Result<(u32, u32)> {
    let conv = |x: usize| u32::try_from(x).map_err(|_| Error::InvalidArgument(format!("order {x} too large")));
    Ok((conv(o.k)?, conv(o.l)?))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_rows<R, S>(header: &[&str], rows: R) -> String
where
    R: IntoIterator<Item = S>,
    S: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn constant_json(c: &MomentConstant, p: &str) -> Value {
    json!({
        "kind": c.kind,
        "k": c.indices.0,
        "l": c.indices.1,
        "P": p,
        "value": c.value.to_json(),
        "log_power": c.log_power,
        "t_power": c.t_power,
    })
}

fn zeval_row(e: &ZEval) -> Vec<String> {
    vec![e.t.to_string(), e.k.to_string(), e.value.to_string(), e.abs_error_est.to_string()]
}

fn eval_z(t: f64, k: usize, method: Option<MethodArg>) -> Result<ZEval> {
    match method {
        Some(m) => zfun::z_deriv_with(t, k, m.into()),
        None if k == 0 => zfun::z(t),
        None => zfun::z_deriv(t, k),
    }
}

fn execute(cmd: &Command, format: Format) -> Result<String> {
    match cmd {
        Command::Hardy { k, l, m, n } => {
            let v = hardy::hardy(HardyIndex::new(*k, *l, *m, *n)?);
            let value = format_rational(&v.value);
            Ok(match format {
                Format::Json => pretty(&json!({ "tuple": [k, l, m, n], "value": value })),
                Format::Csv => csv_rows(&["k", "l", "m", "n", "value"], [vec![k.to_string(), l.to_string(), m.to_string(), n.to_string(), value]]),
                Format::Text => format!("{value}\n"),
            })
        }
        Command::HardyTable { total } => {
            let rows = hardy::hardy_table(*total)?;
            let cmp = hardy::compare_with_printed(&rows);
            let discrepancies: Vec<_> = cmp.iter().filter(|c| c.matches == Some(false)).collect();
            Ok(match format {
                Format::Json => pretty(&json!({
                    "total": total,
                    "rows": cmp,
                    "discrepancies": discrepancies.iter().map(|c| c.tuple).collect::<Vec<_>>(),
                })),
                Format::Csv => csv_rows(
                    &["k", "l", "m", "n", "value", "printed", "matches"],
                    cmp.iter().map(|c| {
                        let [k, l, m, n] = c.tuple.map(|x| x.to_string());
                        let status = match c.matches {
                            Some(b) => b.to_string(),
                            None => String::new(),
                        };
                        vec![k, l, m, n, format_rational(&c.computed), c.printed.clone().unwrap_or_default(), status]
                    }),
                ),
                Format::Text => {
                    let mut s = String::new();
                    let width = cmp.iter().map(|c| format_rational(&c.computed).len()).max().unwrap_or(5).max(5);
                    let _ = writeln!(s, "{:<10} {:>width$}  {:<22} status", "tuple", "value", "printed");
                    for c in &cmp {
                        let status = match c.matches {
                            Some(true) => "match",
                            Some(false) => "DIFFERS",
                            None => "-",
                        };
                        let t = c.tuple;
                        let _ = writeln!(
                            s,
                            "{:<10} {:>width$}  {:<22} {status}",
                            format!("{},{},{},{}", t[0], t[1], t[2], t[3]),
                            format_rational(&c.computed),
                            c.printed.as_deref().unwrap_or("-"),
                        );
                    }
                    let _ = writeln!(s, "\ndiscrepancy report: {} of {} printed entries differ", discrepancies.len(), cmp.iter().filter(|c| c.printed.is_some()).count());
                    for c in &discrepancies {
                        let _ = writeln!(s, "  {:?}: computed {}, printed {}", c.tuple, format_rational(&c.computed), c.printed.as_deref().unwrap_or(""));
                    }
                    s
                }
            })
        }
        Command::ConjectureScan { max_total } => {
            let r = hardy::conjecture_scan(*max_total)?;
            Ok(match format {
                Format::Json => pretty(&serde_json::to_value(&r).expect("serializable")),
                Format::Csv => csv_rows(
                    &["k", "l", "m", "n", "value", "sign", "unit_sum_norm_sq", "predicted_sign", "agrees"],
                    r.rows.iter().map(|row| {
                        let [k, l, m, n] = row.tuple.map(|x| x.to_string());
                        vec![k, l, m, n, format_rational(&row.value), row.sign.to_string(), row.unit_sum_norm_sq.to_string(), row.predicted_sign.to_string(), row.agrees.to_string()]
                    }),
                ),
                Format::Text => {
                    let mut s = format!(
                        "checked {} even-sum tuples with total <= {}: {} agree, {} counterexamples\n",
                        r.checked,
                        r.max_total,
                        r.agreements,
                        r.counterexamples.len()
                    );
                    for c in &r.counterexamples {
                        let _ = writeln!(s, "COUNTEREXAMPLE {c:?}");
                    }
                    s
                }
            })
        }
        Command::SCoeff { orders, mollifier: m } => {
            let (k, l) = u32_orders(orders)?;
            let c = moments::s_coefficient(k, l, &mollifier(&m.p)?)?;
            Ok(match format {
                Format::Json => pretty(&constant_json(&c, &m.p)),
                _ => format!("{}\n", c.value),
            })
        }
        Command::TCoeff { orders, mollifier: m, mc_samples, theta, seed } => {
            let (k, l) = u32_orders(orders)?;
            let p = mollifier(&m.p)?;
            let c = moments::t_coefficient(k, l, &p)?;
            let mc = match mc_samples {
                Some(n) => {
                    let th = rational_arg("theta", theta)?;
                    let exact = c.value.eval_f64(to_f64(&th));
                    Some((mc::t_coefficient_mc(k, l, &p, to_f64(&th), *n, *seed), exact))
                }
                None => None,
            };
            Ok(match format {
                Format::Json => {
                    let mut v = constant_json(&c, &m.p);
                    if let Some((r, exact)) = &mc {
                        v["monte_carlo"] = json!({ "report": r, "exact": exact, "relative_error": (r.estimate - exact).abs() / exact.abs() });
                    }
                    pretty(&v)
                }
                _ => {
                    let mut s = format!("{}\n", c.value);
                    if let Some((r, exact)) = &mc {
                        let _ = writeln!(
                            s,
                            "monte carlo at theta = {}: {:.6} +/- {:.6} ({} samples, seed {}); exact {:.6}; relative error {:.3e}",
                            r.theta,
                            r.estimate,
                            r.std_error,
                            r.samples,
                            r.seed,
                            exact,
                            (r.estimate - exact).abs() / exact.abs()
                        );
                    }
                    s
                }
            })
        }
        Command::Bound { orders, mollifier: m, theta } => {
            let (k, l) = u32_orders(orders)?;
            let th = rational_arg("theta", theta)?;
            let b = moments::proportion_bound(k, l, &mollifier(&m.p)?, &th)?;
            let reaches = b.bound >= rat(3, 25);
            Ok(match format {
                Format::Json => pretty(&json!({
                    "k": k,
                    "l": l,
                    "P": m.p,
                    "theta": format_rational(&th),
                    "s_value": format_rational(&b.s_value),
                    "t_value": format_rational(&b.t_value),
                    "bound": format_rational(&b.bound),
                    "decimal": b.bound_f64(),
                    "sign_set": b.sign_set,
                    "at_least_3_25": reaches,
                })),
                _ => format!(
                    "bound = {}\ndecimal = {:.6}\n≥ 3/25: {}\n",
                    format_rational(&b.bound),
                    b.bound_f64(),
                    if reaches { "yes" } else { "no" }
                ),
            })
        }
        Command::EmCheck { y, f } => {
            if f.len() > 4 {
                return Err(Error::InvalidArgument("at most four --f polynomials".into()));
            }
            let x = Var::new("x");
            let mut polys = Vec::new();
            for i in 0..4 {
                let src = f.get(i).map(String::as_str).unwrap_or("1");
                polys.push(MollifierPoly::from_coeffs(parse_poly(src)?).to_mpoly(&x));
            }
            let r = moments::em_lemma_check([&polys[0], &polys[1], &polys[2], &polys[3]], *y)?;
            Ok(match format {
                Format::Json => pretty(&serde_json::to_value(&r).expect("serializable")),
                Format::Csv => csv_rows(
                    &["y", "sum", "main_term", "region_integral", "scaled_error"],
                    [vec![r.y.to_string(), r.sum.to_string(), r.main_term.to_string(), r.region_integral.to_string(), r.scaled_error.to_string()]],
                ),
                Format::Text => format!(
                    "y = {}\nsum = {}\nmain term = {}\n|sum - main| / (log y)^3 = {}\n",
                    r.y, r.sum, r.main_term, r.scaled_error
                ),
            })
        }
        Command::ZEval { t, k, method, batch } => {
            if let Some(path) = batch {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
                let mut evals = Vec::new();
                for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
                    let t: f64 = line
                        .parse()
                        .map_err(|_| Error::Parse(format!("not a number: {line:?}")))?;
                    evals.push(eval_z(t, *k, *method)?);
                }
                return Ok(match format {
                    Format::Json => pretty(&serde_json::to_value(&evals).expect("serializable")),
                    _ => csv_rows(&["t", "k", "value", "err"], evals.iter().map(zeval_row)),
                });
            }
            let e = eval_z(t.expect("required by clap"), *k, *method)?;
            Ok(match format {
                Format::Json => pretty(&serde_json::to_value(e).expect("serializable")),
                Format::Csv => csv_rows(&["t", "k", "value", "err"], [zeval_row(&e)]),
                Format::Text => format!("value = {}\nerror = {:e}\nmethod = {}\n", e.value, e.abs_error_est, e.method),
            })
        }
        Command::SignSurvey { orders, from, to, resolution } => {
            let r = survey::sign_measure(orders.k, orders.l, *from, *to, *resolution)?;
            Ok(match format {
                Format::Json => {
                    let mut v = serde_json::to_value(&r).expect("serializable");
                    v["fraction_negative"] = json!(r.fraction_negative());
                    v["fraction_positive"] = json!(r.fraction_positive());
                    pretty(&v)
                }
                _ => csv_rows(
                    &["k", "l", "from", "to", "resolution", "measure_negative", "measure_positive", "fraction_negative", "fraction_positive", "refined_sign_changes", "excluded_measure"],
                    [vec![
                        r.k.to_string(),
                        r.l.to_string(),
                        r.interval.0.to_string(),
                        r.interval.1.to_string(),
                        r.grid_resolution.to_string(),
                        r.measure_negative.to_string(),
                        r.measure_positive.to_string(),
                        r.fraction_negative().to_string(),
                        r.fraction_positive().to_string(),
                        r.refined_sign_changes.to_string(),
                        r.excluded_measure().to_string(),
                    ]],
                ),
            })
        }
        Command::MomentCheck { orders, t } => {
            let r = survey::moment_check(orders.k, orders.l, *t)?;
            Ok(match format {
                Format::Json => pretty(&serde_json::to_value(&r).expect("serializable")),
                _ => csv_rows(
                    &["k", "l", "T", "numeric_integral", "leading_term", "ratio"],
                    [vec![r.k.to_string(), r.l.to_string(), r.t.to_string(), r.numeric_integral.to_string(), r.leading_term.to_string(), r.ratio.to_string()]],
                ),
            })
        }
        Command::ZeroPairing { orders, from, to } => {
            let r = survey::zero_pairing(orders.k, orders.l, *from, *to)?;
            Ok(match format {
                Format::Json => pretty(&serde_json::to_value(&r).expect("serializable")),
                _ => {
                    let paired = r.pairs.iter().map(|p| vec![p.zero_k.to_string(), p.zero_l.to_string(), p.distance.to_string()]);
                    let lone_k = r.unpaired_k.iter().map(|z| vec![z.to_string(), String::new(), String::new()]);
                    let lone_l = r.unpaired_l.iter().map(|z| vec![String::new(), z.to_string(), String::new()]);
                    csv_rows(&["zero_k", "zero_l", "distance"], paired.chain(lone_k).chain(lone_l))
                }
            })
        }
        Command::FigureData { figure, from, to, step } => {
            let table = survey::figure_data(*figure, *from, *to, *step)?;
            Ok(match format {
                Format::Json => pretty(&serde_json::to_value(&table).expect("serializable")),
                _ => {
                    let mut buf = Vec::new();
                    table.write_csv(&mut buf)?;
                    String::from_utf8(buf).expect("utf-8")
                }
            })
        }
    }
}
