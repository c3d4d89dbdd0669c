//! Command-line front end.
//!
//! Every subcommand builds a text rendering, a CSV table and a JSON object,
//! and `--format` picks one. Exit codes: 0 on success, 1 when a check
//! reports FAIL, 2 on usage or domain errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bounds::{self, BoundReport, TableRow};
use crate::char_class::{self, ConfigModel, CyclicModel};
use crate::graded_algebra::{element_height, Element, Height};
use crate::hopf_newton::{CoalgebraSpec, HopfAlgebra};
use crate::modp_arith::{alpha_p, dl_sequence_stats, DlSequence};
use crate::regular_verify::{self, PolyMapC};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "regemb", version, about = "Exact mod-p computations behind lower bounds for complex k-regular and l-skew embeddings")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    /// Write output to FILE instead of stdout.
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lower-bound calculators and the comparison table.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Total and inverse Chern classes in the explicit models.
    #[command(subcommand)]
    Classes(ClassesCmd),
    /// Newton-polynomial primitivity checks.
    #[command(subcommand)]
    Newton(NewtonCmd),
    /// Dyer-Lashof sequence statistics.
    #[command(subcommand)]
    Dl(DlCmd),
    /// Height bounds, and element heights in a configuration model.
    Heights(HeightsArgs),
    /// Sampled k-regularity checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Subcommand)]
enum BoundsCmd {
    /// Three k-regular bounds for C^d sources, one row per (d,k,p).
    Table {
        /// Rows as d,k,p triples.
        #[arg(long, num_args = 1.., value_parser = parse_triple)]
        rows: Vec<(u64, u64, u64)>,
    },
    /// A single calculator.
    Query(QueryArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorem {
    KregularReal,
    KregularPrime,
    KregularChisholm,
    Brs,
    SkewReal,
    SkewPrime,
    SkewChisholm,
    CatLower,
    Secat,
    DualKregular,
    DualSkew,
}

#[derive(Debug, Args)]
struct QueryArgs {
    #[arg(long, value_enum)]
    theorem: Theorem,
    /// Source dimension (real for kregular-real, kregular-prime and brs).
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    l: Option<u64>,
    /// Exponent m with k = p^m (secat).
    #[arg(long)]
    m: Option<u32>,
    /// Top non-vanishing dual Chern index (dual-*).
    #[arg(long = "dual")]
    dual: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum ClassesCmd {
    /// Cyclic model F_p[T]/(T^{M+1}) (x) Lambda(e) of F(R^d,p)/(Z/p).
    Cyclic {
        #[arg(long)]
        p: u64,
        /// Real dimension.
        #[arg(long)]
        d: u64,
        /// Multiplicity of the bundle.
        #[arg(long, default_value_t = 1)]
        mult: u64,
    },
    /// Configuration model F_p[c_1..c_{k-1}]/(c_i^d) with d = p^t.
    Config {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        k: u64,
    },
}

#[derive(Debug, Subcommand)]
enum NewtonCmd {
    /// Primitivity of v_l and of their Bockstein images.
    Check {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: u64,
        /// Cofiber parameter; switches to the extended polynomials.
        #[arg(long)]
        n: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
enum DlCmd {
    /// Degree, length, excess and admissibility of a sequence.
    Stats {
        #[arg(long)]
        p: u64,
        /// s_1,...,s_k for p = 2; eps_1,s_1,...,eps_k,s_k for odd p.
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
    },
}

#[derive(Debug, Args)]
struct HeightsArgs {
    #[arg(long)]
    d: u64,
    #[arg(long)]
    p: u64,
    /// Also compute the height of every c_i in the configuration model with
    /// k points (needs d = p^t).
    #[arg(long)]
    k: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum VerifyCmd {
    /// The Vandermonde map z -> (1, z, ..., z^{k-1}).
    Vandermonde {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        /// Bound on numerators and denominators of sampled coordinates.
        #[arg(long = "box", default_value_t = 100)]
        bound: u32,
        /// Drop the top component (expected to fail).
        #[arg(long)]
        truncated: bool,
    },
    /// A polynomial map read from a JSON file.
    Map {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long = "box", default_value_t = 100)]
        bound: u32,
    },
}

fn parse_triple(s: &str) -> Result<(u64, u64, u64), String> {
    let parts: Vec<u64> = s
        .split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|e| format!("`{s}`: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [d, k, p] => Ok((d, k, p)),
        _ => Err(format!("`{s}`: expected d,k,p")),
    }
}

struct Output {
    text: String,
    csv_header: Vec<String>,
    csv_rows: Vec<Vec<String>>,
    json: Value,
    fail: bool,
}

impl Output {
    fn new(text: String, header: &[&str], rows: Vec<Vec<String>>, json: Value) -> Self {
        Self {
            text,
            csv_header: header.iter().map(|s| s.to_string()).collect(),
            csv_rows: rows,
            json,
            fail: false,
        }
    }

    fn render(&self, format: OutputFormat) -> Result<String, String> {
        match format {
            OutputFormat::Text => Ok(self.text.clone()),
            OutputFormat::Json => serde_json::to_string_pretty(&self.json)
                .map(|s| s + "\n")
                .map_err(|e| e.to_string()),
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.csv_header).map_err(|e| e.to_string())?;
                for r in &self.csv_rows {
                    w.write_record(r).map_err(|e| e.to_string())?;
                }
                let bytes = w.into_inner().map_err(|e| e.to_string())?;
                String::from_utf8(bytes).map_err(|e| e.to_string())
            }
        }
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    2
                }
            };
        }
    };
    let output = match dispatch(&cli.command) {
        Ok(o) => o,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
    };
    let rendered = match output.render(cli.format) {
        Ok(s) => s,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, rendered.as_bytes()),
        None => out.write_all(rendered.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return 2;
    }
    if output.fail {
        1
    } else {
        0
    }
}

type CmdResult = Result<Output, String>;

fn dispatch(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Bounds(BoundsCmd::Table { rows }) => bounds_table(rows),
        Command::Bounds(BoundsCmd::Query(q)) => bounds_query(q),
        Command::Classes(ClassesCmd::Cyclic { p, d, mult }) => classes_cyclic(*p, *d, *mult),
        Command::Classes(ClassesCmd::Config { p, t, k }) => classes_config(*p, *t, *k),
        Command::Newton(NewtonCmd::Check { p, d, n }) => newton_check(*p, *d, *n),
        Command::Dl(DlCmd::Stats { p, seq }) => dl_stats(*p, seq),
        Command::Heights(h) => heights(h),
        Command::Verify(VerifyCmd::Vandermonde { k, samples, seed, bound, truncated }) => {
            let f = if *truncated {
                regular_verify::truncated_vandermonde(k.saturating_sub(1).max(1))
            } else {
                regular_verify::vandermonde_map(*k)
            };
            let name = if *truncated { "truncated_vandermonde" } else { "vandermonde" };
            verify(name, &f, *k, *samples, *seed, *bound)
        }
        Command::Verify(VerifyCmd::Map { file, k, samples, seed, bound }) => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
            let f = PolyMapC::from_json(&text).map_err(|e| e.to_string())?;
            verify("map", &f, *k, *samples, *seed, *bound)
        }
    }
}

/// Left-aligned columns separated by two spaces, trailing blanks trimmed.
fn align(rows: &[Vec<String>]) -> String {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for r in rows {
        let mut line = String::new();
        for (c, cell) in r.iter().enumerate() {
            line.push_str(cell);
            if c + 1 < r.len() {
                let pad = widths[c] - cell.chars().count() + 2;
                line.extend(std::iter::repeat_n(' ', pad));
            }
        }
        s.push_str(line.trim_end());
        s.push('\n');
    }
    s
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn bounds_table(rows: &[(u64, u64, u64)]) -> CmdResult {
    let rows = if rows.is_empty() { bounds::DEFAULT_TABLE_ROWS } else { rows };
    let table = bounds::comparison_table(rows).map_err(|e| e.to_string())?;
    let cell = |r: &Option<BoundReport>| r.as_ref().map(|r| r.least_admissible_n.to_string());
    let mut text_rows = vec![vec!["(d,k,p)".into(), "thmA".into(), "thmB".into(), "thmC".into(), "notes".into()]];
    let mut csv_rows = Vec::new();
    let mut json_rows = Vec::new();
    for row in &table {
        let TableRow { d, k, p, .. } = *row;
        let notes = row.notes().join("; ");
        let a = row.thm_a.least_admissible_n.to_string();
        text_rows.push(vec![
            format!("({d},{k},{p})"),
            a.clone(),
            cell(&row.thm_b).unwrap_or_else(|| "--".into()),
            cell(&row.thm_c).unwrap_or_else(|| "--".into()),
            notes.clone(),
        ]);
        csv_rows.push(vec![
            d.to_string(),
            k.to_string(),
            p.to_string(),
            a,
            cell(&row.thm_b).unwrap_or_default(),
            cell(&row.thm_c).unwrap_or_default(),
            notes,
        ]);
        json_rows.push(json!({
            "d": d, "k": k, "p": p,
            "thmA": to_json(&row.thm_a),
            "thmB": to_json(&row.thm_b),
            "thmC": to_json(&row.thm_c),
            "notes": row.notes(),
        }));
    }
    Ok(Output::new(
        align(&text_rows),
        &["d", "k", "p", "thmA", "thmB", "thmC", "notes"],
        csv_rows,
        json!({ "rows": json_rows }),
    ))
}

fn need<T: Copy>(v: Option<T>, name: &str, theorem: Theorem) -> Result<T, String> {
    v.ok_or_else(|| {
        let t = theorem.to_possible_value().expect("not skipped");
        format!("--{name} is required for --theorem {}", t.get_name())
    })
}

fn bounds_query(q: &QueryArgs) -> CmdResult {
    use Theorem::*;
    let th = q.theorem;
    if th == Secat {
        let d = need(q.d, "d", th)?;
        let p = need(q.p, "p", th)?;
        let m = need(q.m, "m", th)?;
        let (lo, hi) = bounds::secat_range(d, p, m).map_err(|e| e.to_string())?;
        let text = format!("secat range for d={d}, k={p}^{m}: [{lo}, {hi}]\n");
        return Ok(Output::new(
            text,
            &["d", "p", "m", "lower", "upper"],
            vec![vec![d.to_string(), p.to_string(), m.to_string(), lo.to_string(), hi.to_string()]],
            json!({ "d": d, "p": p, "m": m, "lower": lo, "upper": hi }),
        ));
    }
    let r = match th {
        KregularReal => bounds::bound_kregular_real(need(q.d, "d", th)?, need(q.k, "k", th)?),
        KregularPrime => bounds::bound_kregular_prime(need(q.d, "d", th)?, need(q.p, "p", th)?),
        KregularChisholm => {
            let (d, k) = (need(q.d, "d", th)?, need(q.k, "k", th)?);
            bounds::bound_kregular_chisholm(d, k, need(q.p, "p", th)?).map(|mut r| {
                r.notes.extend(bounds::known_constructions(d, k));
                r
            })
        }
        Brs => bounds::bound_brs(need(q.d, "d", th)?, need(q.k, "k", th)?),
        SkewReal => bounds::bound_skew_real(need(q.d, "d", th)?, need(q.l, "l", th)?),
        SkewPrime => bounds::bound_skew_prime(need(q.d, "d", th)?, need(q.l, "l", th)?),
        SkewChisholm => {
            bounds::bound_skew_chisholm(need(q.d, "d", th)?, need(q.l, "l", th)?, need(q.p, "p", th)?)
        }
        CatLower => bounds::cat_lower(need(q.d, "d", th)?, need(q.k, "k", th)?),
        DualKregular => Ok(bounds::derive_bound_from_dual_class(
            need(q.dual, "dual", th)?,
            bounds::Criterion::KRegular { k: need(q.k, "k", th)? },
        )),
        DualSkew => Ok(bounds::derive_bound_from_dual_class(
            need(q.dual, "dual", th)?,
            bounds::Criterion::Skew { d: need(q.d, "d", th)?, l: need(q.l, "l", th)? },
        )),
        Secat => unreachable!(),
    }
    .map_err(|e| e.to_string())?;
    Ok(report_output(&r))
}

fn report_output(r: &BoundReport) -> Output {
    let mut text = String::new();
    let inputs: Vec<String> = r.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(text, "theorem: {}", r.theorem_id.as_str());
    let _ = writeln!(text, "inputs: {}", inputs.join(", "));
    let _ = writeln!(text, "least admissible N: {}", r.least_admissible_n);
    let _ = writeln!(text, "excluded up to: {}", r.excluded_up_to);
    for (k, v) in &r.intermediates {
        let _ = writeln!(text, "{k}: {}", serde_json::to_string(v).expect("serializable"));
    }
    for n in &r.notes {
        let _ = writeln!(text, "note: {n}");
    }
    Output::new(
        text,
        &["theorem", "least_admissible_n", "excluded_up_to", "notes"],
        vec![vec![
            r.theorem_id.as_str().into(),
            r.least_admissible_n.to_string(),
            r.excluded_up_to.to_string(),
            r.notes.join("; "),
        ]],
        to_json(r),
    )
}

fn element_terms(e: &Element) -> Vec<(u64, String, u64)> {
    let pres = e.presentation();
    e.terms()
        .into_iter()
        .map(|(m, c)| {
            let single = Element::monomial(pres, m.exponents(), 1).expect("valid monomial");
            (pres.monomial_degree(m) / 2, single.to_string(), c.value())
        })
        .collect()
}

fn terms_json(e: &Element) -> Value {
    Value::Array(
        element_terms(e)
            .into_iter()
            .map(|(idx, m, c)| json!({ "chern_index": idx, "monomial": m, "coefficient": c }))
            .collect(),
    )
}

fn terms_csv(e: &Element) -> Vec<Vec<String>> {
    element_terms(e)
        .into_iter()
        .map(|(idx, m, c)| vec![idx.to_string(), m, c.to_string()])
        .collect()
}

fn classes_cyclic(p: u64, d: u64, mult: u64) -> CmdResult {
    let model = CyclicModel::new(p, d).map_err(|e| e.to_string())?;
    let total = char_class::total_chern_cyclic(&model, mult).map_err(|e| e.to_string())?;
    let inverse = char_class::inverse_chern_cyclic(&model, mult).map_err(|e| e.to_string())?;
    let product_is_one = total.multiply(&inverse).map_err(|e| e.to_string())? == Element::one(model.presentation());
    let top = char_class::max_nonvanishing_inverse_degree(&inverse).map_err(|e| e.to_string())?;
    let crit = model.criterion_index();
    let crit_coeff = model.coefficient(&inverse, crit as u32).value();
    let mut notes = Vec::new();
    if mult == 1 && model.truncation_index() as u64 >= p - 1 {
        let q = p - 1;
        notes.push(format!(
            "literal product of (1 + jT) over j = 1..{q} is 1 + {q}*T^{q} = 1 - T^{q}; the form 1 + T^{q} differs in sign"
        ));
    }
    let mut text = String::new();
    let _ = writeln!(text, "model: cyclic, p={p}, d={d}, M={}", model.truncation_index());
    let _ = writeln!(text, "total (mult {mult}): {total}");
    let _ = writeln!(text, "inverse: {inverse}");
    let _ = writeln!(text, "max non-vanishing index: {top}");
    let _ = writeln!(text, "coefficient at criterion index {crit}: {crit_coeff}");
    let _ = writeln!(text, "total * inverse = 1: {}", verdict(product_is_one));
    for n in &notes {
        let _ = writeln!(text, "note: {n}");
    }
    let json = json!({
        "model": {
            "kind": "cyclic", "p": p, "d": d,
            "truncation_index": model.truncation_index(),
            "criterion_index": crit,
        },
        "mult": mult,
        "total": total.to_string(),
        "inverse": inverse.to_string(),
        "element_terms": terms_json(&inverse),
        "max_nonvanishing_degree": top,
        "checks": {
            "product_is_one": product_is_one,
            "criterion_coefficient": crit_coeff,
        },
        "notes": notes,
    });
    let mut out = Output::new(text, &["chern_index", "monomial", "coefficient"], terms_csv(&inverse), json);
    out.fail = !product_is_one;
    Ok(out)
}

fn classes_config(p: u64, t: u32, k: u64) -> CmdResult {
    let model = ConfigModel::from_exponent(p, t, k).map_err(|e| e.to_string())?;
    let d = model.dimension();
    let inverse = char_class::inverse_chern_config(&model);
    let top = char_class::max_nonvanishing_inverse_degree(&inverse).map_err(|e| e.to_string())?;
    let dual = char_class::top_dual_coefficient(&model);
    let pull = char_class::pullback_dual_degree(p, d, k).map_err(|e| e.to_string())?;
    let expected = (d - 1) * (k - alpha_p(k, p).map_err(|e| e.to_string())?);
    let power_is_one = model.total_chern().pow(d) == Element::one(model.presentation());
    let checks_ok = dual.coefficient.value() == 1
        && dual.vanishes_above
        && top == model.top_index()
        && pull.degree == expected
        && power_is_one;
    let mut text = String::new();
    let _ = writeln!(text, "model: config, p={p}, d={d}, k={k}");
    let _ = writeln!(text, "total: {}", model.total_chern());
    let _ = writeln!(text, "inverse: {inverse}");
    let _ = writeln!(text, "max non-vanishing index: {top} (expected {})", model.top_index());
    let _ = writeln!(text, "top dual coefficient: {}", dual.coefficient);
    let _ = writeln!(text, "vanishes above top index: {}", verdict(dual.vanishes_above));
    let _ = writeln!(text, "total^d = 1: {}", verdict(power_is_one));
    let _ = writeln!(text, "block pullback index: {} (expected (d-1)(k-alpha_p(k)) = {expected})", pull.degree);
    let _ = writeln!(text, "checks: {}", verdict(checks_ok));
    let json = json!({
        "model": { "kind": "config", "p": p, "t": t, "d": d, "k": k, "top_index": model.top_index() },
        "total": model.total_chern().to_string(),
        "inverse": inverse.to_string(),
        "element_terms": terms_json(&inverse),
        "max_nonvanishing_degree": top,
        "checks": {
            "top_dual_coefficient": dual.coefficient.value(),
            "vanishes_above": dual.vanishes_above,
            "total_power_is_one": power_is_one,
            "pullback_degree": pull.degree,
            "pullback_expected": expected,
            "pass": checks_ok,
        },
    });
    let mut out = Output::new(text, &["chern_index", "monomial", "coefficient"], terms_csv(&inverse), json);
    out.fail = !checks_ok;
    Ok(out)
}

fn newton_check(p: u64, d: u64, n: Option<u64>) -> CmdResult {
    let spec = match n {
        None => CoalgebraSpec::plain(p, d),
        Some(n) => CoalgebraSpec::cofiber(p, n, d),
    }
    .map_err(|e| e.to_string())?;
    let alg = HopfAlgebra::new(spec).map_err(|e| e.to_string())?;
    let report = alg.check().map_err(|e| e.to_string())?;
    let mut rows = vec![vec![
        "l".to_string(),
        "v_l".into(),
        "defect".into(),
        "d(v_l)".into(),
        "defect".into(),
        "result".into(),
    ]];
    let mut csv_rows = Vec::new();
    for r in &report.rows {
        let ok = r.primitive && r.bockstein_primitive && r.nonzero == r.expected_nonzero;
        rows.push(vec![
            r.l.to_string(),
            r.v.clone(),
            r.defect.clone(),
            r.bockstein.clone(),
            r.bockstein_defect.clone(),
            verdict(ok).into(),
        ]);
        csv_rows.push(vec![
            r.l.to_string(),
            r.v.clone(),
            r.defect.clone(),
            r.primitive.to_string(),
            r.bockstein.clone(),
            r.bockstein_defect.clone(),
            r.bockstein_primitive.to_string(),
        ]);
    }
    let kind = if n.is_some() { "extended Newton polynomials" } else { "Newton polynomials" };
    let mut text = format!("{kind} ({spec})\n");
    text.push_str(&align(&rows));
    let _ = writeln!(text, "support pattern: {}", verdict(report.support_ok));
    if n.is_some() {
        let _ = writeln!(text, "v_l = x_l on initial segment: {}", verdict(report.initial_segment_ok));
    }
    let _ = writeln!(text, "basis change: {}", verdict(report.basis_change_ok));
    let _ = writeln!(text, "overall: {}", verdict(report.pass));
    let mut out = Output::new(
        text,
        &["l", "v", "defect", "primitive", "bockstein", "bockstein_defect", "bockstein_primitive"],
        csv_rows,
        to_json(&report),
    );
    out.fail = !report.pass;
    Ok(out)
}

fn dl_stats(p: u64, seq: &str) -> CmdResult {
    let values: Vec<u64> = seq
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u64>().map_err(|e| format!("bad sequence entry `{s}`: {e}")))
        .collect::<Result<_, _>>()?;
    let sequence = if p == 2 {
        DlSequence::mod_two(&values)
    } else {
        if !values.len().is_multiple_of(2) {
            return Err("odd p expects eps,s pairs".into());
        }
        let pairs: Vec<(u8, u64)> = values
            .chunks(2)
            .map(|c| u8::try_from(c[0]).map(|e| (e, c[1])).map_err(|_| format!("epsilon {} not in {{0,1}}", c[0])))
            .collect::<Result<_, _>>()?;
        DlSequence::odd(p, &pairs).map_err(|e| e.to_string())?
    };
    let s = dl_sequence_stats(&sequence).map_err(|e| e.to_string())?;
    let text = format!(
        "degree {}\nlength {}\nexcess {}\nb {}\n{}\n",
        s.degree,
        s.length,
        s.excess,
        s.b,
        if s.admissible { "admissible" } else { "not admissible" }
    );
    let excess = match s.excess {
        crate::modp_arith::Excess::Finite(e) => json!(e),
        crate::modp_arith::Excess::Infinite => json!("inf"),
    };
    Ok(Output::new(
        text,
        &["p", "sequence", "degree", "length", "excess", "b", "admissible"],
        vec![vec![
            p.to_string(),
            seq.to_string(),
            s.degree.to_string(),
            s.length.to_string(),
            s.excess.to_string(),
            s.b.to_string(),
            s.admissible.to_string(),
        ]],
        json!({
            "p": p, "sequence": values, "degree": s.degree, "length": s.length,
            "excess": excess, "b": s.b, "admissible": s.admissible,
        }),
    ))
}

fn heights(h: &HeightsArgs) -> CmdResult {
    let hb = bounds::height_bound(h.d, h.p).map_err(|e| e.to_string())?;
    let mut text = format!("height bound for d={}, p={}: {} (t={})\n", h.d, h.p, hb.value, hb.t);
    for n in &hb.notes {
        let _ = writeln!(text, "note: {n}");
    }
    let mut csv_rows = Vec::new();
    let mut elements = Vec::new();
    let mut fail = false;
    if let Some(k) = h.k {
        let model = ConfigModel::new(h.p, h.d, k).map_err(|e| e.to_string())?;
        let cap = model.presentation().default_height_cap();
        let mut rows = vec![vec!["class".to_string(), "height".into()]];
        for i in 1..k {
            let ht = element_height(&model.c(i), cap).map_err(|e| e.to_string())?;
            let shown = match ht {
                Height::Finite(v) => v.to_string(),
                Height::ExceedsCap => format!(">{cap}"),
            };
            if let Height::Finite(v) = ht {
                fail |= u64::from(v) > h.d;
            }
            rows.push(vec![format!("c_{i}"), shown.clone()]);
            csv_rows.push(vec![format!("c_{i}"), shown.clone()]);
            elements.push(json!({ "class": format!("c_{i}"), "height": to_json(&ht) }));
        }
        let _ = writeln!(text, "element heights in the configuration model (k={k}):");
        text.push_str(&align(&rows));
    }
    let mut out = Output::new(
        text,
        &["class", "height"],
        csv_rows,
        json!({ "bound": to_json(&hb), "elements": elements }),
    );
    out.fail = fail;
    Ok(out)
}

fn verify(name: &str, f: &PolyMapC, k: usize, samples: usize, seed: u64, bound: u32) -> CmdResult {
    let report = regular_verify::verify_map(f, k, samples, seed, bound).map_err(|e| e.to_string())?;
    let text = format!(
        "map: {name} (arity {}, N = {})\nk = {k}, samples = {samples}, seed = {seed}\nindependent: {}/{}\nverdict: {}\nnote: {}\n",
        f.arity(),
        f.num_components(),
        report.passed,
        samples,
        verdict(report.failed == 0),
        report.note
    );
    let csv_rows = report
        .outcomes
        .iter()
        .map(|o| vec![o.sample.to_string(), o.seed.to_string(), o.independent.to_string()])
        .collect();
    let mut json = to_json(&report);
    json["map"] = json!(name);
    let mut out = Output::new(text, &["sample", "seed", "independent"], csv_rows, json);
    out.fail = report.failed > 0;
    Ok(out)
}
