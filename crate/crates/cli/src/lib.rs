//! The `multireg` command line: argument handling, text and JSON rendering
//! and exit statuses. [`run`] is the whole program minus process plumbing.

pub mod parse;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use multireg_core::blocks::helix_block;
use multireg_core::regularity::{
    self, aligned_k, beilinson_terms, resolution_class, Probe, RegularityVerdict, VerdictValue, Witness,
};
use multireg_core::suites::{run_suite, Suite, SuiteConfig, SuiteReport};
use multireg_core::{
    aligned_window_dual, cohomology, ext_table, fundamental_collection, gram_matrix, helix_window, Error, K0Lattice,
    MultiDegree, SplitSheaf, Space,
};

use parse::{parse_degree, parse_sheaf, parse_sheaf_at, parse_space, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SEARCH_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "multireg", version, about = "Sheaf cohomology, block collections and regularity on products of projective spaces")]
struct Cli {
    /// Emit one JSON object with `inputs`, `result` and `witnesses`.
    #[arg(long, global = true)]
    json: bool,
    /// Print only the headline value.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cohomology dimensions h^q of a split sheaf.
    Cohom {
        space: String,
        sheaf: Option<String>,
        /// File with one sheaf expression per line.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Euler pairing chi(A, B).
    Euler { space: String, a: String, b: String },
    /// Blocks of the fundamental collection, or one helix block.
    Blocks {
        space: String,
        #[arg(long, allow_negative_numbers = true)]
        index: Option<i64>,
    },
    /// Gram matrix of a helix window.
    Gram {
        space: String,
        #[arg(long, allow_negative_numbers = true)]
        window: Option<i64>,
    },
    /// Closed-form left dual of an aligned window, or dual classes in K0.
    Dual {
        space: String,
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
        /// Report K0 classes from the orthogonality solve instead.
        #[arg(long)]
        k0: bool,
        #[arg(long, requires = "k0", allow_negative_numbers = true)]
        window: Option<i64>,
    },
    /// Regularity of a split sheaf of line bundles.
    Reg {
        space: String,
        sheaf: Option<String>,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Test a single value instead of searching.
        #[arg(long, allow_negative_numbers = true, conflicts_with = "base")]
        at: Option<i64>,
        /// Staircase base point for `--kind hw`, e.g. `1,-2`.
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Terms of the resolution of an m-regular sheaf by its collection.
    Beilinson {
        space: String,
        sheaf: String,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
    },
    /// Run verification suites over deterministic catalogs.
    Verify {
        space: String,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_degree: i64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Cm,
    Block,
    Hw,
}

#[derive(Debug)]
enum Failure {
    Parse(ParseError),
    Core(Error),
    Usage(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type CmdResult = std::result::Result<Report, Failure>;

/// Everything a command produces; rendered according to the output flags.
struct Report {
    inputs: Value,
    result: Value,
    witnesses: Vec<Value>,
    text: String,
    quiet: String,
    status: i32,
}

impl Report {
    fn new(inputs: Value, result: Value, text: String, quiet: String) -> Self {
        Report { inputs, result, witnesses: Vec::new(), text, quiet, status: EXIT_OK }
    }
}

/// Runs the program on `args` (including the program name) and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return status;
        }
    };
    match dispatch(&cli.command) {
        Ok(report) => {
            let written = if cli.json {
                let obj = json!({ "inputs": report.inputs, "result": report.result, "witnesses": report.witnesses });
                writeln!(out, "{}", serde_json::to_string_pretty(&obj).expect("json values serialize"))
            } else if cli.quiet {
                writeln!(out, "{}", report.quiet)
            } else {
                out.write_all(report.text.as_bytes())
            };
            if written.is_err() {
                return EXIT_USAGE;
            }
            report.status
        }
        Err(f) => {
            let (status, msg) = match f {
                Failure::Parse(e) => (EXIT_USAGE, format!("parse error: {e}")),
                Failure::Core(Error::SearchCap(cap)) => (EXIT_SEARCH_CAP, format!("search cap of {cap} steps exceeded")),
                Failure::Core(e) => (EXIT_USAGE, e.to_string()),
                Failure::Usage(m) => (EXIT_USAGE, m),
            };
            let _ = writeln!(err, "error: {msg}");
            status
        }
    }
}

fn dispatch(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Cohom { space, sheaf, manifest } => {
            let x = parse_space(space)?;
            batch(&x, space, sheaf, manifest, |f| cohom(&x, f))
        }
        Command::Euler { space, a, b } => euler(space, a, b),
        Command::Blocks { space, index } => blocks(space, *index),
        Command::Gram { space, window } => gram(space, window.unwrap_or(0)),
        Command::Dual { space, k, k0, window } => {
            if *k0 {
                if k.is_some() {
                    return Err(Failure::Usage("`--k` and `--k0` are exclusive".into()));
                }
                dual_k0(space, window.unwrap_or(0))
            } else {
                dual(space, k.unwrap_or(0))
            }
        }
        Command::Reg { space, sheaf, kind, at, base, manifest } => {
            let x = parse_space(space)?;
            let base = base.as_deref().map(|b| parse_degree(b, &x)).transpose()?;
            if base.is_some() && *kind != Kind::Hw {
                return Err(Failure::Usage("`--base` applies to `--kind hw` only".into()));
            }
            batch(&x, space, sheaf, manifest, |f| reg(&x, f, *kind, *at, base.as_ref()))
        }
        Command::Beilinson { space, sheaf, m } => beilinson(space, sheaf, *m),
        Command::Verify { space, suite, max_degree } => verify(space, suite, *max_degree),
    }
}

/// One sheaf from the command line, or every line of a manifest.
fn batch(
    space: &Space,
    space_text: &str,
    sheaf: &Option<String>,
    manifest: &Option<PathBuf>,
    mut one: impl FnMut(&SplitSheaf) -> CmdResult,
) -> CmdResult {
    match (sheaf, manifest) {
        (Some(text), None) => {
            let f = parse_sheaf(text, space)?;
            let mut r = one(&f)?;
            r.inputs = merge(json!({ "space": space_text, "sheaf": f.to_string() }), r.inputs);
            Ok(r)
        }
        (None, Some(path)) => {
            let content = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let (mut results, mut witnesses) = (Vec::new(), Vec::new());
            let (mut text, mut quiet) = (String::new(), Vec::new());
            let mut status = EXIT_OK;
            for (i, line) in content.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let f = parse_sheaf_at(line, space, i + 1)?;
                let r = one(&f)?;
                status = status.max(r.status);
                results.push(json!({ "sheaf": f.to_string(), "result": r.result }));
                witnesses.extend(r.witnesses);
                text.push_str(&format!("{f}\n"));
                for l in r.text.lines() {
                    text.push_str(&format!("  {l}\n"));
                }
                quiet.push(r.quiet);
            }
            let inputs = json!({ "space": space_text, "manifest": path.display().to_string() });
            Ok(Report { inputs, result: Value::Array(results), witnesses, text, quiet: quiet.join("\n"), status })
        }
        (Some(_), Some(_)) => Err(Failure::Usage("give either a sheaf or `--manifest`, not both".into())),
        (None, None) => Err(Failure::Usage("missing sheaf expression (or `--manifest <path>`)".into())),
    }
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Some(b), Value::Object(e)) = (base.as_object_mut(), extra) {
        b.extend(e);
    }
    base
}

fn degree_json(a: &MultiDegree) -> Value {
    json!(a.0)
}

fn witness_json(w: &Witness) -> Value {
    match &w.probe {
        Probe::Twist(t) => json!({ "probe": "twist", "twist": degree_json(t), "degree": w.degree, "dimension": w.dimension }),
        Probe::TestObject { member, object } => json!({
            "probe": "test-object",
            "member": degree_json(member),
            "object": object.to_string(),
            "degree": w.degree,
            "dimension": w.dimension,
        }),
    }
}

fn cohom(space: &Space, f: &SplitSheaf) -> CmdResult {
    let table = cohomology(space, f)?;
    let mut result = serde_json::Map::new();
    let mut text = String::new();
    for (q, h) in table.dims().iter().enumerate() {
        if *h != 0 {
            result.insert(q.to_string(), json!(h));
        }
        text.push_str(&format!("h^{q} = {h}\n"));
    }
    let chi = table.euler_char()?;
    text.push_str(&format!("chi = {chi}\n"));
    let quiet = table.dims().iter().map(|h| h.to_string()).collect::<Vec<_>>().join(" ");
    Ok(Report::new(json!({}), Value::Object(result), text, quiet))
}

fn euler(space_text: &str, a: &str, b: &str) -> CmdResult {
    let x = parse_space(space_text)?;
    let fa = parse_sheaf(a, &x)?;
    let fb = parse_sheaf(b, &x)?;
    let mut chi = 0i64;
    for (m, t) in fa.terms() {
        let e = ext_table(&x, t, &fb)?.euler_char()?;
        chi = (*m as i64).checked_mul(e).and_then(|v| chi.checked_add(v)).ok_or(Error::Overflow("euler pairing"))?;
    }
    let inputs = json!({ "space": space_text, "a": fa.to_string(), "b": fb.to_string() });
    Ok(Report::new(inputs, json!(chi), format!("chi({fa}, {fb}) = {chi}\n"), chi.to_string()))
}

fn blocks(space_text: &str, index: Option<i64>) -> CmdResult {
    let x = parse_space(space_text)?;
    let listed: Vec<(i64, multireg_core::Block)> = match index {
        Some(i) => vec![(i, helix_block(&x, i))],
        None => fundamental_collection(&x).blocks().iter().cloned().enumerate().map(|(i, b)| (i as i64, b)).collect(),
    };
    let mut text = String::new();
    let mut result = Vec::new();
    for (i, b) in &listed {
        text.push_str(&format!("E_{i}: {b}\n"));
        result.push(json!({ "index": i, "members": b.members().iter().map(degree_json).collect::<Vec<_>>() }));
    }
    let quiet = listed.iter().map(|(_, b)| b.len().to_string()).collect::<Vec<_>>().join(" ");
    let inputs = json!({ "space": space_text, "index": index });
    Ok(Report::new(inputs, json!(result), text, quiet))
}

fn gram(space_text: &str, window: i64) -> CmdResult {
    let x = parse_space(space_text)?;
    let w = helix_window(&x, window);
    let g = gram_matrix(&x, &w)?;
    let members: Vec<String> = w.flattened().iter().map(|(_, a)| format!("O{a}")).collect();
    let unitri = g.is_unitriangular();
    let text = format!("window {window}: {}\n{}\nunitriangular: {unitri}\n", members.join(", "), g.to_string().trim_end());
    let inputs = json!({ "space": space_text, "window": window });
    let result = json!({ "members": members, "matrix": g.rows(), "unitriangular": unitri });
    Ok(Report::new(inputs, result, text, unitri.to_string()))
}

fn dual(space_text: &str, k: i64) -> CmdResult {
    let x = parse_space(space_text)?;
    let duals = aligned_window_dual(&x, k)?;
    let mut text = String::new();
    let mut result = Vec::new();
    for pair in duals.iter().flatten() {
        text.push_str(&format!("j={} E_{} O{} -> {}\n", pair.distance, pair.block, pair.member, pair.dual));
        result.push(json!({
            "distance": pair.distance,
            "block": pair.block,
            "member": degree_json(&pair.member),
            "dual": pair.dual.to_string(),
        }));
    }
    let quiet = duals.iter().flatten().map(|p| p.dual.to_string()).collect::<Vec<_>>().join(", ");
    let inputs = json!({ "space": space_text, "k": k, "window": k * (x.d() as i64 + 1) });
    Ok(Report::new(inputs, json!(result), text, quiet))
}

fn dual_k0(space_text: &str, window: i64) -> CmdResult {
    let x = parse_space(space_text)?;
    let lattice = K0Lattice::new(&x)?;
    let classes = lattice.left_dual_classes(window)?;
    let basis: Vec<String> = lattice.basis().iter().map(|a| format!("O{a}")).collect();
    let mut text = format!("basis: {}\n", basis.join(", "));
    let mut result = Vec::new();
    for c in &classes {
        text.push_str(&format!("j={} E_{} O{} -> {} rank {}\n", c.distance, c.block, c.member, c.class, c.class.rank()));
        result.push(json!({
            "distance": c.distance,
            "block": c.block,
            "member": degree_json(&c.member),
            "class": c.class.coords(),
            "rank": c.class.rank(),
        }));
    }
    let quiet = classes.iter().map(|c| c.class.rank().to_string()).collect::<Vec<_>>().join(" ");
    let inputs = json!({ "space": space_text, "window": window, "basis": basis });
    Ok(Report::new(inputs, json!(result), text, quiet))
}

fn outcome_report(kind: Kind, at: Value, regular: Option<bool>, witness: Option<&Witness>, note: Option<String>) -> Report {
    let word = match regular {
        Some(true) => "true",
        Some(false) => "false",
        None => "undetermined",
    };
    let mut text = format!("{word}\n");
    if let Some(w) = witness {
        text.push_str(&format!("witness: {w}\n"));
    }
    if let Some(n) = &note {
        text.push_str(&format!("{n}\n"));
    }
    let mut result = json!({ "kind": kind_name(kind), "at": at, "regular": regular });
    if let Some(n) = note {
        result["note"] = json!(n);
    }
    let mut r = Report::new(json!({}), result, text, word.to_string());
    r.witnesses = witness.map(witness_json).into_iter().collect();
    r
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Cm => "cm",
        Kind::Block => "block",
        Kind::Hw => "hw",
    }
}

fn verdict_report(kind: Kind, v: &RegularityVerdict) -> Report {
    let value = match v.value() {
        Some(x) => json!(x),
        None => json!("-inf"),
    };
    let headline = v.value().map_or("-inf".to_string(), |x| x.to_string());
    let mut text = format!("{headline}\n");
    let mut result = json!({ "kind": kind_name(kind), "value": value });
    if let VerdictValue::Aligned { k, m, lower_exclusive } = v.value {
        text.push_str(&format!("aligned k = {k}; regularity lies in ({lower_exclusive}, {m}]\n"));
        result["k"] = json!(k);
        result["interval"] = json!([lower_exclusive, m]);
    }
    if v.experimental {
        text.push_str("experimental: staircase sets on more than two factors\n");
        result["experimental"] = json!(true);
    }
    for w in &v.witnesses {
        text.push_str(&format!("not regular one step below: {w}\n"));
    }
    let mut r = Report::new(json!({}), result, text, headline);
    r.witnesses = v.witnesses.iter().map(witness_json).collect();
    r
}

fn single_factor(space: &Space, kind: Kind) -> std::result::Result<u32, Failure> {
    if space.r() == 1 {
        Ok(space.d())
    } else {
        Err(Failure::Usage(format!("`--kind {}` needs a single projective space", kind_name(kind))))
    }
}

fn reg(space: &Space, f: &SplitSheaf, kind: Kind, at: Option<i64>, base: Option<&MultiDegree>) -> CmdResult {
    match (kind, at, base) {
        (Kind::Cm, None, _) => Ok(verdict_report(kind, &regularity::cm_regularity(single_factor(space, kind)?, f)?)),
        (Kind::Cm, Some(m), _) => {
            let o = regularity::cm_regular(single_factor(space, kind)?, f, m)?;
            Ok(outcome_report(kind, json!(m), Some(o.is_regular()), o.witness(), None))
        }
        (Kind::Block, None, _) => Ok(verdict_report(kind, &regularity::block_regularity(space, f)?)),
        (Kind::Block, Some(m), _) if space.r() == 1 => {
            let o = regularity::block_regular_pn(space.d(), f, m)?;
            Ok(outcome_report(kind, json!(m), Some(o.is_regular()), o.witness(), None))
        }
        (Kind::Block, Some(m), _) => match aligned_k(space, m) {
            Some(k) => {
                let o = regularity::block_regular_aligned(space, f, k)?;
                Ok(outcome_report(kind, json!(m), Some(o.is_regular()), o.witness(), Some(format!("aligned k = {k}"))))
            }
            None => {
                let v = regularity::block_regularity_aligned(space, f)?;
                let (regular, note) = match v.value {
                    VerdictValue::NegInfinity => (Some(true), "zero sheaf".to_string()),
                    VerdictValue::Aligned { m: hi, .. } if m >= hi => {
                        (Some(true), format!("not aligned; regular from aligned {hi} upward"))
                    }
                    VerdictValue::Aligned { lower_exclusive: lo, .. } if m <= lo => {
                        (Some(false), format!("not aligned; regularity exceeds {lo}"))
                    }
                    VerdictValue::Aligned { m: hi, lower_exclusive: lo, .. } => {
                        (None, format!("not aligned; regularity lies in ({lo}, {hi}]"))
                    }
                    _ => (None, "not aligned".to_string()),
                };
                Ok(outcome_report(kind, json!(m), regular, None, Some(note)))
            }
        },
        (Kind::Hw, None, None) => Ok(verdict_report(kind, &regularity::hw_min_diagonal(space, f)?)),
        (Kind::Hw, at, base) => {
            let p = match (at, base) {
                (_, Some(b)) => b.clone(),
                (Some(t), None) => space.diagonal(t),
                (None, None) => unreachable!("handled above"),
            };
            let o = regularity::hw_regular(space, f, &p)?;
            let note = (space.r() > 2).then(|| "experimental: staircase sets on more than two factors".to_string());
            Ok(outcome_report(kind, degree_json(&p), Some(o.is_regular()), o.witness(), note))
        }
    }
}

fn beilinson(space_text: &str, sheaf: &str, m: i64) -> CmdResult {
    let x = parse_space(space_text)?;
    let f = parse_sheaf(sheaf, &x)?;
    let terms = beilinson_terms(&x, &f, m)?;
    let lattice = K0Lattice::new(&x)?;
    let matches = resolution_class(&lattice, &terms)? == lattice.class_of_sheaf(&f)?;
    let mut text = String::new();
    let mut result = Vec::new();
    for t in &terms {
        let parts: Vec<String> =
            t.summands.iter().filter(|(_, c)| *c > 0).map(|(a, c)| format!("{c}*O{a}")).collect();
        let shown = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        text.push_str(&format!("L_{}: {shown}\n", t.p));
        result.push(json!({
            "p": t.p,
            "summands": t.summands.iter().map(|(a, c)| json!({ "line": degree_json(a), "multiplicity": c })).collect::<Vec<_>>(),
        }));
    }
    text.push_str(&format!("K0 identity: {}\n", if matches { "holds" } else { "FAILS" }));
    let inputs = json!({ "space": space_text, "sheaf": f.to_string(), "m": m });
    let mut r = Report::new(inputs, json!({ "terms": result, "k0_identity": matches }), text, matches.to_string());
    if !matches {
        r.status = EXIT_VERIFY_FAILED;
    }
    Ok(r)
}

/// Failures listed per suite in text output.
const SHOWN_FAILURES: usize = 5;

fn verify(space_text: &str, suite: &str, max_degree: i64) -> CmdResult {
    let x = parse_space(space_text)?;
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse().map_err(|_| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.token()).collect();
            Failure::Usage(format!("unknown suite `{suite}`; expected one of {} or all", names.join(", ")))
        })?]
    };
    if max_degree < 0 {
        return Err(Failure::Usage("`--max-degree` must be non-negative".into()));
    }
    let config = SuiteConfig { max_degree, ..SuiteConfig::default() };
    let reports: Vec<SuiteReport> = suites.iter().map(|&s| run_suite(&x, s, &config)).collect::<Result<_, _>>()?;
    let mut text = String::new();
    let mut result = Vec::new();
    let mut witnesses = Vec::new();
    for r in &reports {
        let state = match (&r.skipped, r.passed()) {
            (Some(_), _) => "skipped",
            (None, true) => "pass",
            (None, false) => "FAIL",
        };
        text.push_str(&format!("{}: {state} ({} cases", r.suite, r.cases));
        if !r.failures.is_empty() {
            text.push_str(&format!(", {} failures", r.failures.len()));
        }
        text.push_str(")\n");
        if let Some(why) = &r.skipped {
            text.push_str(&format!("  {why}\n"));
        }
        for fail in r.failures.iter().take(SHOWN_FAILURES) {
            text.push_str(&format!("  {}: {}\n", fail.case, fail.detail));
        }
        for fail in &r.failures {
            witnesses.push(json!({ "suite": r.suite.token(), "case": fail.case, "detail": fail.detail }));
        }
        result.push(json!({
            "suite": r.suite.token(),
            "status": state,
            "cases": r.cases,
            "failures": r.failures.len(),
            "skipped": r.skipped,
        }));
    }
    let ok = reports.iter().all(|r| r.passed());
    let inputs = json!({ "space": space_text, "suite": suite, "max_degree": max_degree });
    let mut r = Report::new(inputs, json!(result), text, if ok { "pass" } else { "fail" }.to_string());
    r.witnesses = witnesses;
    r.status = if ok { EXIT_OK } else { EXIT_VERIFY_FAILED };
    Ok(r)
}
