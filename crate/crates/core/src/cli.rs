//! `apnlab` command line. [`run`] returns the process exit code:
//! 0 success, 1 a requested check failed, 2 usage or input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_integer::Integer;
use serde::Serialize;
use serde_json::json;

use crate::decomposition::{pq1_set, t1_set};
use crate::error::Error;
use crate::field::{max_degree, Elem, FieldCtx};
use crate::hexanomial::{
    build_g, count_formula, enumerate_good_c, Characterizer, HexParams, HexReport,
};
use crate::io::{self, SetFile, VbfFile};
use crate::lemmas::{self, LemmaCheck};
use crate::sample_evenly;
use crate::trinomial::{self, TrinomialParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "apnlab",
    version,
    about = "APN trinomials and Budaghyan-Carlet hexanomials over GF(2^2m)"
)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Field parameters
    Field {
        #[command(subcommand)]
        cmd: FieldCmd,
    },
    /// Build f_k and check its properties
    Trinomial(TrinomialArgs),
    /// Good coefficients C and the hexanomials g_{C,k}
    Hexanomial {
        #[command(subcommand)]
        cmd: HexCmd,
    },
    /// Analyse lookup tables
    Vbf {
        #[command(subcommand)]
        cmd: VbfCmd,
    },
    /// Exhaustive checks of the trace lemmas on one field
    Lemmas(LemmaArgs),
    /// N_{m,k} for 1 <= k <= m <= max-m
    Table3 {
        #[arg(long, default_value_t = 7, value_parser = clap::value_parser!(u32).range(1..=31))]
        max_m: u32,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Size {
    /// Extension degree n = 2m
    #[arg(long)]
    n: Option<u32>,
    /// Half degree m
    #[arg(long)]
    m: Option<u32>,
}

impl Size {
    fn n(&self) -> u32 {
        match (self.n, self.m) {
            (Some(n), _) => n,
            (None, Some(m)) => m.saturating_mul(2),
            (None, None) => unreachable!("clap enforces the group"),
        }
    }

    fn field(&self) -> Result<Arc<FieldCtx>, Error> {
        Ok(Arc::new(FieldCtx::new(self.n())?))
    }

    /// `m` without building a field; `--n` must be even.
    fn m(&self) -> Result<u32, Error> {
        match (self.n, self.m) {
            (Some(n), _) if n % 2 == 1 => Err(Error::OddDegree(n)),
            (Some(n), _) => Ok(n / 2),
            (None, Some(m)) => Ok(m),
            (None, None) => unreachable!("clap enforces the group"),
        }
    }
}

#[derive(Debug, Subcommand)]
enum FieldCmd {
    Info(Size),
}

#[derive(Debug, Args)]
struct TrinomialArgs {
    #[command(flatten)]
    size: Size,
    #[arg(long)]
    k: u32,
    /// Fail unless f_k is APN
    #[arg(long)]
    check_apn: bool,
    /// Walsh spectrum, checked against {0, ±2^m, ±2^(m+1)} for APN parameters
    #[arg(long)]
    walsh: bool,
    /// Hyperplane spectrum and the closed-form labels (APN parameters only)
    #[arg(long)]
    hyperplanes: bool,
    /// Bent components against the predicted count
    #[arg(long)]
    bent: bool,
    /// Subspace property f(aX) = a^(2^k+1) f(X)
    #[arg(long)]
    subspace: bool,
    /// Everything above
    #[arg(long)]
    all: bool,
    /// Compare closed-form labels on N evenly spaced directions only
    #[arg(long)]
    sample: Option<usize>,
    /// Also write the lookup table as JSON
    #[arg(long)]
    lut_out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum HexCmd {
    /// N_{m,k} from the closed form
    Count(HexCountArgs),
    /// List every good C
    Enumerate(HexArgs),
    /// Formula, enumeration and brute force must agree; g_{C,k} must be 2^gcd(k,m)-uniform
    Verify(HexVerifyArgs),
    /// Build g_{C,k}
    Build(HexBuildArgs),
}

#[derive(Debug, Args)]
struct HexCountArgs {
    #[command(flatten)]
    size: Size,
    #[arg(long)]
    k: u32,
}

#[derive(Debug, Args)]
struct HexArgs {
    #[command(flatten)]
    size: Size,
    #[arg(long)]
    k: u32,
}

#[derive(Debug, Args)]
struct HexVerifyArgs {
    #[command(flatten)]
    size: Size,
    #[arg(long)]
    k: u32,
    /// Check uniformity on N evenly spaced good C instead of all
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long = "A")]
    a: Option<String>,
}

#[derive(Debug, Args)]
struct HexBuildArgs {
    #[command(flatten)]
    size: Size,
    #[arg(long)]
    k: u32,
    #[arg(long = "C")]
    c: String,
    #[arg(long = "A")]
    a: Option<String>,
}

#[derive(Debug, Subcommand)]
enum VbfCmd {
    /// Uniformity, Walsh and hyperplane spectra, bent components of a LUT file
    Analyze {
        input: PathBuf,
        /// Which spectrum to print with --format csv
        #[arg(long, value_enum, default_value_t = CsvSpectrum::Walsh)]
        spectrum: CsvSpectrum,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CsvSpectrum {
    Walsh,
    Hyperplane,
}

#[derive(Debug, Args)]
struct LemmaArgs {
    #[command(flatten)]
    size: Size,
    /// Only this k (default: every 1 <= k < n)
    #[arg(long)]
    k: Option<u32>,
}

/// What a subcommand produced: the serialized report and whether all checks held.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::NotCrooked { .. } => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

/// Runs with real stdout/stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout(), &mut std::io::stderr())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            let _ = writeln!(err, "error: --threads must be positive");
            return EXIT_USAGE;
        }
        builder = builder.num_threads(t);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };

    let result = pool.install(|| dispatch(&cli, err));
    match result {
        Ok(outcome) => {
            if let Err(e) = emit(&cli, &outcome.text, out) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
            if outcome.ok {
                EXIT_OK
            } else {
                let _ = writeln!(err, "check failed");
                EXIT_CHECK_FAILED
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "check failed: {msg}");
            EXIT_CHECK_FAILED
        }
    }
}

fn emit(cli: &Cli, text: &str, out: &mut dyn Write) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => out.write_all(text.as_bytes()),
    }
}

fn dispatch(cli: &Cli, err: &mut (dyn Write + Send)) -> CmdResult {
    let fmt = cli.format;
    match &cli.command {
        Command::Field {
            cmd: FieldCmd::Info(size),
        } => field_info(size, fmt),
        Command::Trinomial(args) => trinomial_cmd(args, fmt, err),
        Command::Hexanomial { cmd } => match cmd {
            HexCmd::Count(a) => hex_count(a, fmt),
            HexCmd::Enumerate(a) => hex_enumerate(a, fmt),
            HexCmd::Verify(a) => hex_verify(a, fmt, err),
            HexCmd::Build(a) => hex_build(a, fmt),
        },
        Command::Vbf {
            cmd: VbfCmd::Analyze { input, spectrum },
        } => vbf_analyze(input, *spectrum, fmt),
        Command::Lemmas(args) => lemmas_cmd(args, fmt, err),
        Command::Table3 { max_m } => table3_cmd(*max_m, fmt),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Aligned `key  value` lines.
fn kv_table(rows: &[(&str, String)]) -> String {
    let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut s = String::new();
    for (k, v) in rows {
        let _ = writeln!(s, "{k:<w$}  {v}");
    }
    s
}

fn kv_csv(rows: &[(&str, String)]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["key", "value"]).expect("in-memory write");
    for (k, v) in rows {
        w.write_record([*k, v.as_str()]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
}

fn kv(fmt: Format, rows: &[(&str, String)], json: serde_json::Value) -> String {
    match fmt {
        Format::Table => kv_table(rows),
        Format::Csv => kv_csv(rows),
        Format::Json => to_json(&json),
    }
}

fn parse_elem(ctx: &FieldCtx, s: &str) -> Result<Elem, Failure> {
    Ok(ctx.parse_elem(s)?)
}

fn field_info(size: &Size, fmt: Format) -> CmdResult {
    let ctx = size.field()?;
    let rows = [
        ("n", ctx.n().to_string()),
        ("m", ctx.m().to_string()),
        ("modulus", format!("{:x}", ctx.modulus())),
        ("generator", ctx.generator().to_hex()),
        ("subfield_generator", ctx.subfield_generator().to_hex()),
        ("t1_size", t1_set(&ctx).len().to_string()),
        ("pq1_size", pq1_set(&ctx).len().to_string()),
        ("max_n", max_degree().to_string()),
    ];
    let j = json!({
        "n": ctx.n(),
        "m": ctx.m(),
        "modulus": format!("{:x}", ctx.modulus()),
        "generator": ctx.generator(),
        "subfield_generator": ctx.subfield_generator(),
        "t1_size": t1_set(&ctx).len(),
        "pq1_size": pq1_set(&ctx).len(),
        "max_n": max_degree(),
    });
    Ok(Outcome::ok(kv(fmt, &rows, j)))
}

fn trinomial_cmd(args: &TrinomialArgs, fmt: Format, err: &mut (dyn Write + Send)) -> CmdResult {
    let ctx = args.size.field()?;
    let params = TrinomialParams::new(ctx.clone(), args.k)?;
    let predicted = params.is_apn_predicted();
    let f = trinomial::build_f(&params)?;
    if let Some(path) = &args.lut_out {
        std::fs::write(path, io::vbf_to_json(&f)).map_err(|e| Failure::Usage(e.to_string()))?;
    }

    let m = ctx.m();
    let _ = writeln!(
        err,
        "differential uniformity over {} directions",
        ctx.order()
    );
    let delta = f.differential_uniformity();
    let mut ok = (delta == 2) == predicted && (!args.check_apn || delta == 2);
    let mut rows = vec![
        ("m", m.to_string()),
        ("k", args.k.to_string()),
        ("apn_predicted", predicted.to_string()),
        ("differential_uniformity", delta.to_string()),
    ];
    let mut j = json!({
        "m": m,
        "k": args.k,
        "apn_predicted": predicted,
        "differential_uniformity": delta,
    });

    if args.walsh || args.all {
        let _ = writeln!(err, "walsh spectrum");
        let spec = f.walsh_spectrum();
        let values: Vec<i64> = spec.values().collect();
        let walsh_ok = !predicted || values == trinomial::predicted_walsh_values(m);
        ok &= walsh_ok;
        rows.push(("walsh_values", join(&values)));
        rows.push(("walsh_ok", walsh_ok.to_string()));
        j["walsh_spectrum"] = spec.iter().map(|(v, c)| json!([v, c])).collect();
        j["walsh_ok"] = json!(walsh_ok);
    }

    if args.hyperplanes || args.all {
        if !predicted {
            return Err(Failure::Usage(
                Error::NonApnParameters { m, k: args.k }.to_string(),
            ));
        }
        let _ = writeln!(err, "hyperplane labels");
        let betas = f.hyperplane_betas()?;
        let spec: crate::vbf::HyperplaneSpectrum = betas.iter().copied().collect();
        let const3 = spec.iter().all(|(_, c)| c == 3);
        let distinct_ok = spec.distinct() as u64 == ctx.order() / 3;
        let dirs: Vec<u32> = (1..ctx.size() as u32).collect();
        let dirs = sample_evenly(&dirs, args.sample.unwrap_or(dirs.len()));
        let mut closed_ok = true;
        for &a in &dirs {
            let expect = trinomial::beta_closed_form(&params, Elem::from_bits(a))?;
            if expect != betas[a as usize - 1] {
                closed_ok = false;
                let _ = writeln!(err, "closed form differs at A = {a:x}");
                break;
            }
        }
        ok &= const3 && distinct_ok && closed_ok;
        rows.push(("hyperplane_distinct", spec.distinct().to_string()));
        rows.push(("hyperplane_multiplicity_3", const3.to_string()));
        rows.push(("closed_form_directions", dirs.len().to_string()));
        rows.push(("closed_form_ok", closed_ok.to_string()));
        j["hyperplane_distinct"] = json!(spec.distinct());
        j["hyperplane_multiplicity_3"] = json!(const3);
        j["closed_form_directions"] = json!(dirs.len());
        j["closed_form_ok"] = json!(closed_ok);
    }

    if args.bent || args.all {
        let _ = writeln!(err, "bent components");
        let bent = f.bent_components();
        let expect = trinomial::predicted_bent_count(m);
        let bent_ok = !predicted || bent.len() as u64 == expect;
        ok &= bent_ok;
        rows.push(("bent_components", bent.len().to_string()));
        rows.push(("bent_predicted", expect.to_string()));
        j["bent_components"] = json!(bent.len());
        j["bent_predicted"] = json!(expect);
    }

    if args.subspace || args.all {
        let _ = writeln!(err, "subspace property");
        let sp = f.subspace_property(args.k);
        ok &= sp;
        rows.push(("subspace_property", sp.to_string()));
        j["subspace_property"] = json!(sp);
    }

    rows.push(("passed", ok.to_string()));
    j["passed"] = json!(ok);
    Ok(Outcome {
        text: kv(fmt, &rows, j),
        ok,
    })
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn check_k_range(m: u32, k: u32) -> Result<(), Failure> {
    if k == 0 || k >= 2 * m {
        return Err(Error::KOutOfRange { k, n: 2 * m }.into());
    }
    Ok(())
}

fn hex_count(args: &HexCountArgs, fmt: Format) -> CmdResult {
    let m = args.size.m()?;
    if !(1..=31).contains(&m) {
        return Err(Failure::Usage(format!("m = {m} outside 1..=31")));
    }
    check_k_range(m, args.k)?;
    let n = count_formula(m, args.k);
    let text = match fmt {
        Format::Table => format!("{n}\n"),
        Format::Csv => format!("m,k,count\n{m},{},{n}\n", args.k),
        Format::Json => to_json(&json!({ "m": m, "k": args.k, "count_formula": n })),
    };
    Ok(Outcome::ok(text))
}

fn hex_enumerate(args: &HexArgs, fmt: Format) -> CmdResult {
    let ctx = args.size.field()?;
    let good = enumerate_good_c(&ctx, args.k)?;
    let text = match fmt {
        Format::Table => good.iter().map(|c| format!("{c}\n")).collect(),
        Format::Csv => std::iter::once("c\n".to_string())
            .chain(good.iter().map(|c| format!("{c}\n")))
            .collect(),
        Format::Json => to_json(&SetFile {
            n: ctx.n(),
            modulus: ctx.modulus(),
            elements: good,
        }),
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct VerifyReport {
    #[serde(flatten)]
    report: HexReport,
    uniformity_expected: u32,
    uniformity_checked: usize,
    uniformity_failures: Vec<Elem>,
    passed: bool,
}

fn hex_verify(args: &HexVerifyArgs, fmt: Format, err: &mut (dyn Write + Send)) -> CmdResult {
    let ctx = args.size.field()?;
    let k = args.k;
    let a = match &args.a {
        Some(s) => Some(parse_elem(&ctx, s)?),
        None => None,
    };
    let _ = writeln!(err, "counting good C three ways");
    let report = HexReport::compute(&ctx, k)?;
    let expected = 1u32 << k.gcd(&ctx.m());
    let picked = sample_evenly(&report.coefficients, args.sample.unwrap_or(usize::MAX));
    let mut failures = Vec::new();
    for (i, &c) in picked.iter().enumerate() {
        if i % 64 == 0 {
            let _ = writeln!(err, "uniformity {i}/{}", picked.len());
        }
        let params = match a {
            Some(a) => HexParams::with_a(ctx.clone(), k, c, a)?,
            None => HexParams::new(ctx.clone(), k, c)?,
        };
        if build_g(&params)?.differential_uniformity() != expected {
            failures.push(c);
        }
    }
    let passed = report.consistent() && failures.is_empty();
    let v = VerifyReport {
        uniformity_expected: expected,
        uniformity_checked: picked.len(),
        uniformity_failures: failures,
        passed,
        report,
    };
    let text = match fmt {
        Format::Json => to_json(&v),
        _ => {
            let rows = [
                ("m", v.report.m.to_string()),
                ("k", k.to_string()),
                ("count_formula", v.report.n_formula.to_string()),
                ("count_enumerated", v.report.n_enumerated.to_string()),
                ("count_bruteforce", v.report.n_bruteforce.to_string()),
                ("uniformity_expected", expected.to_string()),
                ("uniformity_checked", v.uniformity_checked.to_string()),
                (
                    "uniformity_failures",
                    v.uniformity_failures.len().to_string(),
                ),
                ("passed", passed.to_string()),
            ];
            if fmt == Format::Csv {
                kv_csv(&rows)
            } else {
                kv_table(&rows)
            }
        }
    };
    Ok(Outcome { text, ok: passed })
}

fn hex_build(args: &HexBuildArgs, fmt: Format) -> CmdResult {
    let ctx = args.size.field()?;
    let c = parse_elem(&ctx, &args.c)?;
    let params = match &args.a {
        Some(s) => HexParams::with_a(ctx.clone(), args.k, c, parse_elem(&ctx, s)?)?,
        None => HexParams::new(ctx.clone(), args.k, c)?,
    };
    let g = build_g(&params)?;
    let good = Characterizer::new(&ctx, args.k)?.is_good(c)?;
    let delta = g.differential_uniformity();
    let expected = 1u32 << args.k.gcd(&ctx.m());
    let ok = !good || delta == expected;
    let text = match fmt {
        Format::Json => to_json(&VbfFile::new(&g)),
        Format::Csv => {
            let mut s = String::from("x,g\n");
            for (x, y) in g.lut().iter().enumerate() {
                let _ = writeln!(s, "{x:x},{y}");
            }
            s
        }
        Format::Table => kv_table(&[
            ("m", ctx.m().to_string()),
            ("k", args.k.to_string()),
            ("C", c.to_hex()),
            ("A", params.a.to_hex()),
            ("c_good", good.to_string()),
            ("differential_uniformity", delta.to_string()),
            ("expected_if_good", expected.to_string()),
            ("passed", ok.to_string()),
        ]),
    };
    Ok(Outcome { text, ok })
}

fn vbf_analyze(input: &PathBuf, which: CsvSpectrum, fmt: Format) -> CmdResult {
    let raw = std::fs::read_to_string(input)
        .map_err(|e| Failure::Usage(format!("{}: {e}", input.display())))?;
    let f = io::parse_vbf_json(&raw)?.into_vbf()?;
    let delta = f.differential_uniformity();
    let walsh = f.walsh_spectrum();
    let hyper = f.hyperplane_spectrum();
    let bent = f.bent_components();
    let text = match fmt {
        Format::Csv => match which {
            CsvSpectrum::Walsh => io::spectrum_to_csv(&walsh),
            CsvSpectrum::Hyperplane => io::spectrum_to_csv(&hyper?),
        },
        Format::Json => to_json(&json!({
            "n": f.ctx().n(),
            "differential_uniformity": delta,
            "walsh_spectrum": walsh.iter().map(|(v, c)| json!([v, c])).collect::<Vec<_>>(),
            "crooked": hyper.is_ok(),
            "hyperplane_spectrum": hyper.as_ref().ok().map(|h| h.iter().map(|(b, c)| json!([b, c])).collect::<Vec<_>>()),
            "bent_components": bent.len(),
        })),
        Format::Table => kv_table(&[
            ("n", f.ctx().n().to_string()),
            ("differential_uniformity", delta.to_string()),
            ("walsh_values", join(&walsh.values().collect::<Vec<_>>())),
            ("crooked", hyper.is_ok().to_string()),
            (
                "hyperplane_distinct",
                hyper
                    .as_ref()
                    .map(|h| h.distinct().to_string())
                    .unwrap_or_else(|_| "-".into()),
            ),
            ("bent_components", bent.len().to_string()),
        ]),
    };
    Ok(Outcome::ok(text))
}

fn lemmas_cmd(args: &LemmaArgs, fmt: Format, err: &mut (dyn Write + Send)) -> CmdResult {
    let ctx = args.size.field()?;
    let checks: Vec<LemmaCheck> = match args.k {
        Some(k) => lemmas::check_lemmas(&ctx, k)?,
        None => {
            let _ = writeln!(err, "checking k = 1..{}", ctx.n() - 1);
            lemmas::check_all(&ctx)?
        }
    };
    let ok = lemmas::all_passed(&checks);
    let text = match fmt {
        Format::Json => to_json(&json!({ "n": ctx.n(), "checks": checks, "passed": ok })),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for c in &checks {
                w.serialize(c).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
        }
        Format::Table => {
            let w = checks.iter().map(|c| c.lemma.len()).max().unwrap_or(0);
            let mut s = String::new();
            for c in &checks {
                let status = match (c.passed, c.applicable) {
                    (true, true) => "pass",
                    (true, false) => "n/a",
                    (false, _) => "FAIL",
                };
                let _ = writeln!(
                    s,
                    "{:<w$}  k={:<3} {:<4}  {}",
                    c.lemma, c.k, status, c.detail
                );
            }
            s
        }
    };
    Ok(Outcome { text, ok })
}

fn table3_cmd(max_m: u32, fmt: Format) -> CmdResult {
    let rows = crate::hexanomial::table3(max_m);
    let text = match fmt {
        Format::Csv => io::table3_to_csv(&rows),
        Format::Json => to_json(&rows),
        Format::Table => {
            let w = rows
                .iter()
                .flatten()
                .map(|v| v.to_string().len())
                .max()
                .unwrap_or(1);
            let mut s = String::new();
            let _ = write!(s, "m\\k");
            for k in 1..=max_m {
                let _ = write!(s, " {k:>w$}");
            }
            s.push('\n');
            for (i, row) in rows.iter().enumerate() {
                let _ = write!(s, "{:>3}", i + 1);
                for v in row {
                    let _ = write!(s, " {v:>w$}");
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}
