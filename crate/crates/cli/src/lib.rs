//! Command-line front end for `cosetq`.
//!
//! [`run`] parses arguments, dispatches a subcommand and returns the process
//! exit code: 0 on success, 1 on a verification or method mismatch, 2 on
//! invalid input.

pub mod render;
pub mod verify;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use cosetq::affine::{self, AffineLabel, ComponentCache};
use cosetq::branching::{self, CosetSpec, Method, Normalization};
use cosetq::fusion::{self, Composition};
use cosetq::kostka::{self, RestrictedKostkaQuery};
use cosetq::{Error, QSeries};
use num_bigint::BigInt;
use serde::Deserialize;

use render::OutputFormat;
use verify::Suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

const DEFAULT_ORDER: i64 = 12;

#[derive(Parser, Debug)]
#[command(name = "cosetq", version, about = "Exact q-series for sl(2) fusion, Kostka and coset branching functions")]
pub struct Cli {
    /// Output format [default: plain]
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Directory for cached character components (COSETQ_CACHE overrides)
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// TOML file with defaults for cache_dir, default_order and format
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Restricted Kostka polynomial K^(k)_{j,m}
    Kostka(KostkaArgs),
    /// Coset branching function b_j
    Branching(BranchingArgs),
    /// Graded component of an affine sl(2) character
    Char(CharArgs),
    /// Run verification suites
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KostkaMethod {
    Fermionic,
    Alternating,
    Both,
}

#[derive(Args, Debug)]
pub struct KostkaArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub j: i64,
    /// Composition, "1:2,3:1" or "[2,0,1]"
    #[arg(long)]
    pub m: String,
    #[arg(long, value_enum, default_value_t = KostkaMethod::Fermionic)]
    pub method: KostkaMethod,
    /// Reversed normalization (the default)
    #[arg(long, conflicts_with = "plain_normalization")]
    pub reversed: bool,
    /// Un-reversed normalization q^{h(m)} K(1/q)
    #[arg(long)]
    pub plain_normalization: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BranchingMethod {
    FiniteN,
    Bosonic,
    Fermionic,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    D,
    L0,
}

#[derive(Args, Debug)]
pub struct BranchingArgs {
    #[arg(long)]
    pub i1: i64,
    #[arg(long)]
    pub k1: i64,
    #[arg(long)]
    pub i2: i64,
    #[arg(long)]
    pub k2: i64,
    #[arg(long)]
    pub j: i64,
    #[arg(long)]
    pub order: Option<i64>,
    #[arg(long, value_enum, default_value_t = BranchingMethod::Bosonic)]
    pub method: BranchingMethod,
    #[arg(long, value_enum, default_value_t = NormArg::D)]
    pub normalization: NormArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CharMethod {
    Limit,
    Classical,
    Both,
}

#[derive(Args, Debug)]
pub struct CharArgs {
    #[arg(long)]
    pub i: i64,
    #[arg(long)]
    pub k: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub weight: i64,
    #[arg(long)]
    pub order: Option<i64>,
    #[arg(long, value_enum, default_value_t = CharMethod::Limit)]
    pub method: CharMethod,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, default_value_t = 4)]
    pub max_level: i64,
    #[arg(long)]
    pub order: Option<i64>,
    /// Write the JSON report here
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// Defaults read from `--config`; flags always win.
#[derive(Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CliConfig {
    pub cache_dir: Option<PathBuf>,
    pub default_order: Option<i64>,
    pub format: Option<OutputFormat>,
}

impl CliConfig {
    pub fn load(path: &Path) -> cosetq::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let cfg: Self = toml::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        if let Some(o) = cfg.default_order {
            if o < 1 {
                return Err(Error::Domain(format!("default_order {o} must be at least 1")));
            }
        }
        Ok(cfg)
    }
}

/// Everything a command needs besides its own flags.
struct Context {
    format: OutputFormat,
    default_order: i64,
    cache: Option<ComponentCache>,
}

impl Context {
    fn order(&self, flag: Option<i64>) -> cosetq::Result<i64> {
        let order = flag.unwrap_or(self.default_order);
        if order < 0 {
            return Err(Error::Domain(format!("negative order {order}")));
        }
        Ok(order)
    }
}

/// Result of a command: text for stdout and an exit code.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: EXIT_OK }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Inconsistent(_) | Error::NotExact(_) => EXIT_MISMATCH,
        _ => EXIT_INVALID,
    }
}

/// Parses `args` (including the program name), runs the command and prints
/// its output. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(out) => {
            if !out.stdout.is_empty() {
                println!("{}", out.stdout);
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn execute(cli: Cli) -> cosetq::Result<Outcome> {
    let cfg = match &cli.config {
        Some(p) => CliConfig::load(p)?,
        None => CliConfig::default(),
    };
    let cache_flag = cli.cache_dir.or(cfg.cache_dir);
    let ctx = Context {
        format: cli.format.or(cfg.format).unwrap_or(OutputFormat::Plain),
        default_order: cfg.default_order.unwrap_or(DEFAULT_ORDER),
        cache: ComponentCache::from_env_or(cache_flag.as_deref())?,
    };
    match cli.command {
        Command::Kostka(a) => cmd_kostka(&ctx, &a),
        Command::Branching(a) => cmd_branching(&ctx, &a),
        Command::Char(a) => cmd_char(&ctx, &a),
        Command::Verify(a) => cmd_verify(&ctx, &a),
    }
}

fn cmd_kostka(ctx: &Context, a: &KostkaArgs) -> cosetq::Result<Outcome> {
    let m = Composition::parse(&a.m, Some(a.k))?.padded_to(a.k)?;
    let q = RestrictedKostkaQuery::new(a.k, a.j, m)?;
    let present = |s: QSeries| -> cosetq::Result<QSeries> {
        if a.plain_normalization {
            s.reverse(&fusion::h_of(q.composition()))
        } else {
            Ok(s)
        }
    };
    match a.method {
        KostkaMethod::Fermionic => {
            let s = present(kostka::restricted_kostka_fermionic(&q))?;
            Ok(Outcome::ok(render::series(&s, ctx.format)))
        }
        KostkaMethod::Alternating => {
            let s = present(kostka::restricted_kostka_alternating(&q)?)?;
            Ok(Outcome::ok(render::series(&s, ctx.format)))
        }
        KostkaMethod::Both => {
            let f = present(kostka::restricted_kostka_fermionic(&q))?;
            let alt = present(kostka::restricted_kostka_alternating(&q)?)?;
            let text = render::named(&[("fermionic", &f), ("alternating", &alt)], ctx.format);
            Ok(compared(ctx.format, text, &f, &alt, "MATCH", "MISMATCH"))
        }
    }
}

/// Appends the verdict line; json output stays a single document.
fn compared(fmt: OutputFormat, text: String, a: &QSeries, b: &QSeries, good: &str, bad: &str) -> Outcome {
    let mm = a.first_mismatch(b);
    let code = if mm.is_none() { EXIT_OK } else { EXIT_MISMATCH };
    if fmt == OutputFormat::Json {
        return Outcome { stdout: text, code };
    }
    let verdict = match mm {
        None => good.to_string(),
        Some(m) => format!("{bad} at q^{}: {} vs {}", m.exponent, m.lhs, m.rhs),
    };
    Outcome {
        stdout: format!("{text}\n{verdict}"),
        code,
    }
}

fn cmd_branching(ctx: &Context, a: &BranchingArgs) -> cosetq::Result<Outcome> {
    let spec = CosetSpec::new(a.i1, a.k1, a.i2, a.k2, a.j)?;
    let order = ctx.order(a.order)?;
    let norm = match a.normalization {
        NormArg::D => Normalization::D,
        NormArg::L0 => Normalization::L0,
    };
    let cache = ctx.cache.as_ref();
    let show = |s: &QSeries| branching_text(s, &spec, norm, ctx.format);
    let single = |m: Method| -> cosetq::Result<Outcome> {
        let s = branching::branching::<BigInt>(m, &spec, order, cache)?;
        Ok(Outcome::ok(show(&s)))
    };
    match a.method {
        BranchingMethod::FiniteN => single(Method::FiniteN),
        BranchingMethod::Bosonic => single(Method::Bosonic),
        BranchingMethod::Fermionic => single(Method::Fermionic),
        BranchingMethod::All => {
            let values: Vec<QSeries> = Method::ALL
                .iter()
                .map(|&m| branching::branching::<BigInt>(m, &spec, order, cache))
                .collect::<cosetq::Result<_>>()?;
            let mut lines = Vec::new();
            let mut code = EXIT_OK;
            for x in 0..3 {
                for y in x + 1..3 {
                    if let Some(mm) = values[x].first_mismatch(&values[y]) {
                        code = EXIT_MISMATCH;
                        lines.push(format!(
                            "MISMATCH {}/{} at q^{}: {} vs {}",
                            Method::ALL[x],
                            Method::ALL[y],
                            mm.exponent,
                            mm.lhs,
                            mm.rhs
                        ));
                    }
                }
            }
            if ctx.format == OutputFormat::Json {
                if code == EXIT_OK {
                    return Ok(Outcome::ok(show(&values[0])));
                }
                let named: Vec<(&str, QSeries)> = Method::ALL
                    .iter()
                    .zip(&values)
                    .map(|(m, v)| (m.name(), branching::normalize(v, &spec, norm)))
                    .collect();
                let refs: Vec<(&str, &QSeries)> = named.iter().map(|(n, s)| (*n, s)).collect();
                return Ok(Outcome {
                    stdout: render::named(&refs, ctx.format),
                    code,
                });
            }
            let stdout = if code == EXIT_OK {
                format!("{}\nALL METHODS AGREE", show(&values[0]))
            } else {
                let mut out: Vec<String> =
                    Method::ALL.iter().zip(&values).map(|(m, v)| format!("{m}: {}", show(v))).collect();
                out.extend(lines);
                out.join("\n")
            };
            Ok(Outcome { stdout, code })
        }
    }
}

/// Under `l0`, plain and latex keep the rational prefix outside the
/// integer-exponent series; json and csv carry it in the series itself.
fn branching_text(s: &QSeries, spec: &CosetSpec, norm: Normalization, fmt: OutputFormat) -> String {
    let gamma = branching::branching_prefactor(spec, norm);
    let prefixed = gamma != cosetq::qseries::int(0);
    match (norm, fmt) {
        (Normalization::L0, OutputFormat::Plain) if prefixed => {
            format!("q^({}) * ({})", exponent(&gamma), render::series(s, fmt))
        }
        (Normalization::L0, OutputFormat::Latex) if prefixed => {
            format!("q^{{{}}} \\left({}\\right)", exponent(&gamma), render::series(s, fmt))
        }
        _ => render::series(&branching::normalize(s, spec, norm), fmt),
    }
}

fn exponent(e: &cosetq::ExactRational) -> String {
    if e.is_integer() {
        e.to_integer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

fn cmd_char(ctx: &Context, a: &CharArgs) -> cosetq::Result<Outcome> {
    let label = AffineLabel::new(a.i, a.k)?;
    let order = ctx.order(a.order)?;
    let limit = || affine::graded_component_char_cached::<BigInt>(ctx.cache.as_ref(), label, a.weight, order);
    let classical = || -> cosetq::Result<QSeries> {
        let ch = affine::classical_character::<BigInt>(label, order, a.weight.abs())?;
        Ok(ch.component(a.weight))
    };
    match a.method {
        CharMethod::Limit => Ok(Outcome::ok(render::series(&limit()?, ctx.format))),
        CharMethod::Classical => Ok(Outcome::ok(render::series(&classical()?, ctx.format))),
        CharMethod::Both => {
            let l = limit()?;
            let c = classical()?;
            let text = render::named(&[("limit", &l), ("classical", &c)], ctx.format);
            Ok(compared(ctx.format, text, &l, &c, "ROUTES AGREE", "ROUTES DISAGREE"))
        }
    }
}

fn cmd_verify(ctx: &Context, a: &VerifyArgs) -> cosetq::Result<Outcome> {
    if a.max_level < 1 {
        return Err(Error::Domain(format!("max-level {} must be positive", a.max_level)));
    }
    let opts = verify::Options {
        max_level: a.max_level,
        order: ctx.order(a.order)?,
        cache: ctx.cache.clone(),
    };
    let records = verify::run_suite(a.suite, &opts)?;
    let json = serde_json::to_string_pretty(&records)?;
    if let Some(path) = &a.report {
        std::fs::write(path, format!("{json}\n"))?;
    }
    let code = if verify::gating_failures(&records) == 0 { EXIT_OK } else { EXIT_MISMATCH };
    let stdout = match ctx.format {
        OutputFormat::Json => json,
        _ => verify::summary_table(&records),
    };
    Ok(Outcome { stdout, code })
}
