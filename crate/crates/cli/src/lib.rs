//! Command-line front end for `conjugate-core`.
//!
//! [`parse_args`] turns an argument vector into a validated [`RunConfig`];
//! [`run`] executes it and returns the exit code with the rendered output.
//!
//! | exit | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | a verification exceeded its tolerance |
//! | 2 | usage error |
//! | 3 | domain or parameter error |

// `!(x < y)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod output;
pub mod spec;
pub mod svg;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use conjugate_core::analysis::{self, cobweb_path, density_report, zero_preimage_set};
use conjugate_core::chaos_rng::{self, DistributionSpec, FixedPointWord, DEFAULT_SEED};
use conjugate_core::closed_form::{self, crosscheck_closed_form};
use conjugate_core::conjugacy::{self, Propagation};
use conjugate_core::map_core::{self, iterate, orbit};
use conjugate_core::{Error as CoreError, Homeomorphism, MapDescriptor};

use output::{Report, Value};
use spec::{parse_homeo, parse_map, SpecError};

pub const SEED_ENV: &str = "CONJUGATE_SEED";

pub const MAX_LENGTH: usize = 10_000_000;
pub const MAX_SAMPLES: usize = 10_000_000;
pub const MAX_GRID: usize = 1_000_000;
pub const MAX_PERIOD: usize = 64;
pub const MAX_FRACTIONAL_ORDER: usize = 16;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// `--help` or `--version`; printed to standard output with exit 0.
    #[error("{0}")]
    Info(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Info(_) => 0,
            CliError::Usage(_) => 2,
            CliError::Core(_) => 3,
        }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Syntax(m) => CliError::Usage(m),
            SpecError::Invalid(e) => CliError::Core(e),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Parser)]
#[command(name = "conjugate", version, about = "Iterate interval maps, check conjugacies and draw cobwebs")]
struct Cli {
    /// Output format; svg is available for cobweb only
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Report wall-clock time (makes output non-reproducible)
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Args)]
struct MapPoint {
    #[arg(long)]
    map: String,
    #[arg(long, allow_hyphen_values = true)]
    x0: f64,
    #[arg(long)]
    n: usize,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Apply a map n times
    Iterate(MapPoint),
    /// Print the orbit x0, f(x0), ..., fⁿ(x0)
    Orbit(MapPoint),
    /// Locate fixed points by grid scan and bisection
    FixedPoints {
        #[arg(long)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<f64>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Closed-form iterates
    #[command(subcommand)]
    ClosedForm(ClosedFormCmd),
    /// Conjugacy checks
    #[command(subcommand)]
    Conjugacy(ConjugacyCmd),
    /// Cobweb (Lamerey) path
    Cobweb {
        #[arg(long)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        x0: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Largest gap in the zero-preimage set of a unimodal map
    Density {
        #[arg(long)]
        map: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 0.01)]
        threshold: f64,
    },
    /// Logistic-map random numbers
    #[command(subcommand)]
    Rng(RngCmd),
    /// Separation of two nearby orbits
    Sensitivity {
        #[arg(long)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        x0: f64,
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.1)]
        threshold: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormName {
    Boole,
    Herschel,
    Hyperbola,
    FractionalQuadratic,
    FractionalHyperbola,
}

#[derive(Debug, Subcommand)]
enum ClosedFormCmd {
    /// Compare a closed form with brute-force iteration
    Check {
        #[arg(long, value_enum)]
        form: FormName,
        #[arg(long, default_value_t = 3f64.sqrt())]
        e: f64,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<f64>,
        #[arg(long)]
        n_max: Option<usize>,
        /// Root order k of a fractional iterate (the 1/k iterate)
        #[arg(long, default_value_t = 2)]
        order: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Gate on |Δ|/max(1, |fⁿ(x)|) instead of |Δ|
        #[arg(long)]
        relative: bool,
    },
}

#[derive(Debug, Subcommand)]
enum ConjugacyCmd {
    /// Check h∘f = g∘h for a coordinate change h
    Verify {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Check f∘h = h∘g for a map h that need not be invertible
    Semiverify {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, allow_hyphen_values = true)]
        hi: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Smallest p with fᵖ = id on a grid
    Order {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 6)]
        p_max: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Transport a seed correspondence along orbits and look for conflicts
    Propagate {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long, allow_hyphen_values = true)]
        seed_lo: f64,
        #[arg(long, allow_hyphen_values = true)]
        seed_hi: f64,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 1000)]
        grid: usize,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
}

#[derive(Debug, Subcommand)]
enum RngCmd {
    /// Emit n values shaped to a target distribution
    Generate {
        #[arg(long)]
        n: usize,
        /// Defaults to $CONJUGATE_SEED, then 0.123456789
        #[arg(long)]
        seed: Option<f64>,
        /// uniform, arcsine, power:g=<v> or map:<map>
        #[arg(long, default_value = "uniform")]
        dist: String,
    },
    /// Kolmogorov-Smirnov distance of generated values to the target CDF
    Ks {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: Option<f64>,
        #[arg(long, default_value = "uniform")]
        dist: String,
        #[arg(long, default_value_t = 0.01)]
        tol: f64,
    },
    /// Collapse of fixed-point words under doubling
    Collapse {
        #[arg(long)]
        bits: u32,
        /// Try every word of the given width
        #[arg(long, conflicts_with = "value")]
        exhaustive: bool,
        /// A single word; its orbit is printed
        #[arg(long, required_unless_present = "exhaustive")]
        value: Option<u64>,
        #[arg(long)]
        steps: Option<usize>,
    },
}

/// Closed form under test, with its parameters resolved.
#[derive(Debug, Clone, PartialEq)]
pub enum Form {
    Boole,
    Herschel,
    Hyperbola { e: f64, a: f64 },
    FractionalQuadratic { order: usize },
    FractionalHyperbola { e: f64, a: f64, order: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Iterate { map: MapDescriptor, x0: f64, n: usize },
    Orbit { map: MapDescriptor, x0: f64, n: usize },
    FixedPoints { map: MapDescriptor, lo: f64, hi: f64, tol: f64 },
    ClosedForm { form: Form, lo: f64, hi: f64, n_max: usize, samples: usize, tol: f64, relative: bool },
    Verify { f: MapDescriptor, g: MapDescriptor, h: Homeomorphism, samples: usize, tol: f64 },
    Semiverify { f: MapDescriptor, g: MapDescriptor, h: MapDescriptor, lo: f64, hi: f64, samples: usize, tol: f64 },
    Order { map: MapDescriptor, p_max: usize, samples: usize, tol: f64 },
    Propagate {
        f: MapDescriptor,
        g: MapDescriptor,
        h: Homeomorphism,
        seed_lo: f64,
        seed_hi: f64,
        depth: usize,
        grid: usize,
        tol: f64,
    },
    Cobweb { map: MapDescriptor, x0: f64, steps: usize },
    Density { map: MapDescriptor, depth: usize, threshold: f64 },
    RngGenerate { n: usize, seed: f64, dist: DistributionSpec, dist_text: String },
    RngKs { n: usize, seed: f64, dist: DistributionSpec, dist_text: String, tol: f64 },
    RngCollapse { bits: u32, word: Option<u64>, steps: Option<usize> },
    Sensitivity { map: MapDescriptor, x0: f64, delta: f64, n: usize, threshold: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub timing: bool,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn cap(name: &str, v: usize, lo: usize, hi: usize) -> Result<usize> {
    if (lo..=hi).contains(&v) {
        Ok(v)
    } else {
        Err(usage(format!("--{name} must be in {lo}..={hi}, got {v}")))
    }
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(usage(format!("--{name} must be positive, got {v}")))
    }
}

fn finite(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(usage(format!("--{name} must be finite, got {v}")))
    }
}

fn parse_dist(text: &str) -> Result<DistributionSpec> {
    let dist = match text.trim() {
        "uniform" => DistributionSpec::Uniform,
        "arcsine" => DistributionSpec::Arcsine,
        t => {
            if let Some(rest) = t.strip_prefix("map:") {
                DistributionSpec::Map(parse_map(rest)?)
            } else if t.starts_with("power:") {
                match parse_homeo(t)? {
                    Homeomorphism::Power { exponent } => DistributionSpec::Power { exponent },
                    _ => unreachable!("power: parses to a power homeomorphism"),
                }
            } else {
                return Err(usage(format!(
                    "unknown distribution '{t}' (known: uniform, arcsine, power:g=<v>, map:<map>)"
                )));
            }
        }
    };
    dist.validate()?;
    Ok(dist)
}

fn resolve_seed(flag: Option<f64>) -> Result<f64> {
    let seed = match flag {
        Some(s) => s,
        None => match std::env::var(SEED_ENV) {
            Ok(text) => text
                .trim()
                .parse()
                .map_err(|_| usage(format!("{SEED_ENV}='{text}' is not a number")))?,
            Err(_) => DEFAULT_SEED,
        },
    };
    if seed > 0.0 && seed < 1.0 {
        Ok(seed)
    } else {
        Err(CoreError::Domain {
            x: seed,
            domain: "(0, 1) for a logistic seed".into(),
        }
        .into())
    }
}

fn bounded_range(map: &MapDescriptor, lo: Option<f64>, hi: Option<f64>) -> Result<(f64, f64)> {
    let d = map.domain();
    let lo = match lo {
        Some(v) => finite("lo", v)?,
        None if d.lo.is_finite() => d.lo,
        None => return Err(usage(format!("--lo is required: {map} has an unbounded domain"))),
    };
    let hi = match hi {
        Some(v) => finite("hi", v)?,
        None if d.hi.is_finite() => d.hi,
        None => return Err(usage(format!("--hi is required: {map} has an unbounded domain"))),
    };
    if lo < hi {
        Ok((lo, hi))
    } else {
        Err(usage(format!("--lo {lo} must be below --hi {hi}")))
    }
}

fn resolve(cli: Cli) -> Result<RunConfig> {
    let command = match cli.command {
        Cmd::Iterate(p) => Command::Iterate {
            map: parse_map(&p.map)?,
            x0: finite("x0", p.x0)?,
            n: cap("n", p.n, 0, MAX_LENGTH)?,
        },
        Cmd::Orbit(p) => Command::Orbit {
            map: parse_map(&p.map)?,
            x0: finite("x0", p.x0)?,
            n: cap("n", p.n, 0, MAX_LENGTH)?,
        },
        Cmd::FixedPoints { map, lo, hi, tol } => {
            let map = parse_map(&map)?;
            let (lo, hi) = bounded_range(&map, lo, hi)?;
            Command::FixedPoints {
                map,
                lo,
                hi,
                tol: positive("tol", tol)?,
            }
        }
        Cmd::ClosedForm(ClosedFormCmd::Check {
            form,
            e,
            a,
            lo,
            hi,
            n_max,
            order,
            samples,
            tol,
            relative,
        }) => {
            let order = cap("order", order, 1, MAX_FRACTIONAL_ORDER)?;
            let (form, dlo, dhi, dn) = match form {
                FormName::Boole => (Form::Boole, -1.0, 1.0, 10),
                FormName::Herschel => (Form::Herschel, -1.0, 3.0, 10),
                FormName::Hyperbola => (Form::Hyperbola { e, a }, 2.0, 5.0, 4),
                FormName::FractionalQuadratic => (Form::FractionalQuadratic { order }, 1.01, 3.0, 1),
                FormName::FractionalHyperbola => {
                    // smallest x whose orbit stays where every fractional iterate is real
                    let c = e * e - 1.0;
                    let floor = (c / (c - 1.0)).sqrt() * a;
                    let lo = if floor.is_finite() { floor } else { a };
                    (Form::FractionalHyperbola { e, a, order }, lo, lo + 3.0, 1)
                }
            };
            if let Form::Hyperbola { e, a } | Form::FractionalHyperbola { e, a, .. } = form {
                MapDescriptor::hyperbola(e, a)?;
            }
            let lo = finite("lo", lo.unwrap_or(dlo))?;
            let hi = finite("hi", hi.unwrap_or(dhi))?;
            if !(lo < hi) {
                return Err(usage(format!("--lo {lo} must be below --hi {hi}")));
            }
            Command::ClosedForm {
                form,
                lo,
                hi,
                n_max: cap("n-max", n_max.unwrap_or(dn), 0, closed_form::MAX_CLOSED_FORM_N)?,
                samples: cap("samples", samples, 2, MAX_SAMPLES)?,
                tol: positive("tol", tol)?,
                relative,
            }
        }
        Cmd::Conjugacy(c) => match c {
            ConjugacyCmd::Verify { f, g, h, samples, tol } => Command::Verify {
                f: parse_map(&f)?,
                g: parse_map(&g)?,
                h: parse_homeo(&h)?,
                samples: cap("samples", samples, 2, MAX_SAMPLES)?,
                tol: positive("tol", tol)?,
            },
            ConjugacyCmd::Semiverify {
                f,
                g,
                h,
                lo,
                hi,
                samples,
                tol,
            } => {
                if !(finite("lo", lo)? < finite("hi", hi)?) {
                    return Err(usage(format!("--lo {lo} must be below --hi {hi}")));
                }
                Command::Semiverify {
                    f: parse_map(&f)?,
                    g: parse_map(&g)?,
                    h: parse_map(&h)?,
                    lo,
                    hi,
                    samples: cap("samples", samples, 2, MAX_SAMPLES)?,
                    tol: positive("tol", tol)?,
                }
            }
            ConjugacyCmd::Order {
                map,
                p_max,
                samples,
                tol,
            } => Command::Order {
                map: parse_map(&map)?,
                p_max: cap("p-max", p_max, 1, MAX_PERIOD)?,
                samples: cap("samples", samples, 2, MAX_SAMPLES)?,
                tol: positive("tol", tol)?,
            },
            ConjugacyCmd::Propagate {
                f,
                g,
                h,
                seed_lo,
                seed_hi,
                depth,
                grid,
                tol,
            } => {
                if !(finite("seed-lo", seed_lo)? < finite("seed-hi", seed_hi)?) {
                    return Err(usage(format!("--seed-lo {seed_lo} must be below --seed-hi {seed_hi}")));
                }
                Command::Propagate {
                    f: parse_map(&f)?,
                    g: parse_map(&g)?,
                    h: parse_homeo(&h)?,
                    seed_lo,
                    seed_hi,
                    depth: cap("depth", depth, 0, 64)?,
                    grid: cap("grid", grid, 2, MAX_GRID)?,
                    tol: positive("tol", tol)?,
                }
            }
        },
        Cmd::Cobweb { map, x0, steps } => Command::Cobweb {
            map: parse_map(&map)?,
            x0: finite("x0", x0)?,
            steps: cap("steps", steps, 0, analysis::MAX_COBWEB_STEPS)?,
        },
        Cmd::Density { map, depth, threshold } => Command::Density {
            map: parse_map(&map)?,
            depth: cap("depth", depth, 0, analysis::MAX_PREIMAGE_DEPTH)?,
            threshold: positive("threshold", threshold)?,
        },
        Cmd::Rng(r) => match r {
            RngCmd::Generate { n, seed, dist } => Command::RngGenerate {
                n: cap("n", n, 1, MAX_LENGTH)?,
                seed: resolve_seed(seed)?,
                dist: parse_dist(&dist)?,
                dist_text: dist,
            },
            RngCmd::Ks { n, seed, dist, tol } => Command::RngKs {
                n: cap("n", n, 1, MAX_LENGTH)?,
                seed: resolve_seed(seed)?,
                dist: parse_dist(&dist)?,
                dist_text: dist,
                tol: positive("tol", tol)?,
            },
            RngCmd::Collapse {
                bits,
                exhaustive,
                value,
                steps,
            } => {
                let max = if exhaustive {
                    chaos_rng::MAX_EXHAUSTIVE_BITS
                } else {
                    chaos_rng::MAX_WORD_BITS
                };
                if !(1..=max).contains(&bits) {
                    return Err(usage(format!("--bits must be in 1..={max}, got {bits}")));
                }
                if let Some(v) = value {
                    FixedPointWord::new(bits, v)?;
                }
                Command::RngCollapse {
                    bits,
                    word: value,
                    steps: steps.map(|s| cap("steps", s, 0, 4096)).transpose()?,
                }
            }
        },
        Cmd::Sensitivity {
            map,
            x0,
            delta,
            n,
            threshold,
        } => Command::Sensitivity {
            map: parse_map(&map)?,
            x0: finite("x0", x0)?,
            delta: finite("delta", delta)?,
            n: cap("n", n, 0, MAX_LENGTH)?,
            threshold: positive("threshold", threshold)?,
        },
    };
    if cli.format == Format::Svg && !matches!(command, Command::Cobweb { .. }) {
        return Err(usage("--format svg is only available for cobweb"));
    }
    Ok(RunConfig {
        command,
        format: cli.format,
        output: cli.output,
        timing: cli.timing,
    })
}

/// Parses `argv` (including the program name) into a validated configuration.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind;
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                CliError::Info(e.to_string())
            }
            _ => {
                let text = e.to_string();
                let line = text.lines().next().unwrap_or("invalid arguments");
                usage(line.trim_start_matches("error: ").to_owned())
            }
        }
    })?;
    resolve(cli)
}

/// Exit code and rendered output of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    /// Empty when the output went to a file.
    pub stdout: String,
    /// One-line diagnostic, empty on success.
    pub stderr: String,
}

impl Outcome {
    pub fn error(e: &CliError) -> Self {
        match e {
            CliError::Info(text) => Outcome {
                code: 0,
                stdout: text.clone(),
                stderr: String::new(),
            },
            _ => Outcome {
                code: e.exit_code(),
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            },
        }
    }
}

pub fn run(config: &RunConfig) -> Outcome {
    let start = Instant::now();
    let report = match execute(&config.command, config.format) {
        Ok(r) => r,
        Err(e) => return Outcome::error(&e),
    };
    let elapsed = config.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let rendered = match config.format {
        Format::Text => report.text(elapsed),
        Format::Csv => report.csv(),
        Format::Json => report.json(elapsed),
        Format::Svg => report.svg.clone().unwrap_or_default(),
    };
    let code = if report.passed { 0 } else { 1 };
    match &config.output {
        Some(path) => match std::fs::write(path, rendered) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Outcome::error(&usage(format!("cannot write {}: {e}", path.display()))),
        },
        None => Outcome {
            code,
            stdout: rendered,
            stderr: String::new(),
        },
    }
}

fn indexed(values: &[f64], from: usize) -> Vec<Vec<Value>> {
    values
        .iter()
        .enumerate()
        .map(|(k, &x)| vec![(k + from).into(), x.into()])
        .collect()
}

fn pairs(points: &[(f64, f64)]) -> Vec<Vec<Value>> {
    points.iter().map(|&(x, y)| vec![x.into(), y.into()]).collect()
}

fn fractional_check(form: &Form, lo: f64, hi: f64, samples: usize) -> conjugate_core::Result<(f64, f64, f64)> {
    let (map, step): (MapDescriptor, Box<dyn Fn(f64) -> conjugate_core::Result<f64>>) = match *form {
        Form::FractionalQuadratic { order } => (
            MapDescriptor::Quadratic,
            Box::new(move |x| closed_form::fractional_iterate_quadratic(x, order)),
        ),
        Form::FractionalHyperbola { e, a, order } => (
            MapDescriptor::hyperbola(e, a)?,
            Box::new(move |x| closed_form::fractional_iterate_hyperbola(e, a, x, order)),
        ),
        _ => unreachable!("only fractional forms are composed"),
    };
    let order = match *form {
        Form::FractionalQuadratic { order } | Form::FractionalHyperbola { order, .. } => order,
        _ => unreachable!(),
    };
    let (mut max_abs, mut max_rel, mut argmax) = (0.0f64, 0.0f64, lo);
    for x in conjugate_core::interval::closed_grid(lo, hi, samples) {
        let mut y = x;
        for _ in 0..order {
            y = step(y)?;
        }
        let once = map.eval(x)?;
        let d = (y - once).abs();
        max_abs = max_abs.max(d);
        let rel = d / once.abs().max(1.0);
        if rel > max_rel {
            max_rel = rel;
            argmax = x;
        }
    }
    Ok((max_abs, max_rel, argmax))
}

fn form_name(form: &Form) -> &'static str {
    match form {
        Form::Boole => "boole",
        Form::Herschel => "herschel",
        Form::Hyperbola { .. } => "hyperbola",
        Form::FractionalQuadratic { .. } => "fractional-quadratic",
        Form::FractionalHyperbola { .. } => "fractional-hyperbola",
    }
}

fn execute(command: &Command, format: Format) -> Result<Report> {
    let report = match command {
        Command::Iterate { map, x0, n } => {
            let v = iterate(map, *x0, *n)?;
            let mut r = Report::new("iterate")
                .input("map", map.to_string())
                .input("x0", *x0)
                .input("n", *n)
                .result("value", v);
            r.scalar = Some(v);
            r
        }
        Command::Orbit { map, x0, n } => {
            let o = orbit(map, *x0, *n)?;
            Report::new("orbit")
                .input("map", map.to_string())
                .input("x0", *x0)
                .input("n", *n)
                .result("length", o.len())
                .table(Some("orbit"), &["k", "x"], indexed(&o.values, 0))
        }
        Command::FixedPoints { map, lo, hi, tol } => {
            let pts = map_core::fixed_points(map, *lo, *hi, *tol)?;
            Report::new("fixed-points")
                .input("map", map.to_string())
                .input("lo", *lo)
                .input("hi", *hi)
                .input("tol", *tol)
                .result("count", pts.len())
                .table(Some("fixed_points"), &["x"], pts.iter().map(|&x| vec![x.into()]).collect())
        }
        Command::ClosedForm {
            form,
            lo,
            hi,
            n_max,
            samples,
            tol,
            relative,
        } => {
            let mut r = Report::new("closed-form check")
                .input("form", form_name(form))
                .input("lo", *lo)
                .input("hi", *hi);
            let metric = match *form {
                Form::FractionalQuadratic { order } | Form::FractionalHyperbola { order, .. } => {
                    if let Form::FractionalHyperbola { e, a, .. } = *form {
                        r = r.input("e", e).input("a", a);
                    }
                    let (abs, rel, argmax) = fractional_check(form, *lo, *hi, *samples)?;
                    r = r
                        .input("order", order)
                        .input("samples", *samples)
                        .input("tol", *tol)
                        .input("relative", *relative)
                        .result("max_abs_deviation", abs)
                        .result("max_rel_deviation", rel)
                        .result("argmax_x", argmax)
                        .result("compared", *samples);
                    if *relative {
                        rel
                    } else {
                        abs
                    }
                }
                _ => {
                    let report = match *form {
                        Form::Boole => {
                            crosscheck_closed_form(&MapDescriptor::Quadratic, closed_form::boole_iterate, *lo, *hi, *n_max, *samples)?
                        }
                        Form::Herschel => crosscheck_closed_form(
                            &MapDescriptor::Quadratic,
                            closed_form::herschel_iterate,
                            *lo,
                            *hi,
                            *n_max,
                            *samples,
                        )?,
                        Form::Hyperbola { e, a } => {
                            r = r.input("e", e).input("a", a);
                            crosscheck_closed_form(
                                &MapDescriptor::hyperbola(e, a)?,
                                |x, n| closed_form::hyperbola_iterate(e, a, x, n),
                                *lo,
                                *hi,
                                *n_max,
                                *samples,
                            )?
                        }
                        _ => unreachable!(),
                    };
                    r = r
                        .input("n_max", *n_max)
                        .input("samples", *samples)
                        .input("tol", *tol)
                        .input("relative", *relative)
                        .result("max_abs_deviation", report.max_abs_deviation)
                        .result("max_rel_deviation", report.max_rel_deviation)
                        .result("argmax_x", report.argmax_x)
                        .result("argmax_n", report.argmax_n)
                        .result("compared", report.compared)
                        .result("skipped_overflow", report.skipped_overflow);
                    if *relative {
                        report.max_rel_deviation
                    } else {
                        report.max_abs_deviation
                    }
                }
            };
            r.passed = metric < *tol;
            let passed = r.passed;
            r.result("passed", passed)
        }
        Command::Verify { f, g, h, samples, tol } => {
            let c = conjugacy::verify_conjugacy(f, g, h, *samples)?;
            let mut r = Report::new("conjugacy verify")
                .input("f", f.to_string())
                .input("g", g.to_string())
                .input("h", h.to_string())
                .input("samples", *samples)
                .input("tol", *tol)
                .result("max_residual", c.max_residual)
                .result("argmax", c.argmax)
                .table(None, &["x", "residual"], pairs(&zip(&c.grid, &c.residuals)));
            r.passed = c.max_residual < *tol;
            let passed = r.passed;
            r.result("passed", passed)
        }
        Command::Semiverify {
            f,
            g,
            h,
            lo,
            hi,
            samples,
            tol,
        } => {
            let c = conjugacy::verify_semiconjugacy(f, g, h, *lo, *hi, *samples)?;
            let mut r = Report::new("conjugacy semiverify")
                .input("f", f.to_string())
                .input("g", g.to_string())
                .input("h", h.to_string())
                .input("lo", *lo)
                .input("hi", *hi)
                .input("samples", *samples)
                .input("tol", *tol)
                .result("max_residual", c.max_residual)
                .result("argmax", c.argmax)
                .table(None, &["x", "residual"], pairs(&zip(&c.grid, &c.residuals)));
            r.passed = c.max_residual < *tol;
            let passed = r.passed;
            r.result("passed", passed)
        }
        Command::Order {
            map,
            p_max,
            samples,
            tol,
        } => {
            let p = conjugacy::periodicity_order(map, *p_max, *samples, *tol)?;
            Report::new("conjugacy order")
                .input("map", map.to_string())
                .input("p_max", *p_max)
                .input("samples", *samples)
                .input("tol", *tol)
                .result("order", p)
        }
        Command::Propagate {
            f,
            g,
            h,
            seed_lo,
            seed_hi,
            depth,
            grid,
            tol,
        } => {
            let mut r = Report::new("conjugacy propagate")
                .input("f", f.to_string())
                .input("g", g.to_string())
                .input("h", h.to_string())
                .input("seed_lo", *seed_lo)
                .input("seed_hi", *seed_hi)
                .input("depth", *depth)
                .input("grid", *grid)
                .input("tol", *tol);
            match conjugacy::propagate_partial_conjugacy(f, g, *seed_lo, *seed_hi, h, *depth, *grid, *tol)? {
                Propagation::Table(t) => {
                    r = r
                        .result("status", "consistent")
                        .result("entries", t.len())
                        .table(None, &["x", "y"], pairs(&t));
                }
                Propagation::Conflict { first, second } => {
                    r = r
                        .result("status", "conflict")
                        .result("first", Value::List(vec![first.0.into(), first.1.into()]))
                        .result("second", Value::List(vec![second.0.into(), second.1.into()]))
                        .table(None, &["x", "y"], pairs(&[first, second]));
                    r.passed = false;
                }
            }
            r
        }
        Command::Cobweb { map, x0, steps } => {
            let p = cobweb_path(map, *x0, *steps)?;
            let mut r = Report::new("cobweb")
                .input("map", map.to_string())
                .input("x0", *x0)
                .input("steps", *steps)
                .result("converged", p.converged)
                .result("limit", p.limit)
                .table(Some("points"), &["x", "y"], pairs(&p.points));
            if format == Format::Svg {
                r.svg = Some(svg::cobweb_svg(map, &p));
            }
            r
        }
        Command::Density { map, depth, threshold } => {
            let set = zero_preimage_set(map, *depth)?;
            let d = density_report(&set, *threshold);
            Report::new("density")
                .input("map", map.to_string())
                .input("depth", *depth)
                .input("threshold", *threshold)
                .result("depth", *depth)
                .result("count", d.count)
                .result("largest_gap", d.largest_gap)
                .result("dense_estimate", d.dense_estimate)
                .table(
                    None,
                    &["depth", "count", "largest_gap"],
                    vec![vec![(*depth).into(), d.count.into(), d.largest_gap.into()]],
                )
        }
        Command::RngGenerate { n, seed, dist, dist_text } => {
            let values = sample(*seed, *n, dist)?;
            Report::new("rng generate")
                .input("n", *n)
                .input("seed", *seed)
                .input("dist", dist_text.as_str())
                .result("count", values.len())
                .table(Some("values"), &["k", "x"], indexed(&values, 1))
        }
        Command::RngKs {
            n,
            seed,
            dist,
            dist_text,
            tol,
        } => {
            let values = sample(*seed, *n, dist)?;
            let bad = std::cell::RefCell::new(None);
            let d = chaos_rng::ks_distance(&values, |x| {
                dist.cdf(x).unwrap_or_else(|e| {
                    bad.borrow_mut().get_or_insert(e);
                    f64::NAN
                })
            })?;
            if let Some(e) = bad.into_inner() {
                return Err(e.into());
            }
            let mut r = Report::new("rng ks")
                .input("n", *n)
                .input("seed", *seed)
                .input("dist", dist_text.as_str())
                .input("tol", *tol)
                .result("ks_distance", d);
            r.passed = d < *tol;
            let passed = r.passed;
            r.result("passed", passed)
        }
        Command::RngCollapse { bits, word, steps } => match word {
            None => {
                let c = chaos_rng::exhaustive_collapse(*bits)?;
                let mut r = Report::new("rng collapse")
                    .input("bits", *bits)
                    .input("exhaustive", true)
                    .result("bits", c.bits)
                    .result("words_tested", c.words_tested)
                    .result("max_steps", c.max_steps)
                    .result("failures", c.failures)
                    .result("mean_steps", c.mean_steps);
                r.passed = c.failures == 0;
                r
            }
            Some(v) => {
                let w = FixedPointWord::new(*bits, *v)?;
                let c = chaos_rng::fixed_precision_logistic(w, steps.unwrap_or(*bits as usize));
                let rows = c
                    .alphas
                    .iter()
                    .zip(&c.xs)
                    .enumerate()
                    .map(|(k, (&a, &x))| vec![k.into(), a.into(), x.into()])
                    .collect();
                Report::new("rng collapse")
                    .input("bits", *bits)
                    .input("value", *v)
                    .input("steps", steps.unwrap_or(*bits as usize))
                    .result("steps_to_zero", c.steps_to_zero)
                    .table(Some("orbit"), &["k", "alpha", "x"], rows)
            }
        },
        Command::Sensitivity {
            map,
            x0,
            delta,
            n,
            threshold,
        } => {
            let s = map_core::sensitivity_report(map, *x0, *delta, *n)?;
            let first = s.iter().position(|&d| d > *threshold);
            Report::new("sensitivity")
                .input("map", map.to_string())
                .input("x0", *x0)
                .input("delta", *delta)
                .input("n", *n)
                .input("threshold", *threshold)
                .result("final_separation", s.last().copied())
                .result("first_step_above", first)
                .table(Some("separations"), &["k", "separation"], indexed(&s, 0))
        }
    };
    Ok(report)
}

fn zip(a: &[f64], b: &[f64]) -> Vec<(f64, f64)> {
    a.iter().copied().zip(b.iter().copied()).collect()
}

/// `n` logistic values after the seed, uniformized and pushed through `dist`.
fn sample(seed: f64, n: usize, dist: &DistributionSpec) -> Result<Vec<f64>> {
    let o = chaos_rng::logistic_sequence(seed, n)?;
    let u = chaos_rng::uniformize(&o)?;
    Ok(chaos_rng::transform_to(&u[1..], dist)?)
}
