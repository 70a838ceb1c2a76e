//! Command-line front end. Flags override values from an optional JSON
//! config file; every run echoes its resolved configuration to
//! `manifest.json` in the output directory, and that file is itself a valid
//! config for reproducing the run.

use std::f64::consts::PI;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::analytic::{self, curve_csv, tabulate_limit};
use crate::asymptotics::{self, nn_cdf, nn_density, delta_profile, triple_zero_demo};
use crate::ensemble::{ensemble_roots, resolve_threads, RootOptions};
use crate::error::Error;
use crate::plot::{histogram_from_csv, series_from_csv, Plot, Style};
use crate::poly::EnsembleSpec;
use crate::rootfind::{all_roots_companion, real_roots_sampled, RootMethod, DEFAULT_CLASSIFY_TOL};
use crate::stats::{self, EnsembleSummary};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Subcommand, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Write one realization's coefficients as JSON
    Sample,
    /// Zeros of one realization (JSON and CSV)
    Roots,
    /// Fraction of real zeros: Monte Carlo, finite-N formula, large-N limit
    Fraction,
    /// Pair correlation of real zeros
    Paircorr,
    /// Nearest-neighbor spacing distribution
    Spacing,
    /// Table of limiting, finite-N and newly real fractions by derivative order
    VpTable,
    /// Derivative zeros of a function with a complex pair of zeros at 1/2 +- i sqrt(a)
    DemoTripleZero,
    /// Render one of the three standard figures
    Figure,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Sample => "sample",
            Command::Roots => "roots",
            Command::Fraction => "fraction",
            Command::Paircorr => "paircorr",
            Command::Spacing => "spacing",
            Command::VpTable => "vp-table",
            Command::DemoTripleZero => "demo-triple-zero",
            Command::Figure => "figure",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Empirical,
    Analytic,
    Asymptotic,
    All,
}

impl Mode {
    fn wants(&self, other: Mode) -> bool {
        *self == Mode::All || *self == other
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodArg {
    Sampled,
    Companion,
}

impl From<MethodArg> for RootMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Sampled => RootMethod::Sampled,
            MethodArg::Companion => RootMethod::Companion,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "trigzeros", version, about = "Zeros of random trigonometric polynomials and their derivatives")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Degree N of the trigonometric polynomial [1, 4096]
    #[arg(long = "N", global = true, allow_hyphen_values = true)]
    pub degree: Option<i64>,
    /// Derivative order p [0, 500]
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub p: Option<i64>,
    /// Number of Monte Carlo realizations [1, 10^7]
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub realizations: Option<i64>,
    /// Master seed of the ensemble
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Realization used by `sample` and `roots`
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub index: Option<i64>,
    /// Histogram bin width in rescaled units
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub bin_width: Option<f64>,
    /// Largest pair separation histogrammed
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub max_range: Option<f64>,
    /// Right end of tabulated analytic curves
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub x_max: Option<f64>,
    /// Largest derivative order in `vp-table`
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub p_max: Option<i64>,
    /// Figure number (1, 2 or 3)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub which: Option<i64>,
    /// Parameter of `demo-triple-zero`
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    /// Root finder for real zeros
    #[arg(long, global = true, value_enum)]
    pub method: Option<MethodArg>,
    /// Worker threads (default: $CRYSTALLIZE_THREADS, else all cores)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub threads: Option<i64>,
    /// Output directory
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON config file; flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Keys accepted in a config file. A manifest written by a run has the
/// same shape.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub realizations: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bin_width: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_range: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_max: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub which: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<RootMethod>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

/// Fully resolved and validated run configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub degree: usize,
    pub p: u32,
    pub realizations: u64,
    pub seed: u64,
    pub index: u64,
    pub bin_width: f64,
    pub max_range: f64,
    pub x_max: f64,
    pub p_max: u32,
    pub which: u8,
    pub a: f64,
    pub mode: Mode,
    pub method: RootMethod,
    pub threads: usize,
    pub out: PathBuf,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flag, config value or output directory.
    Usage(String),
    /// A computation failed.
    Numeric { context: String, source: Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric { .. } => 3,
        }
    }

    fn flag(name: &str, message: impl fmt::Display) -> Self {
        CliError::Usage(format!("invalid value for --{name}: {message}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Numeric { context, source } => write!(f, "{context}: {source}"),
        }
    }
}

impl std::error::Error for CliError {}

fn int_in(name: &str, value: i64, lo: i64, hi: i64) -> Result<i64, CliError> {
    if value < lo || value > hi {
        return Err(CliError::flag(name, format!("{value} is outside [{lo}, {hi}]")));
    }
    Ok(value)
}

fn positive(name: &str, value: f64) -> Result<f64, CliError> {
    if !(value > 0.0 && value.is_finite()) {
        return Err(CliError::flag(name, format!("{value} must be positive")));
    }
    Ok(value)
}

pub fn read_config_file(path: &Path) -> Result<ConfigFile, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
}

/// Merges flags over the config file (if any) over defaults and validates
/// every field.
pub fn resolve(cli: &Cli) -> Result<RunConfig, CliError> {
    let file = match &cli.config {
        Some(path) => read_config_file(path)?,
        None => ConfigFile::default(),
    };
    let command = cli.command;
    let degree_default = if command == Command::Figure { 30 } else { 64 };
    let degree = int_in("N", cli.degree.or(file.degree).unwrap_or(degree_default), 1, 4096)? as usize;
    let p = int_in("p", cli.p.or(file.p).unwrap_or(0), 0, 500)? as u32;
    let realizations = int_in(
        "realizations",
        cli.realizations.or(file.realizations).unwrap_or(1000),
        1,
        10_000_000,
    )? as u64;
    let seed = cli.seed.or(file.seed).unwrap_or(1);
    let index = int_in("index", cli.index.or(file.index).unwrap_or(0), 0, realizations as i64 - 1)? as u64;
    let bin_width = positive("bin-width", cli.bin_width.or(file.bin_width).unwrap_or(0.05))?;
    let max_range = positive("max-range", cli.max_range.or(file.max_range).unwrap_or(6.0))?;
    if max_range <= bin_width {
        return Err(CliError::flag("max-range", format!("{max_range} must exceed the bin width {bin_width}")));
    }
    if matches!(command, Command::Paircorr) && max_range > degree as f64 {
        return Err(CliError::flag("max-range", format!("{max_range} exceeds the half period N = {degree}")));
    }
    let x_max = positive("x-max", cli.x_max.or(file.x_max).unwrap_or(6.0))?;
    if x_max > 1000.0 {
        return Err(CliError::flag("x-max", format!("{x_max} is above 1000")));
    }
    let p_max = int_in("p-max", cli.p_max.or(file.p_max).unwrap_or(10), 0, 500)? as u32;
    let which = int_in("which", cli.which.or(file.which).unwrap_or(1), 1, 3)? as u8;
    let a = positive("a", cli.a.or(file.a).unwrap_or(0.92))?;
    let mode = cli.mode.or(file.mode).unwrap_or(Mode::All);
    let method = cli.method.map(RootMethod::from).or(file.method).unwrap_or(RootMethod::Sampled);
    let threads = match cli.threads.or(file.threads) {
        Some(t) => int_in("threads", t, 1, 1024)? as usize,
        None => resolve_threads(None),
    };
    let out = cli.out.clone().or(file.out).unwrap_or_else(|| PathBuf::from("out"));
    Ok(RunConfig {
        command,
        degree,
        p,
        realizations,
        seed,
        index,
        bin_width,
        max_range,
        x_max,
        p_max,
        which,
        a,
        mode,
        method,
        threads,
        out,
    })
}

impl RunConfig {
    pub fn to_manifest(&self) -> ConfigFile {
        ConfigFile {
            command: Some(self.command),
            degree: Some(self.degree as i64),
            p: Some(self.p as i64),
            realizations: Some(self.realizations as i64),
            seed: Some(self.seed),
            index: Some(self.index as i64),
            bin_width: Some(self.bin_width),
            max_range: Some(self.max_range),
            x_max: Some(self.x_max),
            p_max: Some(self.p_max as i64),
            which: Some(self.which as i64),
            a: Some(self.a),
            mode: Some(self.mode),
            method: Some(self.method),
            threads: Some(self.threads as i64),
            out: Some(self.out.clone()),
        }
    }

    fn ensemble(&self) -> Result<EnsembleSpec, CliError> {
        EnsembleSpec::equal_variance(self.degree, self.p, self.realizations, self.seed)
            .map_err(|e| self.numeric("ensemble", e))
    }

    fn root_options(&self) -> RootOptions {
        RootOptions::with_method(self.method)
    }

    fn numeric(&self, what: &str, source: Error) -> CliError {
        CliError::Numeric {
            context: format!(
                "{} failed in {what} (N={}, p={}, seed={})",
                self.command.name(),
                self.degree,
                self.p,
                self.seed
            ),
            source,
        }
    }
}

/// Files written by a run; removed again if the run fails.
struct Outputs {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Outputs {
    fn open(dir: &Path) -> Result<Self, CliError> {
        let fail = |e: std::io::Error| CliError::Usage(format!("output directory {} is not writable: {e}", dir.display()));
        fs::create_dir_all(dir).map_err(fail)?;
        let probe = dir.join(".trigzeros-write-test");
        fs::write(&probe, b"").map_err(fail)?;
        fs::remove_file(&probe).map_err(fail)?;
        Ok(Self {
            dir: dir.to_path_buf(),
            written: Vec::new(),
        })
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<PathBuf, CliError> {
        let path = self.dir.join(name);
        fs::write(&path, contents)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
        self.written.push(path.clone());
        Ok(path)
    }

    fn discard(&mut self) {
        for path in self.written.drain(..) {
            let _ = fs::remove_file(path);
        }
    }
}

/// Runs the configured command, returning the files it wrote.
pub fn run(config: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let mut outputs = Outputs::open(&config.out)?;
    let result = dispatch(config, &mut outputs).and_then(|_| {
        let manifest = serde_json::to_string_pretty(&config.to_manifest())
            .map_err(|e| CliError::Usage(format!("cannot encode manifest: {e}")))?;
        outputs.write("manifest.json", &(manifest + "\n"))
    });
    match result {
        Ok(_) => Ok(outputs.written),
        Err(e) => {
            outputs.discard();
            Err(e)
        }
    }
}

fn dispatch(config: &RunConfig, out: &mut Outputs) -> Result<(), CliError> {
    match config.command {
        Command::Sample => run_sample(config, out),
        Command::Roots => run_roots(config, out),
        Command::Fraction => run_fraction(config, out),
        Command::Paircorr => run_paircorr(config, out),
        Command::Spacing => run_spacing(config, out),
        Command::VpTable => run_vp_table(config, out),
        Command::DemoTripleZero => run_triple_zero(config, out),
        Command::Figure => match config.which {
            1 => run_figure1(config, out),
            2 => run_figure2(config, out),
            _ => run_figure3(config, out),
        },
    }
}

fn svg(plot: &Plot) -> String {
    plot.render(VERSION)
}

fn plot_err(config: &RunConfig, e: Error) -> CliError {
    config.numeric("plot", e)
}

fn run_sample(config: &RunConfig, out: &mut Outputs) -> Result<(), CliError> {
    let spec = config.ensemble()?;
    let f = spec.realization(config.index).map_err(|e| config.numeric("sample", e))?;
    let json = serde_json::to_string_pretty(&f).map_err(|e| config.numeric("sample", e.into()))?;
    let path = out.write("polynomial.json", &(json + "\n"))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn run_roots(config: &RunConfig, out: &mut Outputs) -> Result<(), CliError> {
    let spec = config.ensemble()?;
    let f = spec.realization(config.index).map_err(|e| config.numeric("sample", e))?;
    let roots = match config.method {
        RootMethod::Sampled => real_roots_sampled(&f, Default::default()),
        RootMethod::Companion => all_roots_companion(&f, DEFAULT_CLASSIFY_TOL),
    }
    .map_err(|e| config.numeric("root finding", e))?;
    let json = roots.to_json().map_err(|e| config.numeric("roots", e))?;
    out.write("roots.json", &(json + "\n"))?;
    out.write("roots.csv", &roots.to_csv())?;
    println!(
        "{} real zeros of {} (fraction {})",
        roots.real_roots.len(),
        2 * config.degree,
        roots.real_roots.len() as f64 / (2 * config.degree) as f64
    );
    Ok(())
}

fn run_fraction(config: &RunConfig, out: &mut Outputs) -> Result<(), CliError> {
    let mut csv = String::from("mode,value,stderr\n");
    if config.mode.wants(Mode::Empirical) {
        if config.realizations < 2 {
            return Err(CliError::flag("realizations", "the empirical fraction needs at least 2"));
        }
        let spec = config.ensemble()?;
        let (mean, stderr) = stats::empirical_real_fraction(&spec, &config.root_options(), config.threads)
            .map_err(|e| config.numeric("empirical fraction", e))?;
        csv.push_str(&format!("empirical,{mean},{stderr}\n"));
    }
    if config.mode.wants(Mode::Analytic) {
        let f = analytic::expected_real_fraction_finite_n(config.degree, config.p);
        csv.push_str(&format!("analytic,{f},\n"));
    }
    if config.mode.wants(Mode::Asymptotic) {
        csv.push_str(&format!("asymptotic,{},\n", analytic::v_p(config.p)));
    }
    print!("{csv}");
    out.write("fraction.csv", &csv)?;
    Ok(())
}

/// Tabulation grid `(0, x_max]`, fine enough to resolve peaks of width
/// about `1/p`.
fn x_grid(x_max: f64, p: u32) -> Vec<f64> {
    let step = 0.01f64.min(0.25 / (p as f64 + 1.0));
    let n = (x_max / step).round().max(1.0) as usize;
    (1..=n).map(|k| k as f64 * x_max / n as f64).collect()
}

/// Sum of the limiting peak shapes `(p/n)(1 + 4u^2)^{-3/2}` over `n`.
fn peak_profile_curve(p: u32, xs: &[f64]) -> String {
    let mut csv = String::from("x,R2\n");
    let top = xs.last().copied().unwrap_or(0.0).ceil() as u32 + 1;
    for &x in xs {
        let pf = p as f64;
        let r: f64 = (1..=top)
            .map(|n| {
                let u = pf * (x / n as f64 - 1.0) - 0.5;
                delta_profile(n, p, u)
            })
            .sum();
        csv.push_str(&format!("{x},{r}\n"));
    }
    csv
}

fn run_paircorr(config: &RunConfig, out: &mut Outputs) -> Result<(), CliError> {
    let mut plot = Plot::new(
        &format!("Pair correlation of real zeros, p = {}", config.p),
        "x",
        "R2",
    );
    if config.mode.wants(Mode::Empirical) {
        let spec = config.ensemble()?;
        let sets = stats::rescaled_ensemble(&spec, &config.root_options(), config.threads)
            .map_err(|e| config.numeric("root finding", e))?;
        let mut est = stats::empirical_pair_correlation(&sets, config.degree, config.bin_width, config.max_range)
            .map_err(|e| config.numeric("pair correlation", e))?;
        est.ensemble = EnsembleSummary::from(&spec);
        let csv = est.to_csv();
        out.write("paircorr_empirical.csv", &csv)?;
        let meta = est.metadata_json().map_err(|e| config.numeric("pair correlation", e))?;
        out.write("paircorr_empirical.json", &(meta + "\n"))?;
        plot.series.push(histogram_from_csv(&csv, &format!("empirical, N = {}", config.degree)).map_err(|e| plot_err(config, e))?);
    }
    if config.mode.wants(Mode::Analytic) {
        let xs = x_grid(config.x_max, config.p);
        let curve = tabulate_limit(config.p, &xs).map_err(|e| config.numeric("limit pair correlation", e))?;
        let csv = curve_csv(&curve);
        out.write("paircorr_analytic.csv", &csv)?;
        let (xm, rm) = curve.iter().copied().fold((0.0, f64::NEG_INFINITY), |m, c| if c.1 > m.1 { c } else { m });
        println!("limit curve maximum {rm} at x = {xm}");
        plot.series.push(series_from_csv(&csv, "x", "R2", "large-N limit", Style::Line).map_err(|e| plot_err(config, e))?);
    }
    if config.mode.wants(Mode::Asymptotic) {
        if config.p == 0 {
            if config.mode == Mode::Asymptotic {
                return Err(CliError::flag("p", "the peak profile needs p >= 1"));
            }
        } else {
            let csv = peak_profile_curve(config.p, &x_grid(config.x_max, config.p));
            out.write("paircorr_asymptotic.csv", &csv)?;
            plot.series.push(series_from_csv(&csv, "x", "R2", "peak profile", Style::Dashed).map_err(|e| plot_err(config, e))?);
        }
    }
    out.write("paircorr.svg", &svg(&plot))?;
    Ok(())
}

fn run_spacing(config: &RunConfig, out: &mut Outputs) -> Result<(), CliError> {
    let mut plot = Plot::new(
        &format!("Nearest-neighbor spacing, p = {}", config.p),
        "s",
        "density",
    );
    let mut upper = 3.0;
    if config.mode.wants(Mode::Empirical) {
        let spec = config.ensemble()?;
        let sets = stats::rescaled_ensemble(&spec, &config.root_options(), config.threads)
            .map_err(|e| config.numeric("root finding", e))?;
        let hist = stats::nearest_neighbor_spacings(&sets, config.degree, config.bin_width)
            .map_err(|e| config.numeric("spacings", e))?;
        upper = *hist.bin_edges.last().unwrap_or(&upper);
        let csv = hist.to_csv();
        out.write("spacing.csv", &csv)?;
        plot.series.push(histogram_from_csv(&csv, "empirical").map_err(|e| plot_err(config, e))?);
        if config.p >= 1 {
            let pf = config.p as f64;
            let u: Vec<f64> = stats::spacing_samples(&sets, config.degree)
                .iter()
                .map(|s| pf * (s - 1.0 - 0.5 / pf))
                .collect();
            println!("KS distance of u = p(s - 1 - 1/(2p)) from the limit law: {}", stats::ks_distance(&u, nn_cdf));
        }
    }
    if config.mode.wants(Mode::Asymptotic) && config.p >= 1 {
        let pf = config.p as f64;
        let mut csv = String::from("s,density\n");
        let n = 2000;
        for k in 0..=n {
            let s = upper * k as f64 / n as f64;
            csv.push_str(&format!("{s},{}\n", pf * nn_density(pf * (s - 1.0) - 0.5)));
        }
        out.write("spacing_asymptotic.csv", &csv)?;
        plot.series.push(series_from_csv(&csv, "s", "density", "large-p law", Style::Dashed).map_err(|e| plot_err(config, e))?);
    }
    out.write("spacing.svg", &svg(&plot))?;
    Ok(())
}

fn run_vp_table(config: &RunConfig, out: &mut Outputs) -> Result<(), CliError> {
    let mut csv = String::from("p,v_p,finite_n_fraction,new_real_fraction\n");
    for p in 0..=config.p_max {
        let new = if p == 0 {
            String::new()
        } else {
            asymptotics::new_real_fraction(p)
                .map_err(|e| config.numeric("vp-table", e))?
                .to_string()
        };
        csv.push_str(&format!(
            "{p},{},{},{new}\n",
            analytic::v_p(p),
            analytic::expected_real_fraction_finite_n(config.degree, p)
        ));
    }
    print!("{csv}");
    out.write("vp_table.csv", &csv)?;
    Ok(())
}

fn triple_zero_outputs(config: &RunConfig, out: &mut Outputs, a: f64, stem: &str) -> Result<(), CliError> {
    let demo = triple_zero_demo(a).map_err(|e| config.numeric("triple zero demo", e))?;
    let csv = demo.to_csv();
    out.write(&format!("{stem}.csv"), &csv)?;
    let plot = Plot::new(&format!("a = {a}: {} derivative zeros in (0, 1)", demo.derivative_zeros), "x", "")
        .with_series(series_from_csv(&csv, "x", "f", "f", Style::Line).map_err(|e| plot_err(config, e))?)
        .with_series(series_from_csv(&csv, "x", "df", "f'", Style::Dotted).map_err(|e| plot_err(config, e))?);
    out.write(&format!("{stem}.svg"), &svg(&plot))?;
    println!("a = {a}: {} real zeros of f' in (0, 1)", demo.derivative_zeros);
    Ok(())
}

fn run_triple_zero(config: &RunConfig, out: &mut Outputs) -> Result<(), CliError> {
    triple_zero_outputs(config, out, config.a, "triple_zero")?;
    println!("transition at a = 2/(pi^2 - 8) = {}", asymptotics::triple_zero_threshold());
    Ok(())
}

fn run_figure1(config: &RunConfig, out: &mut Outputs) -> Result<(), CliError> {
    let orders = [0u32, 1, 3, 10];
    let spec = EnsembleSpec::equal_variance(config.degree, 0, 1, config.seed)
        .map_err(|e| config.numeric("sample", e))?;
    let base = spec.sample(0).map_err(|e| config.numeric("sample", e))?;
    let n = config.degree as f64;
    let polys: Vec<_> = orders.iter().map(|&p| base.differentiate_scaled(p, n)).collect();
    let points = 40 * config.degree;
    let columns: Vec<Vec<f64>> = polys
        .iter()
        .map(|f| {
            let vals: Vec<f64> = (0..=points).map(|k| f.evaluate(2.0 * PI * k as f64 / points as f64)).collect();
            let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
            vals.iter().map(|v| v / scale).collect()
        })
        .collect();
    let mut csv = String::from("x,F,F1,F3,F10\n");
    for k in 0..=points {
        let x = 2.0 * n * k as f64 / points as f64;
        csv.push_str(&format!("{x},{},{},{},{}\n", columns[0][k], columns[1][k], columns[2][k], columns[3][k]));
    }
    out.write("figure1.csv", &csv)?;
    for (name, p) in ["F", "F1", "F3", "F10"].iter().zip(orders) {
        let title = if p == 0 {
            format!("degree {} polynomial", config.degree)
        } else {
            format!("derivative of order {p}")
        };
        let plot = Plot::new(&title, "N x / pi", "normalized value")
            .with_series(series_from_csv(&csv, "x", name, "", Style::Line).map_err(|e| plot_err(config, e))?);
        out.write(&format!("figure1_{name}.svg"), &svg(&plot))?;
    }
    Ok(())
}

fn run_figure2(config: &RunConfig, out: &mut Outputs) -> Result<(), CliError> {
    let orders = [0u32, 1, 3, 10];
    let xs = x_grid(config.x_max, *orders.last().unwrap_or(&0));
    let curves = orders
        .iter()
        .map(|&p| tabulate_limit(p, &xs))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| config.numeric("limit pair correlation", e))?;
    let mut csv = String::from("x,R2_p0,R2_p1,R2_p3,R2_p10\n");
    for (k, x) in xs.iter().enumerate() {
        csv.push_str(&format!("{x},{},{},{},{}\n", curves[0][k].1, curves[1][k].1, curves[2][k].1, curves[3][k].1));
    }
    out.write("figure2.csv", &csv)?;
    for p in orders {
        let col = format!("R2_p{p}");
        let plot = Plot::new(&format!("Pair correlation, p = {p}"), "x", "R2")
            .with_series(series_from_csv(&csv, "x", &col, "", Style::Line).map_err(|e| plot_err(config, e))?);
        out.write(&format!("figure2_p{p}.svg"), &svg(&plot))?;
    }
    Ok(())
}

fn run_figure3(config: &RunConfig, out: &mut Outputs) -> Result<(), CliError> {
    triple_zero_outputs(config, out, 0.92, "figure3_left")?;
    triple_zero_outputs(config, out, 1.1, "figure3_right")
}

/// Entry point shared by the binary and the tests; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let outcome = resolve(&cli).and_then(|config| run(&config));
    match outcome {
        Ok(_) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Root sets for an ensemble with the configured method; used by tests
/// that compare thread counts.
pub fn ensemble_csv(config: &RunConfig) -> Result<String, CliError> {
    let spec = config.ensemble()?;
    let sets = ensemble_roots(&spec, &config.root_options(), config.threads)
        .map_err(|e| config.numeric("root finding", e))?;
    let mut csv = String::from("realization,root\n");
    for (i, r) in sets.iter().enumerate() {
        for x in &r.real_roots {
            csv.push_str(&format!("{i},{x}\n"));
        }
    }
    Ok(csv)
}
