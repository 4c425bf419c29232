//! Command-line interface: table reproduction, distribution values,
//! convergence-rate reports and figure data. Results are CSV files, each
//! run also writing a JSON manifest next to them.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::ensembles::{mc_cdf, rescaled_sample, Histogram, SampleConfig, DENSITY_RANGE};
use crate::fredholm::{
    finite_cdf_with, tw_cdf, tw_density, tw_quantile, Beta, CdfOptions, DEFAULT_GAMMA, TW_RANGE,
};
use crate::lg::rate_scan;
use crate::specfun::{centering, CenteringSpec, Ensemble, Variant};
use crate::{Error, Result};

/// Quantile levels heading every table.
pub const TABLE_ALPHAS: [f64; 9] = [0.01, 0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 0.95, 0.99];

/// Row labels of each table: `N` for tables 1–2, matrix size `N + 1` for
/// tables 3–4.
pub fn table_rows(id: u8) -> Result<&'static [usize]> {
    match id {
        1 => Ok(&[2, 5, 10, 25, 50, 75, 100, 200, 500]),
        2 => Ok(&[2, 5, 10, 25, 50]),
        3 => Ok(&[2, 5, 10, 25, 50, 75, 100, 200, 500]),
        4 => Ok(&[2, 3, 4, 5, 10, 25, 50, 75, 100, 200, 500]),
        _ => Err(Error::Usage(format!(
            "table must be 1, 2, 3 or 4, got {id}"
        ))),
    }
}

pub const DEFAULT_REPS: usize = 100_000;
pub const MAX_REPS: usize = 100_000_000;
pub const MAX_FIGURE_REPS: usize = 10_000_000;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_NODES: usize = 160;

/// Determinant values must change by less than this between `m/2` and `m`
/// nodes before they are written to a table.
pub const TABLE_CONVERGENCE: f64 = 1e-7;

/// Tuned GOE constants used by table 4 and the figure unless overridden.
pub const TUNED_GAMMA: f64 = 0.2;
pub const TUNED_C: f64 = 1.0;

/// Header plus rows of already formatted cells.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// Shortest decimal form that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

impl CsvTable {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        CsvTable {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_numbers(&mut self, row: &[f64]) {
        self.rows.push(row.iter().map(|&x| fmt_f64(x)).collect());
    }

    /// Comma separated, LF terminated, with a header row.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let io = |e: csv::Error| Error::Io(e.to_string());
        let header = r.headers().map_err(io)?.iter().map(String::from).collect();
        let rows = r
            .records()
            .map(|rec| rec.map(|rec| rec.iter().map(String::from).collect()))
            .collect::<std::result::Result<_, _>>()
            .map_err(io)?;
        Ok(CsvTable { header, rows })
    }

    /// Numeric value of a cell.
    pub fn number(&self, row: usize, column: &str) -> Result<f64> {
        let j = self
            .header
            .iter()
            .position(|h| h == column)
            .ok_or_else(|| Error::Usage(format!("no column {column}")))?;
        self.rows
            .get(row)
            .and_then(|r| r.get(j))
            .ok_or_else(|| Error::Usage(format!("no row {row}")))?
            .parse()
            .map_err(|e| Error::Usage(format!("cell ({row}, {column}): {e}")))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()?)?;
        Ok(())
    }
}

/// Record of one invocation, written as `<stem>.manifest.json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub seed: Option<u64>,
    pub nodes: Option<usize>,
    pub reps: Option<usize>,
    pub tolerances: BTreeMap<String, f64>,
    pub diagnostics: BTreeMap<String, f64>,
    pub wall_time_seconds: f64,
    pub timestamp_unix: u64,
    pub version: String,
    pub outputs: Vec<String>,
}

fn column_name(alpha: f64) -> String {
    fmt_f64(alpha)
}

/// Settings shared by the table commands.
#[derive(Debug, Clone, PartialEq)]
pub struct TableOptions {
    /// Row subset; all rows of the table when `None`.
    pub rows: Option<Vec<usize>>,
    pub nodes: usize,
    pub reps: usize,
    pub seed: u64,
    pub gamma: f64,
    pub c: f64,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            rows: None,
            nodes: DEFAULT_NODES,
            reps: DEFAULT_REPS,
            seed: DEFAULT_SEED,
            gamma: TUNED_GAMMA,
            c: TUNED_C,
        }
    }
}

/// One of the four tables. Tables 1–2 are determinant values of the GUE
/// largest-eigenvalue law at `F₂` quantiles (theorem and averaged
/// centering, with a `mu_N` column); tables 3–4 are Monte Carlo fractions
/// for GOE at `F₁` quantiles (theorem and tuned centering).
pub fn table(id: u8, opts: &TableOptions) -> Result<CsvTable> {
    let rows: Vec<usize> = match &opts.rows {
        Some(r) => r.clone(),
        None => table_rows(id)?.to_vec(),
    };
    table_rows(id)?;
    match id {
        1 | 2 => {
            let spec = if id == 1 {
                CenteringSpec::gue_theorem()
            } else {
                CenteringSpec::gue_averaged()
            };
            let quantiles = TABLE_ALPHAS
                .iter()
                .map(|&a| tw_quantile(Beta::Two, a))
                .collect::<Result<Vec<_>>>()?;
            let cdf_opts = CdfOptions {
                nodes: opts.nodes,
                ..CdfOptions::default()
            };
            let mut out = CsvTable::new(
                ["N".to_string(), "mu_N".to_string()]
                    .into_iter()
                    .chain(TABLE_ALPHAS.iter().map(|&a| column_name(a))),
            );
            for &n in &rows {
                let values = quantiles
                    .par_iter()
                    .map(|&q| {
                        let r = finite_cdf_with(n, &spec, q, &cdf_opts)?;
                        if r.convergence >= TABLE_CONVERGENCE {
                            return Err(Error::Accuracy(format!(
                                "N = {n}, s = {q}: value changed by {} between {} and {} nodes",
                                r.convergence,
                                r.m / 2,
                                r.m
                            )));
                        }
                        Ok(r.value)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let (mu, _) = centering(&spec, n)?;
                let mut row = vec![n as f64, mu];
                row.extend(values);
                out.push_numbers(&row);
            }
            Ok(out)
        }
        _ => {
            check_reps(opts.reps, MAX_REPS)?;
            let spec = if id == 3 {
                CenteringSpec::goe_theorem()
            } else {
                CenteringSpec::goe_tuned(opts.gamma, opts.c)
            };
            let mut out = CsvTable::new(
                ["N+1".to_string()]
                    .into_iter()
                    .chain(TABLE_ALPHAS.iter().map(|&a| column_name(a))),
            );
            for &size in &rows {
                let cfg = SampleConfig::new(Ensemble::Goe, size, opts.seed, opts.reps);
                let est = mc_cdf(&cfg, &spec, &TABLE_ALPHAS)?;
                let mut row = vec![size as f64];
                row.extend(est.p_hat);
                out.push_numbers(&row);
            }
            Ok(out)
        }
    }
}

fn check_reps(reps: usize, max: usize) -> Result<()> {
    if reps == 0 || reps > max {
        return Err(Error::Usage(format!(
            "replications must lie in [1, {max}], got {reps}"
        )));
    }
    Ok(())
}

/// What [`tw_table`] evaluates.
#[derive(Debug, Clone, PartialEq)]
pub enum TwQuery {
    Cdf(Vec<f64>),
    Quantile(Vec<f64>),
}

/// `s, F_β(s)` or `alpha, quantile` columns.
pub fn tw_table(beta: Beta, query: &TwQuery) -> Result<CsvTable> {
    match query {
        TwQuery::Cdf(grid) => {
            if let Some(s) = grid
                .iter()
                .find(|s| !(TW_RANGE.0..=TW_RANGE.1).contains(*s))
            {
                return Err(Error::Usage(format!(
                    "s = {s} lies outside [{}, {}]",
                    TW_RANGE.0, TW_RANGE.1
                )));
            }
            let mut out = CsvTable::new(["s", "F"]);
            let values = grid
                .par_iter()
                .map(|&s| tw_cdf(beta, s).map(|r| r.value))
                .collect::<Result<Vec<_>>>()?;
            for (&s, v) in grid.iter().zip(values) {
                out.push_numbers(&[s, v]);
            }
            Ok(out)
        }
        TwQuery::Quantile(alphas) => {
            let mut out = CsvTable::new(["alpha", "quantile"]);
            for &a in alphas {
                out.push_numbers(&[a, tw_quantile(beta, a)?]);
            }
            Ok(out)
        }
    }
}

/// Exponent of the `N` scaling in [`rates`].
pub const RATE_EXPONENT: f64 = 2.0 / 3.0;

/// Default `N` values of the rate report.
pub fn default_rate_sizes(beta: Beta) -> Vec<usize> {
    match beta {
        Beta::Two => vec![10, 40, 160],
        Beta::One => vec![9, 39, 159],
    }
}

pub const DEFAULT_RATE_GRID: [f64; 5] = [-3.0, -1.0, 0.0, 1.0, 2.0];

/// Grid for the oscillator-function block of the rate report.
pub fn lg_rate_grid() -> Vec<f64> {
    (0..=32).map(|i| -6.0 + 0.5 * i as f64).collect()
}

/// Distribution-level errors `|F_N(s) − F_β(s)|` with theorem centering,
/// scaled by `N^{2/3} e^{ws}` (`w = 1` for GUE, `½` for GOE) and, in a
/// last column, by `N^{1/3} e^{ws}`; plus a second table of the weighted
/// sup-errors of the rescaled oscillator function against `Ai`.
pub fn rates(
    beta: Beta,
    sizes: &[usize],
    grid: &[f64],
    nodes: usize,
) -> Result<(CsvTable, CsvTable)> {
    let (spec, w) = match beta {
        Beta::Two => (CenteringSpec::gue_theorem(), 1.0),
        Beta::One => (CenteringSpec::goe_theorem(), 0.5),
    };
    let opts = CdfOptions {
        nodes,
        ..CdfOptions::default()
    };
    let limits = grid
        .iter()
        .map(|&s| tw_cdf(beta, s).map(|r| r.value))
        .collect::<Result<Vec<_>>>()?;
    let mut main = CsvTable::new(["N", "s", "raw_error", "scaled_error", "scaled_error_third"]);
    for &n in sizes {
        let nf = n as f64;
        for (&s, &limit) in grid.iter().zip(&limits) {
            let e = (finite_cdf_with(n, &spec, s, &opts)?.value - limit).abs();
            let env = (w * s).exp();
            main.push_numbers(&[
                nf,
                s,
                e,
                nf.powf(RATE_EXPONENT) * env * e,
                nf.powf(1.0 / 3.0) * env * e,
            ]);
        }
    }
    let mut lg = CsvTable::new([
        "N",
        "value_error",
        "derivative_error",
        "scaled_value",
        "scaled_derivative",
    ]);
    let mut sorted = sizes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for r in rate_scan(&sorted, &lg_rate_grid())? {
        lg.push_numbers(&[
            r.n as f64,
            r.value_error,
            r.derivative_error,
            r.scaled_value(RATE_EXPONENT),
            r.scaled_derivative(RATE_EXPONENT),
        ]);
    }
    Ok((main, lg))
}

/// Settings of [`figure1`].
#[derive(Debug, Clone, PartialEq)]
pub struct FigureOptions {
    /// GOE matrix size `N + 1`.
    pub size: usize,
    pub spec: CenteringSpec,
    pub reps: usize,
    pub seed: u64,
    pub bins: usize,
}

impl Default for FigureOptions {
    fn default() -> Self {
        FigureOptions {
            size: 2,
            spec: CenteringSpec::goe_tuned(TUNED_GAMMA, TUNED_C),
            reps: DEFAULT_REPS,
            seed: DEFAULT_SEED,
            bins: 100,
        }
    }
}

/// Percentiles marked in the density panel.
pub const MARKED_PERCENTILES: [f64; 3] = [0.01, 0.95, 0.99];

/// Most pairs kept in the probability plot.
pub const MAX_PLOT_POINTS: usize = 10_000;

/// Data behind the density and probability-plot panels.
#[derive(Debug, Clone, PartialEq)]
pub struct Figure1 {
    /// `kind, s, value, f1`: histogram rows (bin centre, height, `F₁'`)
    /// then percentile rows (quantile, level, `F₁'`).
    pub density: CsvTable,
    /// `theoretical, empirical` quantile pairs.
    pub probability: CsvTable,
    /// Least-squares slope of empirical on theoretical quantiles.
    pub slope: f64,
    pub histogram: Histogram,
}

/// `F₁` on a fixed grid, inverted by linear interpolation.
struct TabulatedCdf {
    s: Vec<f64>,
    f: Vec<f64>,
}

impl TabulatedCdf {
    const LO: f64 = -9.0;
    const HI: f64 = 7.0;
    const STEP: f64 = 0.05;

    fn new(beta: Beta) -> Result<Self> {
        let k = ((Self::HI - Self::LO) / Self::STEP).round() as usize;
        let s: Vec<f64> = (0..=k).map(|i| Self::LO + Self::STEP * i as f64).collect();
        let f = s
            .par_iter()
            .map(|&x| tw_cdf(beta, x).map(|r| r.value))
            .collect::<Result<Vec<_>>>()?;
        Ok(TabulatedCdf { s, f })
    }

    fn quantile(&self, alpha: f64) -> f64 {
        let i = self.f.partition_point(|&v| v < alpha);
        if i == 0 {
            return self.s[0];
        }
        if i == self.f.len() {
            return *self.s.last().expect("non-empty grid");
        }
        let (f0, f1) = (self.f[i - 1], self.f[i]);
        let t = if f1 > f0 {
            (alpha - f0) / (f1 - f0)
        } else {
            0.0
        };
        self.s[i - 1] + t * (self.s[i] - self.s[i - 1])
    }
}

/// Histogram of rescaled GOE largest eigenvalues against `F₁'`, and a
/// probability plot of their order statistics against `F₁` quantiles.
pub fn figure1(opts: &FigureOptions) -> Result<Figure1> {
    check_reps(opts.reps, MAX_FIGURE_REPS)?;
    if opts.bins < 10 {
        return Err(Error::Usage(format!(
            "at least 10 bins are needed, got {}",
            opts.bins
        )));
    }
    let cfg = SampleConfig::new(Ensemble::Goe, opts.size, opts.seed, opts.reps);
    let mut samples = rescaled_sample(&cfg, &opts.spec)?;
    let hist = Histogram::from_samples(&samples, DENSITY_RANGE.0, DENSITY_RANGE.1, opts.bins);

    let mut density = CsvTable::new(["kind", "s", "value", "f1"]);
    let centres = hist.centres();
    let f1 = centres
        .par_iter()
        .map(|&s| tw_density(Beta::One, s))
        .collect::<Result<Vec<_>>>()?;
    for ((s, h), f) in centres.iter().zip(&hist.heights).zip(&f1) {
        density.rows.push(vec![
            "histogram".into(),
            fmt_f64(*s),
            fmt_f64(*h),
            fmt_f64(*f),
        ]);
    }
    for &a in &MARKED_PERCENTILES {
        let q = tw_quantile(Beta::One, a)?;
        let f = tw_density(Beta::One, q)?;
        density.rows.push(vec![
            "percentile".into(),
            fmt_f64(q),
            fmt_f64(a),
            fmt_f64(f),
        ]);
    }

    samples.sort_by(f64::total_cmp);
    let r = samples.len();
    let keep = r.min(MAX_PLOT_POINTS);
    let table = TabulatedCdf::new(Beta::One)?;
    let mut probability = CsvTable::new(["theoretical", "empirical"]);
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for k in 0..keep {
        let i = k * r / keep;
        let x = table.quantile((i as f64 + 0.5) / r as f64);
        let y = samples[i];
        probability.push_numbers(&[x, y]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let kf = keep as f64;
    let slope = (kf * sxy - sx * sy) / (kf * sxx - sx * sx);
    Ok(Figure1 {
        density,
        probability,
        slope,
        histogram: hist,
    })
}

/// Largest-eigenvalue distribution at edge scaling, evaluated by Fredholm
/// determinants.
#[derive(Debug, Parser)]
#[command(name = "twedge", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reproduce one of the four tables.
    Table(TableArgs),
    /// Tracy–Widom distribution values or quantiles.
    Tw(TwArgs),
    /// Finite-N distribution values at edge scaling.
    Cdf(CdfArgs),
    /// Convergence-rate report.
    Rates(RatesArgs),
    /// Density histogram and probability-plot data for GOE at small N.
    Figure1(FigureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CenteringArg {
    Theorem,
    Averaged,
    Tuned,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output CSV path (prefix for multi-file commands); stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub table: u8,
    /// Rows to compute (N for tables 1–2, N+1 for 3–4).
    #[arg(long = "N", value_delimiter = ',')]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_REPS)]
    pub reps: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_NODES)]
    pub nodes: usize,
    #[arg(long, default_value_t = TUNED_GAMMA)]
    pub gamma: f64,
    #[arg(long, default_value_t = TUNED_C)]
    pub c: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct TwArgs {
    #[arg(long, default_value_t = 2)]
    pub beta: u32,
    /// Evaluation points of the distribution function.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with = "alpha"
    )]
    pub s0: Vec<f64>,
    /// Quantile levels.
    #[arg(long, value_delimiter = ',')]
    pub alpha: Vec<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CdfArgs {
    #[arg(long, default_value_t = 2)]
    pub beta: u32,
    /// N (for GOE the matrix size is N+1).
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub s0: Vec<f64>,
    /// Evaluate at the limiting quantiles of these levels instead of `--s0`.
    #[arg(long, value_delimiter = ',', conflicts_with = "s0")]
    pub alpha: Vec<f64>,
    #[arg(long, value_enum, default_value_t = CenteringArg::Theorem)]
    pub centering: CenteringArg,
    /// Tuned GOE centering shift.
    #[arg(long, default_value_t = TUNED_GAMMA)]
    pub gamma: f64,
    /// Tuned GOE scale offset.
    #[arg(long, default_value_t = TUNED_C)]
    pub c: f64,
    /// Weight exponent of the GOE block discretisation.
    #[arg(long, default_value_t = DEFAULT_GAMMA)]
    pub weight: f64,
    #[arg(long, default_value_t = DEFAULT_NODES)]
    pub nodes: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct RatesArgs {
    #[arg(long, default_value_t = 2)]
    pub beta: u32,
    #[arg(long = "N", value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub s0: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_NODES)]
    pub nodes: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Matrix size N+1.
    #[arg(long = "N", default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_REPS)]
    pub reps: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub bins: usize,
    #[arg(long, value_enum, default_value_t = CenteringArg::Tuned)]
    pub centering: CenteringArg,
    #[arg(long, default_value_t = TUNED_GAMMA)]
    pub gamma: f64,
    #[arg(long, default_value_t = TUNED_C)]
    pub c: f64,
    /// Output prefix: writes `<out>_density.csv` and `<out>_probability.csv`.
    #[arg(long, default_value = "figure1")]
    pub out: PathBuf,
}

fn spec_for(beta: Beta, arg: CenteringArg, gamma: f64, c: f64) -> Result<CenteringSpec> {
    let variant = match arg {
        CenteringArg::Theorem => Variant::Theorem,
        CenteringArg::Averaged => Variant::Averaged,
        CenteringArg::Tuned => Variant::Tuned,
    };
    let spec = CenteringSpec::new(beta.ensemble(), variant)?;
    Ok(if variant == Variant::Tuned {
        CenteringSpec::goe_tuned(gamma, c)
    } else {
        spec
    })
}

/// Paths of a multi-file output: `<prefix>_<name>.csv`.
fn with_suffix(prefix: &Path, name: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(format!("_{name}.csv"));
    PathBuf::from(s)
}

/// `<stem>.manifest.json` next to the first output.
pub fn manifest_path(out: &Path) -> PathBuf {
    let stem = if out.extension().is_some_and(|e| e == "csv") {
        out.with_extension("")
    } else {
        out.to_path_buf()
    };
    let mut s = stem.into_os_string();
    s.push(".manifest.json");
    PathBuf::from(s)
}

struct Run {
    argv: Vec<String>,
    start: Instant,
    seed: Option<u64>,
    nodes: Option<usize>,
    reps: Option<usize>,
    tolerances: BTreeMap<String, f64>,
    diagnostics: BTreeMap<String, f64>,
}

impl Run {
    fn finish(self, anchor: &Path, outputs: &[PathBuf]) -> Result<()> {
        let m = RunManifest {
            command_line: self.argv,
            seed: self.seed,
            nodes: self.nodes,
            reps: self.reps,
            tolerances: self.tolerances,
            diagnostics: self.diagnostics,
            wall_time_seconds: self.start.elapsed().as_secs_f64(),
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: outputs.iter().map(|p| p.display().to_string()).collect(),
        };
        let text = serde_json::to_string_pretty(&m).map_err(|e| Error::Io(e.to_string()))?;
        std::fs::write(manifest_path(anchor), text + "\n")?;
        Ok(())
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn to_stdout(text: &str) -> Result<()> {
    use std::io::Write;
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit(run: Run, out: &Option<PathBuf>, table: &CsvTable) -> Result<()> {
    match out {
        Some(path) => {
            table.write(path)?;
            run.finish(path, std::slice::from_ref(path))
        }
        None => to_stdout(&table.to_csv()?),
    }
}

fn tolerances(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn execute(cli: Cli, argv: Vec<String>) -> Result<()> {
    let mut run = Run {
        argv,
        start: Instant::now(),
        seed: None,
        nodes: None,
        reps: None,
        tolerances: BTreeMap::new(),
        diagnostics: BTreeMap::new(),
    };
    match cli.command {
        Command::Table(a) => {
            let opts = TableOptions {
                rows: (!a.n.is_empty()).then_some(a.n),
                nodes: a.nodes,
                reps: a.reps,
                seed: a.seed,
                gamma: a.gamma,
                c: a.c,
            };
            if a.table <= 2 {
                run.nodes = Some(a.nodes);
                run.tolerances = tolerances(&[("self_convergence", TABLE_CONVERGENCE)]);
            } else {
                run.seed = Some(a.seed);
                run.reps = Some(a.reps);
            }
            let t = table(a.table, &opts)?;
            emit(run, &a.output.out, &t)
        }
        Command::Tw(a) => {
            let beta = Beta::from_index(a.beta)?;
            let query = if !a.alpha.is_empty() {
                TwQuery::Quantile(a.alpha)
            } else if !a.s0.is_empty() {
                TwQuery::Cdf(a.s0)
            } else {
                return Err(Error::Usage("give --s0 or --alpha".into()));
            };
            run.tolerances = tolerances(&[("quantile_residual", 1e-11)]);
            emit(run, &a.output.out, &tw_table(beta, &query)?)
        }
        Command::Cdf(a) => {
            let beta = Beta::from_index(a.beta)?;
            let spec = spec_for(beta, a.centering, a.gamma, a.c)?;
            let grid = if a.alpha.is_empty() {
                a.s0
            } else {
                a.alpha
                    .iter()
                    .map(|&x| tw_quantile(beta, x))
                    .collect::<Result<Vec<_>>>()?
            };
            let opts = CdfOptions {
                nodes: a.nodes,
                gamma: a.weight,
                ..CdfOptions::default()
            };
            let mut t = CsvTable::new(["s", "value", "convergence", "m"]);
            for s in grid {
                let r = finite_cdf_with(a.n, &spec, s, &opts)?;
                t.push_numbers(&[s, r.value, r.convergence, r.m as f64]);
            }
            run.nodes = Some(a.nodes);
            emit(run, &a.output.out, &t)
        }
        Command::Rates(a) => {
            let beta = Beta::from_index(a.beta)?;
            let sizes = a.n.unwrap_or_else(|| default_rate_sizes(beta));
            let grid = if a.s0.is_empty() {
                DEFAULT_RATE_GRID.to_vec()
            } else {
                a.s0
            };
            let (main, lg) = rates(beta, &sizes, &grid, a.nodes)?;
            run.nodes = Some(a.nodes);
            match &a.output.out {
                Some(path) => {
                    let lg_path = with_suffix(&path.with_extension(""), "lg");
                    main.write(path)?;
                    lg.write(&lg_path)?;
                    run.finish(path, &[path.clone(), lg_path])
                }
                None => to_stdout(&format!("{}\n{}", main.to_csv()?, lg.to_csv()?)),
            }
        }
        Command::Figure1(a) => {
            let spec = spec_for(Beta::One, a.centering, a.gamma, a.c)?;
            let fig = figure1(&FigureOptions {
                size: a.n,
                spec,
                reps: a.reps,
                seed: a.seed,
                bins: a.bins,
            })?;
            let d = with_suffix(&a.out, "density");
            let p = with_suffix(&a.out, "probability");
            fig.density.write(&d)?;
            fig.probability.write(&p)?;
            run.seed = Some(a.seed);
            run.reps = Some(a.reps);
            run.diagnostics = tolerances(&[("probability_plot_slope", fig.slope)]);
            run.finish(&a.out, &[d, p])
        }
    }
}

/// Exit status for an error: 2 for usage and domain errors, 3 for accuracy
/// and numerical failures, 1 for I/O.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Domain(_) => 2,
        Error::Accuracy(_) | Error::Numerical(_) => 3,
        Error::Io(_) => 1,
    }
}

/// Parse `args` (program name first), run, and return the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let argv = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli, argv) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
