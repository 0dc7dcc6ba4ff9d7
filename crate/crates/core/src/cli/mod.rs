//! File formats and batch commands behind the `projlen` binary.
//!
//! Every command has a text-in, text-out form (`cmd_*`) so pipelines can be
//! tested without touching the filesystem; [`run`] adds the file handling.

mod verify;

pub use verify::{cmd_verify, CheckResult, VerifyReport};

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::cosine::{invert_nnls, sample_transform, TransformSamples};
use crate::curve::PcvCurve;
use crate::error::{Error, Result};
use crate::measure::{measure_of, DiscreteMeasure};
use crate::projective::TaggedPartition;
use crate::reconstruct::{surjectivity_sequence, Certificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Curve JSON to measure JSON.
    Measure,
    /// Measure JSON to transform samples CSV.
    Transform,
    /// Samples CSV to measure JSON on partition tags.
    Invert,
    /// Measure JSON to a constant-speed broken line and its Cauchy certificate.
    Reconstruct,
    /// Seeded property checks, written as a JSON report.
    Verify,
}

/// Command line of the `projlen` binary.
#[derive(Debug, Clone, Parser)]
#[command(name = "projlen", version, about = "Projected-length tomography for broken lines")]
pub struct JobConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Defaults to standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Residual (invert) or certificate (reconstruct) JSON.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Partition JSON for `invert`, replacing the uniform one from `--cells`.
    #[arg(long, global = true)]
    pub partition: Option<PathBuf>,
    /// Number of sample directions.
    #[arg(long, global = true, default_value_t = 180)]
    pub grid: usize,
    /// Number of partition cells.
    #[arg(long, global = true, default_value_t = 32)]
    pub cells: usize,
    #[arg(long, global = true, default_value_t = 6)]
    pub levels: usize,
    #[arg(long, global = true, default_value_t = 2)]
    pub factor: usize,
    #[arg(long, global = true, default_value_t = crate::cosine::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 50)]
    pub trials: usize,
}

impl JobConfig {
    pub fn new(command: Command) -> Self {
        JobConfig {
            command,
            input: None,
            output: None,
            report: None,
            partition: None,
            grid: 180,
            cells: 32,
            levels: 6,
            factor: 2,
            tol: crate::cosine::DEFAULT_TOL,
            seed: 0,
            trials: 50,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let check = |ok: bool, msg: String| if ok { Ok(()) } else { Err(Error::Precondition(msg)) };
        check((2..=1_000_000).contains(&self.grid), format!("--grid must be in 2..=1000000, got {}", self.grid))?;
        check((1..=100_000).contains(&self.cells), format!("--cells must be in 1..=100000, got {}", self.cells))?;
        check((1..=24).contains(&self.levels), format!("--levels must be in 1..=24, got {}", self.levels))?;
        check((2..=64).contains(&self.factor), format!("--factor must be in 2..=64, got {}", self.factor))?;
        check(self.tol > 0.0 && self.tol.is_finite(), format!("--tol must be positive, got {}", self.tol))?;
        check((1..=100_000).contains(&self.trials), format!("--trials must be in 1..=100000, got {}", self.trials))?;
        for p in [&self.input, &self.output, &self.report, &self.partition].into_iter().flatten() {
            check(!p.as_os_str().is_empty(), "paths must be nonempty".into())?;
        }
        if self.command != Command::Verify && self.input.is_none() {
            return Err(Error::Precondition("--input is required".into()));
        }
        Ok(())
    }
}

/// Runs one job, reading and writing the configured files.
pub fn run(cfg: &JobConfig) -> Result<()> {
    cfg.validate()?;
    let input = || read_file(cfg.input.as_deref().expect("validated"));
    match cfg.command {
        Command::Measure => emit(cfg.output.as_deref(), &cmd_measure(&input()?)?),
        Command::Transform => emit(cfg.output.as_deref(), &cmd_transform(&input()?, cfg.grid)?),
        Command::Invert => {
            let partition = cfg.partition.as_deref().map(read_file).transpose()?;
            let out = cmd_invert(&input()?, partition.as_deref(), cfg.cells, cfg.tol)?;
            log::info!("rms residual {:e}, KKT residual {:e}", out.residual, out.kkt);
            if let Some(path) = &cfg.report {
                write_file(path, &to_json(&InvertReport { residual: out.residual, kkt: out.kkt })?)?;
            }
            emit(cfg.output.as_deref(), &out.measure)
        }
        Command::Reconstruct => {
            let out = cmd_reconstruct(&input()?, cfg.cells, cfg.levels, cfg.factor)?;
            log::info!("cauchy bound {:e}, achieved {:e}", out.certificate.cauchy_bound, out.certificate.achieved);
            if let Some(path) = &cfg.report {
                write_file(path, &to_json(&out.certificate)?)?;
            }
            emit(cfg.output.as_deref(), &out.curve)
        }
        Command::Verify => {
            let report = cmd_verify(cfg.seed, cfg.trials)?;
            if !report.passed {
                log::warn!("some checks failed");
            }
            emit(cfg.output.as_deref(), &to_json(&report)?)
        }
    }
}

#[derive(Serialize)]
struct InvertReport {
    residual: f64,
    kkt: f64,
}

/// Output of [`cmd_invert`].
#[derive(Debug, Clone)]
pub struct InvertOutput {
    pub measure: String,
    pub residual: f64,
    pub kkt: f64,
}

/// Output of [`cmd_reconstruct`].
#[derive(Debug, Clone)]
pub struct ReconstructOutput {
    pub curve: String,
    pub certificate: Certificate,
}

pub fn cmd_measure(curve_json: &str) -> Result<String> {
    to_json(&measure_of(&parse_curve(curve_json)?))
}

pub fn cmd_transform(measure_json: &str, grid: usize) -> Result<String> {
    Ok(samples_to_csv(&sample_transform(&parse_json::<DiscreteMeasure>(measure_json)?, grid)?))
}

/// Inverts onto the tags of `partition_json`, or of the uniform partition with `cells` cells.
pub fn cmd_invert(samples_csv: &str, partition_json: Option<&str>, cells: usize, tol: f64) -> Result<InvertOutput> {
    let samples = parse_samples_csv(samples_csv)?;
    let partition = match partition_json {
        Some(text) => parse_json::<TaggedPartition>(text)?,
        None => TaggedPartition::uniform(samples.dim(), cells)?,
    };
    let inv = invert_nnls(&samples, &partition, tol)?;
    Ok(InvertOutput { measure: to_json(&inv.measure)?, residual: inv.residual, kkt: inv.kkt })
}

pub fn cmd_reconstruct(measure_json: &str, cells: usize, levels: usize, factor: usize) -> Result<ReconstructOutput> {
    let mu: DiscreteMeasure = parse_json(measure_json)?;
    let p0 = TaggedPartition::uniform(mu.dim(), cells)?;
    let run = surjectivity_sequence(&mu, &p0, levels, factor)?;
    Ok(ReconstructOutput { curve: to_json(run.last_curve())?, certificate: run.certificate })
}

/// Curve JSON, either `{"d", "breakpoints", "velocities"}` or `{"vertices": [[..], ..]}`.
pub fn parse_curve(text: &str) -> Result<PcvCurve> {
    let value: serde_json::Value = parse_json(text)?;
    match value.get("vertices") {
        Some(v) => {
            let vertices: Vec<Vec<f64>> = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("vertices: {e}")))?;
            PcvCurve::from_vertices(&vertices)
        }
        None => serde_json::from_value(value).map_err(|e| Error::Parse(format!("curve: {e}"))),
    }
}

pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// `theta,value` rows for `d = 2` (theta in `[0, pi)`), `x1,...,xd,value` otherwise.
pub fn samples_to_csv(s: &TransformSamples) -> String {
    let mut out = String::new();
    if s.dim() == 2 {
        out.push_str("theta,value\n");
        for (xi, v) in s.directions().iter().zip(s.values()) {
            let theta = xi[1].atan2(xi[0]).rem_euclid(std::f64::consts::PI);
            let _ = writeln!(out, "{theta:?},{v:?}");
        }
    } else {
        let header: Vec<String> = (1..=s.dim()).map(|i| format!("x{i}")).chain(["value".to_string()]).collect();
        let _ = writeln!(out, "{}", header.join(","));
        for (xi, v) in s.directions().iter().zip(s.values()) {
            let row: Vec<String> = xi.iter().chain([v]).map(|x| format!("{x:?}")).collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
    }
    out
}

pub fn parse_samples_csv(text: &str) -> Result<TransformSamples> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers: Vec<String> = reader.headers().map_err(csv_error)?.iter().map(str::to_string).collect();
    let planar = headers == ["theta", "value"];
    let dim = headers.len().saturating_sub(1);
    let expected: Vec<String> = (1..=dim).map(|i| format!("x{i}")).chain(["value".to_string()]).collect();
    if !planar && (dim < 3 || headers != expected) {
        return Err(Error::Parse(format!("expected header `theta,value` or `x1,...,xd,value`, got `{}`", headers.join(","))));
    }
    let mut directions = Vec::new();
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        let nums = record
            .iter()
            .map(|f| f.parse::<f64>().map_err(|e| Error::Parse(format!("line {line}: `{f}`: {e}"))))
            .collect::<Result<Vec<f64>>>()?;
        let (value, rest) = nums.split_last().expect("csv enforces the header width");
        directions.push(if planar { vec![rest[0].cos(), rest[0].sin()] } else { rest.to_vec() });
        values.push(*value);
    }
    TransformSamples::new(if planar { 2 } else { dim }, directions, values)
}

fn csv_error(e: csv::Error) -> Error {
    match e.position() {
        Some(p) => Error::Parse(format!("line {}: {e}", p.line())),
        None => Error::Parse(e.to_string()),
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
