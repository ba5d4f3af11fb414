//! Execute a [`RunConfig`] and write its CSV and JSON artifacts.

use std::fs;
use std::path::{Path, PathBuf};

use packetlab::experiments::{
    cavity_profile, fringe_spacing, mach_zehnder_probabilities, resonance_check,
    two_laser_intensity, two_slit_intensity, visibility, DetectorProbabilities, ScreenIntensity,
    DEFAULT_RESONANCE_TOLERANCE,
};
use packetlab::kinematics::{kinematic_state, wavelengths};
use packetlab::sampler::{
    expected_counts, goodness_of_fit, parallel_histogram, sample_detectors, ArrivalDistribution,
    FitReport, Histogram, SeededStream, GENERATOR_ALGORITHM,
};
use serde::Serialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::config::{ConfigError, Params, RunConfig};

pub const ARTIFACT_VERSION: &str = "1";

/// Arrivals drawn per random stream. Fixed, so the stream layout (and hence
/// the output) depends only on the sample count.
pub const SAMPLES_PER_STREAM: u64 = 65_536;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Model(#[from] packetlab::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Model(packetlab::Error::Analysis(_)) => 3,
            CliError::Model(_) => 2,
            CliError::Io { .. } | CliError::Csv(_) => 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorInfo {
    pub algorithm: &'static str,
    pub seed: u64,
    pub streams: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub artifact_version: &'static str,
    pub generator: GeneratorInfo,
    pub config: Map<String, Value>,
    pub analytic: Value,
    pub counts: Value,
    pub fit: Option<FitReport>,
}

/// Paths written by a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifacts {
    pub csv: Option<PathBuf>,
    pub json: PathBuf,
}

fn with_extension(prefix: &Path, ext: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(".");
    name.push(ext);
    PathBuf::from(name)
}

/// Stream count used for `samples` spatial arrivals.
pub fn stream_count(samples: u64) -> u64 {
    samples.div_ceil(SAMPLES_PER_STREAM).max(1)
}

/// Run the experiment without touching the filesystem. Returns the summary
/// and the CSV body, if the experiment produces one.
pub fn execute(config: &RunConfig) -> Result<(RunSummary, Option<String>), CliError> {
    let mut generator = GeneratorInfo {
        algorithm: GENERATOR_ALGORITHM,
        seed: config.seed,
        streams: 0,
    };
    let (analytic, counts, fit, csv) = match &config.params {
        Params::Kinematics(state) => {
            let analytic = json!({
                "kinematic_state": kinematic_state(state),
                "wavelengths": wavelengths(state)?,
            });
            (analytic, Value::Null, None, None)
        }
        Params::MachZehnder(mz) => {
            let probs = mach_zehnder_probabilities(mz);
            generator.streams = 1;
            let (n1, n2) =
                sample_detectors(&probs, config.samples, SeededStream::new(config.seed, 0));
            let csv = detector_csv(&probs, config.samples, (n1, n2))?;
            let analytic = json!({ "p1": probs.p1, "p2": probs.p2 });
            let counts = json!({ "detector_1": n1, "detector_2": n2, "total": config.samples });
            (analytic, counts, None, Some(csv))
        }
        Params::TwoSlit(c) => {
            let intensity = two_slit_intensity(c)?;
            let period = c.fringe_period();
            let analytic = json!({
                "fringe_spacing": fringe_spacing(&intensity).ok(),
                "fringe_spacing_oracle": period,
                "visibility": visibility(&intensity, 0.5 * period).ok(),
            });
            spatial(config, &intensity, analytic, &mut generator)?
        }
        Params::Cavity {
            config: c,
            grid_points,
        } => {
            let intensity = cavity_profile(c, *grid_points)?;
            let mode = resonance_check(c.cavity_length, c.wavelength, DEFAULT_RESONANCE_TOLERANCE);
            let analytic = json!({
                "mode_number": mode.mode_number,
                "node_positions": c.node_positions(),
            });
            spatial(config, &intensity, analytic, &mut generator)?
        }
        Params::TwoLaser(c) => {
            let intensity = two_laser_intensity(c)?;
            let period = c.wavelength * c.screen_distance / c.effective_slit_separation;
            let analytic = json!({
                "fringe_spacing": fringe_spacing(&intensity).ok(),
                "fringe_spacing_oracle": period,
                "visibility": visibility(&intensity, 0.5 * period).ok(),
            });
            spatial(config, &intensity, analytic, &mut generator)?
        }
    };
    let summary = RunSummary {
        artifact_version: ARTIFACT_VERSION,
        generator,
        config: config.echo(),
        analytic,
        counts,
        fit,
    };
    Ok((summary, csv))
}

type Outcome = (Value, Value, Option<FitReport>, Option<String>);

fn spatial(
    config: &RunConfig,
    intensity: &ScreenIntensity,
    analytic: Value,
    generator: &mut GeneratorInfo,
) -> Result<Outcome, CliError> {
    let streams = stream_count(config.samples);
    generator.streams = streams;
    let hist = parallel_histogram(
        intensity,
        config.samples as usize,
        streams as usize,
        config.bins,
        (intensity.lower(), intensity.upper()),
        config.seed,
    )?;
    let expected = expected_counts(&hist, intensity)?;
    let fit = goodness_of_fit(&hist, intensity)?;
    let csv = histogram_csv(&hist, intensity, &expected)?;
    let counts = json!({ "total": hist.total, "outside": hist.outside, "bins": hist.bin_count() });
    Ok((analytic, counts, Some(fit), Some(csv)))
}

fn histogram_csv(
    hist: &Histogram,
    intensity: &ScreenIntensity,
    expected: &[f64],
) -> Result<String, CliError> {
    let dist = ArrivalDistribution::new(intensity);
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record([
        "bin_left_edge_m",
        "bin_right_edge_m",
        "count",
        "analytic_density_per_m",
        "expected_count",
    ])?;
    for (i, (&count, &e)) in hist.counts.iter().zip(expected).enumerate() {
        let (lo, hi) = (hist.edge(i), hist.edge(i + 1));
        let density = (dist.cdf(hi) - dist.cdf(lo)) / (hi - lo);
        w.write_record([
            format!("{lo:e}"),
            format!("{hi:e}"),
            count.to_string(),
            format!("{density:e}"),
            format!("{e:e}"),
        ])?;
    }
    finish(w)
}

fn detector_csv(
    probs: &DetectorProbabilities,
    total: u64,
    counts: (u64, u64),
) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(["detector", "probability", "count", "expected_count"])?;
    for (name, p, n) in [("1", probs.p1, counts.0), ("2", probs.p2, counts.1)] {
        w.write_record([
            name.to_string(),
            format!("{p:e}"),
            n.to_string(),
            format!("{:e}", p * total as f64),
        ])?;
    }
    finish(w)
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w
        .into_inner()
        .map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

/// Run the experiment and write `<out>.csv` (when the experiment has binned
/// data) and `<out>.json`.
pub fn run(config: &RunConfig) -> Result<Artifacts, CliError> {
    let (summary, csv) = execute(config)?;
    let write = |path: &PathBuf, body: &str| {
        fs::write(path, body).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })
    };
    let csv_path = match csv {
        Some(body) => {
            let path = with_extension(&config.output_path, "csv");
            write(&path, &body)?;
            Some(path)
        }
        None => None,
    };
    let json_path = with_extension(&config.output_path, "json");
    let mut body = serde_json::to_string_pretty(&summary).expect("summary serializes");
    body.push('\n');
    write(&json_path, &body)?;
    Ok(Artifacts {
        csv: csv_path,
        json: json_path,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{parse_config, Experiment, Overrides};

    #[test]
    fn exit_codes() {
        let analysis = CliError::Model(packetlab::Error::Analysis("x".into()));
        let domain = CliError::Model(packetlab::Error::Domain("x".into()));
        let config = CliError::Config(ConfigError::Invalid(vec![]));
        assert_eq!(analysis.exit_code(), 3);
        assert_eq!(domain.exit_code(), 2);
        assert_eq!(config.exit_code(), 2);
    }

    #[test]
    fn stream_layout() {
        assert_eq!(stream_count(1), 1);
        assert_eq!(stream_count(SAMPLES_PER_STREAM), 1);
        assert_eq!(stream_count(SAMPLES_PER_STREAM + 1), 2);
        assert_eq!(stream_count(1_000_000), 16);
    }

    #[test]
    fn execute_is_deterministic() {
        let o = Overrides {
            samples: Some(5_000),
            bins: Some(32),
            params: vec!["cavity_length=1.5825e-6".into(), "wavelength=633e-9".into()],
            ..Default::default()
        };
        let c = parse_config(Experiment::Cavity, None, &o).unwrap();
        let (a, csv_a) = execute(&c).unwrap();
        let (b, csv_b) = execute(&c).unwrap();
        assert_eq!(csv_a, csv_b);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert_eq!(csv_a.unwrap().lines().count(), 33);
    }
}
