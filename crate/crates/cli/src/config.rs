//! Run configuration: a flat key/value map assembled from an optional file
//! and command-line overrides, then checked against the experiment's schema.

use std::collections::BTreeMap;
use std::path::PathBuf;

use packetlab::experiments::{
    cavity_profile, CavityConfig, MachZehnderConfig, TwoLaserConfig, TwoSlitConfig,
    DEFAULT_GRID_POINTS,
};
use packetlab::kinematics::ParticleState;
use packetlab::sampler::MIN_FIT_TOTAL;
use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

pub const DEFAULT_SAMPLES: u64 = 100_000;
pub const DEFAULT_BINS: usize = 256;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_CAVITY_GRID_POINTS: usize = 4097;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Kinematics,
    TwoSlit,
    MachZehnder,
    Cavity,
    TwoLaser,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Kinematics => "kinematics",
            Experiment::TwoSlit => "two-slit",
            Experiment::MachZehnder => "mach-zehnder",
            Experiment::Cavity => "cavity",
            Experiment::TwoLaser => "two-laser",
        }
    }

    /// Experiment-specific keys, required ones first.
    fn keys(self) -> &'static [Key] {
        match self {
            Experiment::Kinematics => KINEMATICS_KEYS,
            Experiment::TwoSlit => TWO_SLIT_KEYS,
            Experiment::MachZehnder => MACH_ZEHNDER_KEYS,
            Experiment::Cavity => CAVITY_KEYS,
            Experiment::TwoLaser => TWO_LASER_KEYS,
        }
    }

    fn samples_spatial_arrivals(self) -> bool {
        matches!(
            self,
            Experiment::TwoSlit | Experiment::Cavity | Experiment::TwoLaser
        )
    }
}

#[derive(Debug, Clone, Copy)]
enum Kind {
    Real,
    Count,
    Flag,
    Text,
}

#[derive(Debug, Clone, Copy)]
struct Key {
    name: &'static str,
    kind: Kind,
    required: bool,
}

impl Key {
    const fn req(name: &'static str, kind: Kind) -> Self {
        Key {
            name,
            kind,
            required: true,
        }
    }

    const fn opt(name: &'static str, kind: Kind) -> Self {
        Key {
            name,
            kind,
            required: false,
        }
    }
}

const KINEMATICS_KEYS: &[Key] = &[
    Key::req("rest_mass", Kind::Real),
    Key::req("speed", Kind::Real),
];

const TWO_SLIT_KEYS: &[Key] = &[
    Key::req("wavelength", Kind::Real),
    Key::req("slit_separation", Kind::Real),
    Key::req("slit_width", Kind::Real),
    Key::req("screen_distance", Kind::Real),
    Key::opt("screen_halfwidth", Kind::Real),
    Key::opt("open_a", Kind::Flag),
    Key::opt("open_b", Kind::Flag),
    Key::opt("grid_points", Kind::Count),
];

const MACH_ZEHNDER_KEYS: &[Key] = &[
    Key::req("phase_difference", Kind::Real),
    Key::opt("second_beamsplitter_present", Kind::Flag),
];

const CAVITY_KEYS: &[Key] = &[
    Key::req("cavity_length", Kind::Real),
    Key::req("wavelength", Kind::Real),
    Key::opt("grid_points", Kind::Count),
];

const TWO_LASER_KEYS: &[Key] = &[
    Key::req("wavelength", Kind::Real),
    Key::req("effective_slit_separation", Kind::Real),
    Key::req("screen_distance", Kind::Real),
    Key::opt("relative_phase", Kind::Real),
    Key::opt("screen_halfwidth", Kind::Real),
    Key::opt("grid_points", Kind::Count),
];

const RUN_KEYS: &[Key] = &[
    Key::opt("subcommand", Kind::Text),
    Key::opt("seed", Kind::Count),
    Key::opt("samples", Kind::Count),
    Key::opt("bins", Kind::Count),
    Key::opt("out", Kind::Text),
];

/// Validated physical parameters of one experiment.
#[derive(Debug, Clone, PartialEq)]
pub enum Params {
    Kinematics(ParticleState),
    TwoSlit(TwoSlitConfig),
    MachZehnder(MachZehnderConfig),
    Cavity {
        config: CavityConfig,
        grid_points: usize,
    },
    TwoLaser(TwoLaserConfig),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub params: Params,
    pub samples: u64,
    pub bins: usize,
    pub seed: u64,
    pub output_path: PathBuf,
}

/// Values given on the command line; each one beats the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub samples: Option<u64>,
    pub bins: Option<usize>,
    pub out: Option<PathBuf>,
    /// `--param key=value` pairs.
    pub params: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("malformed config file: {0}")]
    Malformed(String),
    #[error("invalid configuration:\n  {}", .0.join("\n  "))]
    Invalid(Vec<String>),
}

/// A raw value before it is checked against the schema.
#[derive(Debug, Clone, PartialEq)]
enum Raw {
    Text(String),
    Json(Value),
}

/// Parse a config file: a single JSON object, or `key = value` lines with
/// `#` comments.
fn parse_file(text: &str) -> Result<BTreeMap<String, Raw>, ConfigError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let value: Value =
            serde_json::from_str(text).map_err(|e| ConfigError::Malformed(e.to_string()))?;
        let Value::Object(map) = value else {
            unreachable!("text starts with '{{'");
        };
        return Ok(map.into_iter().map(|(k, v)| (k, Raw::Json(v))).collect());
    }
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            ConfigError::Malformed(format!(
                "line {}: expected `key = value`, got `{line}`",
                n + 1
            ))
        })?;
        let value = value.trim().trim_matches('"');
        out.insert(key.trim().to_string(), Raw::Text(value.to_string()));
    }
    Ok(out)
}

fn real(key: &str, raw: &Raw) -> Result<f64, String> {
    let x = match raw {
        Raw::Json(Value::Number(n)) => n.as_f64(),
        Raw::Json(Value::String(s)) | Raw::Text(s) => s.parse::<f64>().ok(),
        Raw::Json(_) => None,
    };
    x.filter(|x| x.is_finite())
        .ok_or_else(|| format!("{key}: expected a finite number"))
}

fn count(key: &str, raw: &Raw) -> Result<u64, String> {
    let x = match raw {
        Raw::Json(Value::Number(n)) => n.as_u64(),
        Raw::Json(Value::String(s)) | Raw::Text(s) => s.parse::<u64>().ok(),
        Raw::Json(_) => None,
    };
    x.ok_or_else(|| format!("{key}: expected a non-negative integer"))
}

fn flag(key: &str, raw: &Raw) -> Result<bool, String> {
    let x = match raw {
        Raw::Json(Value::Bool(b)) => Some(*b),
        Raw::Json(Value::String(s)) | Raw::Text(s) => match s.as_str() {
            "true" | "1" | "yes" => Some(true),
            "false" | "0" | "no" => Some(false),
            _ => None,
        },
        Raw::Json(_) => None,
    };
    x.ok_or_else(|| format!("{key}: expected true or false"))
}

fn text(key: &str, raw: &Raw) -> Result<String, String> {
    match raw {
        Raw::Json(Value::String(s)) | Raw::Text(s) => Ok(s.clone()),
        Raw::Json(_) => Err(format!("{key}: expected a string")),
    }
}

/// Typed view over the merged key/value map that records every problem
/// instead of stopping at the first.
struct Reader {
    values: BTreeMap<String, Raw>,
    errors: Vec<String>,
}

impl Reader {
    fn real(&mut self, key: &str) -> Option<f64> {
        let raw = self.values.get(key)?;
        real(key, raw).map_err(|e| self.errors.push(e)).ok()
    }

    fn count(&mut self, key: &str) -> Option<u64> {
        let raw = self.values.get(key)?;
        count(key, raw).map_err(|e| self.errors.push(e)).ok()
    }

    fn flag(&mut self, key: &str) -> Option<bool> {
        let raw = self.values.get(key)?;
        flag(key, raw).map_err(|e| self.errors.push(e)).ok()
    }

    fn text(&mut self, key: &str) -> Option<String> {
        let raw = self.values.get(key)?;
        text(key, raw).map_err(|e| self.errors.push(e)).ok()
    }

    fn grid_points(&mut self, default: usize) -> usize {
        self.count("grid_points").map_or(default, |g| g as usize)
    }
}

/// Merge `file` (if any) and `overrides`, check every key, and validate the
/// physical parameters with the experiment's own preconditions.
pub fn parse_config(
    experiment: Experiment,
    file: Option<&str>,
    overrides: &Overrides,
) -> Result<RunConfig, ConfigError> {
    let mut values = match file {
        Some(text) => parse_file(text)?,
        None => BTreeMap::new(),
    };
    let mut errors = Vec::new();

    for pair in &overrides.params {
        match pair.split_once('=') {
            Some((k, v)) => {
                values.insert(k.trim().to_string(), Raw::Text(v.trim().to_string()));
            }
            None => errors.push(format!("--param {pair}: expected key=value")),
        }
    }
    if let Some(seed) = overrides.seed {
        values.insert("seed".into(), Raw::Json(seed.into()));
    }
    if let Some(samples) = overrides.samples {
        values.insert("samples".into(), Raw::Json(samples.into()));
    }
    if let Some(bins) = overrides.bins {
        values.insert("bins".into(), Raw::Json(bins.into()));
    }
    if let Some(out) = &overrides.out {
        values.insert("out".into(), Raw::Text(out.to_string_lossy().into_owned()));
    }

    let schema: Vec<Key> = experiment.keys().iter().chain(RUN_KEYS).copied().collect();
    let valid = || schema.iter().map(|k| k.name).collect::<Vec<_>>().join(", ");
    for key in values.keys() {
        if !schema.iter().any(|k| k.name == key) {
            errors.push(format!(
                "unknown key `{key}` for {}; valid keys: {}",
                experiment.name(),
                valid()
            ));
        }
    }
    let missing: Vec<&str> = schema
        .iter()
        .filter(|k| k.required && !values.contains_key(k.name))
        .map(|k| k.name)
        .collect();
    if !missing.is_empty() {
        errors.push(format!(
            "missing required keys for {}: {}",
            experiment.name(),
            missing.join(", ")
        ));
    }
    // Type errors for every present key are reported together with the
    // missing/unknown ones.
    for key in &schema {
        if let Some(raw) = values.get(key.name) {
            let checked = match key.kind {
                Kind::Real => real(key.name, raw).map(drop),
                Kind::Count => count(key.name, raw).map(drop),
                Kind::Flag => flag(key.name, raw).map(drop),
                Kind::Text => text(key.name, raw).map(drop),
            };
            if let Err(e) = checked {
                errors.push(e);
            }
        }
    }
    if !errors.is_empty() {
        return Err(ConfigError::Invalid(errors));
    }

    let mut r = Reader { values, errors };
    if let Some(name) = r.text("subcommand") {
        if name != experiment.name() {
            r.errors.push(format!(
                "config file is for `{name}` but `{}` was requested",
                experiment.name()
            ));
        }
    }
    let seed = r.count("seed").unwrap_or(DEFAULT_SEED);
    let samples = r.count("samples").unwrap_or(DEFAULT_SAMPLES);
    let bins = r.count("bins").map_or(DEFAULT_BINS, |b| b as usize);
    let output_path = r
        .text("out")
        .map_or_else(|| PathBuf::from(experiment.name()), PathBuf::from);

    let params = build_params(experiment, &mut r);
    if experiment.samples_spatial_arrivals() {
        if samples < MIN_FIT_TOTAL {
            r.errors.push(format!(
                "samples: must be at least {MIN_FIT_TOTAL} for the goodness-of-fit test, got {samples}"
            ));
        }
        if bins < 2 {
            r.errors
                .push(format!("bins: must be at least 2, got {bins}"));
        }
    }
    match params {
        Some(params) if r.errors.is_empty() => Ok(RunConfig {
            experiment,
            params,
            samples,
            bins,
            seed,
            output_path,
        }),
        _ => Err(ConfigError::Invalid(r.errors)),
    }
}

fn build_params(experiment: Experiment, r: &mut Reader) -> Option<Params> {
    let checked = match experiment {
        Experiment::Kinematics => {
            let (m, v) = (r.real("rest_mass")?, r.real("speed")?);
            ParticleState::new(m, v).map(Params::Kinematics)
        }
        Experiment::TwoSlit => {
            let base = TwoSlitConfig::new(
                r.real("wavelength")?,
                r.real("slit_separation")?,
                r.real("slit_width")?,
                r.real("screen_distance")?,
            );
            let cfg = TwoSlitConfig {
                screen_halfwidth: r.real("screen_halfwidth").unwrap_or(base.screen_halfwidth),
                open_a: r.flag("open_a").unwrap_or(true),
                open_b: r.flag("open_b").unwrap_or(true),
                grid_points: r.grid_points(DEFAULT_GRID_POINTS),
                ..base
            };
            cfg.validate().map(|()| Params::TwoSlit(cfg))
        }
        Experiment::MachZehnder => Ok(Params::MachZehnder(MachZehnderConfig {
            phase_difference: r.real("phase_difference")?,
            second_beamsplitter_present: r.flag("second_beamsplitter_present").unwrap_or(true),
        })),
        Experiment::Cavity => {
            let config = CavityConfig {
                cavity_length: r.real("cavity_length")?,
                wavelength: r.real("wavelength")?,
            };
            let grid_points = r.grid_points(DEFAULT_CAVITY_GRID_POINTS);
            cavity_profile(&config, grid_points).map(|_| Params::Cavity {
                config,
                grid_points,
            })
        }
        Experiment::TwoLaser => {
            let base = TwoLaserConfig::new(
                r.real("wavelength")?,
                r.real("effective_slit_separation")?,
                r.real("screen_distance")?,
                r.real("relative_phase").unwrap_or(0.0),
            );
            let cfg = TwoLaserConfig {
                screen_halfwidth: r.real("screen_halfwidth").unwrap_or(base.screen_halfwidth),
                grid_points: r.grid_points(DEFAULT_GRID_POINTS),
                ..base
            };
            cfg.validate().map(|()| Params::TwoLaser(cfg))
        }
    };
    checked.map_err(|e| r.errors.push(e.to_string())).ok()
}

impl RunConfig {
    /// Flat key/value echo that [`parse_config`] accepts back unchanged.
    /// The output path is left out so a re-run can write elsewhere.
    pub fn echo(&self) -> Map<String, Value> {
        let params = match &self.params {
            Params::Kinematics(s) => serde_json::to_value(s),
            Params::TwoSlit(c) => serde_json::to_value(c),
            Params::MachZehnder(c) => serde_json::to_value(c),
            Params::Cavity {
                config,
                grid_points,
            } => serde_json::to_value(config).map(|mut v| {
                v["grid_points"] = (*grid_points).into();
                v
            }),
            Params::TwoLaser(c) => serde_json::to_value(c),
        };
        let Ok(Value::Object(mut map)) = params else {
            unreachable!("parameter structs serialize to objects");
        };
        map.insert("subcommand".into(), self.experiment.name().into());
        map.insert("seed".into(), self.seed.into());
        map.insert("samples".into(), self.samples.into());
        map.insert("bins".into(), self.bins.into());
        map
    }
}
