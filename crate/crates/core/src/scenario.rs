//! Scenario files and the evolve → map → measure pipeline.
//!
//! A scenario is a flat JSON object:
//!
//! ```json
//! { "configuration": "xi", "omega1": 2.0, "omega2": 5.0, "t_max": 3.0 }
//! ```
//!
//! Optional keys: `phi1`, `phi2`, `delta1`, `delta2` (default 0), `dt`
//! (default 1e-3), `output_stride` (default 0.01), `mode` (`trajectory` or
//! `sweep`), and for sweeps `sweep_field` (`omega1`/`omega2`), `sweep_range`
//! (`[start, stop, steps]`) and `fixed_time`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atom::{
    evolve, make_config, spa_satisfied, AtomConfig, AtomError, AtomicState, ConfigKind, DriveParams, TimeGrid,
};
use crate::correlations::{measure_all, CorrelationError};
use crate::photon::{atomic_to_photon, PhotonError};
use crate::tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Trajectory,
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepField {
    Omega1,
    Omega2,
}

impl SweepField {
    pub fn name(self) -> &'static str {
        match self {
            SweepField::Omega1 => "omega1",
            SweepField::Omega2 => "omega2",
        }
    }
}

/// `(start, stop, steps)`, serialised as a three-element array.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRange(pub f64, pub f64, pub usize);

impl SweepRange {
    pub fn values(&self) -> Vec<f64> {
        let SweepRange(start, stop, steps) = *self;
        (0..steps)
            .map(|i| start + (stop - start) * i as f64 / (steps - 1) as f64)
            .collect()
    }
}

fn default_dt() -> f64 {
    TimeGrid::DEFAULT_DT
}

fn default_stride() -> f64 {
    TimeGrid::DEFAULT_STRIDE
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub configuration: ConfigKind,
    #[serde(default)]
    pub omega1: f64,
    #[serde(default)]
    pub omega2: f64,
    #[serde(default)]
    pub phi1: f64,
    #[serde(default)]
    pub phi2: f64,
    #[serde(default)]
    pub delta1: f64,
    #[serde(default)]
    pub delta2: f64,
    pub t_max: f64,
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default = "default_stride")]
    pub output_stride: f64,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep_field: Option<SweepField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep_range: Option<SweepRange>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_time: Option<f64>,
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConfigWarning {
    /// The single-photon condition fails for this drive.
    SpaViolated { drive: DriveParams, kind: ConfigKind },
}

impl std::fmt::Display for ConfigWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigWarning::SpaViolated { drive, kind } => write!(
                f,
                "single-photon approximation violated for {kind} (omega1 = {}, omega2 = {})",
                drive.omega1, drive.omega2
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedConfig {
    pub config: ScenarioConfig,
    pub warnings: Vec<ConfigWarning>,
}

fn line_of_key(text: &str, key: &str) -> Option<usize> {
    let quoted = format!("\"{key}\"");
    text.lines().position(|l| l.contains(&quoted)).map(|i| i + 1)
}

pub fn parse_config(text: &str) -> Result<ParsedConfig, ConfigError> {
    let config: ScenarioConfig = serde_json::from_str(text).map_err(|e| ConfigError {
        line: Some(e.line()),
        message: e.to_string(),
    })?;
    config.validate().map_err(|(key, message)| ConfigError {
        line: line_of_key(text, key),
        message,
    })?;
    let warnings = config.warnings();
    Ok(ParsedConfig { config, warnings })
}

impl ScenarioConfig {
    /// Checks value ranges; on failure returns the offending key and a message.
    pub fn validate(&self) -> Result<(), (&'static str, String)> {
        let finite = [
            ("omega1", self.omega1),
            ("omega2", self.omega2),
            ("phi1", self.phi1),
            ("phi2", self.phi2),
            ("delta1", self.delta1),
            ("delta2", self.delta2),
        ];
        for (key, value) in finite {
            if !value.is_finite() {
                return Err((key, format!("{key} must be finite")));
            }
        }
        for (key, value) in [("omega1", self.omega1), ("omega2", self.omega2)] {
            if value < 0.0 {
                return Err((key, format!("{key} = {value} must be non-negative")));
            }
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(("t_max", format!("t_max = {} must be positive", self.t_max)));
        }
        if let Err(e) = self.time_grid(self.t_max).plan() {
            let dt_ok = self.dt > 0.0 && self.dt <= tolerances::MAX_STEP;
            return Err((if dt_ok { "output_stride" } else { "dt" }, e.to_string()));
        }

        if self.mode == Mode::Sweep {
            if self.sweep_field.is_none() {
                return Err(("mode", "sweep mode requires sweep_field".into()));
            }
            let Some(range) = self.sweep_range else {
                return Err(("mode", "sweep mode requires sweep_range".into()));
            };
            let SweepRange(start, stop, steps) = range;
            if steps < 2 {
                return Err(("sweep_range", format!("sweep needs at least 2 steps, got {steps}")));
            }
            if !(start >= 0.0 && stop >= 0.0 && start.is_finite() && stop.is_finite()) {
                return Err(("sweep_range", "sweep range must be finite and non-negative".into()));
            }
            let Some(fixed) = self.fixed_time else {
                return Err(("mode", "sweep mode requires fixed_time".into()));
            };
            if !(fixed > 0.0 && fixed <= self.t_max) {
                return Err((
                    "fixed_time",
                    format!("fixed_time = {fixed} must lie in (0, t_max = {}]", self.t_max),
                ));
            }
        }
        Ok(())
    }

    pub fn atom(&self) -> AtomConfig {
        make_config(self.configuration, None, None).expect("default rates")
    }

    pub fn drive(&self) -> DriveParams {
        DriveParams {
            omega1: self.omega1,
            omega2: self.omega2,
            phi1: self.phi1,
            phi2: self.phi2,
            delta1: self.delta1,
            delta2: self.delta2,
        }
    }

    fn swept_drive(&self, value: f64) -> DriveParams {
        let mut drive = self.drive();
        match self.sweep_field {
            Some(SweepField::Omega1) => drive.omega1 = value,
            Some(SweepField::Omega2) => drive.omega2 = value,
            None => {}
        }
        drive
    }

    pub fn time_grid(&self, t_end: f64) -> TimeGrid {
        TimeGrid::new(t_end, self.dt).with_stride(self.output_stride)
    }

    /// Label of the record key column: `t` or the swept field.
    pub fn key_label(&self) -> &'static str {
        match (self.mode, self.sweep_field) {
            (Mode::Sweep, Some(field)) => field.name(),
            _ => "t",
        }
    }

    /// SPA warnings for the configured drive, or for both sweep endpoints.
    pub fn warnings(&self) -> Vec<ConfigWarning> {
        let atom = self.atom();
        let drives = match (self.mode, self.sweep_range) {
            (Mode::Sweep, Some(SweepRange(start, stop, _))) => vec![self.swept_drive(start), self.swept_drive(stop)],
            _ => vec![self.drive()],
        };
        let mut out = Vec::new();
        for drive in drives {
            if !spa_satisfied(&atom, &drive) {
                let w = ConfigWarning::SpaViolated {
                    drive,
                    kind: self.configuration,
                };
                if !out.contains(&w) {
                    out.push(w);
                }
            }
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("numerical failure: {0}")]
    Atom(#[from] AtomError),
    #[error("numerical failure: {0}")]
    Photon(#[from] PhotonError),
    #[error("numerical failure at key {key}: {source}")]
    Correlation { key: f64, source: CorrelationError },
    #[error("I/O error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Output(String),
}

impl ScenarioError {
    /// Process exit code: 1 config, 2 numerical, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Config(_) => 1,
            ScenarioError::Atom(
                AtomError::InvalidTimeGrid(_) | AtomError::InvalidRabi { .. } | AtomError::NonPositiveDecay { .. },
            ) => 1,
            ScenarioError::Atom(_) | ScenarioError::Photon(_) | ScenarioError::Correlation { .. } => 2,
            ScenarioError::Io { .. } | ScenarioError::Output(_) => 3,
        }
    }
}

/// One output row: a time sample or a sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationRecord {
    /// Time `t`, or the swept field value.
    pub key: f64,
    /// `|00>, |01>, |10>, |11>`.
    pub populations: [f64; 4],
    pub survival: f64,
    pub purity: f64,
    pub concurrence: f64,
    pub mid: f64,
    pub discord: f64,
    pub work_deficit: f64,
    /// MID used the computational-basis fallback.
    pub degenerate: bool,
    pub optimizer_converged: bool,
    /// Set when the point could not be computed; numeric fields are NaN.
    pub failure: Option<String>,
}

impl CorrelationRecord {
    pub fn failed(key: f64, reason: String) -> Self {
        Self {
            key,
            populations: [f64::NAN; 4],
            survival: f64::NAN,
            purity: f64::NAN,
            concurrence: f64::NAN,
            mid: f64::NAN,
            discord: f64::NAN,
            work_deficit: f64::NAN,
            degenerate: false,
            optimizer_converged: false,
            failure: Some(reason),
        }
    }

    pub fn is_failed(&self) -> bool {
        self.failure.is_some()
    }
}

/// Maps one atomic sample to the photon state and evaluates every measure.
pub fn measure_state(key: f64, state: &AtomicState) -> Result<CorrelationRecord, ScenarioError> {
    let photon = atomic_to_photon(state)?;
    let c = measure_all(&photon.rho).map_err(|source| ScenarioError::Correlation { key, source })?;
    Ok(CorrelationRecord {
        key,
        populations: photon.populations(),
        survival: photon.survival,
        purity: photon.purity(),
        concurrence: c.concurrence,
        mid: c.mid,
        discord: c.discord,
        work_deficit: c.work_deficit,
        degenerate: c.mid_degenerate,
        optimizer_converged: c.optimizer_converged,
        failure: None,
    })
}

/// Evolves the configured drive to `t_max` and measures every sample.
/// Samples are measured in parallel on the current rayon pool; the output
/// order is always by time.
pub fn run_trajectory(config: &ScenarioConfig) -> Result<Vec<CorrelationRecord>, ScenarioError> {
    if config.mode != Mode::Trajectory {
        return Err(ConfigError {
            line: None,
            message: "run_trajectory needs mode = trajectory".into(),
        }
        .into());
    }
    let trajectory = evolve(&config.atom(), &config.drive(), &config.time_grid(config.t_max))?;
    trajectory
        .times
        .par_iter()
        .zip(trajectory.states.par_iter())
        .map(|(&t, state)| measure_state(t, state))
        .collect()
}

fn sweep_point(config: &ScenarioConfig, fixed_time: f64, value: f64) -> Result<CorrelationRecord, ScenarioError> {
    let trajectory = evolve(
        &config.atom(),
        &config.swept_drive(value),
        &config.time_grid(fixed_time),
    )?;
    let (_, state) = trajectory.last().expect("trajectory has samples");
    measure_state(value, state)
}

/// Evolves each swept field value to `fixed_time`. A point that fails is
/// kept as a [`CorrelationRecord::failed`] row; the rest still run.
pub fn run_sweep(config: &ScenarioConfig) -> Result<Vec<CorrelationRecord>, ScenarioError> {
    let (Mode::Sweep, Some(range), Some(fixed_time)) = (config.mode, config.sweep_range, config.fixed_time) else {
        return Err(ConfigError {
            line: None,
            message: "run_sweep needs mode = sweep with sweep_range and fixed_time".into(),
        }
        .into());
    };
    Ok(range
        .values()
        .par_iter()
        .map(|&value| {
            sweep_point(config, fixed_time, value).unwrap_or_else(|e| {
                log::warn!("sweep point {value} failed: {e}");
                CorrelationRecord::failed(value, e.to_string())
            })
        })
        .collect())
}

/// Runs whichever mode the config selects.
pub fn run(config: &ScenarioConfig) -> Result<Vec<CorrelationRecord>, ScenarioError> {
    match config.mode {
        Mode::Trajectory => run_trajectory(config),
        Mode::Sweep => run_sweep(config),
    }
}
