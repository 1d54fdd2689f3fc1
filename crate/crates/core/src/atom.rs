//! Driven three-level atom with phenomenological level decay.
//!
//! The state obeys
//!
//! ```text
//! d(rho)/dt = -i [H, rho] - 1/2 {Gamma, rho}
//! ```
//!
//! with `hbar = 1`, `H` the rotating-frame drive Hamiltonian and `Gamma =
//! diag(0, gamma1, gamma2)`. There is no repopulation term, so the trace
//! leaks out as the excited levels decay. All rates are dimensionless
//! (scaled by 1 MHz) and enter as angular frequencies.
//!
//! Levels are numbered 1..=3 in [`TransitionMap`] and 0..=2 as matrix indices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linops::{hermitian_eig, ComplexMatrix, LinopsError, C64};
use crate::tolerances;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AtomError {
    #[error("decay-rate override {name} = {value} must be strictly positive")]
    NonPositiveDecay { name: &'static str, value: f64 },
    #[error("Rabi frequency {name} = {value} must be non-negative and finite")]
    InvalidRabi { name: &'static str, value: f64 },
    #[error("invalid time grid: {0}")]
    InvalidTimeGrid(String),
    #[error("integration aborted at t = {time}: eigenvalue {eigenvalue:e} below {limit:e} (step too large?)")]
    NegativeEigenvalue { time: f64, eigenvalue: f64, limit: f64 },
    #[error(transparent)]
    Linops(#[from] LinopsError),
}

/// Arrangement of the two driven transitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConfigKind {
    /// Cascade: 1-2 and 2-3.
    Xi,
    /// Folded, shared upper level 3: 1-3 and 3-2.
    Lambda,
    /// Shared ground level: 1-3 and 1-2.
    V,
}

impl ConfigKind {
    pub const ALL: [ConfigKind; 3] = [ConfigKind::Xi, ConfigKind::Lambda, ConfigKind::V];

    pub fn name(self) -> &'static str {
        match self {
            ConfigKind::Xi => "xi",
            ConfigKind::Lambda => "lambda",
            ConfigKind::V => "v",
        }
    }

    /// `(m, n, l, k)`: field 1 couples `|m><n|`, field 2 couples `|l><k|`.
    pub fn transition_map(self) -> TransitionMap {
        match self {
            ConfigKind::Xi => TransitionMap::new(2, 1, 3, 2),
            ConfigKind::Lambda => TransitionMap::new(3, 1, 3, 2),
            ConfigKind::V => TransitionMap::new(3, 1, 2, 1),
        }
    }

    /// Default `(gamma1, gamma2)` for the rubidium level assignment:
    /// 5P3/2 decays at 6.0, metastable 5D5/2 at 1.0.
    pub fn default_decay(self) -> (f64, f64) {
        match self {
            ConfigKind::Xi => (6.0, 1.0),
            ConfigKind::Lambda => (1.0, 6.0),
            ConfigKind::V => (6.0, 6.0),
        }
    }
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConfigKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "xi" => Ok(ConfigKind::Xi),
            "lambda" => Ok(ConfigKind::Lambda),
            "v" => Ok(ConfigKind::V),
            other => Err(format!("unknown configuration {other:?} (expected xi, lambda or v)")),
        }
    }
}

/// 1-based level indices `(m, n, l, k)` of the two driven couplings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransitionMap {
    pub m: usize,
    pub n: usize,
    pub l: usize,
    pub k: usize,
}

impl TransitionMap {
    const fn new(m: usize, n: usize, l: usize, k: usize) -> Self {
        Self { m, n, l, k }
    }

    pub fn as_tuple(&self) -> (usize, usize, usize, usize) {
        (self.m, self.n, self.l, self.k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomConfig {
    pub kind: ConfigKind,
    pub transition_map: TransitionMap,
    /// Decay rate of level |2>.
    pub gamma1: f64,
    /// Decay rate of level |3>.
    pub gamma2: f64,
}

/// Configuration with the default rates, optionally overriding either one.
pub fn make_config(kind: ConfigKind, gamma1: Option<f64>, gamma2: Option<f64>) -> Result<AtomConfig, AtomError> {
    let (default1, default2) = kind.default_decay();
    let check = |name, value: Option<f64>, default| match value {
        Some(v) if !(v > 0.0 && v.is_finite()) => Err(AtomError::NonPositiveDecay { name, value: v }),
        Some(v) => Ok(v),
        None => Ok(default),
    };
    Ok(AtomConfig {
        kind,
        transition_map: kind.transition_map(),
        gamma1: check("gamma1", gamma1, default1)?,
        gamma2: check("gamma2", gamma2, default2)?,
    })
}

impl AtomConfig {
    pub fn new(kind: ConfigKind) -> Self {
        make_config(kind, None, None).expect("default rates are positive")
    }
}

/// Field amplitudes, phases and detunings.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DriveParams {
    pub omega1: f64,
    pub omega2: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub delta1: f64,
    pub delta2: f64,
}

impl DriveParams {
    /// Resonant drive with zero phases.
    pub fn resonant(omega1: f64, omega2: f64) -> Self {
        Self {
            omega1,
            omega2,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), AtomError> {
        for (name, value) in [("omega1", self.omega1), ("omega2", self.omega2)] {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(AtomError::InvalidRabi { name, value });
            }
        }
        Ok(())
    }
}

/// Single-photon regime: each ground-state excitation must be slower than
/// the decay of the level it feeds.
pub fn spa_satisfied(config: &AtomConfig, drive: &DriveParams) -> bool {
    match config.kind {
        ConfigKind::Xi => drive.omega1 < config.gamma1,
        ConfigKind::Lambda => drive.omega1 < config.gamma2,
        ConfigKind::V => drive.omega1 < config.gamma1 && drive.omega2 < config.gamma2,
    }
}

/// Rotating-frame Hamiltonian. Off-diagonals are `<m|H|n> = -Omega1/2
/// e^{-i phi1}` and `<l|H|k> = -Omega2/2 e^{-i phi2}` (plus conjugates); the
/// diagonal carries the detunings so that both drive terms are static.
pub fn build_hamiltonian(config: &AtomConfig, drive: &DriveParams) -> ComplexMatrix {
    let map = config.transition_map;
    let mut h = ComplexMatrix::zeros(3);

    let mut couple = |row: usize, col: usize, omega: f64, phi: f64| {
        let z = C64::from_polar(-0.5 * omega, -phi);
        h[(row - 1, col - 1)] += z;
        h[(col - 1, row - 1)] += z.conj();
    };
    couple(map.m, map.n, drive.omega1, drive.phi1);
    couple(map.l, map.k, drive.omega2, drive.phi2);

    let (d1, d2) = (drive.delta1, drive.delta2);
    let diagonal = match config.kind {
        ConfigKind::Xi => [0.0, -d1, -d1 - d2],
        ConfigKind::Lambda => [0.0, -d1 + d2, -d1],
        ConfigKind::V => [0.0, -d2, -d1],
    };
    for (i, x) in diagonal.into_iter().enumerate() {
        h[(i, i)] += C64::new(x, 0.0);
    }
    h
}

/// `diag(0, gamma1, gamma2)`.
pub fn relaxation_matrix(config: &AtomConfig) -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&[0.0, config.gamma1, config.gamma2]).expect("3x3")
}

/// `-i [H, rho] - 1/2 {Gamma, rho}` for a diagonal `Gamma`.
pub fn liouville_rhs(rho: &ComplexMatrix, h: &ComplexMatrix, gamma: &ComplexMatrix) -> ComplexMatrix {
    let n = rho.dim();
    let hr = *h * *rho;
    let rh = *rho * *h;
    ComplexMatrix::from_fn(n, |i, j| {
        let commutator = hr[(i, j)] - rh[(i, j)];
        let decay = 0.5 * (gamma[(i, i)] + gamma[(j, j)]) * rho[(i, j)];
        C64::new(commutator.im, -commutator.re) - decay
    })
}

/// Atomic density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomicState {
    pub rho: ComplexMatrix,
}

impl AtomicState {
    /// `|1><1|`.
    pub fn ground() -> Self {
        let mut rho = ComplexMatrix::zeros(3);
        rho[(0, 0)] = C64::new(1.0, 0.0);
        Self { rho }
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    /// Population of level `level` (1-based).
    pub fn population(&self, level: usize) -> f64 {
        self.rho[(level - 1, level - 1)].re
    }
}

/// Integration span, step and output cadence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub t_end: f64,
    pub dt: f64,
    /// Sampling interval; must be a whole number of steps.
    pub output_stride: f64,
}

impl TimeGrid {
    pub const DEFAULT_DT: f64 = 1e-3;
    pub const DEFAULT_STRIDE: f64 = 0.01;

    pub fn new(t_end: f64, dt: f64) -> Self {
        Self {
            t_end,
            dt,
            output_stride: Self::DEFAULT_STRIDE,
        }
    }

    pub fn with_stride(mut self, output_stride: f64) -> Self {
        self.output_stride = output_stride;
        self
    }

    fn invalid(msg: String) -> AtomError {
        AtomError::InvalidTimeGrid(msg)
    }

    /// Total step count (the last step may be shortened to land on `t_end`)
    /// and steps between samples.
    pub fn plan(&self) -> Result<(usize, usize), AtomError> {
        let Self {
            t_end,
            dt,
            output_stride,
        } = *self;
        if !(t_end > 0.0 && t_end.is_finite()) {
            return Err(Self::invalid(format!("t_end = {t_end} must be positive")));
        }
        if !(dt > 0.0 && dt <= tolerances::MAX_STEP) {
            return Err(Self::invalid(format!(
                "dt = {dt} must lie in (0, {}]",
                tolerances::MAX_STEP
            )));
        }
        if !(output_stride > 0.0 && output_stride.is_finite()) {
            return Err(Self::invalid(format!("output stride {output_stride} must be positive")));
        }
        let ratio = output_stride / dt;
        let stride_steps = ratio.round();
        if stride_steps < 1.0 || (ratio - stride_steps).abs() > tolerances::TIME_GRID * ratio.max(1.0) {
            return Err(Self::invalid(format!(
                "output stride {output_stride} is not a whole number of steps of {dt}"
            )));
        }
        let steps = (t_end / dt - tolerances::TIME_GRID * (t_end / dt).max(1.0))
            .ceil()
            .max(1.0);
        Ok((steps as usize, stride_steps as usize))
    }
}

/// Sampled solution starting from the ground state at `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<AtomicState>,
    pub spa_valid: bool,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<(f64, &AtomicState)> {
        Some((*self.times.last()?, self.states.last()?))
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &AtomicState)> {
        self.times.iter().copied().zip(self.states.iter())
    }
}

/// Fixed-step RK4 propagation of an arbitrary initial state under a fixed
/// Hamiltonian and relaxation matrix. `rho` is re-Hermitised after every step.
pub fn propagate(
    h: &ComplexMatrix,
    gamma: &ComplexMatrix,
    initial: AtomicState,
    grid: &TimeGrid,
) -> Result<(Vec<f64>, Vec<AtomicState>), AtomError> {
    let (steps, stride) = grid.plan()?;
    let mut rho = initial.rho;
    let mut times = vec![0.0];
    let mut states = vec![initial];

    let f = |r: &ComplexMatrix| liouville_rhs(r, h, gamma);
    for step in 1..=steps {
        let t_prev = (step - 1) as f64 * grid.dt;
        let t = (step as f64 * grid.dt).min(grid.t_end);
        let dt = t - t_prev;

        let k1 = f(&rho);
        let k2 = f(&(rho + k1.scale_real(0.5 * dt)));
        let k3 = f(&(rho + k2.scale_real(0.5 * dt)));
        let k4 = f(&(rho + k3.scale_real(dt)));
        let incr = k1 + k2.scale_real(2.0) + k3.scale_real(2.0) + k4;
        rho = (rho + incr.scale_real(dt / 6.0)).hermitian_part();

        if step % stride == 0 || step == steps {
            let lowest = hermitian_eig(&rho)?.values.last().copied().unwrap_or(0.0);
            if lowest < tolerances::INTEGRATION_NEGATIVITY {
                return Err(AtomError::NegativeEigenvalue {
                    time: t,
                    eigenvalue: lowest,
                    limit: tolerances::INTEGRATION_NEGATIVITY,
                });
            }
            times.push(t);
            states.push(AtomicState { rho });
        }
    }
    Ok((times, states))
}

/// Evolves the ground state to `grid.t_end`.
pub fn evolve(config: &AtomConfig, drive: &DriveParams, grid: &TimeGrid) -> Result<Trajectory, AtomError> {
    drive.validate()?;
    let h = build_hamiltonian(config, drive);
    let gamma = relaxation_matrix(config);
    let (times, states) = propagate(&h, &gamma, AtomicState::ground(), grid)?;
    Ok(Trajectory {
        times,
        states,
        spa_valid: spa_satisfied(config, drive),
    })
}
