//! Numerical tolerances shared by every module.
//!
//! Changing a value here changes it everywhere; the acceptance suite reads
//! its thresholds from the same table.

/// Maximum `|M - M†|` entry accepted as Hermitian.
pub const HERMITIAN: f64 = 1e-9;

/// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this
/// (scaled by `max(1, ||M||)`).
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-14;

/// Upper bound on Jacobi sweeps; 4x4 Hermitian input converges in < 10.
pub const JACOBI_MAX_SWEEPS: usize = 64;

/// Eigenvalues that differ by less than this are treated as one cluster
/// when ordering eigenvectors.
pub const EIGEN_CLUSTER: f64 = 1e-12;

/// Components below this magnitude are treated as zero when fixing
/// eigenvector phases.
pub const PHASE_ZERO: f64 = 1e-12;

/// Eigenvalues below this are dropped from entropy sums (`0 log 0 = 0`).
pub const ENTROPY_CLAMP: f64 = 1e-12;

/// Trace deviation from 1 accepted by `entropy`.
pub const UNIT_TRACE: f64 = 1e-9;

/// Most negative eigenvalue still accepted as positive semidefinite.
pub const POSITIVITY: f64 = 1e-9;

/// Integration aborts when a sampled atomic state has an eigenvalue below this.
pub const INTEGRATION_NEGATIVITY: f64 = -1e-6;

/// Largest accepted RK4 step.
pub const MAX_STEP: f64 = 1e-2;

/// Smallest trace that can still be renormalised into a photon state.
pub const MIN_SURVIVAL: f64 = 1e-12;

/// Measurement outcomes with probability below this contribute nothing.
pub const MIN_OUTCOME_PROBABILITY: f64 = 1e-12;

/// Marginal eigenvalue gap under which MID falls back to the computational basis.
pub const MID_DEGENERACY: f64 = 1e-9;

/// Correlation values with magnitude below this are clamped to zero.
pub const CLAMP_ZERO: f64 = 1e-9;

/// Spin-flip eigenvalues above this (but negative) are clamped to zero.
pub const CONCURRENCE_CLAMP: f64 = -1e-10;

/// Spin-flip eigenvalues below this reject the input as unphysical.
pub const CONCURRENCE_REJECT: f64 = -1e-8;

/// Coarse grid resolution of the basis search (theta x phi).
pub const GRID_POINTS: usize = 48;

/// Simplex refinement stops once the objective spread falls below this.
pub const SIMPLEX_IMPROVEMENT: f64 = 1e-8;

/// Simplex iteration budget.
pub const SIMPLEX_MAX_ITERATIONS: usize = 200;

/// Spread still left after the budget that marks the result as unconverged.
pub const SIMPLEX_NONCONVERGENCE: f64 = 1e-6;

/// Slack when checking that a step size or stride divides a time span.
pub const TIME_GRID: f64 = 1e-9;
