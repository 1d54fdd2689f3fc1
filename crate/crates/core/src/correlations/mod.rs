//! Quantum correlation measures on two-qubit density matrices.
//!
//! Subsystem `a` is the first photon mode, `b` the second. Discord and work
//! deficit measure `b` with rank-one projectors and minimise over the
//! measurement basis; MID measures both sides in the eigenbases of the
//! marginals; concurrence is the Wootters spin-flip construction.
//!
//! All entropies are in bits.

mod basis;
mod optimize;

pub use basis::{projectors, MeasurementBasis};
pub use optimize::{grid_angles, minimize_over_bases, OptimizationResult};

use thiserror::Error;

use crate::linops::{hermitian_eig, hermitian_eigvals_2x2, sigma_y, ComplexMatrix, LinopsError, Subsystem, C64};
use crate::tolerances;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CorrelationError {
    #[error("not a density matrix: trace {trace} differs from 1")]
    Trace { trace: f64 },
    #[error("not a density matrix: eigenvalue {eigenvalue:e} is negative")]
    Negative { eigenvalue: f64 },
    #[error("expected a 4x4 two-qubit state, got {0}x{0}")]
    NotTwoQubit(usize),
    #[error("spin-flip operator has eigenvalue {0:e}; input is not a valid state")]
    SpinFlip(f64),
    #[error(transparent)]
    Linops(#[from] LinopsError),
}

fn clamp_small(x: f64) -> f64 {
    if x.abs() <= tolerances::CLAMP_ZERO {
        0.0
    } else {
        x
    }
}

fn entropy_of_spectrum(values: impl IntoIterator<Item = f64>) -> f64 {
    values
        .into_iter()
        .filter(|&x| x > tolerances::ENTROPY_CLAMP)
        .map(|x| -x * x.log2())
        .sum()
}

fn check_density(rho: &ComplexMatrix) -> Result<Vec<f64>, CorrelationError> {
    let values = hermitian_eig(rho)?.values;
    let trace: f64 = rho.trace().re;
    if (trace - 1.0).abs() > tolerances::UNIT_TRACE {
        return Err(CorrelationError::Trace { trace });
    }
    let lowest = values.last().copied().unwrap_or(0.0);
    if lowest < -tolerances::POSITIVITY {
        return Err(CorrelationError::Negative { eigenvalue: lowest });
    }
    Ok(values)
}

fn check_two_qubit(rho: &ComplexMatrix) -> Result<(), CorrelationError> {
    if rho.dim() == 4 {
        Ok(())
    } else {
        Err(CorrelationError::NotTwoQubit(rho.dim()))
    }
}

/// Von Neumann entropy `-tr(rho log2 rho)` of a unit-trace state.
pub fn entropy(rho: &ComplexMatrix) -> Result<f64, CorrelationError> {
    Ok(entropy_of_spectrum(check_density(rho)?))
}

/// `S(rho_a) + S(rho_b) - S(rho_ab)`.
pub fn mutual_information(rho_ab: &ComplexMatrix) -> Result<f64, CorrelationError> {
    check_two_qubit(rho_ab)?;
    let s_a = entropy(&rho_ab.partial_trace(Subsystem::A)?)?;
    let s_b = entropy(&rho_ab.partial_trace(Subsystem::B)?)?;
    Ok(s_a + s_b - entropy(rho_ab)?)
}

// Unnormalised conditional states sigma_i = <i|_b rho |i>_b on subsystem a,
// one per basis vector, as (a00, a01, a11).
fn conditional_blocks(rho: &ComplexMatrix, basis: &MeasurementBasis) -> [(f64, C64, f64); 2] {
    basis.vectors().map(|v| {
        let element = |r: usize, c: usize| -> C64 {
            let mut acc = C64::new(0.0, 0.0);
            for (b, vb) in v.iter().enumerate() {
                for (bp, vbp) in v.iter().enumerate() {
                    acc += vb.conj() * rho[(2 * r + b, 2 * c + bp)] * vbp;
                }
            }
            acc
        };
        (element(0, 0).re, element(0, 1), element(1, 1).re)
    })
}

/// `sum_i p_i S(rho^i)` after measuring `b` in `basis`.
///
/// The post-measurement state is `sigma_i / p_i ⊗ |i><i|`, so each branch
/// entropy is that of the 2x2 block `sigma_i / p_i`.
pub fn measured_conditional_entropy(rho_ab: &ComplexMatrix, basis: &MeasurementBasis) -> f64 {
    conditional_blocks(rho_ab, basis)
        .into_iter()
        .map(|(a, b, d)| {
            let p = a + d;
            if p < tolerances::MIN_OUTCOME_PROBABILITY {
                return 0.0;
            }
            p * entropy_of_spectrum(hermitian_eigvals_2x2(a / p, b / p, d / p))
        })
        .sum()
}

/// Entropy of `sum_i (I ⊗ B_i) rho (I ⊗ B_i)`: block diagonal with blocks
/// `sigma_i`.
pub fn dephased_entropy(rho_ab: &ComplexMatrix, basis: &MeasurementBasis) -> f64 {
    conditional_blocks(rho_ab, basis)
        .into_iter()
        .map(|(a, b, d)| entropy_of_spectrum(hermitian_eigvals_2x2(a, b, d)))
        .sum()
}

/// A measure that needed a basis search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimized {
    pub value: f64,
    pub optimization: OptimizationResult,
}

impl Minimized {
    pub fn converged(&self) -> bool {
        self.optimization.converged
    }
}

/// `I(rho) - [S(rho_a) - min_B sum_i p_i S(rho^i)]`, measuring `b`.
pub fn quantum_discord(rho_ab: &ComplexMatrix) -> Result<Minimized, CorrelationError> {
    check_two_qubit(rho_ab)?;
    let s_a = entropy(&rho_ab.partial_trace(Subsystem::A)?)?;
    let mutual = mutual_information(rho_ab)?;
    let optimization = minimize_over_bases(|b| measured_conditional_entropy(rho_ab, b));
    let classical = s_a - optimization.value;
    Ok(Minimized {
        value: clamp_small(mutual - classical),
        optimization,
    })
}

/// One-sided work deficit: `min_B S(dephased_b rho) - S(rho)`.
pub fn work_deficit(rho_ab: &ComplexMatrix) -> Result<Minimized, CorrelationError> {
    check_two_qubit(rho_ab)?;
    let s = entropy(rho_ab)?;
    let optimization = minimize_over_bases(|b| dephased_entropy(rho_ab, b));
    Ok(Minimized {
        value: clamp_small(optimization.value - s),
        optimization,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mid {
    pub value: f64,
    /// A marginal was degenerate and its computational basis was used instead.
    pub degenerate: bool,
}

fn marginal_projectors(marginal: &ComplexMatrix) -> Result<([ComplexMatrix; 2], bool), CorrelationError> {
    let eig = hermitian_eig(marginal)?;
    if eig.values[0] - eig.values[1] < tolerances::MID_DEGENERACY {
        let p0 = ComplexMatrix::from_diagonal(&[1.0, 0.0])?;
        let p1 = ComplexMatrix::from_diagonal(&[0.0, 1.0])?;
        Ok(([p0, p1], true))
    } else {
        Ok(([eig.projector(0), eig.projector(1)], false))
    }
}

/// Measurement-induced disturbance `I(rho) - I(rho_class)` with `rho_class`
/// the state dephased in the product of the marginal eigenbases.
pub fn mid(rho_ab: &ComplexMatrix) -> Result<Mid, CorrelationError> {
    check_two_qubit(rho_ab)?;
    let (proj_a, degenerate_a) = marginal_projectors(&rho_ab.partial_trace(Subsystem::A)?)?;
    let (proj_b, degenerate_b) = marginal_projectors(&rho_ab.partial_trace(Subsystem::B)?)?;

    let mut classical = ComplexMatrix::zeros(4);
    for pa in &proj_a {
        for pb in &proj_b {
            let p = pa.kron(pb)?;
            classical = classical + p * *rho_ab * p;
        }
    }
    let value = mutual_information(rho_ab)? - mutual_information(&classical.hermitian_part())?;
    Ok(Mid {
        value: clamp_small(value),
        degenerate: degenerate_a || degenerate_b,
    })
}

/// Wootters concurrence `max(0, l1 - l2 - l3 - l4)`, with `l_i` the
/// descending square roots of the spectrum of `rho (Y⊗Y) rho* (Y⊗Y)`.
///
/// That spectrum is computed as the spectrum of the Hermitian matrix
/// `sqrt(rho) rho~ sqrt(rho)`, which shares it.
pub fn concurrence(rho_ab: &ComplexMatrix) -> Result<f64, CorrelationError> {
    check_two_qubit(rho_ab)?;
    check_density(rho_ab)?;
    let yy = sigma_y().kron(&sigma_y())?;
    let flipped = yy * rho_ab.conj() * yy;
    let root = hermitian_eig(rho_ab)?.map_spectrum(|x| x.max(0.0).sqrt());
    let spin_flip = (root * flipped * root).hermitian_part();

    let mut lambdas = Vec::with_capacity(4);
    for value in hermitian_eig(&spin_flip)?.values {
        if value < tolerances::CONCURRENCE_REJECT {
            return Err(CorrelationError::SpinFlip(value));
        }
        lambdas.push(if value < 0.0 { 0.0 } else { value.sqrt() });
    }
    let c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    Ok(c.clamp(0.0, 1.0))
}

/// Every measure for one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Correlations {
    pub concurrence: f64,
    pub mid: f64,
    pub discord: f64,
    pub work_deficit: f64,
    pub mid_degenerate: bool,
    pub optimizer_converged: bool,
}

pub fn measure_all(rho_ab: &ComplexMatrix) -> Result<Correlations, CorrelationError> {
    let discord = quantum_discord(rho_ab)?;
    let deficit = work_deficit(rho_ab)?;
    let mid = mid(rho_ab)?;
    Ok(Correlations {
        concurrence: concurrence(rho_ab)?,
        mid: mid.value,
        discord: discord.value,
        work_deficit: deficit.value,
        mid_degenerate: mid.degenerate,
        optimizer_converged: discord.converged() && deficit.converged(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn bell() -> ComplexMatrix {
        let s = 0.5f64.sqrt();
        ComplexMatrix::outer(&[c(s), c(0.0), c(0.0), c(s)]).unwrap()
    }

    fn werner(p: f64) -> ComplexMatrix {
        bell().scale_real(p) + ComplexMatrix::identity(4).scale_real((1.0 - p) / 4.0)
    }

    fn diag(d: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_diagonal(d).unwrap()
    }

    #[test]
    fn entropy_examples() {
        assert!(entropy(&bell()).unwrap().abs() < 1e-12);
        assert!((entropy(&ComplexMatrix::identity(4).scale_real(0.25)).unwrap() - 2.0).abs() < 1e-12);
        assert!((entropy(&diag(&[0.5, 0.5, 0.0, 0.0])).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_rejects_bad_input() {
        assert!(matches!(
            entropy(&diag(&[0.6, 0.6])),
            Err(CorrelationError::Trace { .. })
        ));
        assert!(matches!(
            entropy(&diag(&[1.1, -0.1])),
            Err(CorrelationError::Negative { .. })
        ));
        let skew = ComplexMatrix::from_real(2, &[0.5, 0.2, 0.0, 0.5]).unwrap();
        assert!(matches!(entropy(&skew), Err(CorrelationError::Linops(_))));
    }

    #[test]
    fn mutual_information_examples() {
        let product = diag(&[0.75, 0.25]).kron(&diag(&[0.4, 0.6])).unwrap();
        assert!(mutual_information(&product).unwrap().abs() < 1e-12);
        assert!((mutual_information(&bell()).unwrap() - 2.0).abs() < 1e-12);
        assert!((mutual_information(&diag(&[0.5, 0.0, 0.0, 0.5])).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conditional_entropy_examples() {
        for k in 0..10 {
            let basis = MeasurementBasis::new(0.3 * k as f64, 0.7 * k as f64);
            assert!(measured_conditional_entropy(&bell(), &basis).abs() < 1e-12);
            let mixed = ComplexMatrix::identity(4).scale_real(0.25);
            assert!((measured_conditional_entropy(&mixed, &basis) - 1.0).abs() < 1e-12);
        }
        let classical = diag(&[0.5, 0.0, 0.0, 0.5]);
        assert!(measured_conditional_entropy(&classical, &MeasurementBasis::computational()).abs() < 1e-12);
    }

    #[test]
    fn discord_examples() {
        assert!(quantum_discord(&diag(&[0.5, 0.0, 0.0, 0.5])).unwrap().value.abs() < 1e-9);
        assert!((quantum_discord(&bell()).unwrap().value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn mid_examples() {
        let m = mid(&diag(&[0.75, 0.0, 0.0, 0.25])).unwrap();
        assert_eq!(m.value, 0.0);
        assert!(!m.degenerate);

        let m = mid(&bell()).unwrap();
        assert!((m.value - 1.0).abs() < 1e-12);
        assert!(m.degenerate);

        let product = diag(&[0.7, 0.3]).kron(&diag(&[0.2, 0.8])).unwrap();
        assert_eq!(mid(&product).unwrap().value, 0.0);
    }

    #[test]
    fn work_deficit_examples() {
        assert!((work_deficit(&bell()).unwrap().value - 1.0).abs() < 1e-9);
        assert_eq!(
            work_deficit(&ComplexMatrix::identity(4).scale_real(0.25))
                .unwrap()
                .value,
            0.0
        );
        // |+>|->: pure product, dephasing b in its own basis costs nothing
        let s = 0.5f64.sqrt();
        let plus = ComplexMatrix::outer(&[c(s), c(s)]).unwrap();
        let minus = ComplexMatrix::outer(&[c(s), c(-s)]).unwrap();
        let wd = work_deficit(&plus.kron(&minus).unwrap()).unwrap();
        assert!(wd.value.abs() < 1e-6, "{}", wd.value);
    }

    #[test]
    fn concurrence_examples() {
        assert!((concurrence(&bell()).unwrap() - 1.0).abs() < 1e-12);
        let product = diag(&[0.7, 0.3]).kron(&diag(&[0.2, 0.8])).unwrap();
        assert_eq!(concurrence(&product).unwrap(), 0.0);
        for (p, want) in [(0.2, 0.0), (1.0 / 3.0, 0.0), (0.5, 0.25), (0.8, 0.7)] {
            let got = concurrence(&werner(p)).unwrap();
            assert!((got - want).abs() < 1e-9, "p = {p}: {got} vs {want}");
        }
    }

    #[test]
    fn concurrence_rejects_non_state() {
        assert!(concurrence(&diag(&[1.2, -0.2, 0.0, 0.0])).is_err());
        assert!(matches!(
            concurrence(&diag(&[0.5, 0.5])),
            Err(CorrelationError::NotTwoQubit(2))
        ));
    }

    #[test]
    fn measure_all_on_bell() {
        let all = measure_all(&bell()).unwrap();
        for v in [all.concurrence, all.mid, all.discord, all.work_deficit] {
            assert!((v - 1.0).abs() < 1e-9);
        }
        assert!(all.mid_degenerate);
        assert!(all.optimizer_converged);
    }
}
