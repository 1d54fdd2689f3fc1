//! Two-mode single-photon state read off the atomic density matrix.
//!
//! Levels embed into the photon-number basis `|00>, |01>, |10>, |11>` as
//! `|1> -> |00>`, `|2> -> |01>`, `|3> -> |11>`, leaving `|10>` empty, so every
//! mapped state has rank at most three. The embedded matrix is divided by its
//! trace; the trace itself is kept as [`TwoPhotonState::survival`].

use thiserror::Error;

use crate::atom::AtomicState;
use crate::linops::ComplexMatrix;
use crate::tolerances;

/// Photon-basis index of each atomic level (0-based level order).
pub const LEVEL_TO_PHOTON: [usize; 3] = [0, 1, 3];

/// Index of the basis state `|10>` that no level maps to.
pub const EMPTY_INDEX: usize = 2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PhotonError {
    #[error("atomic trace {0:e} is too small to normalise (state fully decayed)")]
    Decayed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPhotonState {
    pub rho: ComplexMatrix,
    /// Trace of the atomic state before normalisation.
    pub survival: f64,
}

/// Copies `rho_A` into the 4x4 photon space without normalising.
pub fn embed(rho_a: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(4);
    for (i, &pi) in LEVEL_TO_PHOTON.iter().enumerate() {
        for (j, &pj) in LEVEL_TO_PHOTON.iter().enumerate() {
            out[(pi, pj)] = rho_a[(i, j)];
        }
    }
    out
}

pub fn atomic_to_photon(state: &AtomicState) -> Result<TwoPhotonState, PhotonError> {
    let survival = state.trace();
    if survival.is_nan() || survival <= tolerances::MIN_SURVIVAL {
        return Err(PhotonError::Decayed(survival));
    }
    Ok(TwoPhotonState {
        rho: embed(&state.rho).scale_real(1.0 / survival),
        survival,
    })
}

impl TwoPhotonState {
    /// Diagonal in the order `|00>, |01>, |10>, |11>`.
    pub fn populations(&self) -> [f64; 4] {
        [0, 1, 2, 3].map(|i| self.rho[(i, i)].re)
    }

    /// `tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        self.rho.trace_of_square()
    }
}

pub fn populations(state: &TwoPhotonState) -> [f64; 4] {
    state.populations()
}

pub fn purity(state: &TwoPhotonState) -> f64 {
    state.purity()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linops::C64;

    fn atomic(entries: [[f64; 3]; 3]) -> AtomicState {
        AtomicState {
            rho: ComplexMatrix::from_fn(3, |i, j| C64::new(entries[i][j], 0.0)),
        }
    }

    #[test]
    fn ground_maps_to_vacuum() {
        let ph = atomic_to_photon(&AtomicState::ground()).unwrap();
        assert_eq!(ph.rho, ComplexMatrix::from_diagonal(&[1.0, 0.0, 0.0, 0.0]).unwrap());
        assert_eq!(ph.survival, 1.0);
        assert_eq!(ph.populations(), [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(ph.purity(), 1.0);
    }

    #[test]
    fn ground_top_coherence_maps_to_bell() {
        let ph = atomic_to_photon(&atomic([[0.5, 0.0, 0.5], [0.0, 0.0, 0.0], [0.5, 0.0, 0.5]])).unwrap();
        let s = 0.5f64.sqrt();
        let bell = ComplexMatrix::outer(&[
            C64::new(s, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(s, 0.0),
        ])
        .unwrap();
        assert!(ph.rho.max_abs_diff(&bell).unwrap() < 1e-15);
        assert_eq!(ph.populations(), [0.5, 0.0, 0.0, 0.5]);
        assert!((ph.purity() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn decayed_diagonal_is_renormalised() {
        let ph = atomic_to_photon(&atomic([[0.4, 0.0, 0.0], [0.0, 0.3, 0.0], [0.0, 0.0, 0.1]])).unwrap();
        let p = ph.populations();
        for (got, want) in p.iter().zip([0.5, 0.375, 0.0, 0.125]) {
            assert!((got - want).abs() < 1e-15);
        }
        assert!((ph.survival - 0.8).abs() < 1e-15);
        assert!((ph.purity() - 0.40625).abs() < 1e-15);
    }

    #[test]
    fn maximally_mixed_on_support() {
        let third = 1.0 / 3.0;
        let ph = atomic_to_photon(&atomic([[third, 0.0, 0.0], [0.0, third, 0.0], [0.0, 0.0, third]])).unwrap();
        assert!((ph.purity() - third).abs() < 1e-15);
        assert_eq!(ph.populations()[EMPTY_INDEX], 0.0);
    }

    #[test]
    fn rejects_decayed_state() {
        let err = atomic_to_photon(&AtomicState {
            rho: ComplexMatrix::zeros(3),
        });
        assert_eq!(err, Err(PhotonError::Decayed(0.0)));
    }
}
