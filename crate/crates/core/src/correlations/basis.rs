use std::f64::consts::{PI, TAU};

use crate::linops::{ComplexMatrix, C64};

/// One-qubit orthonormal measurement basis on the Bloch sphere.
///
/// `|i1> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>` and its antipode
/// `|i2> = e^{-i phi} sin(theta/2)|0> - cos(theta/2)|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementBasis {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementBasis {
    /// Any real angles are accepted; the result is folded into
    /// `theta in [0, pi]`, `phi in [0, 2 pi)` describing the same projectors.
    pub fn new(theta: f64, phi: f64) -> Self {
        let mut theta = theta.rem_euclid(TAU);
        let mut phi = phi;
        if theta > PI {
            theta = TAU - theta;
            phi += PI;
        }
        Self {
            theta,
            phi: phi.rem_euclid(TAU),
        }
    }

    pub fn computational() -> Self {
        Self { theta: 0.0, phi: 0.0 }
    }

    /// `[|i1>, |i2>]` as coefficient pairs in the `|0>, |1>` basis.
    pub fn vectors(&self) -> [[C64; 2]; 2] {
        let (s, c) = (0.5 * self.theta).sin_cos();
        let phase = C64::from_polar(1.0, self.phi);
        [[C64::new(c, 0.0), phase * s], [phase.conj() * s, C64::new(-c, 0.0)]]
    }
}

/// `(B1, B2) = (|i1><i1|, |i2><i2|)`.
pub fn projectors(basis: &MeasurementBasis) -> (ComplexMatrix, ComplexMatrix) {
    let [v1, v2] = basis.vectors();
    (
        ComplexMatrix::outer(&v1).expect("2x2"),
        ComplexMatrix::outer(&v2).expect("2x2"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn computational_basis() {
        let (b1, b2) = projectors(&MeasurementBasis::computational());
        assert_eq!(b1, ComplexMatrix::from_diagonal(&[1.0, 0.0]).unwrap());
        assert_eq!(b2, ComplexMatrix::from_diagonal(&[0.0, 1.0]).unwrap());
    }

    #[test]
    fn hadamard_basis() {
        let (b1, b2) = projectors(&MeasurementBasis::new(PI / 2.0, 0.0));
        let plus = ComplexMatrix::from_real(2, &[0.5, 0.5, 0.5, 0.5]).unwrap();
        let minus = ComplexMatrix::from_real(2, &[0.5, -0.5, -0.5, 0.5]).unwrap();
        assert!(b1.max_abs_diff(&plus).unwrap() < 1e-15);
        assert!(b2.max_abs_diff(&minus).unwrap() < 1e-15);
    }

    #[test]
    fn complete_and_orthogonal() {
        let id = ComplexMatrix::identity(2);
        let zero = ComplexMatrix::zeros(2);
        for k in 0..50 {
            let basis = MeasurementBasis::new(0.37 * k as f64, 1.3 * k as f64 - 4.0);
            let (b1, b2) = projectors(&basis);
            assert!((b1 + b2).max_abs_diff(&id).unwrap() < 1e-12);
            assert!((b1 * b2).max_abs_diff(&zero).unwrap() < 1e-12);
            assert!((b1 * b1).max_abs_diff(&b1).unwrap() < 1e-12);
        }
    }

    #[test]
    fn folding_keeps_projectors() {
        let raw = MeasurementBasis { theta: 4.0, phi: -1.0 };
        let folded = MeasurementBasis::new(4.0, -1.0);
        assert!((0.0..=PI).contains(&folded.theta));
        assert!((0.0..TAU).contains(&folded.phi));
        let (a, _) = projectors(&raw);
        let (b, _) = projectors(&folded);
        assert!(a.max_abs_diff(&b).unwrap() < 1e-12);
    }
}
