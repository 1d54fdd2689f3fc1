//! Minimisation of a scalar objective over one-qubit measurement bases.
//!
//! A coarse `theta x phi` grid picks the starting point, then a Nelder-Mead
//! simplex polishes it. The simplex never discards its best vertex, so the
//! refined value is never worse than the best grid value.

use std::f64::consts::{PI, TAU};

use super::basis::MeasurementBasis;
use crate::tolerances;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizationResult {
    pub value: f64,
    pub argmin: MeasurementBasis,
    /// Best value on the coarse grid, before refinement.
    pub grid_value: f64,
    /// False if the simplex was still spread by more than
    /// [`tolerances::SIMPLEX_NONCONVERGENCE`] when the iteration budget ran out.
    pub converged: bool,
    pub iterations: usize,
}

/// Grid angles used by [`minimize_over_bases`]: `theta` spans `[0, pi]`
/// inclusive, `phi` spans `[0, 2 pi)`.
pub fn grid_angles(points: usize) -> (Vec<f64>, Vec<f64>) {
    let thetas = (0..points).map(|i| PI * i as f64 / (points - 1) as f64).collect();
    let phis = (0..points).map(|j| TAU * j as f64 / points as f64).collect();
    (thetas, phis)
}

pub fn minimize_over_bases(objective: impl Fn(&MeasurementBasis) -> f64) -> OptimizationResult {
    let n = tolerances::GRID_POINTS;
    let (thetas, phis) = grid_angles(n);

    let mut best = (f64::INFINITY, 0.0, 0.0);
    for &theta in &thetas {
        for &phi in &phis {
            let value = objective(&MeasurementBasis::new(theta, phi));
            if value < best.0 {
                best = (value, theta, phi);
            }
        }
    }
    let grid_value = best.0;

    let f = |p: [f64; 2]| objective(&MeasurementBasis::new(p[0], p[1]));
    let step = [PI / (n - 1) as f64, TAU / n as f64];
    let start = [best.1, best.2];
    let mut simplex = [
        (grid_value, start),
        {
            let p = [start[0] + step[0], start[1]];
            (f(p), p)
        },
        {
            let p = [start[0], start[1] + step[1]];
            (f(p), p)
        },
    ];

    let mut iterations = 0;
    let mut converged = false;
    while iterations < tolerances::SIMPLEX_MAX_ITERATIONS {
        simplex.sort_by(|a, b| a.0.total_cmp(&b.0));
        if simplex[2].0 - simplex[0].0 < tolerances::SIMPLEX_IMPROVEMENT {
            converged = true;
            break;
        }
        iterations += 1;
        nelder_mead_step(&mut simplex, &f);
    }
    simplex.sort_by(|a, b| a.0.total_cmp(&b.0));
    if !converged {
        converged = simplex[2].0 - simplex[0].0 <= tolerances::SIMPLEX_NONCONVERGENCE;
    }

    let (value, point) = simplex[0];
    OptimizationResult {
        value,
        argmin: MeasurementBasis::new(point[0], point[1]),
        grid_value,
        converged,
        iterations,
    }
}

type Vertex = (f64, [f64; 2]);

fn lerp(from: [f64; 2], to: [f64; 2], t: f64) -> [f64; 2] {
    [from[0] + t * (to[0] - from[0]), from[1] + t * (to[1] - from[1])]
}

// One reflection/expansion/contraction/shrink move on a sorted simplex.
fn nelder_mead_step(simplex: &mut [Vertex; 3], f: &impl Fn([f64; 2]) -> f64) {
    let centroid = lerp(simplex[0].1, simplex[1].1, 0.5);
    let worst = simplex[2];

    let reflected = lerp(worst.1, centroid, 2.0);
    let f_reflected = f(reflected);

    if f_reflected < simplex[0].0 {
        let expanded = lerp(worst.1, centroid, 3.0);
        let f_expanded = f(expanded);
        simplex[2] = if f_expanded < f_reflected {
            (f_expanded, expanded)
        } else {
            (f_reflected, reflected)
        };
        return;
    }
    if f_reflected < simplex[1].0 {
        simplex[2] = (f_reflected, reflected);
        return;
    }

    let (contracted, f_contracted) = if f_reflected < worst.0 {
        let p = lerp(centroid, reflected, 0.5);
        (p, f(p))
    } else {
        let p = lerp(centroid, worst.1, 0.5);
        (p, f(p))
    };
    if f_contracted < worst.0.min(f_reflected) {
        simplex[2] = (f_contracted, contracted);
        return;
    }

    let best = simplex[0].1;
    for vertex in simplex.iter_mut().skip(1) {
        let p = lerp(best, vertex.1, 0.5);
        *vertex = (f(p), p);
    }
}
