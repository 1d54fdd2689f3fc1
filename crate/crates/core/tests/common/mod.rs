//! Test-only state generators and brute-force oracles.
//!
//! The oracles here go through full 4x4 projector algebra and the Jacobi
//! eigensolver, never through the reduced 2x2 formulas the library uses.

#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use tricorr::correlations::{entropy, projectors, MeasurementBasis};
use tricorr::linops::{ComplexMatrix, Subsystem, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Hilbert-Schmidt-style random state: `G G^H / tr` with `G` a `dim x rank`
/// complex Gaussian matrix.
pub fn random_density(rng: &mut impl Rng, dim: usize, rank: usize) -> ComplexMatrix {
    let g: Vec<Vec<C64>> = (0..dim).map(|_| (0..rank).map(|_| gaussian(rng)).collect()).collect();
    let m = ComplexMatrix::from_fn(dim, |i, j| (0..rank).map(|k| g[i][k] * g[j][k].conj()).sum());
    m.scale_real(1.0 / m.trace().re).hermitian_part()
}

pub fn random_pure(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    random_density(rng, dim, 1)
}

/// Haar-ish random unitary by Gram-Schmidt on Gaussian columns.
pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::new();
    while cols.len() < dim {
        let mut v: Vec<C64> = (0..dim).map(|_| gaussian(rng)).collect();
        for u in &cols {
            let overlap: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= overlap * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    ComplexMatrix::from_fn(dim, |i, j| cols[j][i])
}

/// Random state diagonal in a random product basis (zero quantum correlations).
pub fn random_classical(rng: &mut impl Rng) -> ComplexMatrix {
    let ua = random_unitary(rng, 2);
    let ub = random_unitary(rng, 2);
    let u = ua.kron(&ub).unwrap();
    let weights: Vec<f64> = (0..4).map(|_| rng.random::<f64>()).collect();
    let total: f64 = weights.iter().sum();
    let d = ComplexMatrix::from_diagonal(&weights.iter().map(|w| w / total).collect::<Vec<_>>()).unwrap();
    (u * d * u.adjoint()).hermitian_part()
}

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn bell() -> ComplexMatrix {
    let s = 0.5f64.sqrt();
    ComplexMatrix::outer(&[c(s), c(0.0), c(0.0), c(s)]).unwrap()
}

pub fn werner(p: f64) -> ComplexMatrix {
    bell().scale_real(p) + ComplexMatrix::identity(4).scale_real((1.0 - p) / 4.0)
}

fn branch(rho: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let p = ComplexMatrix::identity(2).kron(b).unwrap();
    p * *rho * p
}

/// `sum_i p_i S(rho^i)` with `rho^i = (I⊗B_i) rho (I⊗B_i) / p_i`, all 4x4.
pub fn conditional_entropy_4x4(rho: &ComplexMatrix, basis: &MeasurementBasis) -> f64 {
    let (b1, b2) = projectors(basis);
    [b1, b2]
        .iter()
        .map(|b| {
            let m = branch(rho, b);
            let p = m.trace().re;
            if p < 1e-12 {
                0.0
            } else {
                p * entropy(&m.scale_real(1.0 / p).hermitian_part()).unwrap()
            }
        })
        .sum()
}

/// `S(sum_i (I⊗B_i) rho (I⊗B_i))`, all 4x4.
pub fn dephased_entropy_4x4(rho: &ComplexMatrix, basis: &MeasurementBasis) -> f64 {
    let (b1, b2) = projectors(basis);
    entropy(&(branch(rho, &b1) + branch(rho, &b2)).hermitian_part()).unwrap()
}

/// Plain `n x n` grid minimum over `theta in [0, pi]`, `phi in [0, 2 pi)`.
pub fn grid_min(f: &impl Fn(&MeasurementBasis) -> f64, n: usize) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..n {
        for j in 0..n {
            let basis = MeasurementBasis::new(PI * i as f64 / (n - 1) as f64, TAU * j as f64 / n as f64);
            best = best.min(f(&basis));
        }
    }
    best
}

/// Two-level brute force: an `n x n` grid, then an `n x n` grid spanning the
/// two neighbouring cells around each of the best `keep` coarse nodes.
pub fn nested_grid_min(f: &impl Fn(&MeasurementBasis) -> f64, n: usize, keep: usize) -> f64 {
    let (dt, dp) = (PI / (n - 1) as f64, TAU / n as f64);
    let mut nodes = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (t, p) = (i as f64 * dt, j as f64 * dp);
            nodes.push((f(&MeasurementBasis::new(t, p)), t, p));
        }
    }
    nodes.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best = nodes[0].0;
    for &(_, t0, p0) in nodes.iter().take(keep) {
        for i in 0..n {
            for j in 0..n {
                let t = t0 - dt + 2.0 * dt * i as f64 / (n - 1) as f64;
                let p = p0 - dp + 2.0 * dp * j as f64 / (n - 1) as f64;
                best = best.min(f(&MeasurementBasis::new(t, p)));
            }
        }
    }
    best
}

/// Discord from the 4x4 route and a given conditional-entropy minimum.
pub fn discord_from_min(rho: &ComplexMatrix, min_conditional: f64) -> f64 {
    let s_a = entropy(&rho.partial_trace(Subsystem::A).unwrap()).unwrap();
    let s_b = entropy(&rho.partial_trace(Subsystem::B).unwrap()).unwrap();
    let s = entropy(rho).unwrap();
    (s_a + s_b - s) - (s_a - min_conditional)
}
