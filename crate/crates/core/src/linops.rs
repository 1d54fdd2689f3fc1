//! Dense complex matrices of dimension 2, 3 and 4.
//!
//! Everything the simulation touches is at most 4x4 (a qutrit atom, a pair of
//! photonic qubits), so a matrix is a fixed `[C64; 16]` buffer plus its
//! dimension. Values are `Copy` and every operation is a pure function.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use thiserror::Error;

use crate::tolerances;

pub type C64 = Complex64;

const MAX_DIM: usize = 4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinopsError {
    #[error("unsupported matrix dimension {0} (expected 2, 3 or 4)")]
    UnsupportedDimension(usize),
    #[error("expected {expected} entries for a {dim}x{dim} matrix, got {got}")]
    EntryCount { dim: usize, expected: usize, got: usize },
    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("Kronecker product would have dimension {0} > 4")]
    KronTooLarge(usize),
    #[error("matrix is not Hermitian: max |M - M^H| entry is {max_asymmetry:e}")]
    NotHermitian { max_asymmetry: f64 },
}

/// Which factor of a two-qubit system to keep in a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Square complex matrix of dimension 2, 3 or 4, row-major.
#[derive(Clone, Copy, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: [C64; MAX_DIM * MAX_DIM],
}

fn check_dim(dim: usize) -> Result<(), LinopsError> {
    if (2..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(LinopsError::UnsupportedDimension(dim))
    }
}

impl ComplexMatrix {
    /// Zero matrix. Panics if `dim` is not 2, 3 or 4.
    pub fn zeros(dim: usize) -> Self {
        check_dim(dim).expect("ComplexMatrix::zeros");
        Self {
            dim,
            data: [C64::new(0.0, 0.0); MAX_DIM * MAX_DIM],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from `dim * dim` row-major entries.
    pub fn new(dim: usize, entries: &[C64]) -> Result<Self, LinopsError> {
        check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(LinopsError::EntryCount {
                dim,
                expected: dim * dim,
                got: entries.len(),
            });
        }
        let mut m = Self::zeros(dim);
        for (k, &z) in entries.iter().enumerate() {
            m[(k / dim, k % dim)] = z;
        }
        Ok(m)
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self, LinopsError> {
        let complex: Vec<C64> = entries.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::new(dim, &complex)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Diagonal matrix with real entries; the dimension is `diagonal.len()`.
    pub fn from_diagonal(diagonal: &[f64]) -> Result<Self, LinopsError> {
        check_dim(diagonal.len())?;
        let mut m = Self::zeros(diagonal.len());
        for (i, &x) in diagonal.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        Ok(m)
    }

    /// Projector `|v><v|` onto the (not necessarily normalised) vector `v`.
    pub fn outer(v: &[C64]) -> Result<Self, LinopsError> {
        check_dim(v.len())?;
        Ok(Self::from_fn(v.len(), |i, j| v[i] * v[j].conj()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(i, j)].conj())
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self::from_fn(self.dim, |i, j| self[(i, j)] * factor)
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        Self::from_fn(self.dim, |i, j| self[(i, j)] * factor)
    }

    fn same_dim(&self, other: &Self) -> Result<(), LinopsError> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(LinopsError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, LinopsError> {
        self.same_dim(other)?;
        let n = self.dim;
        Ok(Self::from_fn(n, |i, j| {
            (0..n).map(|k| self[(i, k)] * other[(k, j)]).sum()
        }))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LinopsError> {
        self.same_dim(other)?;
        Ok(Self::from_fn(self.dim, |i, j| self[(i, j)] + other[(i, j)]))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LinopsError> {
        self.same_dim(other)?;
        Ok(Self::from_fn(self.dim, |i, j| self[(i, j)] - other[(i, j)]))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, LinopsError> {
        self.same_dim(other)?;
        Ok(self
            .entries()
            .zip(other.entries())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn frobenius_distance(&self, other: &Self) -> Result<f64, LinopsError> {
        self.same_dim(other)?;
        Ok(self
            .entries()
            .zip(other.entries())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry of `|M - M^H|`.
    pub fn max_asymmetry(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `(M + M^H) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    /// `tr(M^2)`, real part. Equals the purity for density matrices.
    pub fn trace_of_square(&self) -> f64 {
        let n = self.dim;
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            for k in 0..n {
                acc += self[(i, k)] * self[(k, i)];
            }
        }
        acc.re
    }

    /// Row-major iterator over the `dim * dim` live entries.
    pub fn entries(&self) -> impl Iterator<Item = C64> + '_ {
        let n = self.dim;
        (0..n * n).map(move |k| self[(k / n, k % n)])
    }

    /// Kronecker product. Only 2x2 ⊗ 2x2 fits within the supported dimensions.
    pub fn kron(&self, other: &Self) -> Result<Self, LinopsError> {
        let dim = self.dim * other.dim;
        if dim > MAX_DIM {
            return Err(LinopsError::KronTooLarge(dim));
        }
        let m = other.dim;
        Ok(Self::from_fn(dim, |i, j| self[(i / m, j / m)] * other[(i % m, j % m)]))
    }

    /// Reduces a 4x4 two-qubit operator to the 2x2 operator on `keep`.
    pub fn partial_trace(&self, keep: Subsystem) -> Result<Self, LinopsError> {
        if self.dim != 4 {
            return Err(LinopsError::DimensionMismatch {
                left: self.dim,
                right: 4,
            });
        }
        Ok(Self::from_fn(2, |r, c| match keep {
            Subsystem::A => self[(2 * r, 2 * c)] + self[(2 * r + 1, 2 * c + 1)],
            Subsystem::B => self[(r, c)] + self[(2 + r, 2 + c)],
        }))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.dim && j < self.dim);
        &self.data[i * MAX_DIM + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.dim && j < self.dim);
        &mut self.data[i * MAX_DIM + j]
    }
}

// Operator forms panic on dimension mismatch; use `matmul`/`try_add` for the
// checked versions.
impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: Self) -> Self {
        self.matmul(&rhs).expect("matrix product")
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("matrix sum")
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: Self) -> Self {
        self.try_sub(&rhs).expect("matrix difference")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Eigenvalues (descending) and orthonormal eigenvectors (as columns).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        (0..self.vectors.dim()).map(|i| self.vectors[(i, k)]).collect()
    }

    /// `|v_k><v_k|`.
    pub fn projector(&self, k: usize) -> ComplexMatrix {
        ComplexMatrix::outer(&self.vector(k)).expect("eigenvector dimension")
    }

    /// `sum_k f(lambda_k) |v_k><v_k|`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.vectors.dim();
        let mut acc = ComplexMatrix::zeros(n);
        for (k, &lambda) in self.values.iter().enumerate() {
            acc = acc + self.projector(k).scale_real(f(lambda));
        }
        acc
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|x| x)
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Eigenvalues come back sorted descending. Each eigenvector is phase-fixed
/// so that its first non-negligible component is real and positive; vectors
/// within a degenerate cluster are ordered by the index of that component.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<EigenDecomposition, LinopsError> {
    let max_asymmetry = m.max_asymmetry();
    if max_asymmetry > tolerances::HERMITIAN {
        return Err(LinopsError::NotHermitian { max_asymmetry });
    }
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = tolerances::JACOBI_OFF_DIAGONAL * a.frobenius_norm().max(1.0);

    for _ in 0..tolerances::JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<(f64, Vec<C64>)> = (0..n)
        .map(|k| {
            let column: Vec<C64> = (0..n).map(|i| v[(i, k)]).collect();
            (a[(k, k)].re, fix_phase(column))
        })
        .collect();
    order.sort_by(|(la, va), (lb, vb)| {
        if (la - lb).abs() <= tolerances::EIGEN_CLUSTER {
            leading_index(va).cmp(&leading_index(vb))
        } else {
            lb.partial_cmp(la).expect("finite eigenvalues")
        }
    });

    let values = order.iter().map(|(l, _)| *l).collect();
    let vectors = ComplexMatrix::from_fn(n, |i, k| order[k].1[i]);
    Ok(EigenDecomposition { values, vectors })
}

/// Closed-form eigenvalues `[high, low]` of `[[a, b], [conj(b), d]]`.
pub fn hermitian_eigvals_2x2(a: f64, b: C64, d: f64) -> [f64; 2] {
    let mean = 0.5 * (a + d);
    let half_gap = 0.5 * (a - d);
    let radius = (half_gap * half_gap + b.norm_sqr()).sqrt();
    [mean + radius, mean - radius]
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

// Applies A <- U^H A U, V <- V U with U the unitary that zeroes A[p][q].
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let b = a[(p, q)];
    let r = b.norm();
    if r == 0.0 {
        return;
    }
    let n = a.dim();
    let phase = b / r;
    let theta = 0.5 * (2.0 * r).atan2(a[(p, p)].re - a[(q, q)].re);
    let (s, c) = theta.sin_cos();
    let u_qp = phase.conj() * s;
    let u_qq = phase.conj() * c;

    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * c + akq * u_qp;
        a[(k, q)] = akq * u_qq - akp * s;
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * c + vkq * u_qp;
        v[(k, q)] = vkq * u_qq - vkp * s;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = apk * c + aqk * u_qp.conj();
        a[(q, k)] = aqk * u_qq.conj() - apk * s;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}

fn leading_index(v: &[C64]) -> usize {
    v.iter()
        .position(|z| z.norm() > tolerances::PHASE_ZERO)
        .unwrap_or(v.len())
}

fn fix_phase(mut v: Vec<C64>) -> Vec<C64> {
    if let Some(k) = v.iter().position(|z| z.norm() > tolerances::PHASE_ZERO) {
        let rotation = v[k].conj() / v[k].norm();
        for z in v.iter_mut() {
            *z *= rotation;
        }
        v[k] = C64::new(v[k].re, 0.0);
    }
    v
}

/// Pauli `sigma_y`.
pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        &[
            C64::new(0.0, 0.0),
            C64::new(0.0, -1.0),
            C64::new(0.0, 1.0),
            C64::new(0.0, 0.0),
        ],
    )
    .expect("2x2")
}
