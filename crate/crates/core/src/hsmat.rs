//! Dense complex matrices with Hilbert-Schmidt geometry.
//!
//! The inner product is <A|B> = Tr(A^dagger B), conjugate-linear in the
//! first argument. A state |psi> = sum_{k,l} a_kl |k>|l'> corresponds to
//! the matrix A = [a_kl] with k indexing the first factor; inner products
//! of states equal Hilbert-Schmidt inner products of their matrices, and
//! the Schmidt number of |psi> is rank(A).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Projection residual threshold: inputs whose residual norm falls below
/// this are treated as linearly dependent, and singular values below it do
/// not count toward numerical rank.
pub const RANK_TOL: f64 = 1e-9;

/// Default tolerance on |<A_i|A_j> - delta_ij| for orthonormality checks.
/// Entries are exact roots of unity or quadratic surds, so double
/// precision leaves roughly 1e-13 of slack below this.
pub const ORTHONORMALITY_TOL: f64 = 1e-10;

/// Tolerance on the squared-amplitude sum of a state vector.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Entrywise tolerance on scale^2 * A^dagger A - I when deciding whether
/// scale * A is unitary.
pub const UNITARY_TOL: f64 = 1e-9;

fn shape_of(rows: usize, cols: usize) -> String {
    format!("{rows}x{cols}")
}

/// Dense matrix over C with row-major construction and access.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    data: DMatrix<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting wrong lengths and
    /// non-finite values.
    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                left: shape_of(rows, cols),
                right: format!("{} entries", entries.len()),
            });
        }
        for (idx, z) in entries.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite {
                    row: idx / cols.max(1),
                    col: idx % cols.max(1),
                });
            }
        }
        Ok(Self {
            data: DMatrix::from_row_iterator(rows, cols, entries),
        })
    }

    /// Builds a matrix entry by entry from `f(row, col)`.
    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(rows: usize, cols: usize, f: F) -> Self {
        Self {
            data: DMatrix::from_fn(rows, cols, f),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            data: DMatrix::zeros(rows, cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            data: DMatrix::identity(n, n),
        }
    }

    pub(crate) fn from_dmatrix(data: DMatrix<Complex64>) -> Self {
        Self { data }
    }

    pub(crate) fn data(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    pub fn rows(&self) -> usize {
        self.data.nrows()
    }

    pub fn cols(&self) -> usize {
        self.data.ncols()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[(row, col)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[(row, col)] = value;
    }

    pub fn entries_row_major(&self) -> Vec<Complex64> {
        let (rows, cols) = (self.rows(), self.cols());
        let mut out = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                out.push(self.data[(r, c)]);
            }
        }
        out
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return Err(Error::ShapeMismatch {
                left: shape_of(self.rows(), self.cols()),
                right: shape_of(other.rows(), other.cols()),
            });
        }
        Ok(())
    }

    /// Hilbert-Schmidt inner product Tr(self^dagger other).
    pub fn hs_inner(&self, other: &Self) -> Result<Complex64> {
        self.same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Hilbert-Schmidt (Frobenius) norm.
    pub fn hs_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            data: &self.data * s,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self {
            data: &self.data + &other.data,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self {
            data: &self.data - &other.data,
        })
    }

    /// Matrix product self * other.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols() != other.rows() {
            return Err(Error::ShapeMismatch {
                left: shape_of(self.rows(), self.cols()),
                right: shape_of(other.rows(), other.cols()),
            });
        }
        Ok(Self {
            data: &self.data * &other.data,
        })
    }

    pub fn adjoint(&self) -> Self {
        Self {
            data: self.data.adjoint(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            data: self.data.transpose(),
        }
    }

    /// Kronecker product; entry ((i*rB + k), (j*cB + l)) = A[i,j]*B[k,l].
    pub fn kron(&self, other: &Self) -> Self {
        Self {
            data: self.data.kronecker(&other.data),
        }
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self {
            data: self.data.component_mul(&other.data),
        })
    }

    /// Singular values in descending order; their squares sum to the
    /// squared Hilbert-Schmidt norm.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut sv: Vec<f64> = self.data.clone().singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        sv
    }

    /// Eigenvalue arguments of a square matrix, sorted ascending, each in
    /// (-pi, pi].
    pub fn eigenphases(&self) -> Result<Vec<f64>> {
        if self.rows() != self.cols() {
            return Err(Error::Domain(format!(
                "eigenphases requires a square matrix, got {}",
                shape_of(self.rows(), self.cols())
            )));
        }
        let (_, t) = self.data.clone().schur().unpack();
        let mut phases: Vec<f64> = (0..t.nrows())
            .map(|k| {
                let phase = t[(k, k)].arg();
                if phase <= -std::f64::consts::PI {
                    phase + 2.0 * std::f64::consts::PI
                } else {
                    phase
                }
            })
            .collect();
        phases.sort_by(f64::total_cmp);
        Ok(phases)
    }

    /// Whether `scale * self` is unitary to within `tol` on every entry of
    /// scale^2 * self^dagger self - I.
    pub fn is_scaled_unitary(&self, scale: f64, tol: f64) -> bool {
        if self.rows() != self.cols() {
            return false;
        }
        let gram = (self.data.adjoint() * &self.data) * Complex64::from(scale * scale);
        let dev = gram - DMatrix::<Complex64>::identity(self.rows(), self.cols());
        dev.iter().all(|z| z.norm() <= tol)
    }
}

/// Pure state of C^dimA (x) C^dimB with amplitudes indexed by (k, l) as
/// k*dimB + l.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    dim_a: usize,
    dim_b: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Builds a normalized state; the squared-amplitude sum must be 1
    /// within [`NORMALIZATION_TOL`].
    pub fn new(dim_a: usize, dim_b: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != dim_a * dim_b {
            return Err(Error::ShapeMismatch {
                left: format!("state on {dim_a}x{dim_b}"),
                right: format!("{} amplitudes", amplitudes.len()),
            });
        }
        for (idx, z) in amplitudes.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite {
                    row: idx / dim_b.max(1),
                    col: idx % dim_b.max(1),
                });
            }
        }
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Precondition(format!(
                "state is not normalized: squared-amplitude sum {norm_sq}"
            )));
        }
        Ok(Self {
            dim_a,
            dim_b,
            amplitudes,
        })
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn amplitude(&self, k: usize, l: usize) -> Complex64 {
        self.amplitudes[k * self.dim_b + l]
    }

    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.dim_a != other.dim_a || self.dim_b != other.dim_b {
            return Err(Error::ShapeMismatch {
                left: format!("state on {}x{}", self.dim_a, self.dim_b),
                right: format!("state on {}x{}", other.dim_a, other.dim_b),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// Coefficient matrix A = [a_kl] of a state.
pub fn state_to_matrix(psi: &StateVector) -> ComplexMatrix {
    ComplexMatrix::from_fn(psi.dim_a, psi.dim_b, |k, l| psi.amplitude(k, l))
}

/// State with amplitudes a_kl = A[k, l]; inverse of [`state_to_matrix`].
pub fn matrix_to_state(a: &ComplexMatrix) -> Result<StateVector> {
    StateVector::new(a.rows(), a.cols(), a.entries_row_major())
}

/// Schmidt number: the numerical rank of the coefficient matrix at
/// [`RANK_TOL`].
pub fn schmidt_number(psi: &StateVector) -> usize {
    state_to_matrix(psi)
        .singular_values()
        .iter()
        .filter(|&&s| s > RANK_TOL)
        .count()
}

/// Hilbert-Schmidt-orthonormal spanning list for a subspace of the
/// rows x cols matrix space.
#[derive(Clone, Debug)]
pub struct MatrixSubspace {
    rows: usize,
    cols: usize,
    basis: Vec<ComplexMatrix>,
}

impl MatrixSubspace {
    pub fn empty(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            basis: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    /// Orthonormal basis of the span of `mats`, by modified Gram-Schmidt
    /// with a second projection pass; inputs whose residual norm falls
    /// below [`RANK_TOL`] are dropped.
    pub fn orthonormalize(rows: usize, cols: usize, mats: &[ComplexMatrix]) -> Result<Self> {
        let mut sub = Self::empty(rows, cols);
        for m in mats {
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::ShapeMismatch {
                    left: shape_of(rows, cols),
                    right: shape_of(m.rows(), m.cols()),
                });
            }
            let mut r = m.data.clone();
            for _ in 0..2 {
                for b in &sub.basis {
                    let coeff = inner_dm(&b.data, &r);
                    accumulate(&mut r, -coeff, &b.data);
                }
            }
            let norm = frob(&r);
            if norm >= RANK_TOL {
                sub.basis.push(ComplexMatrix::from_dmatrix(r.unscale(norm)));
            }
        }
        Ok(sub)
    }

    /// Orthogonal projection of `m` onto the subspace.
    pub fn project(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        if m.rows() != self.rows || m.cols() != self.cols {
            return Err(Error::ShapeMismatch {
                left: shape_of(self.rows, self.cols),
                right: shape_of(m.rows(), m.cols()),
            });
        }
        let mut acc = DMatrix::<Complex64>::zeros(self.rows, self.cols);
        for b in &self.basis {
            let coeff = inner_dm(&b.data, &m.data);
            accumulate(&mut acc, coeff, &b.data);
        }
        Ok(ComplexMatrix::from_dmatrix(acc))
    }

    /// Component of `m` orthogonal to the subspace (projection applied
    /// twice for accuracy).
    pub fn residual(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        let mut r = m.clone();
        for _ in 0..2 {
            r = r.sub(&self.project(&r)?)?;
        }
        Ok(r)
    }

    /// Orthonormal basis of the Hilbert-Schmidt orthogonal complement,
    /// built by projecting the standard matrix units against the subspace
    /// and greedily re-orthonormalizing with largest-residual pivoting
    /// (ties broken toward the lower row-major unit index) so the result
    /// is deterministic.
    pub fn complement(&self) -> Self {
        let ambient = self.rows * self.cols;
        let target = ambient - self.basis.len();
        let mut residuals: Vec<DMatrix<Complex64>> = Vec::with_capacity(ambient);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let mut unit = DMatrix::<Complex64>::zeros(self.rows, self.cols);
                unit[(r, c)] = Complex64::new(1.0, 0.0);
                for _ in 0..2 {
                    for b in &self.basis {
                        let coeff = inner_dm(&b.data, &unit);
                        accumulate(&mut unit, -coeff, &b.data);
                    }
                }
                residuals.push(unit);
            }
        }
        let mut comp = Vec::with_capacity(target);
        for _ in 0..target {
            let mut best = 0;
            let mut best_norm = -1.0;
            for (idx, r) in residuals.iter().enumerate() {
                let n = frob(r);
                if n > best_norm {
                    best_norm = n;
                    best = idx;
                }
            }
            debug_assert!(best_norm > RANK_TOL);
            let g = residuals.remove(best).unscale(best_norm);
            for r in residuals.iter_mut() {
                let coeff = inner_dm(&g, r);
                accumulate(r, -coeff, &g);
            }
            comp.push(ComplexMatrix::from_dmatrix(g));
        }
        Self {
            rows: self.rows,
            cols: self.cols,
            basis: comp,
        }
    }
}

fn inner_dm(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// acc += coeff * x, entrywise.
pub(crate) fn accumulate(acc: &mut DMatrix<Complex64>, coeff: Complex64, x: &DMatrix<Complex64>) {
    for (a, v) in acc.iter_mut().zip(x.iter()) {
        *a += coeff * v;
    }
}

fn frob(a: &DMatrix<Complex64>) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
