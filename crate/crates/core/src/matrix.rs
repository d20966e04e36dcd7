//! Dense square matrices over a [`Scalar`].

use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A dense `n x n` matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<T> {
    dim: usize,
    entries: Vec<T>,
}

impl<T: Scalar> SquareMatrix<T> {
    /// Builds a matrix from row-major entries. Rejects empty, non-square and
    /// non-finite input.
    pub fn new(dim: usize, entries: Vec<T>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidMatrix("dimension must be positive".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidMatrix(format!(
                "entry ({}, {}) is not finite",
                pos / dim,
                pos % dim
            )));
        }
        Ok(Self { dim, entries })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::InvalidMatrix(format!(
                "row of length {} in a matrix with {dim} rows",
                bad.len()
            )));
        }
        Self::new(dim, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(dim > 0, "dimension must be positive");
        let entries = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        Self { dim, entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| T::zero())
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// All-ones matrix `1_n`.
    pub fn ones(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| T::one())
    }

    pub fn diagonal(diag: &[T]) -> Self {
        Self::from_fn(diag.len(), |i, j| if i == j { diag[i].clone() } else { T::zero() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> SquareMatrix<U> {
        SquareMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self::from_fn(self.dim, |i, j| self[(i, j)].clone() + other[(i, j)].clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self::from_fn(self.dim, |i, j| self[(i, j)].clone() - other[(i, j)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        Self::from_fn(n, |i, j| {
            (0..n).fold(T::zero(), |acc, k| acc + self[(i, k)].clone() * other[(k, j)].clone())
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].clone())
    }

    /// Principal submatrix on `indices` (in the given order).
    pub fn principal_submatrix(&self, indices: &[usize]) -> Self {
        let k = indices.len();
        Self::from_fn(k, |a, b| self[(indices[a], indices[b])].clone())
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(Scalar::modulus).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|x| x.modulus() * x.modulus())
            .sum::<f64>()
            .sqrt()
    }

    /// Ordinary determinant by LU decomposition with partial pivoting.
    pub fn determinant(&self) -> T {
        let n = self.dim;
        let mut lu = self.entries.clone();
        let mut det = T::one();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&a, &b| lu[a * n + col].modulus().total_cmp(&lu[b * n + col].modulus()))
                .expect("non-empty range");
            if lu[pivot * n + col].is_zero() {
                return T::zero();
            }
            if pivot != col {
                for k in 0..n {
                    lu.swap(pivot * n + k, col * n + k);
                }
                det = -det;
            }
            let p = lu[col * n + col].clone();
            det = det * p.clone();
            for r in col + 1..n {
                let factor = lu[r * n + col].clone() / p.clone();
                if factor.is_zero() {
                    continue;
                }
                for k in col + 1..n {
                    let v = lu[col * n + k].clone();
                    lu[r * n + k] = lu[r * n + k].clone() - factor.clone() * v;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination; `None` when a pivot vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(n).entries;
        for col in 0..n {
            let pivot = (col..n).max_by(|&x, &y| a[x * n + col].modulus().total_cmp(&a[y * n + col].modulus()))?;
            if a[pivot * n + col].is_zero() {
                return None;
            }
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                    inv.swap(pivot * n + k, col * n + k);
                }
            }
            let p = a[col * n + col].clone();
            for k in 0..n {
                a[col * n + k] = a[col * n + k].clone() / p.clone();
                inv[col * n + k] = inv[col * n + k].clone() / p.clone();
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col].clone();
                if factor.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let av = a[col * n + k].clone();
                    let iv = inv[col * n + k].clone();
                    a[r * n + k] = a[r * n + k].clone() - factor.clone() * av;
                    inv[r * n + k] = inv[r * n + k].clone() - factor.clone() * iv;
                }
            }
        }
        Some(Self { dim: n, entries: inv })
    }
}

impl<T> Index<(usize, usize)> for SquareMatrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.entries[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for SquareMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.entries[i * self.dim + j]
    }
}

impl SquareMatrix<Complex64> {
    /// Embeds a real matrix.
    pub fn from_real(real: &SquareMatrix<f64>) -> Self {
        real.map(|&x| Complex64::new(x, 0.0))
    }

    pub fn conjugate_transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    /// Equal to its conjugate transpose within `tol` (absolute, entrywise).
    pub fn is_hermitian(&self, tol: f64) -> bool {
        (0..self.dim).all(|i| (i..self.dim).all(|j| (self[(i, j)] - self[(j, i)].conj()).norm() <= tol))
    }

    /// Real entries and symmetric within `tol`.
    pub fn is_real_symmetric(&self, tol: f64) -> bool {
        self.entries.iter().all(|x| x.im.abs() <= tol)
            && (0..self.dim).all(|i| (i..self.dim).all(|j| (self[(i, j)] - self[(j, i)]).norm() <= tol))
    }

    fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.entries)
    }

    /// Eigenvalues of a general complex matrix (complex Schur form).
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        let schur = nalgebra::Schur::new(self.to_nalgebra());
        schur
            .eigenvalues()
            .expect("complex Schur form is triangular")
            .iter()
            .copied()
            .collect()
    }

    /// Eigenvalues of the hermitian part, ascending. Only meaningful for
    /// hermitian input.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let h = self.to_nalgebra();
        let h = (&h + h.adjoint()) * Complex64::new(0.5, 0.0);
        let mut vals: Vec<f64> = nalgebra::SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
        vals.sort_by(f64::total_cmp);
        vals
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}
