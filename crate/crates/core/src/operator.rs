//! Operator calculus on a finite ground space `{0, …, d-1}` with counting
//! measure: a kernel is a `d x d` complex matrix, integrals are sums, and the
//! Fredholm determinant `Det(I + αK)` is the ordinary determinant.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::alpha::AlphaParam;
use crate::alpha_det::alpha_det_fast;
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::{factorial, Scalar};
use crate::ComplexMatrix;

/// Entrywise tolerance for the hermitian flag.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Relative threshold below which `det(I + αK_S)` counts as zero.
pub const SINGULAR_TOL: f64 = 1e-12;

/// Kernel of a (locally) trace class operator on the finite ground space.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelMatrix {
    matrix: ComplexMatrix,
    hermitian: bool,
}

impl KernelMatrix {
    pub fn new(matrix: ComplexMatrix) -> Self {
        let hermitian = matrix.is_hermitian(HERMITIAN_TOL);
        Self { matrix, hermitian }
    }

    pub fn from_real(matrix: &SquareMatrix<f64>) -> Self {
        Self::new(ComplexMatrix::from_real(matrix))
    }

    /// Real kernel from rows.
    pub fn from_real_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        Ok(Self::from_real(&SquareMatrix::from_rows(rows)?))
    }

    /// `1 x 1` real kernel `[[c]]`.
    pub fn scalar(c: f64) -> Self {
        Self::from_real(&SquareMatrix::from_fn(1, |_, _| c))
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn is_real_symmetric(&self) -> bool {
        self.matrix.is_real_symmetric(HERMITIAN_TOL)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.entries().iter().all(|z| *z == Complex64::new(0.0, 0.0))
    }

    /// `s K` for a real factor `s`.
    pub fn scaled(&self, s: f64) -> Self {
        Self::new(self.matrix.scale(&Complex64::new(s, 0.0)))
    }
}

/// Sorted, duplicate-free set of site indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SiteSubset {
    indices: Vec<usize>,
}

impl SiteSubset {
    /// Sorts `indices`; rejects duplicates and indices `>= dim`.
    pub fn new(mut indices: Vec<usize>, dim: usize) -> Result<Self> {
        indices.sort_unstable();
        if let Some(&index) = indices.iter().find(|&&i| i >= dim) {
            return Err(Error::SiteOutOfRange { index, dim });
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("duplicate site index".into()));
        }
        Ok(Self { indices })
    }

    pub fn full(dim: usize) -> Self {
        Self {
            indices: (0..dim).collect(),
        }
    }

    /// Subset encoded by the bits of `mask`.
    pub fn from_mask(mask: usize) -> Self {
        Self {
            indices: (0..usize::BITS as usize).filter(|b| mask & (1 << b) != 0).collect(),
        }
    }

    pub fn mask(&self) -> usize {
        self.indices.iter().fold(0, |m, &i| m | (1 << i))
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Every nonempty subset of `{0, …, dim-1}` in ascending bitmask order.
    pub fn all_nonempty(dim: usize) -> impl Iterator<Item = SiteSubset> {
        (1usize..(1 << dim)).map(Self::from_mask)
    }
}

/// Point counts `(n_1, …, n_d)` per site.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiplicityVector {
    counts: Vec<usize>,
    total: usize,
}

impl MultiplicityVector {
    pub fn new(counts: Vec<usize>) -> Self {
        let total = counts.iter().sum();
        Self { counts, total }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![0; dim])
    }

    /// Indicator vector of `subset` in a ground space of size `dim`.
    pub fn indicator(subset: &SiteSubset, dim: usize) -> Self {
        let mut counts = vec![0; dim];
        for &i in subset.indices() {
            counts[i] = 1;
        }
        Self::new(counts)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn dim(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Sites listed with repetition, e.g. `(2, 0, 1) -> [0, 0, 2]`.
    pub fn points(&self) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(site, &c)| std::iter::repeat_n(site, c))
            .collect()
    }

    /// `Π n_k!` in the scalar type.
    pub fn factorial_product<T: Scalar>(&self) -> T {
        self.counts.iter().fold(T::one(), |acc, &c| acc * factorial::<T>(c))
    }

    /// `Π z_k^{n_k}`.
    pub fn monomial(&self, z: &[Complex64]) -> Complex64 {
        self.counts
            .iter()
            .zip(z)
            .fold(Complex64::new(1.0, 0.0), |acc, (&c, zk)| acc * zk.powu(c as u32))
    }

    /// All vectors of length `dim` with the given total, lexicographically
    /// descending (`(t, 0, …)` first).
    pub fn with_total(dim: usize, total: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut counts = vec![0; dim];
        fn fill(pos: usize, left: usize, counts: &mut Vec<usize>, out: &mut Vec<MultiplicityVector>) {
            if pos + 1 == counts.len() {
                counts[pos] = left;
                out.push(MultiplicityVector::new(counts.clone()));
                return;
            }
            for c in (0..=left).rev() {
                counts[pos] = c;
                fill(pos + 1, left - c, counts, out);
            }
        }
        if dim > 0 {
            fill(0, total, &mut counts, &mut out);
        }
        out
    }

    /// All vectors with total `<= max_total`, by increasing total.
    pub fn up_to_total(dim: usize, max_total: usize) -> Vec<Self> {
        (0..=max_total).flat_map(|t| Self::with_total(dim, t)).collect()
    }

    /// All vectors with every count `<= max_each`, by increasing total.
    pub fn bounded(dim: usize, max_each: usize) -> Vec<Self> {
        Self::up_to_total(dim, dim * max_each)
            .into_iter()
            .filter(|n| n.counts.iter().all(|&c| c <= max_each))
            .collect()
    }
}

/// Principal submatrix `K_S`.
pub fn restrict(k: &KernelMatrix, subset: &SiteSubset) -> Result<KernelMatrix> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(&index) = subset.indices().iter().find(|&&i| i >= k.dim()) {
        return Err(Error::SiteOutOfRange { index, dim: k.dim() });
    }
    Ok(KernelMatrix::new(k.matrix().principal_submatrix(subset.indices())))
}

fn shifted(k: &ComplexMatrix, alpha: f64) -> ComplexMatrix {
    ComplexMatrix::identity(k.dim()).add(&k.scale(&Complex64::new(alpha, 0.0)))
}

/// `Det(I + αK)`.
pub fn fredholm_det(k: &KernelMatrix, alpha: f64) -> Complex64 {
    shifted(k.matrix(), alpha).determinant()
}

/// Whether `det` counts as zero for the kernel restriction `k_s`:
/// `|det| <= 1e-12 (1 + ||K_S||_F)^n`.
pub fn is_singular(det: Complex64, k_s: &ComplexMatrix) -> bool {
    let scale = (1.0 + k_s.frobenius_norm()).powi(k_s.dim() as i32);
    det.norm() <= SINGULAR_TOL * scale
}

/// `J_α^S = K_S (I + αK_S)^{-1}`.
pub fn j_kernel(k: &KernelMatrix, alpha: f64, subset: &SiteSubset) -> Result<KernelMatrix> {
    let k_s = restrict(k, subset)?;
    let m = shifted(k_s.matrix(), alpha);
    let det = m.determinant();
    if is_singular(det, k_s.matrix()) {
        return Err(Error::SingularOperator {
            det_modulus: det.norm(),
        });
    }
    let inv = m.inverse().ok_or(Error::SingularOperator {
        det_modulus: det.norm(),
    })?;
    Ok(KernelMatrix::new(k_s.matrix().mul(&inv)))
}

/// `A[n_1, …, n_d]`: block `(i, j)` is an `n_i x n_j` block filled with `a_ij`.
pub fn block_expand<T: Scalar>(a: &SquareMatrix<T>, n: &MultiplicityVector) -> Result<SquareMatrix<T>> {
    if n.dim() != a.dim() {
        return Err(Error::LengthMismatch {
            expected: a.dim(),
            got: n.dim(),
        });
    }
    if n.total() == 0 {
        return Err(Error::EmptyExpansion);
    }
    Ok(a.principal_submatrix(&n.points()))
}

/// Coefficient of `Π z_k^{n_k}` in `Det(I - α Σ z_k K_k)^{-1/α}`, where
/// `K_k` keeps only row `k` of `K`: `(Π 1/n_k!) det_α K[n]`.
pub fn expansion_coefficient(k: &KernelMatrix, alpha: f64, n: &MultiplicityVector) -> Result<Complex64> {
    if n.dim() != k.dim() {
        return Err(Error::LengthMismatch {
            expected: k.dim(),
            got: n.dim(),
        });
    }
    if n.total() == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let block = block_expand(k.matrix(), n)?;
    let det = alpha_det_fast(&block, &Complex64::new(alpha, 0.0))?;
    Ok(det / n.factorial_product::<Complex64>())
}

/// Outcome of [`verify_expansion`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionCheck {
    /// `|LHS - truncated RHS|`.
    pub residual: f64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// Spectral radius of `α Z K`; the series converges iff it is `< 1`
    /// (always, for `α = -1/m`).
    pub spectral_radius: f64,
    /// Terms summed.
    pub terms: usize,
    /// The right-hand side is a finite polynomial (`α = -1/m`) and `order`
    /// reached its degree, so the residual is pure round-off.
    pub exact: bool,
}

/// Compares `Det(I - α Σ z_k K_k)^{-1/α}` with its multivariate power series
/// truncated at total degree `order`.
///
/// For `α = -1/m` the left side is the polynomial `det(I + ZK/m)^m` and
/// coefficients with some `n_k > m` vanish, so they are skipped. Otherwise the
/// series converges iff `ρ(αZK) < 1`; the left side is then evaluated as
/// `Π (1 - αμ_i)^{-1/α}` over eigenvalues `μ_i` of `ZK`, each factor having
/// positive real part so principal powers give the analytic branch.
pub fn verify_expansion(k: &KernelMatrix, alpha: AlphaParam, z: &[Complex64], order: usize) -> Result<ExpansionCheck> {
    let d = k.dim();
    if z.len() != d {
        return Err(Error::LengthMismatch {
            expected: d,
            got: z.len(),
        });
    }
    let a = alpha.value();
    let zk = ComplexMatrix::from_fn(d, |i, j| z[i] * k.matrix()[(i, j)]);
    let spectral_radius = a.abs() * zk.spectral_radius();

    let (lhs, vectors, exact) = match alpha.reciprocal_int() {
        Some(m) => {
            let base = shifted(&zk, -a).determinant();
            let lhs = base.powu(m);
            let m = m as usize;
            let vectors: Vec<_> = MultiplicityVector::up_to_total(d, order.min(m * d))
                .into_iter()
                .filter(|n| n.counts().iter().all(|&c| c <= m))
                .collect();
            (lhs, vectors, order >= m * d)
        }
        None => {
            if spectral_radius >= 1.0 {
                return Err(Error::OutsideConvergenceDomain { spectral_radius });
            }
            let p = -1.0 / a;
            let lhs = zk.eigenvalues().into_iter().fold(Complex64::new(1.0, 0.0), |acc, mu| {
                acc * (Complex64::new(1.0, 0.0) - mu * a).powf(p)
            });
            (lhs, MultiplicityVector::up_to_total(d, order), false)
        }
    };

    let mut rhs = Complex64::new(0.0, 0.0);
    for n in &vectors {
        rhs += expansion_coefficient(k, a, n)? * n.monomial(z);
    }
    Ok(ExpansionCheck {
        residual: (lhs - rhs).norm(),
        lhs,
        rhs,
        spectral_radius,
        terms: vectors.len(),
        exact,
    })
}

/// Taylor coefficients of a polynomial in `d` variables of degree at most
/// `degree` in each, by evaluation on the polycircle of radius `radius` and
/// discrete Fourier inversion. Returned in [`MultiplicityVector::bounded`]
/// order.
pub fn taylor_coefficients(
    f: impl Fn(&[Complex64]) -> Complex64,
    d: usize,
    degree: usize,
    radius: f64,
) -> Vec<(MultiplicityVector, Complex64)> {
    let points = degree + 1;
    let grid_size = points.pow(d as u32);
    let root = |j: usize| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / points as f64);
    let grid: Vec<Vec<usize>> = (0..grid_size)
        .map(|mut g| {
            (0..d)
                .map(|_| {
                    let j = g % points;
                    g /= points;
                    j
                })
                .collect()
        })
        .collect();
    let values: Vec<Complex64> = grid
        .iter()
        .map(|js| {
            let z: Vec<Complex64> = js.iter().map(|&j| root(j) * radius).collect();
            f(&z)
        })
        .collect();
    MultiplicityVector::bounded(d, degree)
        .into_iter()
        .map(|n| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (js, v) in grid.iter().zip(&values) {
                let phase: usize = js.iter().zip(n.counts()).map(|(&j, &c)| j * c).sum();
                acc += v * root((points - phase % points) % points);
            }
            let scale = radius.powi(n.total() as i32) * grid_size as f64;
            (n, acc / scale)
        })
        .collect()
}
