//! # alphadet
//!
//! α-determinants and α-determinantal point processes on a finite ground
//! space `{0, …, d-1}` with counting reference measure.
//!
//! An α-determinantal process with kernel `K` has correlation functions
//! `ρ_n(x_1, …, x_n) = det_α (K(x_i, x_j))`. On a finite space everything
//! reduces to matrix computations: the crate evaluates `det_α`, decides
//! whether a process with a given kernel exists and whether it is infinitely
//! divisible, and computes, samples and validates its exact law.
//!
//! | module | contents |
//! |--------|----------|
//! | [`alpha_det`] | `det_α` by enumeration and by subset recursion, cycle sums |
//! | [`operator`] | kernels, restrictions, `J_α`, Fredholm determinants, block expansions |
//! | [`existence`] | existence verdicts for `α > 0` and `α < 0` |
//! | [`divisibility`] | infinite divisibility verdicts |
//! | [`distribution`] | pmf, p.g.f., sampling, moments, thinning |
//!
//! The combinatorial kernels are generic over [`Scalar`]; the process-level
//! modules work in `Complex64`.
//!
//! ```
//! use alphadet::{alpha_det_enum, RealMatrix};
//!
//! let ones = RealMatrix::ones(3);
//! assert_eq!(alpha_det_enum(&ones, &1.0).unwrap(), 6.0);
//! ```

#![forbid(unsafe_code)]

pub mod alpha;
pub mod alpha_det;
pub mod distribution;
pub mod divisibility;
pub mod error;
pub mod existence;
pub mod matrix;
pub mod operator;
pub mod scalar;

pub use alpha::{AlphaClass, AlphaParam};
pub use alpha_det::{
    all_ones_alpha_det, alpha_det_enum, alpha_det_fast, cycle_count_sums, falling_factorial, single_cycle_sum,
};
pub use error::{Error, Result};
pub use matrix::SquareMatrix;
pub use operator::{KernelMatrix, MultiplicityVector, SiteSubset};
pub use scalar::Scalar;

pub use num_complex::Complex64;
pub use num_rational::BigRational;

pub type RealMatrix = SquareMatrix<f64>;
pub type RealMatrix32 = SquareMatrix<f32>;
pub type ComplexMatrix = SquareMatrix<Complex64>;
pub type RationalMatrix = SquareMatrix<BigRational>;
