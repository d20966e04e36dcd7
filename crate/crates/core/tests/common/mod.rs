#![allow(dead_code)]

use alphadet::{Complex64, ComplexMatrix, KernelMatrix, RealMatrix};
use rand::Rng;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// All permutations of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    let mut stack = vec![0; n];
    let mut i = 1;
    while i < n {
        if stack[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(stack[i], i);
            }
            out.push(p.clone());
            stack[i] += 1;
            i = 1;
        } else {
            stack[i] = 0;
            i += 1;
        }
    }
    out
}

pub fn cycle_count(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut cycles = 0;
    for start in 0..p.len() {
        if !seen[start] {
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = p[i];
            }
        }
    }
    cycles
}

/// `Σ_σ α^{n-ν(σ)} Π a_{iσ(i)}` straight from the definition.
pub fn leibniz_alpha_det(a: &ComplexMatrix, alpha: Complex64) -> Complex64 {
    let n = a.dim();
    permutations(n)
        .iter()
        .map(|p| {
            let prod = (0..n).fold(c(1.0), |acc, i| acc * a[(i, p[i])]);
            prod * alpha.powu((n - cycle_count(p)) as u32)
        })
        .sum()
}

/// Ryser's inclusion-exclusion formula for the permanent.
pub fn ryser_permanent(a: &ComplexMatrix) -> Complex64 {
    let n = a.dim();
    let mut total = c(0.0);
    for mask in 1usize..(1 << n) {
        let prod = (0..n).fold(c(1.0), |acc, i| {
            acc * (0..n)
                .filter(|j| mask & (1 << j) != 0)
                .map(|j| a[(i, j)])
                .sum::<Complex64>()
        });
        let sign = if (n - mask.count_ones() as usize).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        total += prod * sign;
    }
    total
}

pub fn random_real(rng: &mut impl Rng, n: usize, scale: f64) -> RealMatrix {
    RealMatrix::from_fn(n, |_, _| rng.random_range(-scale..scale))
}

pub fn random_complex(rng: &mut impl Rng, n: usize, scale: f64) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| {
        Complex64::new(rng.random_range(-scale..scale), rng.random_range(-scale..scale))
    })
}

/// Hermitian positive semidefinite kernel with spectrum in `[0, top]`:
/// `B B^* / ‖B‖_F^2` has trace 1.
pub fn random_psd_kernel(rng: &mut impl Rng, d: usize, top: f64) -> KernelMatrix {
    let b = random_complex(rng, d, 1.0);
    let g = b.mul(&b.conjugate_transpose());
    let f2 = b.frobenius_norm().powi(2);
    KernelMatrix::new(g.scale(&c(top / f2)))
}

/// Real symmetric kernel with spectrum in `[0, top]`.
pub fn random_real_psd_kernel(rng: &mut impl Rng, d: usize, top: f64) -> KernelMatrix {
    let b = random_real(rng, d, 1.0);
    let g = b.mul(&b.transpose());
    let f2 = b.frobenius_norm().powi(2);
    KernelMatrix::from_real(&g.scale(&(top / f2)))
}

/// Kernel for `α > 0` whose `J_α` is entrywise nonnegative with
/// `ρ(αJ) < 1`, so `K = J(I - αJ)^{-1}` defines a process.
pub fn kernel_from_nonneg_j(rng: &mut impl Rng, d: usize, alpha: f64, symmetric: bool) -> KernelMatrix {
    let mut j = RealMatrix::from_fn(d, |_, _| rng.random_range(0.0..1.0));
    if symmetric {
        j = j.add(&j.transpose());
    }
    // row sums bound the spectral radius of a nonnegative matrix
    let row_max = (0..d).map(|i| j.row(i).iter().sum::<f64>()).fold(0.0, f64::max);
    let target = rng.random_range(0.2..0.6);
    let j = j.scale(&(target / (alpha * row_max)));
    let inv = RealMatrix::identity(d)
        .sub(&j.scale(&alpha))
        .inverse()
        .expect("ρ(αJ) < 1");
    KernelMatrix::from_real(&j.mul(&inv))
}
