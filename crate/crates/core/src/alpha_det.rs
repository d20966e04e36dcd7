//! α-determinants and cycle-restricted permutation sums.
//!
//! For an `n x n` matrix `A`,
//!
//! ```text
//! det_α A = Σ_σ α^(n − ν(σ)) Π_i a[i][σ(i)]
//! ```
//!
//! where `ν(σ)` counts the cycles of `σ`. `α = -1` gives the determinant,
//! `α = 1` the permanent.
//!
//! Two evaluators are provided. [`alpha_det_enum`] walks all `n!`
//! permutations and is the reference. [`alpha_det_fast`] groups permutations
//! by the cycle through the smallest remaining index and memoizes over index
//! subsets, costing `O(3^n)` time and `O(2^n n)` memory.

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::Scalar;

/// Largest dimension accepted by [`alpha_det_enum`].
pub const ENUM_BOUND: usize = 11;
/// Largest dimension accepted by [`alpha_det_fast`].
pub const FAST_BOUND: usize = 20;
/// Largest dimension accepted by [`single_cycle_sum`].
pub const CYCLE_BOUND: usize = 10;

fn check_bound(what: &'static str, dim: usize, bound: usize) -> Result<()> {
    if dim > bound {
        Err(Error::DimensionTooLarge { what, dim, bound })
    } else {
        Ok(())
    }
}

/// Depth-first walk over permutations, assigning `σ(row)` row by row.
///
/// Partial permutations are a disjoint union of paths; `start_of_end[e]` is
/// the first vertex of the path ending at `e` and `end_of_start[s]` the last
/// vertex of the path starting at `s`. Assigning `σ(i) = j` either closes a
/// cycle (`j` starts the path that ends at `i`) or joins two paths.
struct CycleWalk<'a, T> {
    a: &'a SquareMatrix<T>,
    used: Vec<bool>,
    start_of_end: Vec<usize>,
    end_of_start: Vec<usize>,
    sums: Vec<T>,
}

impl<T: Scalar> CycleWalk<'_, T> {
    fn visit(&mut self, row: usize, prod: T, cycles: usize) {
        let n = self.a.dim();
        if row == n {
            self.sums[cycles] = self.sums[cycles].clone() + prod;
            return;
        }
        for col in 0..n {
            if self.used[col] {
                continue;
            }
            let entry = &self.a[(row, col)];
            if entry.is_zero() {
                continue;
            }
            let next = prod.clone() * entry.clone();
            let start = self.start_of_end[row];
            self.used[col] = true;
            if start == col {
                self.visit(row + 1, next, cycles + 1);
            } else {
                let end = self.end_of_start[col];
                let saved = (self.end_of_start[start], self.start_of_end[end]);
                self.end_of_start[start] = end;
                self.start_of_end[end] = start;
                self.visit(row + 1, next, cycles);
                self.end_of_start[start] = saved.0;
                self.start_of_end[end] = saved.1;
            }
            self.used[col] = false;
        }
    }
}

/// `sums[k] = Σ_{σ : ν(σ) = k} Π a[i][σ(i)]` for `k = 0..=n`, by enumeration.
pub fn cycle_count_sums<T: Scalar>(a: &SquareMatrix<T>) -> Result<Vec<T>> {
    let n = a.dim();
    check_bound("permutation enumeration", n, ENUM_BOUND)?;
    let mut walk = CycleWalk {
        a,
        used: vec![false; n],
        start_of_end: (0..n).collect(),
        end_of_start: (0..n).collect(),
        sums: vec![T::zero(); n + 1],
    };
    walk.visit(0, T::one(), 0);
    Ok(walk.sums)
}

/// Reference α-determinant: explicit enumeration of all `n!` permutations.
pub fn alpha_det_enum<T: Scalar>(a: &SquareMatrix<T>, alpha: &T) -> Result<T> {
    let n = a.dim();
    let sums = cycle_count_sums(a)?;
    let mut total = T::zero();
    let mut power = T::one(); // α^(n - k), k descending from n
    for k in (0..=n).rev() {
        total = total + power.clone() * sums[k].clone();
        power = power * alpha.clone();
    }
    Ok(total)
}

/// Single-cycle sums of every principal submatrix.
///
/// `out[mask]` is the sum over cyclic permutations of the indices in `mask`
/// of the products along the cycle; `out[0] = 0`. Computed by a path DP rooted
/// at the smallest index of each subset.
pub fn cycle_sums_by_subset<T: Scalar>(a: &SquareMatrix<T>) -> Result<Vec<T>> {
    let n = a.dim();
    check_bound("subset recursion", n, FAST_BOUND)?;
    let mut out = vec![T::zero(); 1 << n];
    for head in 0..n {
        out[1 << head] = a[(head, head)].clone();
        // vertices above `head`, relabelled 0..k
        let k = n - 1 - head;
        if k == 0 {
            continue;
        }
        let vertex = |r: usize| head + 1 + r;
        let mut paths = vec![T::zero(); (1usize << k) * k];
        for r in 0..k {
            paths[(1 << r) * k + r] = a[(head, vertex(r))].clone();
        }
        for mask in 1usize..(1 << k) {
            for r in 0..k {
                if mask & (1 << r) == 0 {
                    continue;
                }
                let p = paths[mask * k + r].clone();
                if p.is_zero() {
                    continue;
                }
                let full = (mask << (head + 1)) | (1 << head);
                out[full] = out[full].clone() + p.clone() * a[(vertex(r), head)].clone();
                for w in 0..k {
                    if mask & (1 << w) != 0 {
                        continue;
                    }
                    let entry = &a[(vertex(r), vertex(w))];
                    if entry.is_zero() {
                        continue;
                    }
                    let idx = (mask | (1 << w)) * k + w;
                    paths[idx] = paths[idx].clone() + p.clone() * entry.clone();
                }
            }
        }
    }
    Ok(out)
}

/// α-determinant by memoized subset recursion.
///
/// Every permutation splits into the cycle `C` through the smallest index of
/// the remaining set `S` and a permutation of `S \ C`, so
/// `f(S) = Σ_{C ∋ min S} α^(|C|-1) cyc(C) f(S \ C)` with `f(∅) = 1`.
pub fn alpha_det_fast<T: Scalar>(a: &SquareMatrix<T>, alpha: &T) -> Result<T> {
    let n = a.dim();
    let cyc = cycle_sums_by_subset(a)?;
    let mut alpha_pow = Vec::with_capacity(n);
    alpha_pow.push(T::one());
    for i in 1..n {
        alpha_pow.push(alpha_pow[i - 1].clone() * alpha.clone());
    }
    let full = (1usize << n) - 1;
    let mut f = vec![T::zero(); 1 << n];
    f[0] = T::one();
    for set in 1..=full {
        let low = set & set.wrapping_neg();
        let rest = set ^ low;
        let mut acc = T::zero();
        // iterate sub ⊆ rest, including the empty set
        let mut sub = rest;
        loop {
            let cycle = sub | low;
            let c = &cyc[cycle];
            if !c.is_zero() {
                let len = cycle.count_ones() as usize;
                acc = acc + alpha_pow[len - 1].clone() * c.clone() * f[set ^ cycle].clone();
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        f[set] = acc;
    }
    Ok(f[full].clone())
}

/// Sum over the `(n-1)!` cyclic permutations (`ν(σ) = 1`) of `Π a[i][σ(i)]`,
/// by enumeration.
pub fn single_cycle_sum<T: Scalar>(a: &SquareMatrix<T>) -> Result<T> {
    let n = a.dim();
    check_bound("cycle enumeration", n, CYCLE_BOUND)?;
    fn extend<T: Scalar>(a: &SquareMatrix<T>, last: usize, prod: T, used: &mut [bool], left: usize) -> T {
        if left == 0 {
            return prod * a[(last, 0)].clone();
        }
        let mut acc = T::zero();
        for next in 1..a.dim() {
            if used[next] || a[(last, next)].is_zero() {
                continue;
            }
            used[next] = true;
            acc = acc + extend(a, next, prod.clone() * a[(last, next)].clone(), used, left - 1);
            used[next] = false;
        }
        acc
    }
    let mut used = vec![false; n];
    used[0] = true;
    Ok(extend(a, 0, T::one(), &mut used, n - 1))
}

/// Falling factorial `a (a-1) ... (a-n+1)`; `1` when `n = 0`.
pub fn falling_factorial<T: Scalar>(a: T, n: usize) -> T {
    let mut acc = T::one();
    let mut term = a;
    for _ in 0..n {
        acc = acc * term.clone();
        term = term - T::one();
    }
    acc
}

/// `Π_{j=0}^{n-1} (1 + jα)`, the α-determinant of the all-ones matrix.
pub fn all_ones_alpha_det<T: Scalar>(n: usize, alpha: &T) -> T {
    (0..n).fold(T::one(), |acc, j| {
        acc * (T::one() + T::from_usize(j).expect("small integer") * alpha.clone())
    })
}
