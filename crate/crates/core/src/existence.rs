//! Existence of an α-determinantal process for a kernel on a finite ground
//! space.
//!
//! * `α > 0`: for every nonempty `Λ`, `Det(I + αK_Λ) > 0` and
//!   `det_α J_α^Λ[n] >= 0` for every multiplicity vector `n`. The second
//!   family is infinite, so verdicts are [`Status::AcceptUpToBound`]. A
//!   violated half-plane condition `Re Spec K_Λ > -1/(2α)` (necessary) also
//!   rejects.
//! * `α < 0`: `-1/α` must be an integer `m`. When every `I + αK_Λ` is
//!   invertible, existence is equivalent to all principal minors of every
//!   `J_α^Λ` being nonnegative, a finite check. When some `I + αK_Λ` is
//!   singular the same minor condition must hold for `J_β^Λ`, `β ∈ (α, 0)`;
//!   it is checked on a fixed grid of `β`.
//!
//! Witness selection is deterministic: subsets in ascending bitmask order,
//! then multiplicities / minors in their canonical enumeration order.

use std::fmt;

use num_complex::Complex64;

use crate::alpha::{AlphaClass, AlphaParam};
use crate::alpha_det::{alpha_det_fast, FAST_BOUND};
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::operator::{
    block_expand, fredholm_det, is_singular, j_kernel, restrict, KernelMatrix, MultiplicityVector, SiteSubset,
};
use crate::scalar::Scalar;

/// Default truncation order for `α > 0`.
pub const DEFAULT_N_MAX: usize = 6;
/// Largest ground space for which all `2^d - 1` subsets are enumerated.
pub const SUBSET_BOUND: usize = 12;
/// Base of the scale-aware nonnegativity tolerance.
pub const NONNEG_TOL: f64 = 1e-9;
/// Margin for the half-plane test.
pub const SPECTRAL_MARGIN: f64 = 1e-9;

/// `1e-9 (1 + scale)^n`.
pub fn nonneg_tolerance(scale: f64, n: usize) -> f64 {
    NONNEG_TOL * (1.0 + scale).powi(n as i32)
}

/// `β` values used for the singular case: `α(1 - 2^-j)` for `j = 1..=10`,
/// then `α/4` (`α/2` is the `j = 1` entry).
pub fn beta_grid(alpha: f64) -> Vec<f64> {
    let mut grid: Vec<f64> = (1..=10).map(|j| alpha * (1.0 - 0.5f64.powi(j))).collect();
    grid.push(alpha / 4.0);
    grid
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    AcceptExact,
    AcceptUpToBound(usize),
    Reject,
}

/// The condition a witness violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// The all-zero kernel gives the a.s. empty process, which is excluded.
    NonEmpty,
    /// `-1/α ∈ ℕ`.
    ReciprocalInteger,
    /// `Det(I + αK_Λ) > 0`.
    DetPositive,
    /// `Det(I + βK_Λ) > 0` for grid `β ∈ (α, 0)`.
    DetBetaPositive,
    /// `Re Spec K_Λ > -1/(2α)`.
    SpectralHalfPlane,
    /// `det_α J_α^Λ[n] >= 0`.
    AlphaDetNonnegative,
    /// Principal minors of `J_α^Λ` nonnegative.
    MinorNonnegative,
    /// Principal minors of `J_β^Λ` nonnegative for grid `β ∈ (α, 0)`.
    MinorBetaNonnegative,
    /// `Spec K ⊂ [0, -1/α]`.
    SpectrumInInterval,
}

impl Condition {
    pub fn label(&self) -> &'static str {
        match self {
            Condition::NonEmpty => "non-empty process",
            Condition::ReciprocalInteger => "(i) −1/α ∈ ℕ",
            Condition::DetPositive => "Det(I+αK_Λ) > 0",
            Condition::DetBetaPositive => "Det(I+βK_Λ) > 0, β ∈ (α,0)",
            Condition::SpectralHalfPlane => "Re Spec K_Λ > −1/(2α)",
            Condition::AlphaDetNonnegative => "det_α(J_α^Λ[n]) ≥ 0",
            Condition::MinorNonnegative => "(ii) det(J_α^Λ[n]) ≥ 0",
            Condition::MinorBetaNonnegative => "(ii') det(J_β^Λ[n]) ≥ 0, β ∈ (α,0)",
            Condition::SpectrumInInterval => "Spec K ⊂ [0, −1/α]",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Where a condition fails. `multiplicity` is indexed by the full ground space.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub subset: SiteSubset,
    pub multiplicity: MultiplicityVector,
    pub value: Complex64,
    pub condition: Condition,
    /// The `β` at which the violation occurred, for the singular case.
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
    /// Number of scalar conditions evaluated.
    pub conditions_checked: usize,
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        self.status != Status::Reject
    }

    fn reject(witness: Witness, conditions_checked: usize, notes: Vec<String>) -> Self {
        Self {
            status: Status::Reject,
            witness: Some(witness),
            notes,
            conditions_checked,
        }
    }

    fn empty_process(dim: usize) -> Self {
        Self::reject(
            Witness {
                subset: SiteSubset::full(dim),
                multiplicity: MultiplicityVector::zeros(dim),
                value: Complex64::new(0.0, 0.0),
                condition: Condition::NonEmpty,
                beta: None,
            },
            1,
            vec!["empty process excluded: the zero kernel gives the a.s. empty configuration".into()],
        )
    }
}

fn check_dim(k: &KernelMatrix) -> Result<()> {
    if k.dim() > SUBSET_BOUND {
        return Err(Error::DimensionTooLarge {
            what: "subset enumeration",
            dim: k.dim(),
            bound: SUBSET_BOUND,
        });
    }
    Ok(())
}

/// A real, strictly positive determinant.
fn det_is_positive(det: Complex64) -> bool {
    det.re > 0.0 && det.im.abs() <= NONNEG_TOL * (1.0 + det.norm())
}

/// Lifts a multiplicity vector over the positions of `subset` to the full
/// ground space.
fn lift(subset: &SiteSubset, local: &MultiplicityVector, dim: usize) -> MultiplicityVector {
    let mut counts = vec![0; dim];
    for (pos, &site) in subset.indices().iter().enumerate() {
        counts[site] = local.counts()[pos];
    }
    MultiplicityVector::new(counts)
}

/// First nonempty principal minor of `a` failing `is_nonnegative`, as
/// `(indices, minor)`; indices in ascending bitmask order. Assertion (iv) of
/// the block-matrix equivalence.
pub fn principal_minor_violation<T: Scalar>(a: &SquareMatrix<T>) -> Option<(Vec<usize>, T)> {
    let n = a.dim();
    let scale = a.max_abs();
    (1usize..(1 << n)).find_map(|mask| {
        let idx: Vec<usize> = (0..n).filter(|b| mask & (1 << b) != 0).collect();
        let minor = a.principal_submatrix(&idx).determinant();
        (!minor.is_nonnegative(nonneg_tolerance(scale, idx.len()))).then_some((idx, minor))
    })
}

/// First multiplicity vector `n` with `n_k <= m` and `det_{-1/m} a[n] < 0`.
/// Assertion (ii) of the block-matrix equivalence.
pub fn block_alpha_det_violation<T: Scalar>(a: &SquareMatrix<T>, m: u32) -> Result<Option<(MultiplicityVector, T)>> {
    let alpha = -(T::one() / T::from_u32(m).expect("small integer"));
    let scale = a.max_abs();
    for n in MultiplicityVector::bounded(a.dim(), m as usize) {
        if n.total() == 0 {
            continue;
        }
        let v = alpha_det_fast(&block_expand(a, &n)?, &alpha)?;
        if !v.is_nonnegative(nonneg_tolerance(scale, n.total())) {
            return Ok(Some((n, v)));
        }
    }
    Ok(None)
}

/// First eigenvalue of some `K_Λ` with `Re <= -1/(2α) - margin`.
fn spectral_violation(k: &KernelMatrix, alpha: f64) -> Option<(SiteSubset, Complex64)> {
    let bound = -1.0 / (2.0 * alpha) - SPECTRAL_MARGIN;
    SiteSubset::all_nonempty(k.dim()).find_map(|s| {
        let k_s = k.matrix().principal_submatrix(s.indices());
        k_s.eigenvalues()
            .into_iter()
            .find(|ev| ev.re <= bound)
            .map(|ev| (s, ev))
    })
}

/// Necessary condition for `α > 0`: every eigenvalue of every `K_Λ` has real
/// part `> -1/(2α)` (up to a `1e-9` margin).
pub fn spectral_check(k: &KernelMatrix, alpha: AlphaParam) -> Result<bool> {
    if !alpha.is_positive() {
        return Err(Error::InvalidArgument("spectral check needs alpha > 0".into()));
    }
    check_dim(k)?;
    Ok(spectral_violation(k, alpha.value()).is_none())
}

/// Existence check for `α > 0`, truncated at multiplicity total `n_max`.
pub fn check_positive_alpha(k: &KernelMatrix, alpha: AlphaParam, n_max: usize) -> Result<Verdict> {
    if !alpha.is_positive() {
        return Err(Error::InvalidArgument("check_positive_alpha needs alpha > 0".into()));
    }
    if n_max == 0 || n_max > FAST_BOUND {
        return Err(Error::InvalidArgument(format!("n_max must be in 1..={FAST_BOUND}")));
    }
    check_dim(k)?;
    let d = k.dim();
    if k.is_zero() {
        return Ok(Verdict::empty_process(d));
    }
    let a = alpha.value();
    let alpha_c = Complex64::new(a, 0.0);
    let half_plane = -1.0 / (2.0 * a) - SPECTRAL_MARGIN;
    let mut checked = 0;

    for s in SiteSubset::all_nonempty(d) {
        let k_s = restrict(k, &s)?;
        let det = fredholm_det(&k_s, a);
        checked += 1;
        if !det_is_positive(det) {
            let w = Witness {
                subset: s,
                multiplicity: MultiplicityVector::zeros(d),
                value: det,
                condition: Condition::DetPositive,
                beta: None,
            };
            return Ok(Verdict::reject(w, checked, vec![]));
        }

        checked += 1;
        if let Some(ev) = k_s.matrix().eigenvalues().into_iter().find(|ev| ev.re <= half_plane) {
            let w = Witness {
                subset: s,
                multiplicity: MultiplicityVector::zeros(d),
                value: ev,
                condition: Condition::SpectralHalfPlane,
                beta: None,
            };
            let note = "necessary half-plane condition fails, so det_α(J_α^Λ[n]) < 0 for some n".to_string();
            return Ok(Verdict::reject(w, checked, vec![note]));
        }

        let j = j_kernel(k, a, &s)?;
        let scale = j.matrix().max_abs();
        for local in MultiplicityVector::up_to_total(s.len(), n_max) {
            if local.total() == 0 {
                continue;
            }
            let value = alpha_det_fast(&block_expand(j.matrix(), &local)?, &alpha_c)?;
            checked += 1;
            if !value.is_nonnegative(nonneg_tolerance(scale, local.total())) {
                let w = Witness {
                    multiplicity: lift(&s, &local, d),
                    subset: s,
                    value,
                    condition: Condition::AlphaDetNonnegative,
                    beta: None,
                };
                return Ok(Verdict::reject(w, checked, vec![]));
            }
        }
    }

    Ok(Verdict {
        status: Status::AcceptUpToBound(n_max),
        witness: None,
        notes: vec![format!(
            "det_α(J_α^Λ[n]) ≥ 0 verified for all Λ and 1 ≤ |n| ≤ {n_max}; \
             no finite certificate exists for α > 0, higher orders are unchecked"
        )],
        conditions_checked: checked,
    })
}

/// Checks `Det(I + βK_Λ) > 0` and all principal minors of `J_β^Λ` for every
/// nonempty `Λ`. `beta` is `None` for the invertible case (`β = α`).
fn minor_pass(k: &KernelMatrix, beta: f64, grid_beta: Option<f64>, checked: &mut usize) -> Result<Option<Witness>> {
    let d = k.dim();
    let (det_cond, minor_cond) = match grid_beta {
        None => (Condition::DetPositive, Condition::MinorNonnegative),
        Some(_) => (Condition::DetBetaPositive, Condition::MinorBetaNonnegative),
    };
    for s in SiteSubset::all_nonempty(d) {
        let k_s = restrict(k, &s)?;
        let det = fredholm_det(&k_s, beta);
        *checked += 1;
        if !det_is_positive(det) || is_singular(det, k_s.matrix()) {
            return Ok(Some(Witness {
                subset: s,
                multiplicity: MultiplicityVector::zeros(d),
                value: det,
                condition: det_cond,
                beta: grid_beta,
            }));
        }
        let j = j_kernel(k, beta, &s)?;
        *checked += (1 << s.len()) - 1;
        if let Some((local_idx, minor)) = principal_minor_violation(j.matrix()) {
            let sites: Vec<usize> = local_idx.iter().map(|&p| s.indices()[p]).collect();
            let t = SiteSubset::new(sites, d)?;
            return Ok(Some(Witness {
                subset: s,
                multiplicity: MultiplicityVector::indicator(&t, d),
                value: minor,
                condition: minor_cond,
                beta: grid_beta,
            }));
        }
    }
    Ok(None)
}

/// Existence check for `α < 0`; exact up to floating-point tolerance.
pub fn check_negative_alpha(k: &KernelMatrix, alpha: AlphaParam) -> Result<Verdict> {
    let a = alpha.value();
    if a >= 0.0 {
        return Err(Error::InvalidArgument("check_negative_alpha needs alpha < 0".into()));
    }
    check_dim(k)?;
    let d = k.dim();
    if alpha.class() == AlphaClass::NegOther {
        let w = Witness {
            subset: SiteSubset::full(d),
            multiplicity: MultiplicityVector::zeros(d),
            value: Complex64::new(-1.0 / a, 0.0),
            condition: Condition::ReciprocalInteger,
            beta: None,
        };
        let note = "−1/α is not a positive integer; det_α 1_n < 0 for some n, independent of K".to_string();
        return Ok(Verdict::reject(w, 1, vec![note]));
    }
    if k.is_zero() {
        return Ok(Verdict::empty_process(d));
    }

    let singular = SiteSubset::all_nonempty(d).find(|s| {
        let k_s = k.matrix().principal_submatrix(s.indices());
        let det = fredholm_det(&KernelMatrix::new(k_s.clone()), a);
        is_singular(det, &k_s)
    });
    let mut checked = 1;

    match singular {
        None => {
            if let Some(w) = minor_pass(k, a, None, &mut checked)? {
                return Ok(Verdict::reject(w, checked, vec![]));
            }
            Ok(Verdict {
                status: Status::AcceptExact,
                witness: None,
                notes: vec![
                    "I+αK_Λ invertible for every Λ; all principal minors of every J_α^Λ are nonnegative, \
                     which certifies det_α(J_α^Λ[n]) ≥ 0 for every multiplicity n"
                        .into(),
                ],
                conditions_checked: checked,
            })
        }
        Some(s0) => {
            let grid = beta_grid(a);
            let mut notes = vec![
                format!(
                    "I+αK_Λ singular for Λ = {:?}: at least one point there almost surely",
                    s0.indices()
                ),
                format!("condition checked for β on the grid {grid:?}"),
            ];
            for &beta in &grid {
                if let Some(w) = minor_pass(k, beta, Some(beta), &mut checked)? {
                    notes.push(format!("violation at β = {beta}"));
                    return Ok(Verdict::reject(w, checked, notes));
                }
            }
            Ok(Verdict {
                status: Status::AcceptExact,
                witness: None,
                notes,
                conditions_checked: checked,
            })
        }
    }
}

/// Existence for hermitian `K` and `α < 0`: `-1/α = m ∈ ℕ` and
/// `Spec K ⊂ [0, m]`, with tolerance `1e-9 (1 + max |K_ij|)`.
pub fn check_selfadjoint(k: &KernelMatrix, alpha: AlphaParam) -> Result<Verdict> {
    if !k.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let a = alpha.value();
    if a >= 0.0 {
        return Err(Error::InvalidArgument("check_selfadjoint needs alpha < 0".into()));
    }
    let d = k.dim();
    let Some(m) = alpha.reciprocal_int() else {
        let w = Witness {
            subset: SiteSubset::full(d),
            multiplicity: MultiplicityVector::zeros(d),
            value: Complex64::new(-1.0 / a, 0.0),
            condition: Condition::ReciprocalInteger,
            beta: None,
        };
        return Ok(Verdict::reject(w, 1, vec![]));
    };
    if k.is_zero() {
        return Ok(Verdict::empty_process(d));
    }
    let tol = nonneg_tolerance(k.matrix().max_abs(), 1);
    let upper = f64::from(m) + tol;
    let eigenvalues = k.matrix().hermitian_eigenvalues();
    let checked = eigenvalues.len();
    if let Some(&ev) = eigenvalues.iter().find(|&&ev| ev < -tol || ev > upper) {
        let w = Witness {
            subset: SiteSubset::full(d),
            multiplicity: MultiplicityVector::zeros(d),
            value: Complex64::new(ev, 0.0),
            condition: Condition::SpectrumInInterval,
            beta: None,
        };
        return Ok(Verdict::reject(
            w,
            checked,
            vec![format!("eigenvalue {ev} outside [0, {m}]")],
        ));
    }
    Ok(Verdict {
        status: Status::AcceptExact,
        witness: None,
        notes: vec![format!("Spec K ⊂ [0, {m}]")],
        conditions_checked: checked,
    })
}

/// Whether the `(-1/m)`-process with kernel `K` and the determinantal process
/// with kernel `K/m` are accepted or rejected together. Always `true` for a
/// consistent implementation.
pub fn scaled_equivalence(k: &KernelMatrix, m: u32) -> Result<bool> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be a positive integer".into()));
    }
    let direct = check_negative_alpha(k, AlphaParam::neg_reciprocal(m))?;
    let scaled = check_negative_alpha(&k.scaled(1.0 / f64::from(m)), AlphaParam::neg_reciprocal(1))?;
    Ok(direct.is_accept() == scaled.is_accept())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(a: f64) -> AlphaParam {
        AlphaParam::new(a).unwrap()
    }

    #[test]
    fn counterexample_rejected_on_det() {
        let v = check_positive_alpha(&KernelMatrix::scalar(-1.0), alpha(2.0), 6).unwrap();
        assert_eq!(v.status, Status::Reject);
        let w = v.witness.unwrap();
        assert_eq!(w.condition, Condition::DetPositive);
        assert!((w.value.re + 1.0).abs() < 1e-12);
    }

    #[test]
    fn positive_scalar_accepted_up_to_bound() {
        for c in [0.1, 1.0, 7.5] {
            for a in [0.5, 1.0, 3.0] {
                let v = check_positive_alpha(&KernelMatrix::scalar(c), alpha(a), 5).unwrap();
                assert_eq!(v.status, Status::AcceptUpToBound(5));
                assert!(v.witness.is_none());
            }
        }
    }

    #[test]
    fn zero_kernel_is_rejected() {
        let zero = KernelMatrix::from_real(&SquareMatrix::zeros(2));
        for v in [
            check_positive_alpha(&zero, alpha(1.0), 3).unwrap(),
            check_negative_alpha(&zero, alpha(-1.0)).unwrap(),
        ] {
            assert_eq!(v.status, Status::Reject);
            assert_eq!(v.witness.unwrap().condition, Condition::NonEmpty);
            assert!(v.notes[0].contains("empty process excluded"));
        }
    }

    #[test]
    fn spectral_cases() {
        assert!(!spectral_check(&KernelMatrix::scalar(-1.0), alpha(2.0)).unwrap());
        assert!(spectral_check(&KernelMatrix::scalar(-0.2), alpha(2.0)).unwrap());
        let psd = KernelMatrix::from_real_rows(vec![vec![2.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!(spectral_check(&psd, alpha(0.3)).unwrap());
    }

    #[test]
    fn non_integer_reciprocal_rejected() {
        let v = check_negative_alpha(&KernelMatrix::scalar(0.3), alpha(-1.0 / 2.5)).unwrap();
        assert_eq!(v.status, Status::Reject);
        assert_eq!(v.witness.unwrap().condition, Condition::ReciprocalInteger);
    }

    #[test]
    fn bernoulli_kernel_accepted() {
        let v = check_negative_alpha(&KernelMatrix::scalar(0.5), alpha(-1.0)).unwrap();
        assert_eq!(v.status, Status::AcceptExact);
    }

    #[test]
    fn singular_case_uses_beta_grid() {
        // K = [[1]], alpha = -1: a point is present almost surely
        let v = check_negative_alpha(&KernelMatrix::scalar(1.0), alpha(-1.0)).unwrap();
        assert_eq!(v.status, Status::AcceptExact);
        assert!(v.notes.iter().any(|n| n.contains("grid")));
        // K = [[2]], alpha = -1/2: singular, spectrum at the edge [0, 2]
        let v = check_negative_alpha(&KernelMatrix::scalar(2.0), alpha(-0.5)).unwrap();
        assert_eq!(v.status, Status::AcceptExact);
    }

    #[test]
    fn selfadjoint_cases() {
        let k = KernelMatrix::from_real(&SquareMatrix::diagonal(&[0.3, 1.9]));
        assert_eq!(check_selfadjoint(&k, alpha(-0.5)).unwrap().status, Status::AcceptExact);
        let k = KernelMatrix::scalar(1.5);
        let v = check_selfadjoint(&k, alpha(-1.0)).unwrap();
        assert_eq!(v.status, Status::Reject);
        assert_eq!(v.witness.unwrap().value.re, 1.5);
        let nonherm = KernelMatrix::from_real_rows(vec![vec![0.1, 0.2], vec![0.0, 0.1]]).unwrap();
        assert_eq!(check_selfadjoint(&nonherm, alpha(-1.0)), Err(Error::NotHermitian));
    }

    #[test]
    fn scaled_equivalence_cases() {
        let k = KernelMatrix::from_real(&SquareMatrix::diagonal(&[0.5, 1.5]));
        assert!(scaled_equivalence(&k, 2).unwrap());
        assert!(check_negative_alpha(&k, AlphaParam::neg_reciprocal(2))
            .unwrap()
            .is_accept());
        let bad = KernelMatrix::scalar(4.0);
        assert!(scaled_equivalence(&bad, 3).unwrap());
        assert!(!check_negative_alpha(&bad, AlphaParam::neg_reciprocal(3))
            .unwrap()
            .is_accept());
        assert!(scaled_equivalence(&k, 1).unwrap());
    }

    #[test]
    fn subset_bound_enforced() {
        let k = KernelMatrix::from_real(&SquareMatrix::identity(SUBSET_BOUND + 1));
        assert!(matches!(
            check_negative_alpha(&k, alpha(-1.0)),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn beta_grid_is_inside_interval() {
        let g = beta_grid(-0.5);
        assert_eq!(g.len(), 11);
        assert!(g.iter().all(|&b| b > -0.5 && b < 0.0));
        assert_eq!(g[0], -0.25);
    }
}
