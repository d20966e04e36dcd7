//! Infinite divisibility of α-determinantal processes.
//!
//! For `α < 0` the process is never infinitely divisible. For `α > 0` it is
//! iff `Det(I + αK_Λ) > 0` for every `Λ` and every single-cycle sum
//! `Σ_{ν(σ)=1} Π J_α^Λ(x_i, x_σ(i))` is nonnegative. For real symmetric `K`
//! the cycle sums may be replaced by the individual cycle products
//! `J(x_1,x_2) J(x_2,x_3) … J(x_n,x_1)`. Complex hermitian kernels have no
//! such reduction and [`check_divisible_symmetric`] refuses them.
//!
//! Points may repeat (counting measure gives every tuple positive mass).
//! Cycle sums and cycle products are invariant under rotation of the tuple,
//! so only rotation-minimal tuples are visited.

use num_complex::Complex64;

use crate::alpha::AlphaParam;
use crate::alpha_det::{single_cycle_sum, CYCLE_BOUND};
use crate::error::{Error, Result};
use crate::existence::{nonneg_tolerance, SUBSET_BOUND};
use crate::operator::{fredholm_det, j_kernel, restrict, KernelMatrix, SiteSubset};
use crate::scalar::Scalar;
use crate::ComplexMatrix;

/// Default tuple length bound.
pub const DEFAULT_N_MAX: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisibilityStatus {
    NeverDivisible,
    DivisibleUpToBound(usize),
    Reject,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisibilityCondition {
    NonEmpty,
    DetPositive,
    CycleSumNonnegative,
    CycleProductNonnegative,
}

impl DivisibilityCondition {
    pub fn label(&self) -> &'static str {
        match self {
            Self::NonEmpty => "non-empty process",
            Self::DetPositive => "Det(I+αK_Λ) > 0",
            Self::CycleSumNonnegative => "Σ_{ν(σ)=1} Π J_α^Λ(x_i,x_σ(i)) ≥ 0",
            Self::CycleProductNonnegative => "J_α^Λ(x_1,x_2)…J_α^Λ(x_n,x_1) ≥ 0",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivisibilityWitness {
    pub subset: SiteSubset,
    /// Sites of the violating tuple (ground-space indices, with repetition).
    pub tuple: Vec<usize>,
    pub value: Complex64,
    pub condition: DivisibilityCondition,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivisibilityVerdict {
    pub status: DivisibilityStatus,
    pub witness: Option<DivisibilityWitness>,
    pub notes: Vec<String>,
    pub conditions_checked: usize,
}

impl DivisibilityVerdict {
    pub fn is_divisible(&self) -> bool {
        matches!(self.status, DivisibilityStatus::DivisibleUpToBound(_))
    }

    fn reject(witness: DivisibilityWitness, conditions_checked: usize) -> Self {
        Self {
            status: DivisibilityStatus::Reject,
            witness: Some(witness),
            notes: vec![],
            conditions_checked,
        }
    }
}

/// Rotation-minimal tuples over `0..alphabet` of length `len`, in
/// lexicographic order.
pub fn canonical_tuples(alphabet: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut t = vec![0; len];
    loop {
        if (1..len).all(|r| t[r..].iter().chain(&t[..r]).cmp(t.iter()) != std::cmp::Ordering::Less) {
            out.push(t.clone());
        }
        // odometer increment, last position fastest
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            t[pos] += 1;
            if t[pos] < alphabet {
                break;
            }
            t[pos] = 0;
        }
    }
}

fn cycle_product(j: &ComplexMatrix, t: &[usize]) -> Complex64 {
    (0..t.len()).fold(Complex64::new(1.0, 0.0), |acc, i| acc * j[(t[i], t[(i + 1) % t.len()])])
}

enum Route {
    CycleSum,
    CycleProduct,
}

fn run(k: &KernelMatrix, alpha: AlphaParam, n_max: usize, route: Route) -> Result<DivisibilityVerdict> {
    if n_max == 0 || n_max > CYCLE_BOUND {
        return Err(Error::InvalidArgument(format!("n_max must be in 1..={CYCLE_BOUND}")));
    }
    let d = k.dim();
    if d > SUBSET_BOUND {
        return Err(Error::DimensionTooLarge {
            what: "subset enumeration",
            dim: d,
            bound: SUBSET_BOUND,
        });
    }
    if k.is_zero() {
        let w = DivisibilityWitness {
            subset: SiteSubset::full(d),
            tuple: vec![],
            value: Complex64::new(0.0, 0.0),
            condition: DivisibilityCondition::NonEmpty,
        };
        let mut v = DivisibilityVerdict::reject(w, 1);
        v.notes.push("empty process excluded".into());
        return Ok(v);
    }
    let a = alpha.value();
    let mut checked = 0;
    for s in SiteSubset::all_nonempty(d) {
        let det = fredholm_det(&restrict(k, &s)?, a);
        checked += 1;
        if !(det.re > 0.0 && det.im.abs() <= 1e-9 * (1.0 + det.norm())) {
            let w = DivisibilityWitness {
                subset: s,
                tuple: vec![],
                value: det,
                condition: DivisibilityCondition::DetPositive,
            };
            return Ok(DivisibilityVerdict::reject(w, checked));
        }
        let j = j_kernel(k, a, &s)?;
        let j = j.matrix();
        let scale = j.max_abs();
        for len in 1..=n_max {
            let tol = nonneg_tolerance(scale, len);
            for t in canonical_tuples(s.len(), len) {
                let (value, condition) = match route {
                    Route::CycleSum => (
                        single_cycle_sum(&j.principal_submatrix(&t))?,
                        DivisibilityCondition::CycleSumNonnegative,
                    ),
                    Route::CycleProduct => (cycle_product(j, &t), DivisibilityCondition::CycleProductNonnegative),
                };
                checked += 1;
                if !value.is_nonnegative(tol) {
                    let w = DivisibilityWitness {
                        tuple: t.iter().map(|&p| s.indices()[p]).collect(),
                        subset: s,
                        value,
                        condition,
                    };
                    return Ok(DivisibilityVerdict::reject(w, checked));
                }
            }
        }
    }
    Ok(DivisibilityVerdict {
        status: DivisibilityStatus::DivisibleUpToBound(n_max),
        witness: None,
        notes: vec![format!("cycle conditions verified for tuples of length ≤ {n_max}")],
        conditions_checked: checked,
    })
}

/// Infinite divisibility via single-cycle sums of `J_α^Λ`.
pub fn check_divisible(k: &KernelMatrix, alpha: AlphaParam, n_max: usize) -> Result<DivisibilityVerdict> {
    if !alpha.is_positive() {
        return Ok(DivisibilityVerdict {
            status: DivisibilityStatus::NeverDivisible,
            witness: None,
            notes: vec!["α < 0: an α-determinantal process is never infinitely divisible".into()],
            conditions_checked: 0,
        });
    }
    run(k, alpha, n_max, Route::CycleSum)
}

/// Infinite divisibility for real symmetric `K` via individual cycle
/// products.
pub fn check_divisible_symmetric(k: &KernelMatrix, alpha: AlphaParam, n_max: usize) -> Result<DivisibilityVerdict> {
    if !k.is_real_symmetric() {
        return Err(Error::NotRealSymmetric);
    }
    if !alpha.is_positive() {
        return Err(Error::InvalidArgument(
            "check_divisible_symmetric needs alpha > 0".into(),
        ));
    }
    run(k, alpha, n_max, Route::CycleProduct)
}

/// The `N`-th convolution root of the `(α, K)` law: the `(Nα)`-process with
/// kernel `K/N`.
pub fn nfold_component(k: &KernelMatrix, alpha: AlphaParam, n: u32) -> Result<(KernelMatrix, AlphaParam)> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    if !alpha.is_positive() {
        return Err(Error::InvalidArgument("nfold_component needs alpha > 0".into()));
    }
    let n = f64::from(n);
    Ok((k.scaled(1.0 / n), AlphaParam::new(alpha.value() * n)?))
}
