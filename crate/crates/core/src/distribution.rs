//! Exact law, sampling and moment validation on a finite ground space.
//!
//! The joint law of the counts `(ξ_0, …, ξ_{d-1})` has p.g.f.
//! `E[Π z_k^{ξ_k}] = Det(I + α(I - Z)K)^{-1/α}`. Writing
//! `h(z) = det(I + αK - αZK)`, which is affine in each `z_k`, the pmf is the
//! coefficient family of `h^{-1/α}`:
//!
//! * `α = -1/m`: `h^m` is a polynomial of degree `<= m` in each variable and
//!   is expanded exactly by repeated multiplication (this also covers the
//!   case where `I + αK` is singular);
//! * `α > 0`: `g = h^p`, `p = -1/α`, satisfies `h · Eg = p · g · Eh` for the
//!   Euler operator `E = Σ z_k ∂_k`, giving
//!   `|n| h_0 g_n = Σ_{∅≠T⊆supp n} (p|T| - |n| + |T|) h_T g_{n-1_T}`.
//!
//! [`janossy_weight`] computes the same probabilities through `J_α` and
//! `det_α`; the two routes are compared in the tests.

use std::collections::HashMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alpha::AlphaParam;
use crate::alpha_det::{alpha_det_fast, falling_factorial};
use crate::error::{Error, Result};
use crate::operator::{
    block_expand, fredholm_det, is_singular, j_kernel, KernelMatrix, MultiplicityVector, SiteSubset,
};
use crate::ComplexMatrix;

/// Default captured-mass target for `α > 0`.
pub const DEFAULT_MASS_TARGET: f64 = 1.0 - 1e-9;
/// Largest multiplicity total enumerated for `α > 0`.
pub const MAX_TOTAL: usize = 60;
/// Largest number of pmf entries built before giving up.
pub const MAX_ENTRIES: usize = 2_000_000;
/// Tolerance on negative or imaginary parts of probability weights.
pub const WEIGHT_TOL: f64 = 1e-9;

/// Probabilities of multiplicity vectors, by increasing total.
#[derive(Debug, Clone, PartialEq)]
pub struct PmfTable {
    entries: Vec<(MultiplicityVector, f64)>,
    index: HashMap<MultiplicityVector, usize>,
    captured_mass: f64,
    exact_support: bool,
}

impl PmfTable {
    fn from_entries(entries: Vec<(MultiplicityVector, f64)>, exact_support: bool) -> Self {
        let captured_mass = entries.iter().map(|(_, p)| p).sum();
        let index = entries.iter().enumerate().map(|(i, (n, _))| (n.clone(), i)).collect();
        Self {
            entries,
            index,
            captured_mass,
            exact_support,
        }
    }

    pub fn entries(&self) -> &[(MultiplicityVector, f64)] {
        &self.entries
    }

    /// Sum of the stored probabilities.
    pub fn captured_mass(&self) -> f64 {
        self.captured_mass
    }

    /// The table covers the whole (finite) support.
    pub fn exact_support(&self) -> bool {
        self.exact_support
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Probability of `n`; zero when `n` is not in the table.
    pub fn probability(&self, n: &MultiplicityVector) -> f64 {
        self.index.get(n).map_or(0.0, |&i| self.entries[i].1)
    }

    /// Largest total present.
    pub fn max_total(&self) -> usize {
        self.entries.iter().map(|(n, _)| n.total()).max().unwrap_or(0)
    }

    /// Law of the sum of independent draws from `self` and `other`.
    pub fn convolve(&self, other: &PmfTable) -> PmfTable {
        let mut acc: HashMap<MultiplicityVector, f64> = HashMap::new();
        for (a, pa) in &self.entries {
            for (b, pb) in &other.entries {
                let counts = a.counts().iter().zip(b.counts()).map(|(x, y)| x + y).collect();
                *acc.entry(MultiplicityVector::new(counts)).or_insert(0.0) += pa * pb;
            }
        }
        let mut entries: Vec<_> = acc.into_iter().collect();
        sort_canonical(&mut entries);
        Self::from_entries(entries, self.exact_support && other.exact_support)
    }

    /// Total variation distance, treating missing entries as zero.
    pub fn total_variation(&self, other: &PmfTable) -> f64 {
        let mut keys: Vec<&MultiplicityVector> = self.entries.iter().map(|(n, _)| n).collect();
        keys.extend(
            other
                .entries
                .iter()
                .map(|(n, _)| n)
                .filter(|n| !self.index.contains_key(*n)),
        );
        0.5 * keys
            .into_iter()
            .map(|n| (self.probability(n) - other.probability(n)).abs())
            .sum::<f64>()
    }
}

/// Increasing total, then lexicographically descending counts.
fn sort_canonical<T>(entries: &mut [(MultiplicityVector, T)]) {
    entries.sort_by(|(a, _), (b, _)| a.total().cmp(&b.total()).then_with(|| b.counts().cmp(a.counts())));
}

/// Coefficients `h_T` of `h(z) = det(I + αK - αZK)`, indexed by the bitmask
/// of `T`: rows in `T` come from `-αK`, the others from `I + αK`.
fn pgf_base_coefficients(k: &KernelMatrix, alpha: f64) -> Vec<Complex64> {
    let d = k.dim();
    let km = k.matrix();
    (0usize..(1 << d))
        .map(|mask| {
            ComplexMatrix::from_fn(d, |i, j| {
                let kij = km[(i, j)] * alpha;
                if mask & (1 << i) != 0 {
                    -kij
                } else if i == j {
                    kij + 1.0
                } else {
                    kij
                }
            })
            .determinant()
        })
        .collect()
}

fn to_probability(v: Complex64) -> Result<f64> {
    if v.im.abs() > WEIGHT_TOL * (1.0 + v.re.abs()) {
        return Err(Error::NonRealWeight { imag: v.im });
    }
    if v.re < -WEIGHT_TOL {
        return Err(Error::NegativeWeight { value: v.re });
    }
    Ok(v.re.max(0.0))
}

fn mask_of(counts: &[usize]) -> usize {
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .fold(0, |m, (i, _)| m | (1 << i))
}

/// Exact expansion of `h^m`.
fn polynomial_power(h: &[Complex64], d: usize, m: u32) -> Result<Vec<(MultiplicityVector, Complex64)>> {
    if (m as usize + 1).checked_pow(d as u32).is_none_or(|n| n > MAX_ENTRIES) {
        return Err(Error::DimensionTooLarge {
            what: "pmf support (m+1)^d",
            dim: d,
            bound: MAX_ENTRIES,
        });
    }
    let mut acc: HashMap<Vec<usize>, Complex64> = HashMap::from([(vec![0; d], Complex64::new(1.0, 0.0))]);
    for _ in 0..m {
        let mut next: HashMap<Vec<usize>, Complex64> = HashMap::with_capacity(acc.len() * 2);
        for (counts, v) in &acc {
            for (mask, hm) in h.iter().enumerate() {
                if *hm == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let mut c = counts.clone();
                for (i, ci) in c.iter_mut().enumerate() {
                    if mask & (1 << i) != 0 {
                        *ci += 1;
                    }
                }
                *next.entry(c).or_insert(Complex64::new(0.0, 0.0)) += v * hm;
            }
        }
        acc = next;
    }
    let mut entries: Vec<_> = acc.into_iter().map(|(c, v)| (MultiplicityVector::new(c), v)).collect();
    sort_canonical(&mut entries);
    Ok(entries)
}

/// Exact pmf (`α = -1/m`) or a truncation capturing at least `mass_target`
/// (`α > 0`).
pub fn pmf_table(k: &KernelMatrix, alpha: AlphaParam, mass_target: f64) -> Result<PmfTable> {
    if !(mass_target > 0.0 && mass_target <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "mass target {mass_target} not in (0, 1]"
        )));
    }
    let d = k.dim();
    let a = alpha.value();
    if a < 0.0 && alpha.reciprocal_int().is_none() {
        return Err(Error::InvalidArgument(
            "no process exists unless -1/alpha is a positive integer".into(),
        ));
    }
    let h = pgf_base_coefficients(k, a);

    if let Some(m) = alpha.reciprocal_int() {
        let raw = polynomial_power(&h, d, m)?;
        let entries = raw
            .into_iter()
            .map(|(n, v)| to_probability(v).map(|p| (n, p)))
            .collect::<Result<Vec<_>>>()?;
        return Ok(PmfTable::from_entries(entries, true));
    }

    let h0 = h[0];
    if h0.re <= 0.0 || h0.im.abs() > WEIGHT_TOL * (1.0 + h0.norm()) {
        return Err(Error::NonRealWeight { imag: h0.im });
    }
    let p = -1.0 / a;
    let mut values: HashMap<MultiplicityVector, Complex64> = HashMap::new();
    let zero = MultiplicityVector::zeros(d);
    let g0 = h0.powf(p);
    values.insert(zero.clone(), g0);
    let mut entries = vec![(zero, to_probability(g0)?)];
    let mut captured = entries[0].1;
    let mut total = 0;
    while captured < mass_target {
        total += 1;
        if total > MAX_TOTAL {
            return Err(Error::TruncationFailure {
                captured_mass: captured,
                mass_target,
                max_total: MAX_TOTAL,
            });
        }
        let level = MultiplicityVector::with_total(d, total);
        if entries.len() + level.len() > MAX_ENTRIES {
            return Err(Error::TruncationFailure {
                captured_mass: captured,
                mass_target,
                max_total: total - 1,
            });
        }
        for n in level {
            let support = mask_of(n.counts());
            let mut acc = Complex64::new(0.0, 0.0);
            // nonempty T ⊆ supp(n)
            let mut t = support;
            while t != 0 {
                let size = t.count_ones() as f64;
                let factor = p * size - (total as f64 - size);
                let counts = n
                    .counts()
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| if t & (1 << i) != 0 { c - 1 } else { c })
                    .collect();
                acc += h[t] * factor * values[&MultiplicityVector::new(counts)];
                t = (t - 1) & support;
            }
            let g = acc / (h0 * total as f64);
            let prob = to_probability(g)?;
            captured += prob;
            values.insert(n.clone(), g);
            entries.push((n, prob));
        }
    }
    Ok(PmfTable::from_entries(entries, false))
}

/// `Det(I + αK)^{-1/α}`, exact integer power when `α = -1/m`.
fn normalizer(k: &KernelMatrix, alpha: AlphaParam) -> Complex64 {
    let det = fredholm_det(k, alpha.value());
    match alpha.reciprocal_int() {
        Some(m) => det.powu(m),
        None => det.powc(Complex64::new(-1.0 / alpha.value(), 0.0)),
    }
}

/// `P(ξ = n) = Det(I + αK)^{-1/α} (Π 1/n_k!) det_α J_α[n]`.
pub fn janossy_weight(k: &KernelMatrix, alpha: AlphaParam, n: &MultiplicityVector) -> Result<f64> {
    if n.dim() != k.dim() {
        return Err(Error::LengthMismatch {
            expected: k.dim(),
            got: n.dim(),
        });
    }
    let j = j_kernel(k, alpha.value(), &SiteSubset::full(k.dim()))?;
    let base = normalizer(k, alpha);
    let w = if n.total() == 0 {
        base
    } else {
        let det = alpha_det_fast(&block_expand(j.matrix(), n)?, &Complex64::new(alpha.value(), 0.0))?;
        base * det / n.factorial_product::<Complex64>()
    };
    if w.im.abs() > WEIGHT_TOL {
        return Err(Error::NonRealWeight { imag: w.im });
    }
    Ok(w.re)
}

/// `E[Π z_k^{ξ_k}] = Det(I + α(I - Z)K)^{-1/α}` for `z ∈ (0, 1]^d`.
pub fn pgf(k: &KernelMatrix, alpha: AlphaParam, z: &[f64]) -> Result<f64> {
    let d = k.dim();
    if z.len() != d {
        return Err(Error::LengthMismatch {
            expected: d,
            got: z.len(),
        });
    }
    if let Some(&bad) = z.iter().find(|&&zk| !(zk > 0.0 && zk <= 1.0)) {
        return Err(Error::InvalidArgument(format!("z component {bad} not in (0, 1]")));
    }
    let a = alpha.value();
    let m = ComplexMatrix::from_fn(d, |i, j| {
        let v = k.matrix()[(i, j)] * (a * (1.0 - z[i]));
        if i == j {
            v + 1.0
        } else {
            v
        }
    });
    let det = m.determinant();
    if is_singular(det, k.matrix()) {
        return Err(Error::SingularOperator {
            det_modulus: det.norm(),
        });
    }
    let v = match alpha.reciprocal_int() {
        Some(mm) => det.powu(mm),
        None => det.powc(Complex64::new(-1.0 / a, 0.0)),
    };
    if v.im.abs() > WEIGHT_TOL * (1.0 + v.norm()) {
        return Err(Error::NonRealWeight { imag: v.im });
    }
    Ok(v.re)
}

/// A reproducible batch of draws.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    pub seed: u64,
    pub draws: Vec<MultiplicityVector>,
    pub count: usize,
    /// Upper bound on the total-variation bias from truncating the pmf,
    /// `1 - captured_mass`.
    pub bias_bound: f64,
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Inverse-CDF sampler over a [`PmfTable`], renormalised by its captured mass.
struct TableSampler<'a> {
    table: &'a PmfTable,
    cdf: Vec<f64>,
}

impl<'a> TableSampler<'a> {
    fn new(table: &'a PmfTable) -> Self {
        let cdf = table
            .entries()
            .iter()
            .scan(0.0, |acc, (_, p)| {
                *acc += p;
                Some(*acc)
            })
            .collect();
        Self { table, cdf }
    }

    fn draw(&self, rng: &mut impl Rng) -> &'a MultiplicityVector {
        let u = rng.random::<f64>() * self.table.captured_mass();
        let i = self.cdf.partition_point(|&c| c <= u).min(self.cdf.len() - 1);
        &self.table.entries()[i].0
    }
}

/// `count` i.i.d. draws from a precomputed table.
pub fn sample_from_table(table: &PmfTable, count: usize, seed: u64) -> SampleBatch {
    let sampler = TableSampler::new(table);
    let mut rng = rng(seed);
    let draws = (0..count).map(|_| sampler.draw(&mut rng).clone()).collect();
    SampleBatch {
        seed,
        draws,
        count,
        bias_bound: (1.0 - table.captured_mass()).max(0.0),
    }
}

/// `count` i.i.d. draws from the `(α, K)` process, reproducible from `seed`.
pub fn sample(k: &KernelMatrix, alpha: AlphaParam, count: usize, seed: u64) -> Result<SampleBatch> {
    let table = pmf_table(k, alpha, DEFAULT_MASS_TARGET)?;
    Ok(sample_from_table(&table, count, seed))
}

/// Draws of the `(-1/m, K)` process built as sums of `m` independent
/// determinantal (`α = -1`) draws with kernel `K/m`.
pub fn superpose_sample(k: &KernelMatrix, m: u32, count: usize, seed: u64) -> Result<SampleBatch> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let component = k.scaled(1.0 / f64::from(m));
    let table = pmf_table(&component, AlphaParam::neg_reciprocal(1), 1.0)?;
    let sampler = TableSampler::new(&table);
    let mut rng = rng(seed);
    let draws = (0..count)
        .map(|_| {
            let mut counts = vec![0; k.dim()];
            for _ in 0..m {
                for (c, x) in counts.iter_mut().zip(sampler.draw(&mut rng).counts()) {
                    *c += x;
                }
            }
            MultiplicityVector::new(counts)
        })
        .collect();
    Ok(SampleBatch {
        seed,
        draws,
        count,
        bias_bound: 0.0,
    })
}

/// `E[Π ξ_k^{(n_k)}] = det_α K[n]` (`1` for `n = 0`). Returns the real part.
pub fn factorial_moment(k: &KernelMatrix, alpha: AlphaParam, n: &MultiplicityVector) -> Result<f64> {
    if n.dim() != k.dim() {
        return Err(Error::LengthMismatch {
            expected: k.dim(),
            got: n.dim(),
        });
    }
    if n.total() == 0 {
        return Ok(1.0);
    }
    let v = alpha_det_fast(&block_expand(k.matrix(), n)?, &Complex64::new(alpha.value(), 0.0))?;
    Ok(v.re)
}

/// Sample mean and standard error of `Π ξ_k^{(n_k)}` over a batch.
pub fn empirical_factorial_moment(batch: &SampleBatch, n: &MultiplicityVector) -> (f64, f64) {
    let values: Vec<f64> = batch
        .draws
        .iter()
        .map(|x| {
            x.counts()
                .iter()
                .zip(n.counts())
                .map(|(&xi, &ni)| falling_factorial(xi as f64, ni))
                .product()
        })
        .collect();
    let len = values.len() as f64;
    let mean = values.iter().sum::<f64>() / len;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (len - 1.0).max(1.0);
    (mean, (var / len).sqrt())
}

/// Empirical versus closed-form factorial moment.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentCheck {
    pub multiplicity: MultiplicityVector,
    pub expected: f64,
    pub empirical: f64,
    pub standard_error: f64,
    /// `|empirical - expected| <= 3 SE` (exact agreement when `SE = 0`).
    pub within_3se: bool,
}

/// Compares every factorial moment with `1 <= |n| <= max_total`.
pub fn validate_moments(
    k: &KernelMatrix,
    alpha: AlphaParam,
    batch: &SampleBatch,
    max_total: usize,
) -> Result<Vec<MomentCheck>> {
    MultiplicityVector::up_to_total(k.dim(), max_total)
        .into_iter()
        .filter(|n| n.total() > 0)
        .map(|n| {
            let expected = factorial_moment(k, alpha, &n)?;
            let (empirical, standard_error) = empirical_factorial_moment(batch, &n);
            let within_3se = (empirical - expected).abs() <= 3.0 * standard_error + 1e-12;
            Ok(MomentCheck {
                multiplicity: n,
                expected,
                empirical,
                standard_error,
                within_3se,
            })
        })
        .collect()
}

/// Keeps each point independently with probability `p`.
pub fn thin(batch: &SampleBatch, p: f64, seed: u64) -> Result<SampleBatch> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "retention probability {p} not in (0, 1)"
        )));
    }
    let mut rng = rng(seed);
    let draws = batch
        .draws
        .iter()
        .map(|x| {
            let counts = x
                .counts()
                .iter()
                .map(|&c| (0..c).filter(|_| rng.random::<f64>() < p).count())
                .collect();
            MultiplicityVector::new(counts)
        })
        .collect();
    Ok(SampleBatch {
        seed,
        draws,
        count: batch.count,
        bias_bound: batch.bias_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(a: f64) -> AlphaParam {
        AlphaParam::new(a).unwrap()
    }

    fn mv(c: &[usize]) -> MultiplicityVector {
        MultiplicityVector::new(c.to_vec())
    }

    #[test]
    fn bernoulli_weights() {
        let p = 0.3;
        let k = KernelMatrix::scalar(p);
        assert!((janossy_weight(&k, alpha(-1.0), &mv(&[1])).unwrap() - p).abs() < 1e-14);
        assert!((janossy_weight(&k, alpha(-1.0), &mv(&[0])).unwrap() - (1.0 - p)).abs() < 1e-14);
        let table = pmf_table(&k, alpha(-1.0), DEFAULT_MASS_TARGET).unwrap();
        assert_eq!(table.len(), 2);
        assert!((table.probability(&mv(&[0])) - 0.7).abs() < 1e-14);
        assert!((table.captured_mass() - 1.0).abs() < 1e-14);
        assert!(table.exact_support());
    }

    #[test]
    fn binomial_from_half_alpha() {
        let p = 0.35;
        let table = pmf_table(&KernelMatrix::scalar(2.0 * p), alpha(-0.5), 1.0).unwrap();
        let expected = [(1.0 - p) * (1.0 - p), 2.0 * p * (1.0 - p), p * p];
        for (j, e) in expected.iter().enumerate() {
            assert!((table.probability(&mv(&[j])) - e).abs() < 1e-14, "P({j})");
        }
    }

    #[test]
    fn geometric_for_alpha_one() {
        let table = pmf_table(&KernelMatrix::scalar(1.0), alpha(1.0), DEFAULT_MASS_TARGET).unwrap();
        for j in 0..10 {
            let e = 0.5f64.powi(j as i32 + 1);
            assert!((table.probability(&mv(&[j])) - e).abs() < 1e-14, "P({j})");
        }
        assert!(table.captured_mass() >= DEFAULT_MASS_TARGET);
        assert!(table.max_total() <= 31);
        assert!(!table.exact_support());
    }

    #[test]
    fn geometric_janossy_matches_closed_form() {
        let c = 0.6;
        let k = KernelMatrix::scalar(c);
        for j in 0..6 {
            let e = (1.0 + c).recip() * (c / (1.0 + c)).powi(j as i32);
            assert!((janossy_weight(&k, alpha(1.0), &mv(&[j])).unwrap() - e).abs() < 1e-14);
        }
    }

    #[test]
    fn pgf_scalar_cases() {
        let k = KernelMatrix::scalar(0.4);
        assert!((pgf(&k, alpha(-1.0), &[1.0]).unwrap() - 1.0).abs() < 1e-15);
        for z in [0.1, 0.5, 0.9] {
            assert!((pgf(&k, alpha(-1.0), &[z]).unwrap() - (0.6 + 0.4 * z)).abs() < 1e-14);
            assert!((pgf(&k, alpha(1.0), &[z]).unwrap() - 1.0 / (1.0 + 0.4 * (1.0 - z))).abs() < 1e-14);
        }
        assert!(pgf(&k, alpha(1.0), &[0.0]).is_err());
    }

    #[test]
    fn truncation_failure_on_heavy_tail() {
        // geometric with ratio 100/101 needs far more than 60 levels
        let err = pmf_table(&KernelMatrix::scalar(100.0), alpha(1.0), DEFAULT_MASS_TARGET).unwrap_err();
        assert!(matches!(err, Error::TruncationFailure { .. }));
    }

    #[test]
    fn invalid_kernel_weights_error() {
        // K = [[1.5]] with alpha = -1 would need P(1) = 1.5
        let err = pmf_table(&KernelMatrix::scalar(1.5), alpha(-1.0), 1.0).unwrap_err();
        assert!(matches!(err, Error::NegativeWeight { .. }));
    }

    #[test]
    fn sampling_is_deterministic() {
        let k = KernelMatrix::scalar(0.3);
        let a = sample(&k, alpha(-1.0), 50, 7).unwrap();
        let b = sample(&k, alpha(-1.0), 50, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.draws.len(), 50);
        let c = sample(&k, alpha(-1.0), 50, 8).unwrap();
        assert_ne!(a.draws, c.draws);
    }

    #[test]
    fn thinning_keeps_shape() {
        let k = KernelMatrix::from_real_rows(vec![vec![0.5, 0.1], vec![0.1, 0.4]]).unwrap();
        let batch = sample(&k, alpha(-1.0), 100, 1).unwrap();
        let thinned = thin(&batch, 0.5, 2).unwrap();
        assert_eq!(thinned.count, 100);
        for (x, y) in batch.draws.iter().zip(&thinned.draws) {
            assert!(x.counts().iter().zip(y.counts()).all(|(a, b)| b <= a));
        }
        assert!(thin(&batch, 1.0, 2).is_err());
    }

    #[test]
    fn factorial_moment_cases() {
        let k = KernelMatrix::from_real_rows(vec![vec![0.3, 0.1], vec![0.1, 0.2]]).unwrap();
        assert!((factorial_moment(&k, alpha(-1.0), &mv(&[1, 0])).unwrap() - 0.3).abs() < 1e-15);
        let c = 0.7;
        let v = factorial_moment(&KernelMatrix::scalar(c), alpha(1.0), &mv(&[2])).unwrap();
        assert!((v - 2.0 * c * c).abs() < 1e-15);
    }
}
