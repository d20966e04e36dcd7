mod common;

use std::collections::HashMap;

use alphadet::distribution::{
    factorial_moment, janossy_weight, pgf, pmf_table, sample, superpose_sample, thin, validate_moments, PmfTable,
    SampleBatch, DEFAULT_MASS_TARGET,
};
use alphadet::divisibility::nfold_component;
use alphadet::{AlphaParam, Complex64, KernelMatrix, MultiplicityVector};
use common::{kernel_from_nonneg_j, random_psd_kernel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn alpha(a: f64) -> AlphaParam {
    AlphaParam::new(a).unwrap()
}

fn mv(c: &[usize]) -> MultiplicityVector {
    MultiplicityVector::new(c.to_vec())
}

fn monomial(n: &MultiplicityVector, z: &[f64]) -> f64 {
    n.counts().iter().zip(z).map(|(&c, x)| x.powi(c as i32)).product()
}

/// A kernel of each kind with a valid process.
fn fixtures(rng: &mut ChaCha8Rng) -> Vec<(KernelMatrix, AlphaParam)> {
    let mut out = Vec::new();
    for d in 1..=3 {
        for m in 1..=3 {
            out.push((
                random_psd_kernel(rng, d, 0.9 * f64::from(m)),
                AlphaParam::neg_reciprocal(m),
            ));
        }
        for a in [0.5, 1.0, 2.0] {
            out.push((kernel_from_nonneg_j(rng, d, a, d % 2 == 0), alpha(a)));
        }
    }
    out
}

#[test]
fn tables_are_normalised() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for (k, a) in fixtures(&mut rng) {
        let table = pmf_table(&k, a, DEFAULT_MASS_TARGET).unwrap();
        assert!(table.entries().iter().all(|(_, p)| *p >= 0.0));
        let sum: f64 = table.entries().iter().map(|(_, p)| p).sum();
        assert!((sum - table.captured_mass()).abs() < 1e-12);
        assert!(table.captured_mass() <= 1.0 + 1e-9);
        if a.reciprocal_int().is_some() {
            assert!(table.exact_support());
            assert!((table.captured_mass() - 1.0).abs() < 1e-9, "{}", table.captured_mass());
            let m = a.reciprocal_int().unwrap() as usize;
            assert!(table.entries().iter().all(|(n, _)| n.counts().iter().all(|&c| c <= m)));
        } else {
            assert!(table.captured_mass() >= DEFAULT_MASS_TARGET);
        }
    }
}

#[test]
fn captured_mass_grows_with_target() {
    let k = KernelMatrix::from_real_rows(vec![vec![0.8, 0.2], vec![0.1, 0.6]]).unwrap();
    let mut last = 0.0;
    for target in [0.5, 0.9, 0.99, 1.0 - 1e-6, DEFAULT_MASS_TARGET] {
        let table = pmf_table(&k, alpha(1.0), target).unwrap();
        assert!(table.captured_mass() >= target && table.captured_mass() >= last);
        last = table.captured_mass();
    }
}

#[test]
fn generating_function_matches_table() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for (k, a) in fixtures(&mut rng) {
        let table = pmf_table(&k, a, DEFAULT_MASS_TARGET).unwrap();
        let slack = 1.0 - table.captured_mass();
        for _ in 0..5 {
            let z: Vec<f64> = (0..k.dim()).map(|_| rng.random_range(0.05..1.0)).collect();
            let series: f64 = table.entries().iter().map(|(n, p)| p * monomial(n, &z)).sum();
            let exact = pgf(&k, a, &z).unwrap();
            assert!((series - exact).abs() <= slack + 1e-9, "{series} vs {exact}");
        }
        assert!((pgf(&k, a, &vec![1.0; k.dim()]).unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn janossy_route_matches_table() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    for (k, a) in fixtures(&mut rng) {
        let table = pmf_table(&k, a, DEFAULT_MASS_TARGET).unwrap();
        for (n, p) in table.entries().iter().filter(|(n, _)| n.total() <= 6) {
            let w = janossy_weight(&k, a, n).unwrap();
            assert!((w - p).abs() < 1e-10, "n={n:?}: {w} vs {p}");
        }
    }
}

#[test]
fn bernoulli_and_geometric_closed_forms() {
    let p = 0.37;
    let k = KernelMatrix::scalar(p);
    let table = pmf_table(&k, alpha(-1.0), DEFAULT_MASS_TARGET).unwrap();
    assert_eq!(table.len(), 2);
    assert!((table.probability(&mv(&[1])) - p).abs() < 1e-15);
    let c = 0.8;
    let k = KernelMatrix::scalar(c);
    let table = pmf_table(&k, alpha(1.0), DEFAULT_MASS_TARGET).unwrap();
    for j in 0..20 {
        let e = (c / (1.0 + c)).powi(j) / (1.0 + c);
        assert!((table.probability(&mv(&[j as usize])) - e).abs() < 1e-14);
    }
    for z in [0.1, 0.6, 0.95] {
        assert!((pgf(&KernelMatrix::scalar(p), alpha(-1.0), &[z]).unwrap() - (1.0 - p + p * z)).abs() < 1e-15);
        assert!((pgf(&k, alpha(1.0), &[z]).unwrap() - 1.0 / (1.0 + c * (1.0 - z))).abs() < 1e-15);
    }
}

fn convolve_power(table: &PmfTable, n: u32) -> PmfTable {
    let mut acc = table.clone();
    for _ in 1..n {
        acc = acc.convolve(table);
    }
    acc
}

#[test]
fn superposition_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    for d in 1..=3 {
        for m in 2..=3u32 {
            let k = random_psd_kernel(&mut rng, d, 0.95 * f64::from(m));
            let direct = pmf_table(&k, AlphaParam::neg_reciprocal(m), 1.0).unwrap();
            let component = pmf_table(&k.scaled(1.0 / f64::from(m)), AlphaParam::neg_reciprocal(1), 1.0).unwrap();
            let tv = direct.total_variation(&convolve_power(&component, m));
            assert!(tv < 1e-12, "d={d} m={m} tv={tv}");
        }
    }
}

#[test]
fn positive_alpha_law_is_an_nfold_convolution() {
    let mut rng = ChaCha8Rng::seed_from_u64(113);
    for d in 1..=2 {
        let k = kernel_from_nonneg_j(&mut rng, d, 1.0, true);
        let full = pmf_table(&k, alpha(1.0), DEFAULT_MASS_TARGET).unwrap();
        for n in [2, 3] {
            let (root, root_alpha) = nfold_component(&k, alpha(1.0), n).unwrap();
            let piece = pmf_table(&root, root_alpha, DEFAULT_MASS_TARGET).unwrap();
            let conv = convolve_power(&piece, n);
            // the convolution of truncated tables is exact below the truncation total
            let horizon = piece.max_total().min(full.max_total());
            for (v, p) in full.entries().iter().filter(|(v, _)| v.total() <= horizon) {
                assert!((conv.probability(v) - p).abs() < 1e-12, "N={n} v={v:?}");
            }
        }
    }
}

fn histogram(batch: &SampleBatch) -> HashMap<MultiplicityVector, usize> {
    let mut h = HashMap::new();
    for x in &batch.draws {
        *h.entry(x.clone()).or_insert(0) += 1;
    }
    h
}

/// Two-sample chi-square homogeneity test at level `level`; `true` when
/// homogeneity is not rejected.
fn same_law(a: &SampleBatch, b: &SampleBatch, level: f64) -> bool {
    let (ha, hb) = (histogram(a), histogram(b));
    let mut keys: Vec<&MultiplicityVector> = ha.keys().chain(hb.keys()).collect();
    keys.sort();
    keys.dedup();
    let (na, nb) = (a.draws.len() as f64, b.draws.len() as f64);
    let mut stat = 0.0;
    for key in &keys {
        let (oa, ob) = (*ha.get(*key).unwrap_or(&0) as f64, *hb.get(*key).unwrap_or(&0) as f64);
        let pooled = (oa + ob) / (na + nb);
        stat += (oa - na * pooled).powi(2) / (na * pooled) + (ob - nb * pooled).powi(2) / (nb * pooled);
    }
    let dof = keys.len() as f64 - 1.0;
    stat <= ChiSquared::new(dof).unwrap().inverse_cdf(1.0 - level)
}

#[test]
fn superposed_and_direct_samples_agree() {
    let i = Complex64::new(0.0, 1.0);
    let k = KernelMatrix::new(
        alphadet::ComplexMatrix::from_rows(vec![
            vec![Complex64::new(1.2, 0.0), i * 0.3 + 0.2],
            vec![-i * 0.3 + 0.2, Complex64::new(0.7, 0.0)],
        ])
        .unwrap(),
    );
    let direct = sample(&k, AlphaParam::neg_reciprocal(2), 100_000, 5).unwrap();
    let superposed = superpose_sample(&k, 2, 100_000, 6).unwrap();
    assert!(same_law(&direct, &superposed, 0.001));
    // m = 1: same table, same seed, same draws
    let k1 = k.scaled(0.5);
    assert_eq!(
        sample(&k1, AlphaParam::neg_reciprocal(1), 1000, 9).unwrap().draws,
        superpose_sample(&k1, 1, 1000, 9).unwrap().draws
    );
}

#[test]
fn binomial_superposition_total_variation() {
    let p = 0.3;
    let k = KernelMatrix::scalar(2.0 * p);
    let batch = superpose_sample(&k, 2, 100_000, 21).unwrap();
    let h = histogram(&batch);
    let exact = [(1.0 - p) * (1.0 - p), 2.0 * p * (1.0 - p), p * p];
    let tv: f64 = 0.5
        * exact
            .iter()
            .enumerate()
            .map(|(j, e)| (*h.get(&mv(&[j])).unwrap_or(&0) as f64 / 1e5 - e).abs())
            .sum::<f64>();
    assert!(tv < 0.01, "{tv}");
}

#[test]
fn sample_moments_match_closed_forms() {
    let k = KernelMatrix::from_real_rows(vec![vec![0.5, 0.2], vec![0.2, 0.4]]).unwrap();
    for a in [alpha(-1.0), alpha(1.0), AlphaParam::neg_reciprocal(2)] {
        let batch = sample(&k, a, 50_000, 31).unwrap();
        assert_eq!(batch.draws.len(), batch.count);
        let checks = validate_moments(&k, a, &batch, 3).unwrap();
        assert_eq!(checks.len(), 9);
        for c in &checks {
            assert!(c.within_3se, "{c:?}");
        }
    }
}

#[test]
fn thinning_matches_scaled_kernel() {
    let k = KernelMatrix::from_real_rows(vec![vec![0.6, 0.3], vec![0.3, 0.5]]).unwrap();
    let batch = sample(&k, alpha(-1.0), 100_000, 41).unwrap();
    let thinned = thin(&batch, 0.5, 42).unwrap();
    let checks = validate_moments(&k.scaled(0.5), alpha(-1.0), &thinned, 2).unwrap();
    assert!(checks.iter().all(|c| c.within_3se), "{checks:?}");
    assert!((factorial_moment(&k.scaled(0.5), alpha(-1.0), &mv(&[1, 0])).unwrap() - 0.3).abs() < 1e-15);
}
