//! Monte Carlo sampling of the largest eigenvalue of GOE and GUE matrices,
//! empirical distribution functions and histograms at edge scaling.
//!
//! Matrices follow the density `∝ exp{−(β/2) tr M²}`: GOE has diagonal
//! variance 1 and off-diagonal variance ½; GUE has diagonal variance ½ and
//! off-diagonal entries with variance ¼ in each of the real and imaginary
//! parts.

use nalgebra::linalg::SymmetricTridiagonal;
use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};
use rayon::prelude::*;

use crate::fredholm::{tw_quantile, Beta};
use crate::specfun::{centering, CenteringSpec, Ensemble};
use crate::{Error, Result};

/// How a sample matrix is generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Full matrix, reduced to tridiagonal form by Householder reflections.
    Dense,
    /// Random tridiagonal matrix with the same eigenvalue law.
    Tridiagonal,
}

/// Largest size for which [`Model::for_size`] picks the dense model.
pub const DENSE_LIMIT: usize = 64;

impl Model {
    pub fn for_size(n: usize) -> Self {
        if n > DENSE_LIMIT {
            Model::Tridiagonal
        } else {
            Model::Dense
        }
    }
}

/// A sampling run. `n` is the matrix dimension, which for GOE is `N + 1`
/// in the indexing of [`CenteringSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleConfig {
    pub ensemble: Ensemble,
    pub n: usize,
    pub model: Model,
    pub seed: u64,
    pub reps: usize,
}

impl SampleConfig {
    pub fn new(ensemble: Ensemble, n: usize, seed: u64, reps: usize) -> Self {
        SampleConfig {
            ensemble,
            n,
            model: Model::for_size(n),
            seed,
            reps,
        }
    }

    pub fn with_model(self, model: Model) -> Self {
        SampleConfig { model, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Usage(format!(
                "matrix size must be at least 2, got {}",
                self.n
            )));
        }
        if self.reps == 0 {
            return Err(Error::Usage("at least one replication is needed".into()));
        }
        Ok(())
    }

    /// Generator for replication `rep`: one ChaCha stream per replication.
    fn rng(&self, rep: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(rep as u64);
        rng
    }
}

fn normal(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

fn chi(k: usize, rng: &mut impl Rng) -> f64 {
    ChiSquared::new(k as f64)
        .expect("positive degrees of freedom")
        .sample(rng)
        .sqrt()
}

/// `(diagonal, off-diagonal)` of a random tridiagonal matrix.
fn tridiagonal(ensemble: Ensemble, n: usize, rng: &mut impl Rng) -> (Vec<f64>, Vec<f64>) {
    match ensemble {
        Ensemble::Goe => {
            let d = (0..n).map(|_| normal(rng)).collect();
            let e = (1..n).map(|i| chi(n - i, rng) / 2f64.sqrt()).collect();
            (d, e)
        }
        Ensemble::Gue => {
            let d = (0..n).map(|_| normal(rng) / 2f64.sqrt()).collect();
            let e = (1..n).map(|i| chi(2 * (n - i), rng) / 2.0).collect();
            (d, e)
        }
    }
}

fn dense(ensemble: Ensemble, n: usize, rng: &mut impl Rng) -> (Vec<f64>, Vec<f64>) {
    let half = 0.5f64.sqrt();
    let unpack = |d: nalgebra::DVector<f64>, e: nalgebra::DVector<f64>| {
        (d.as_slice().to_vec(), e.as_slice().to_vec())
    };
    match ensemble {
        Ensemble::Goe => {
            let mut m = DMatrix::zeros(n, n);
            for j in 0..n {
                m[(j, j)] = normal(rng);
                for i in j + 1..n {
                    let v = half * normal(rng);
                    m[(i, j)] = v;
                    m[(j, i)] = v;
                }
            }
            let (d, e) = SymmetricTridiagonal::new(m).unpack_tridiagonal();
            unpack(d, e)
        }
        Ensemble::Gue => {
            let mut m = DMatrix::<Complex<f64>>::zeros(n, n);
            for j in 0..n {
                m[(j, j)] = Complex::new(half * normal(rng), 0.0);
                for i in j + 1..n {
                    let v = Complex::new(0.5 * normal(rng), 0.5 * normal(rng));
                    m[(i, j)] = v;
                    m[(j, i)] = v.conj();
                }
            }
            let (d, e) = SymmetricTridiagonal::new(m).unpack_tridiagonal();
            unpack(d, e)
        }
    }
}

/// Number of eigenvalues of the symmetric tridiagonal `(d, e)` below `x`.
fn count_below(d: &[f64], e: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..d.len() {
        let off = if i == 0 { 0.0 } else { e[i - 1] * e[i - 1] / q };
        q = d[i] - x - off;
        if q == 0.0 {
            q = -f64::EPSILON * (d[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Largest eigenvalue of the symmetric tridiagonal `(d, e)` by Sturm
/// sequence bisection to `1e−12‖T‖`.
pub fn tridiagonal_max_eigenvalue(d: &[f64], e: &[f64]) -> f64 {
    let n = d.len();
    let radius = |i: usize| {
        let l = if i > 0 { e[i - 1].abs() } else { 0.0 };
        let r = if i + 1 < n { e[i].abs() } else { 0.0 };
        l + r
    };
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut norm: f64 = 0.0;
    for (i, &di) in d.iter().enumerate() {
        lo = lo.min(di - radius(i));
        hi = hi.max(di + radius(i));
        norm = norm.max(di.abs() + radius(i));
    }
    let tol = 1e-12 * norm.max(f64::MIN_POSITIVE);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if count_below(d, e, mid) == n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

fn one_sample(cfg: &SampleConfig, rep: usize) -> f64 {
    let mut rng = cfg.rng(rep);
    let (d, e) = match cfg.model {
        Model::Dense => dense(cfg.ensemble, cfg.n, &mut rng),
        Model::Tridiagonal => tridiagonal(cfg.ensemble, cfg.n, &mut rng),
    };
    tridiagonal_max_eigenvalue(&d, &e)
}

/// `R` largest eigenvalues, in replication order. Replications run in
/// parallel; each uses its own generator stream, so the output does not
/// depend on scheduling.
pub fn largest_eigenvalue_sample(cfg: &SampleConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    Ok((0..cfg.reps)
        .into_par_iter()
        .map(|rep| one_sample(cfg, rep))
        .collect())
}

/// `(μ, τ)` for samples of `cfg` under `spec`; GOE matrices of size `n`
/// use the constants with subscript `n − 1`.
pub fn sample_centering(cfg: &SampleConfig, spec: &CenteringSpec) -> Result<(f64, f64)> {
    if spec.ensemble != cfg.ensemble {
        return Err(Error::Usage("centering and sample ensembles differ".into()));
    }
    let n = match cfg.ensemble {
        Ensemble::Gue => cfg.n,
        Ensemble::Goe => cfg.n - 1,
    };
    centering(spec, n)
}

/// `(x − μ)/τ` for every sample.
pub fn rescaled_sample(cfg: &SampleConfig, spec: &CenteringSpec) -> Result<Vec<f64>> {
    let (mu, tau) = sample_centering(cfg, spec)?;
    Ok(largest_eigenvalue_sample(cfg)?
        .into_iter()
        .map(|x| (x - mu) / tau)
        .collect())
}

/// Empirical distribution function at a grid of points.
#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    pub s_values: Vec<f64>,
    /// Number of samples `≤ s` at each grid point.
    pub counts: Vec<u64>,
    pub p_hat: Vec<f64>,
    /// `√(p̂(1 − p̂)/R)`.
    pub stderr: Vec<f64>,
    pub reps: usize,
    /// Seeds of the runs that contributed.
    pub seeds: Vec<u64>,
}

impl McEstimate {
    fn from_counts(s_values: Vec<f64>, counts: Vec<u64>, reps: usize, seeds: Vec<u64>) -> Self {
        let r = reps as f64;
        let p_hat: Vec<f64> = counts.iter().map(|&c| c as f64 / r).collect();
        let stderr = p_hat.iter().map(|p| (p * (1.0 - p) / r).sqrt()).collect();
        McEstimate {
            s_values,
            counts,
            p_hat,
            stderr,
            reps,
            seeds,
        }
    }

    /// Empirical CDF of `samples` at `s_values`.
    pub fn from_samples(samples: &[f64], s_values: &[f64], seeds: Vec<u64>) -> Self {
        let mut sorted = samples.to_vec();
        sorted.sort_by(f64::total_cmp);
        let counts = s_values
            .iter()
            .map(|&s| sorted.partition_point(|&x| x <= s) as u64)
            .collect();
        Self::from_counts(s_values.to_vec(), counts, samples.len(), seeds)
    }

    /// Combine two independent runs on the same grid.
    pub fn pool(&self, other: &McEstimate) -> Result<McEstimate> {
        if self.s_values != other.s_values {
            return Err(Error::Usage("pooled estimates need the same grid".into()));
        }
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(a, b)| a + b)
            .collect();
        let mut seeds = self.seeds.clone();
        seeds.extend(&other.seeds);
        Ok(Self::from_counts(
            self.s_values.clone(),
            counts,
            self.reps + other.reps,
            seeds,
        ))
    }
}

/// Fraction of rescaled samples at or below `tw_quantile(β, α)` for each `α`.
pub fn mc_cdf(cfg: &SampleConfig, spec: &CenteringSpec, alphas: &[f64]) -> Result<McEstimate> {
    let beta = match cfg.ensemble {
        Ensemble::Gue => Beta::Two,
        Ensemble::Goe => Beta::One,
    };
    let grid = alphas
        .iter()
        .map(|&a| tw_quantile(beta, a))
        .collect::<Result<Vec<_>>>()?;
    mc_cdf_at(cfg, spec, &grid)
}

/// Fraction of rescaled samples at or below each grid point.
pub fn mc_cdf_at(cfg: &SampleConfig, spec: &CenteringSpec, s_values: &[f64]) -> Result<McEstimate> {
    let samples = rescaled_sample(cfg, spec)?;
    Ok(McEstimate::from_samples(&samples, s_values, vec![cfg.seed]))
}

/// Histogram range used by [`mc_density`].
pub const DENSITY_RANGE: (f64, f64) = (-6.0, 4.0);

/// Density histogram normalised by the total sample count, so its mass is
/// the fraction of samples inside the range.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub lo: f64,
    pub width: f64,
    pub heights: Vec<f64>,
    pub reps: usize,
}

impl Histogram {
    pub fn from_samples(samples: &[f64], lo: f64, hi: f64, bins: usize) -> Self {
        let width = (hi - lo) / bins as f64;
        let mut counts = vec![0u64; bins];
        for &x in samples {
            if (lo..hi).contains(&x) {
                let b = (((x - lo) / width) as usize).min(bins - 1);
                counts[b] += 1;
            }
        }
        let scale = 1.0 / (samples.len() as f64 * width);
        Histogram {
            lo,
            width,
            heights: counts.iter().map(|&c| c as f64 * scale).collect(),
            reps: samples.len(),
        }
    }

    pub fn centres(&self) -> Vec<f64> {
        (0..self.heights.len())
            .map(|i| self.lo + (i as f64 + 0.5) * self.width)
            .collect()
    }

    pub fn mass(&self) -> f64 {
        self.heights.iter().sum::<f64>() * self.width
    }

    /// Centre of the tallest bin.
    pub fn mode(&self) -> f64 {
        let i = self
            .heights
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map_or(0, |(i, _)| i);
        self.lo + (i as f64 + 0.5) * self.width
    }
}

/// Histogram of rescaled samples on `[−6, 4]`.
pub fn mc_density(cfg: &SampleConfig, spec: &CenteringSpec, bins: usize) -> Result<Histogram> {
    if bins < 10 {
        return Err(Error::Usage(format!(
            "at least 10 bins are needed, got {bins}"
        )));
    }
    let samples = rescaled_sample(cfg, spec)?;
    Ok(Histogram::from_samples(
        &samples,
        DENSITY_RANGE.0,
        DENSITY_RANGE.1,
        bins,
    ))
}

/// Two-sample Kolmogorov–Smirnov statistic `sup |F_a − F_b|`.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> f64 {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    let (n, m) = (x.len() as f64, y.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < x.len() && j < y.len() {
        let v = x[i].min(y[j]);
        while i < x.len() && x[i] <= v {
            i += 1;
        }
        while j < y.len() && y[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

/// Asymptotic two-sample KS critical value `c(α)√((n+m)/(nm))` with
/// `c(α) = √(−½ ln(α/2))`.
pub fn ks_critical(n: usize, m: usize, alpha: f64) -> f64 {
    let c = (-0.5 * (alpha / 2.0).ln()).sqrt();
    let (n, m) = (n as f64, m as f64);
    c * ((n + m) / (n * m)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sturm_bisection_matches_dense_solver() {
        let d = [1.0, -2.0, 0.5, 3.0, 0.0];
        let e = [0.3, 1.2, -0.7, 0.9];
        let m = DMatrix::from_fn(5, 5, |i, j| {
            if i == j {
                d[i]
            } else if i + 1 == j {
                e[i]
            } else if j + 1 == i {
                e[j]
            } else {
                0.0
            }
        });
        let want = m.symmetric_eigenvalues().max();
        assert!((tridiagonal_max_eigenvalue(&d, &e) - want).abs() < 1e-11);
        assert_eq!(count_below(&d, &e, want + 1e-9), 5);
    }

    #[test]
    fn dense_reduction_preserves_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for ens in [Ensemble::Goe, Ensemble::Gue] {
            let mut r1 = rng.clone();
            let (d, e) = dense(ens, 6, &mut r1);
            let top = tridiagonal_max_eigenvalue(&d, &e);
            // Rebuild the same matrix from the same stream.
            let mut r2 = rng.clone();
            let want = match ens {
                Ensemble::Goe => {
                    let mut m = DMatrix::zeros(6, 6);
                    for j in 0..6 {
                        m[(j, j)] = normal(&mut r2);
                        for i in j + 1..6 {
                            let v = 0.5f64.sqrt() * normal(&mut r2);
                            m[(i, j)] = v;
                            m[(j, i)] = v;
                        }
                    }
                    m.symmetric_eigenvalues().max()
                }
                Ensemble::Gue => {
                    let mut m = DMatrix::<Complex<f64>>::zeros(6, 6);
                    for j in 0..6 {
                        m[(j, j)] = Complex::new(0.5f64.sqrt() * normal(&mut r2), 0.0);
                        for i in j + 1..6 {
                            let v = Complex::new(0.5 * normal(&mut r2), 0.5 * normal(&mut r2));
                            m[(i, j)] = v;
                            m[(j, i)] = v.conj();
                        }
                    }
                    m.symmetric_eigenvalues().max()
                }
            };
            assert!((top - want).abs() < 1e-10, "{ens:?}");
            rng = r1;
        }
    }

    #[test]
    fn second_moments_match_density() {
        // E tr M² = n + n(n−1)/2 (GOE) and n²/2 (GUE); tridiagonal forms
        // preserve the trace of the square.
        let n = 6;
        let reps = 40_000;
        for (ens, want) in [(Ensemble::Goe, 6.0 + 15.0), (Ensemble::Gue, 18.0)] {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let mut total = 0.0;
            for _ in 0..reps {
                let (d, e) = tridiagonal(ens, n, &mut rng);
                total += d.iter().map(|x| x * x).sum::<f64>()
                    + 2.0 * e.iter().map(|x| x * x).sum::<f64>();
            }
            let mean = total / reps as f64;
            assert!((mean - want).abs() < 0.03 * want, "{ens:?}: {mean}");
        }
    }

    #[test]
    fn seeded_streams_are_reproducible() {
        let cfg = SampleConfig::new(Ensemble::Goe, 5, 42, 200);
        let a = largest_eigenvalue_sample(&cfg).unwrap();
        let b = largest_eigenvalue_sample(&cfg).unwrap();
        assert_eq!(a, b);
        let c = largest_eigenvalue_sample(&SampleConfig { seed: 43, ..cfg }).unwrap();
        assert_ne!(a, c);
        assert!(largest_eigenvalue_sample(&SampleConfig { n: 1, ..cfg }).is_err());
    }

    #[test]
    fn pooling_equals_concatenation() {
        let spec = CenteringSpec::gue_theorem();
        let grid = [-2.0, -1.0, 0.0, 1.0];
        let a = SampleConfig::new(Ensemble::Gue, 4, 1, 500);
        let b = SampleConfig { seed: 2, ..a };
        let pooled = mc_cdf_at(&a, &spec, &grid)
            .unwrap()
            .pool(&mc_cdf_at(&b, &spec, &grid).unwrap())
            .unwrap();
        let mut all = rescaled_sample(&a, &spec).unwrap();
        all.extend(rescaled_sample(&b, &spec).unwrap());
        let direct = McEstimate::from_samples(&all, &grid, vec![1, 2]);
        assert_eq!(pooled, direct);
    }

    #[test]
    fn empty_grid() {
        let cfg = SampleConfig::new(Ensemble::Gue, 3, 0, 10);
        let e = mc_cdf(&cfg, &CenteringSpec::gue_theorem(), &[]).unwrap();
        assert!(e.p_hat.is_empty());
        assert_eq!(e.reps, 10);
        assert!(mc_cdf(&cfg, &CenteringSpec::goe_theorem(), &[0.5]).is_err());
    }

    #[test]
    fn ks_statistic_examples() {
        assert_eq!(ks_statistic(&[1.0, 2.0], &[1.0, 2.0]), 0.0);
        assert_eq!(ks_statistic(&[0.0, 1.0], &[2.0, 3.0]), 1.0);
        assert!((ks_statistic(&[0.0, 2.0], &[1.0, 3.0]) - 0.5).abs() < 1e-15);
        assert!((ks_critical(100, 100, 0.05) - 1.358_1 * 0.02f64.sqrt()).abs() < 1e-3);
    }

    #[test]
    fn histogram_mass() {
        let h = Histogram::from_samples(&[-7.0, -1.0, 0.0, 0.5, 3.9], -6.0, 4.0, 10);
        assert!((h.mass() - 0.8).abs() < 1e-12);
        assert!((h.mode() - 0.5).abs() < 1e-12);
        assert_eq!(h.centres().len(), 10);
    }

    proptest! {
        #[test]
        fn estimate_is_consistent(seed in 0u64..1000, reps in 1usize..60) {
            let cfg = SampleConfig::new(Ensemble::Gue, 3, seed, reps);
            let e = mc_cdf_at(&cfg, &CenteringSpec::gue_theorem(), &[-1.0, 0.0, 1.0]).unwrap();
            for (p, s) in e.p_hat.iter().zip(&e.stderr) {
                prop_assert!((0.0..=1.0).contains(p));
                prop_assert!((s - (p * (1.0 - p) / reps as f64).sqrt()).abs() <= 1e-15);
            }
            prop_assert!(e.p_hat.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
