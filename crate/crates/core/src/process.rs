//! Samplers for the Poisson process and its exact-mode analog, with
//! the statistical checks built on them.
//!
//! On a continuous window `Y` the normalized measure is the classical
//! Poisson process: the point count is Poisson with mean `sigma(Y)` and
//! locations are i.i.d. from the normalized intensity. Over an exact
//! atom set the analog is the Bernoulli process that includes atom `i`
//! independently with probability `w_i` - the unique simple point
//! process whose superset masses reproduce the subset-product
//! Lebesgue-Poisson weights, which is exactly what the
//! Lebesgue-Poisson identity requires.
//!
//! Each configuration is drawn from its own counter substream
//! `(seed, index)`, so batches are bit-reproducible and independent of
//! evaluation order.

use std::io::Write;
use std::sync::Arc;

use crate::algebra::{Character, ConfigFunction};
use crate::configuration::{ConfigMask, FiniteConfiguration};
use crate::error::{Error, Result};
use crate::ground::{Density, GroundSpace, TestFunction, Window};
use crate::ktransform::{k_apply, k_apply_character};
use crate::measure::{bernoulli_mass, project, LebesguePoissonMeasure};
use crate::rng::{derive_seed, CounterStream};

/// A Monte Carlo estimate with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

impl Estimate {
    fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
        Estimate {
            value: mean,
            std_error: (var / n).sqrt(),
        }
    }
}

/// Sampler for the normalized point process on a window.
#[derive(Clone, Debug)]
pub struct ProcessSampler {
    ground: Arc<GroundSpace>,
    window: Window,
    seed: u64,
    total_intensity: f64,
}

/// A batch of sampled configurations, reproducible from
/// `(seed, parameters, count)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleBatch {
    pub configs: Vec<FiniteConfiguration>,
    pub seed: u64,
    /// Continuous-mode points redrawn because they exactly duplicated
    /// an earlier point of the same configuration.
    pub rejection_count: u64,
}

impl ProcessSampler {
    pub fn new(ground: Arc<GroundSpace>, window: Window, seed: u64) -> Result<Self> {
        let total_intensity = ground.intensity_of(&window)?;
        Ok(Self {
            ground,
            window,
            seed,
            total_intensity,
        })
    }

    pub fn ground(&self) -> &Arc<GroundSpace> {
        &self.ground
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `sigma(Y)` for the sampler's window.
    pub fn total_intensity(&self) -> f64 {
        self.total_intensity
    }

    pub fn sample(&self, count: usize) -> Result<SampleBatch> {
        if count == 0 {
            return Err(Error::EmptySample);
        }
        let root = CounterStream::from_seed(self.seed);
        let mut configs = Vec::with_capacity(count);
        let mut rejections = 0u64;
        for index in 0..count {
            let mut stream = root.substream(index as u64);
            configs.push(self.sample_one(&mut stream, &mut rejections)?);
        }
        Ok(SampleBatch {
            configs,
            seed: self.seed,
            rejection_count: rejections,
        })
    }

    fn sample_one(
        &self,
        stream: &mut CounterStream,
        rejections: &mut u64,
    ) -> Result<FiniteConfiguration> {
        match &self.window {
            Window::Atoms(mask) => {
                let weights = self.ground.weights()?;
                let mut included = ConfigMask::EMPTY;
                for i in mask.atoms() {
                    if stream.next_f64() < weights[i] {
                        included = included.insert(i);
                    }
                }
                Ok(FiniteConfiguration::Exact(included))
            }
            Window::Box(region) => {
                let density = self.ground.density()?;
                let count = stream.poisson(self.total_intensity) as usize;
                let mut points: Vec<Vec<f64>> = Vec::with_capacity(count);
                while points.len() < count {
                    let candidate = self.draw_location(region, density, stream);
                    if points.contains(&candidate) {
                        *rejections += 1;
                        continue;
                    }
                    points.push(candidate);
                }
                FiniteConfiguration::continuous(points)
            }
        }
    }

    fn draw_location(
        &self,
        region: &crate::ground::BoxRegion,
        density: &Density,
        stream: &mut CounterStream,
    ) -> Vec<f64> {
        let d = region.dim();
        loop {
            let x: Vec<f64> = (0..d)
                .map(|a| stream.uniform(region.lo()[a], region.hi()[a]))
                .collect();
            match density {
                Density::Constant(_) => return x,
                Density::Custom { sup_bound, .. } => {
                    if stream.next_f64() * sup_bound <= density.eval(&x) {
                        return x;
                    }
                }
            }
        }
    }

    /// Monte Carlo estimate of the Laplace functional
    /// `E exp(<gamma, f>)` with its standard error.
    pub fn laplace_estimate(&self, f: &TestFunction, count: usize) -> Result<Estimate> {
        self.check_supported(f)?;
        let batch = self.sample(count)?;
        let samples: Result<Vec<f64>> = batch
            .configs
            .iter()
            .map(|gamma| Ok(crate::ground::pairing(gamma, f)?.exp()))
            .collect();
        Ok(Estimate::from_samples(&samples?))
    }

    fn check_supported(&self, f: &TestFunction) -> Result<()> {
        match (&self.window, f) {
            (Window::Atoms(mask), TestFunction::Exact(values)) => {
                let outside = values
                    .iter()
                    .enumerate()
                    .any(|(i, v)| *v != 0.0 && !mask.contains(i));
                if outside {
                    Err(Error::WindowNotContained)
                } else {
                    Ok(())
                }
            }
            (Window::Box(region), TestFunction::Continuous { support, .. }) => {
                if region.contains_box(support) {
                    Ok(())
                } else {
                    Err(Error::WindowNotContained)
                }
            }
            _ => Err(Error::ModeMismatch {
                required: "matching window and test-function modes",
                actual: "mixed",
            }),
        }
    }
}

impl SampleBatch {
    /// Mean point count with standard error.
    pub fn count_estimate(&self) -> Estimate {
        let counts: Vec<f64> = self.configs.iter().map(|c| c.level() as f64).collect();
        Estimate::from_samples(&counts)
    }

    /// One JSON object per line: index, seed, window, and the
    /// configuration (continuous points, or atom labels in exact mode).
    pub fn write_json_lines<W: Write>(
        &self,
        ground: &GroundSpace,
        window: &Window,
        out: &mut W,
    ) -> Result<()> {
        let window_json = match window {
            Window::Box(region) => serde_json::json!({"lo": region.lo(), "hi": region.hi()}),
            Window::Atoms(mask) => {
                let atoms = ground.atoms()?;
                let labels: Vec<&str> = mask.atoms().map(|i| atoms[i].label.as_str()).collect();
                serde_json::json!({ "atoms": labels })
            }
        };
        for (index, config) in self.configs.iter().enumerate() {
            let body = match config {
                FiniteConfiguration::Continuous(points) => {
                    serde_json::json!({"points": points, "window": window_json, "seed": self.seed, "index": index})
                }
                FiniteConfiguration::Exact(mask) => {
                    let atoms = ground.atoms()?;
                    let labels: Vec<&str> =
                        mask.atoms().map(|i| atoms[i].label.as_str()).collect();
                    serde_json::json!({"atoms": labels, "window": window_json, "seed": self.seed, "index": index})
                }
            };
            writeln!(out, "{body}")?;
        }
        Ok(())
    }
}

/// Exact-mode Lebesgue-Poisson identity residual, by full enumeration:
/// `| int f dlambda - sum over gamma of (Kf)(gamma) P(gamma) |` with
/// `P` the Bernoulli process of the atom weights.
pub fn lp_p_residual_exact(
    measure: &LebesguePoissonMeasure,
    f: &ConfigFunction,
) -> Result<f64> {
    let weights = measure.ground().weights()?;
    let lhs = measure.lp_integral(f)?;
    let kf = k_apply(f);
    let mut rhs = crate::scalar::Complex64::ZERO;
    for gamma in ConfigMask::full(weights.len()).subsets() {
        rhs += kf.eval_mask(gamma)? * bernoulli_mass(&weights, gamma);
    }
    Ok((lhs - rhs).norm())
}

/// Monte Carlo residual of the Lebesgue-Poisson identity for a
/// (sub)character: closed-form `int chi dlambda` against the sampled
/// mean of `K chi` under the process.
pub fn lp_p_residual_mc(
    sampler: &ProcessSampler,
    chi: &Character,
    count: usize,
) -> Result<Estimate> {
    let measure = LebesguePoissonMeasure::new(Arc::clone(sampler.ground()));
    let lhs = measure.lp_integral_character(chi)?;
    let observable = k_apply_character(chi);
    let batch = sampler.sample(count)?;
    let samples: Result<Vec<f64>> = batch
        .configs
        .iter()
        .map(|gamma| observable.eval(gamma))
        .collect();
    let estimate = Estimate::from_samples(&samples?);
    Ok(Estimate {
        value: (estimate.value - lhs).abs(),
        std_error: estimate.std_error,
    })
}

/// Two-sample comparison between projected and directly sampled
/// configurations on a sub-window.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ConsistencyReport {
    pub mean_projected: f64,
    pub mean_direct: f64,
    /// Standard error of the mean difference.
    pub mean_std_error: f64,
    pub var_projected: f64,
    pub var_direct: f64,
    pub var_std_error: f64,
    /// Total variation distance between the two count histograms.
    pub tv_distance: f64,
    pub mean_pass: bool,
    pub var_pass: bool,
}

impl ConsistencyReport {
    pub fn pass(&self) -> bool {
        self.mean_pass && self.var_pass
    }
}

fn count_moments(counts: &[f64]) -> (f64, f64, f64) {
    let n = counts.len() as f64;
    let mean = counts.iter().sum::<f64>() / n;
    let var = counts.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let m4 = counts.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n;
    // asymptotic standard error of the sample variance
    let var_se = ((m4 - var * var).max(0.0) / n).sqrt();
    (mean, var, var_se)
}

fn tv_distance(a: &[f64], b: &[f64]) -> f64 {
    let max = a
        .iter()
        .chain(b)
        .fold(0.0f64, |acc, &x| acc.max(x))
        .round() as usize;
    let histogram = |xs: &[f64]| {
        let mut h = vec![0.0; max + 1];
        for &x in xs {
            h[x as usize] += 1.0 / xs.len() as f64;
        }
        h
    };
    let (ha, hb) = (histogram(a), histogram(b));
    0.5 * ha.iter().zip(&hb).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

/// Project samples from `y1` onto `y2` and compare against direct
/// sampling on `y2`: count mean and variance at three standard errors,
/// plus the count-histogram total variation distance.
pub fn consistency_check(
    ground: &Arc<GroundSpace>,
    y1: &Window,
    y2: &Window,
    seed: u64,
    count: usize,
) -> Result<ConsistencyReport> {
    if !y1.contains_window(y2) {
        return Err(Error::WindowNotNested {
            inner: y2.describe(),
            outer: y1.describe(),
        });
    }
    let outer = ProcessSampler::new(Arc::clone(ground), y1.clone(), derive_seed(seed, 1))?;
    let inner = ProcessSampler::new(Arc::clone(ground), y2.clone(), derive_seed(seed, 2))?;
    let projected: Result<Vec<f64>> = outer
        .sample(count)?
        .configs
        .iter()
        .map(|gamma| Ok(project(gamma, y2)?.level() as f64))
        .collect();
    let projected = projected?;
    let direct: Vec<f64> = inner
        .sample(count)?
        .configs
        .iter()
        .map(|gamma| gamma.level() as f64)
        .collect();

    let (mean_p, var_p, var_se_p) = count_moments(&projected);
    let (mean_d, var_d, var_se_d) = count_moments(&direct);
    let n = count as f64;
    let mean_se = ((var_p + var_d) / n).sqrt().max(f64::MIN_POSITIVE);
    let var_se = (var_se_p.powi(2) + var_se_d.powi(2))
        .sqrt()
        .max(f64::MIN_POSITIVE);
    Ok(ConsistencyReport {
        mean_projected: mean_p,
        mean_direct: mean_d,
        mean_std_error: mean_se,
        var_projected: var_p,
        var_direct: var_d,
        var_std_error: var_se,
        tv_distance: tv_distance(&projected, &direct),
        mean_pass: (mean_p - mean_d).abs() <= 3.0 * mean_se,
        var_pass: (var_p - var_d).abs() <= 3.0 * var_se,
    })
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct TrendRow {
    pub sigma: f64,
    pub observed_fraction: f64,
    pub predicted_fraction: f64,
    pub std_error: f64,
    pub pass: bool,
}

/// Decay of the probability that a sample stays inside the first
/// window as the sampling window grows.
#[derive(Clone, Debug, serde::Serialize)]
pub struct TrendReport {
    /// False when the windows are not nested with strictly increasing
    /// intensity.
    pub valid_schedule: bool,
    pub rows: Vec<TrendRow>,
}

impl TrendReport {
    pub fn pass(&self) -> bool {
        self.valid_schedule && self.rows.iter().all(|r| r.pass)
    }
}

/// Empirical fraction of samples on each `Y_n` contained in the fixed
/// compact `Lambda = windows[0]`, against the closed-form void
/// probability of `Y_n` minus `Lambda`: `exp(-(sigma(Y_n) -
/// sigma(Lambda)))` in continuous mode, the product of `1 - w_i` over
/// the extra atoms in exact mode.
pub fn finite_mass_trend(
    ground: &Arc<GroundSpace>,
    windows: &[Window],
    seed: u64,
    count: usize,
) -> Result<TrendReport> {
    if windows.is_empty() {
        return Ok(TrendReport {
            valid_schedule: false,
            rows: Vec::new(),
        });
    }
    let sigmas: Result<Vec<f64>> = windows.iter().map(|w| ground.intensity_of(w)).collect();
    let sigmas = sigmas?;
    let nested = windows
        .windows(2)
        .all(|pair| pair[1].contains_window(&pair[0]));
    let increasing = sigmas.windows(2).all(|pair| pair[1] > pair[0]);
    if !nested || (windows.len() > 1 && !increasing) {
        return Ok(TrendReport {
            valid_schedule: false,
            rows: Vec::new(),
        });
    }
    let lambda_window = &windows[0];
    let mut rows = Vec::with_capacity(windows.len());
    for (k, window) in windows.iter().enumerate() {
        let predicted = match (window, lambda_window) {
            (Window::Atoms(big), Window::Atoms(small)) => {
                let weights = ground.weights()?;
                big.minus(*small)
                    .atoms()
                    .map(|i| 1.0 - weights[i])
                    .product()
            }
            _ => (-(sigmas[k] - sigmas[0])).exp(),
        };
        let sampler = ProcessSampler::new(
            Arc::clone(ground),
            window.clone(),
            derive_seed(seed, k as u64),
        )?;
        let batch = sampler.sample(count)?;
        let contained = batch
            .configs
            .iter()
            .filter(|gamma| match project(gamma, lambda_window) {
                Ok(projected) => projected == **gamma,
                Err(_) => false,
            })
            .count();
        let observed = contained as f64 / count as f64;
        let std_error = (predicted * (1.0 - predicted) / count as f64)
            .sqrt()
            .max(1.0 / count as f64);
        rows.push(TrendRow {
            sigma: sigmas[k],
            observed_fraction: observed,
            predicted_fraction: predicted,
            std_error,
            pass: (observed - predicted).abs() <= 3.0 * std_error,
        });
    }
    Ok(TrendReport {
        valid_schedule: true,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::BoxRegion;
    use approx::assert_abs_diff_eq;

    fn unit_ground(hi: f64) -> Arc<GroundSpace> {
        GroundSpace::continuous(
            BoxRegion::interval(0.0, hi).unwrap(),
            Density::Constant(1.0),
        )
        .unwrap()
    }

    #[test]
    fn zero_intensity_samples_are_empty() {
        let g = GroundSpace::continuous(
            BoxRegion::interval(0.0, 1.0).unwrap(),
            Density::Constant(0.0),
        )
        .unwrap();
        let sampler = ProcessSampler::new(Arc::clone(&g), g.full_window(), 1).unwrap();
        let batch = sampler.sample(100).unwrap();
        assert!(batch.configs.iter().all(|c| c.is_empty()));
    }

    #[test]
    fn count_law_matches_intensity() {
        let g = unit_ground(2.0);
        let sampler = ProcessSampler::new(Arc::clone(&g), g.full_window(), 42).unwrap();
        let batch = sampler.sample(100_000).unwrap();
        let counts = batch.count_estimate();
        let tol = 3.0 * (2.0f64 / 100_000.0).sqrt();
        assert!(
            (counts.value - 2.0).abs() < tol,
            "mean {} (tol {tol})",
            counts.value
        );
    }

    #[test]
    fn exact_sampler_matches_bernoulli_marginals() {
        let g = GroundSpace::exact([("a", 0.5), ("b", 0.25)]).unwrap();
        let sampler = ProcessSampler::new(Arc::clone(&g), g.full_window(), 7).unwrap();
        let n = 100_000;
        let batch = sampler.sample(n).unwrap();
        let freq_a = batch
            .configs
            .iter()
            .filter(|c| matches!(c, FiniteConfiguration::Exact(m) if m.contains(0)))
            .count() as f64
            / n as f64;
        let tol = 3.0 * (0.25f64 / n as f64).sqrt();
        assert!((freq_a - 0.5).abs() < tol, "freq {freq_a}");
    }

    #[test]
    fn batches_are_bit_reproducible() {
        let g = unit_ground(1.5);
        let sampler = ProcessSampler::new(Arc::clone(&g), g.full_window(), 99).unwrap();
        let a = sampler.sample(500).unwrap();
        let b = sampler.sample(500).unwrap();
        assert_eq!(a, b);
        let other = ProcessSampler::new(Arc::clone(&g), g.full_window(), 100).unwrap();
        assert_ne!(other.sample(500).unwrap(), a);
    }

    #[test]
    fn laplace_of_zero_function_is_exactly_one() {
        let g = unit_ground(1.0);
        let sampler = ProcessSampler::new(Arc::clone(&g), g.full_window(), 5).unwrap();
        let zero = TestFunction::box_indicator(BoxRegion::interval(0.0, 1.0).unwrap(), 0.0);
        let est = sampler.laplace_estimate(&zero, 1000).unwrap();
        assert_eq!(est.value, 1.0);
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn laplace_matches_closed_form_continuous() {
        // f = ln 2 on [0, 1]: E e^{<gamma,f>} = exp(int (e^f - 1)) = e
        let g = unit_ground(1.0);
        let sampler = ProcessSampler::new(Arc::clone(&g), g.full_window(), 11).unwrap();
        let f = TestFunction::box_indicator(
            BoxRegion::interval(0.0, 1.0).unwrap(),
            2.0f64.ln(),
        );
        let est = sampler.laplace_estimate(&f, 100_000).unwrap();
        let expected = std::f64::consts::E;
        assert!(
            (est.value - expected).abs() <= 3.0 * est.std_error,
            "estimate {} +- {} vs {expected}",
            est.value,
            est.std_error
        );
    }

    #[test]
    fn laplace_matches_closed_form_exact() {
        // single atom w = 0.5, f = ln 3: E e^{<gamma,f>} = 1 - w + 3w = 2
        let g = GroundSpace::exact([("a", 0.5)]).unwrap();
        let sampler = ProcessSampler::new(Arc::clone(&g), g.full_window(), 13).unwrap();
        let f = TestFunction::exact(vec![3.0f64.ln()]);
        let est = sampler.laplace_estimate(&f, 100_000).unwrap();
        assert!(
            (est.value - 2.0).abs() <= 3.0 * est.std_error,
            "estimate {} +- {}",
            est.value,
            est.std_error
        );
    }

    #[test]
    fn laplace_rejects_unsupported_functions() {
        let g = unit_ground(1.0);
        let small = g
            .window_of_box(BoxRegion::interval(0.0, 0.5).unwrap())
            .unwrap();
        let sampler = ProcessSampler::new(Arc::clone(&g), small, 3).unwrap();
        let f = TestFunction::box_indicator(BoxRegion::interval(0.0, 1.0).unwrap(), 1.0);
        assert!(matches!(
            sampler.laplace_estimate(&f, 10),
            Err(Error::WindowNotContained)
        ));
    }

    #[test]
    fn reported_se_is_consistent_with_batch_means() {
        let g = unit_ground(1.0);
        let sampler = ProcessSampler::new(Arc::clone(&g), g.full_window(), 17).unwrap();
        let f = TestFunction::box_indicator(BoxRegion::interval(0.0, 1.0).unwrap(), 0.5);
        let n = 40_000;
        let est = sampler.laplace_estimate(&f, n).unwrap();
        // recompute per-sample values in 20 disjoint batches
        let batch = sampler.sample(n).unwrap();
        let values: Vec<f64> = batch
            .configs
            .iter()
            .map(|gamma| crate::ground::pairing(gamma, &f).unwrap().exp())
            .collect();
        let k = 20;
        let per = n / k;
        let means: Vec<f64> = (0..k)
            .map(|b| values[b * per..(b + 1) * per].iter().sum::<f64>() / per as f64)
            .collect();
        let grand = means.iter().sum::<f64>() / k as f64;
        let batch_var =
            means.iter().map(|m| (m - grand).powi(2)).sum::<f64>() / (k as f64 - 1.0);
        let batch_se = (batch_var / k as f64).sqrt();
        let ratio = est.std_error / batch_se;
        assert!(
            (0.5..2.0).contains(&ratio),
            "SE {} vs batch-means {} (ratio {ratio})",
            est.std_error,
            batch_se
        );
    }

    #[test]
    fn lp_p_identity_exact_enumeration() {
        let g = GroundSpace::exact([("a", 0.5), ("b", 0.25), ("c", 0.7)]).unwrap();
        let measure = LebesguePoissonMeasure::new(Arc::clone(&g));
        let ia = ConfigFunction::<crate::scalar::Complex64>::indicator(&g, ConfigMask(0b001))
            .unwrap();
        assert!(lp_p_residual_exact(&measure, &ia).unwrap() < 1e-15);
        let e = ConfigFunction::<crate::scalar::Complex64>::unit(&g).unwrap();
        assert!(lp_p_residual_exact(&measure, &e).unwrap() < 1e-15);
        let mut stream = CounterStream::from_seed(19);
        for _ in 0..10 {
            let f =
                ConfigFunction::<crate::scalar::Complex64>::random(&g, 3, &mut stream).unwrap();
            assert!(lp_p_residual_exact(&measure, &f).unwrap() < 1e-13);
        }
    }

    #[test]
    fn lp_p_identity_monte_carlo() {
        let g = unit_ground(1.0);
        let sampler = ProcessSampler::new(Arc::clone(&g), g.full_window(), 23).unwrap();
        let phi = TestFunction::box_indicator(BoxRegion::interval(0.0, 1.0).unwrap(), 0.7);
        let residual =
            lp_p_residual_mc(&sampler, &Character::truncated(phi, 12), 100_000).unwrap();
        assert!(
            residual.value <= 3.0 * residual.std_error,
            "residual {} +- {}",
            residual.value,
            residual.std_error
        );
    }

    #[test]
    fn consistency_between_projection_and_direct_sampling() {
        let g = unit_ground(2.0);
        let y1 = g.full_window();
        let y2 = g
            .window_of_box(BoxRegion::interval(0.0, 1.0).unwrap())
            .unwrap();
        let report = consistency_check(&g, &y1, &y2, 29, 100_000).unwrap();
        assert!(report.pass(), "{report:?}");
        assert!((report.mean_projected - 1.0).abs() < 0.02);

        // identical windows: identical distribution
        let same = consistency_check(&g, &y1, &y1, 31, 20_000).unwrap();
        assert!(same.pass(), "{same:?}");

        // exact-mode marginal
        let ge = GroundSpace::exact([("a", 0.5), ("b", 0.25)]).unwrap();
        let report = consistency_check(
            &ge,
            &ge.full_window(),
            &ge.window_of_labels(&["a"]).unwrap(),
            37,
            50_000,
        )
        .unwrap();
        assert!(report.pass(), "{report:?}");
    }

    #[test]
    fn consistency_requires_nested_windows() {
        let g = unit_ground(1.0);
        let y_small = g
            .window_of_box(BoxRegion::interval(0.0, 0.5).unwrap())
            .unwrap();
        let err = consistency_check(&g, &y_small, &g.full_window(), 1, 10).unwrap_err();
        assert!(matches!(err, Error::WindowNotNested { .. }));
    }

    #[test]
    fn containment_fraction_decays_like_the_void_probability() {
        let g = unit_ground(4.0);
        let windows: Vec<Window> = (1..=4)
            .map(|k| {
                g.window_of_box(BoxRegion::interval(0.0, k as f64).unwrap())
                    .unwrap()
            })
            .collect();
        let report = finite_mass_trend(&g, &windows, 41, 50_000).unwrap();
        assert!(report.valid_schedule);
        assert_eq!(report.rows.len(), 4);
        assert_abs_diff_eq!(report.rows[0].observed_fraction, 1.0);
        assert!(report.pass(), "{report:?}");
        // the prediction decays like e^{-(sigma_n - sigma_1)}
        assert_abs_diff_eq!(
            report.rows[2].predicted_fraction,
            (-2.0f64).exp(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn degenerate_schedule_is_flagged() {
        let g = unit_ground(1.0);
        let w = g.full_window();
        let report = finite_mass_trend(&g, &[w.clone(), w.clone()], 1, 10).unwrap();
        assert!(!report.valid_schedule);
        assert!(report.rows.is_empty());
    }

    #[test]
    fn single_window_trend_is_trivially_full() {
        let g = unit_ground(1.0);
        let report = finite_mass_trend(&g, &[g.full_window()], 1, 100).unwrap();
        assert!(report.valid_schedule);
        assert_eq!(report.rows[0].observed_fraction, 1.0);
        assert_eq!(report.rows[0].predicted_fraction, 1.0);
    }

    #[test]
    fn positive_intensity_regions_are_hit() {
        // event {gamma hits B} has frequency 1 - e^{-sigma(B)}
        let g = unit_ground(2.0);
        let sampler = ProcessSampler::new(Arc::clone(&g), g.full_window(), 47).unwrap();
        let n = 50_000;
        let batch = sampler.sample(n).unwrap();
        let b = BoxRegion::interval(0.5, 1.0).unwrap();
        let hits = batch
            .configs
            .iter()
            .filter(|c| match c {
                FiniteConfiguration::Continuous(pts) => {
                    pts.iter().any(|p| b.contains_point(p))
                }
                _ => false,
            })
            .count() as f64
            / n as f64;
        let predicted = 1.0 - (-0.5f64).exp();
        let se = (predicted * (1.0 - predicted) / n as f64).sqrt();
        assert!(hits > 0.0);
        assert!((hits - predicted).abs() <= 3.0 * se, "hits {hits}");
    }

    #[test]
    fn json_lines_round_trip_shape() {
        let g = unit_ground(1.0);
        let sampler = ProcessSampler::new(Arc::clone(&g), g.full_window(), 3).unwrap();
        let batch = sampler.sample(5).unwrap();
        let mut buf = Vec::new();
        batch
            .write_json_lines(&g, sampler.window(), &mut buf)
            .unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        for (i, line) in lines.iter().enumerate() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["index"], i as u64);
            assert_eq!(v["seed"], 3);
            assert!(v["points"].is_array());
            assert_eq!(v["window"]["lo"][0], 0.0);
        }
    }
}
