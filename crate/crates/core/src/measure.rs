//! The Lebesgue-Poisson measure `lambda` on finite configurations.
//!
//! The level-`n` part of `lambda` is the `n`-fold product of the
//! intensity measure restricted off diagonals, divided by `n!`. Over an
//! exact ground set the diagonal exclusion collapses the measure of a
//! single configuration `xi` to the plain weight product over its
//! atoms (the `n!` cancels against the orderings), so every integral is
//! a finite subset sum. In continuous mode integrals are provided for
//! characters and subcharacters through the exponential series of
//! `int phi dsigma`.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{Character, ConfigFunction};
use crate::configuration::{ConfigMask, FiniteConfiguration};
use crate::error::{Error, Result};
use crate::ground::{GroundSpace, Window};
use crate::scalar::{weight_to_rational, Complex64, RationalComplex};

/// Total mass of the configurations inside a window, together with the
/// exact-mode deviation flag: for atoms the subset-product total is
/// `prod (1 + w_i)`, not `exp(sigma(Y))` as for a non-atomic intensity.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaTotal {
    pub value: f64,
    /// Set when the ground space is exact, where the non-atomicity
    /// assumption behind `exp(sigma(Y))` fails by design.
    pub exact_mode_deviation: bool,
}

#[derive(Clone, Debug)]
pub struct LebesguePoissonMeasure {
    ground: Arc<GroundSpace>,
}

impl LebesguePoissonMeasure {
    pub fn new(ground: Arc<GroundSpace>) -> Self {
        Self { ground }
    }

    pub fn ground(&self) -> &Arc<GroundSpace> {
        &self.ground
    }

    /// `int f dlambda` over an exact ground set: the subset sum of
    /// `f(xi)` times the weight product of `xi`. The normalization at
    /// the empty configuration is fixed to one.
    pub fn lp_integral(&self, f: &ConfigFunction) -> Result<Complex64> {
        if !self.ground.same_exact(f.ground()) {
            return Err(Error::GroundMismatch);
        }
        let weights = self.ground.weights()?;
        let mut total = Complex64::ZERO;
        for (mask, value) in f.entries() {
            let w: f64 = mask.atoms().map(|i| weights[i]).product();
            total += value * w;
        }
        Ok(total)
    }

    /// The same subset sum in exact rational arithmetic; atom weights
    /// enter as exact dyadic rationals.
    pub fn lp_integral_rational(&self, f: &ConfigFunction<RationalComplex>) -> Result<RationalComplex> {
        if !self.ground.same_exact(f.ground()) {
            return Err(Error::GroundMismatch);
        }
        let weights: Vec<_> = self
            .ground
            .atoms()?
            .iter()
            .map(|a| weight_to_rational(a.weight))
            .collect();
        let mut total = RationalComplex::new(BigRational::zero(), BigRational::zero());
        for (mask, value) in f.entries() {
            let mut w = BigRational::one();
            for i in mask.atoms() {
                w *= &weights[i];
            }
            total += value * RationalComplex::new(w, BigRational::zero());
        }
        Ok(total)
    }

    /// `int chi dlambda` for a (sub)character, in either mode.
    ///
    /// Exact: the level sums of the expansion of `prod (1 + w_i phi_i)`.
    /// Continuous: the exponential series of `c = int phi dsigma`,
    /// truncated at the subcharacter level or summed to convergence.
    pub fn lp_integral_character(&self, chi: &Character) -> Result<f64> {
        if self.ground.is_exact() {
            let values = chi.phi.exact_values()?;
            let weights = self.ground.weights()?;
            if values.len() != weights.len() {
                return Err(Error::DimensionMismatch {
                    expected: weights.len(),
                    got: values.len(),
                });
            }
            let products: Vec<f64> = weights.iter().zip(values).map(|(w, v)| w * v).collect();
            let k = chi.truncation.unwrap_or(weights.len());
            Ok(
                crate::ktransform::elementary_symmetric_sums(&products, k.min(weights.len()))
                    .iter()
                    .sum(),
            )
        } else {
            let support = chi.phi.support()?.clone();
            let window = self.ground.window_of_box(support)?;
            let c = self.integral_of_phi(&chi.phi, &window)?;
            Ok(exp_partial_sum(c, chi.truncation))
        }
    }

    /// Quadrature of `phi` against the intensity density over a window.
    fn integral_of_phi(&self, phi: &crate::ground::TestFunction, window: &Window) -> Result<f64> {
        let Window::Box(region) = window else {
            return Err(Error::ModeMismatch {
                required: "continuous",
                actual: "exact",
            });
        };
        let density = self.ground.density()?;
        crate::quad::integrate_box_checked(
            &|x| phi.eval_point(x).unwrap_or(0.0) * density.eval(x),
            region.lo(),
            region.hi(),
            self.ground.quad_order(),
            crate::quad::DEFAULT_REL_TOL,
        )
    }

    /// `lambda(Gamma_0(Y))`.
    ///
    /// Continuous mode: `exp(sigma(Y))`. Exact mode: the subset-product
    /// total `prod_{i in Y} (1 + w_i)`, flagged as a deviation from the
    /// exponential.
    pub fn lambda_total(&self, window: &Window) -> Result<LambdaTotal> {
        match window {
            Window::Box(_) => Ok(LambdaTotal {
                value: self.ground.intensity_of(window)?.exp(),
                exact_mode_deviation: false,
            }),
            Window::Atoms(mask) => {
                let weights = self.ground.weights()?;
                mask.check_within(weights.len())?;
                Ok(LambdaTotal {
                    value: mask.atoms().map(|i| 1.0 + weights[i]).product(),
                    exact_mode_deviation: true,
                })
            }
        }
    }

    /// Exact-mode projective consistency of the normalized measures:
    /// for a cylinder event `alpha` determined inside `y2`, the
    /// normalized mass of its extension to `y1` equals its normalized
    /// mass in `y2`. Returns the absolute difference.
    pub fn cylinder_consistency_residual(
        &self,
        y1: &Window,
        y2: &Window,
        alpha: &[ConfigMask],
    ) -> Result<f64> {
        let (Window::Atoms(outer), Window::Atoms(inner)) = (y1, y2) else {
            return Err(Error::ModeMismatch {
                required: "exact",
                actual: "continuous",
            });
        };
        if !inner.is_subset_of(*outer) {
            return Err(Error::WindowNotNested {
                inner: y2.describe(),
                outer: y1.describe(),
            });
        }
        let weights = self.ground.weights()?;
        outer.check_within(weights.len())?;
        for mask in alpha {
            if !mask.is_subset_of(*inner) {
                return Err(Error::MaskOutOfRange {
                    mask: mask.0,
                    atoms: inner.level(),
                });
            }
        }
        let weight_product =
            |mask: ConfigMask| -> f64 { mask.atoms().map(|i| weights[i]).product() };
        // mass of alpha within Y2, normalized by lambda(Gamma_0(Y2))
        let inner_mass: f64 = alpha.iter().map(|&m| weight_product(m)).sum();
        let inner_total = self.lambda_total(y2)?.value;
        // extension to Y1: configurations whose trace on Y2 lies in alpha
        let mut outer_mass = 0.0;
        for xi in outer.subsets() {
            if alpha.contains(&xi.intersection(*inner)) {
                outer_mass += weight_product(xi);
            }
        }
        let outer_total = self.lambda_total(y1)?.value;
        Ok((outer_mass / outer_total - inner_mass / inner_total).abs())
    }
}

/// `sum_{n <= k} c^n / n!`, or the full series (to machine convergence)
/// when `k` is `None`.
fn exp_partial_sum(c: f64, truncation: Option<usize>) -> f64 {
    match truncation {
        Some(k) => {
            let mut term = 1.0;
            let mut total = 1.0;
            for n in 1..=k {
                term *= c / n as f64;
                total += term;
            }
            total
        }
        None => {
            let mut term = 1.0;
            let mut total = 1.0;
            for n in 1..200 {
                term *= c / n as f64;
                total += term;
                if term.abs() < 1e-16 * total.abs().max(1.0) {
                    break;
                }
            }
            total
        }
    }
}

/// The projection `p_Y`: intersection of a configuration with a window.
pub fn project(gamma: &FiniteConfiguration, window: &Window) -> Result<FiniteConfiguration> {
    match (gamma, window) {
        (FiniteConfiguration::Exact(mask), Window::Atoms(selected)) => {
            Ok(FiniteConfiguration::Exact(mask.intersection(*selected)))
        }
        (FiniteConfiguration::Continuous(points), Window::Box(region)) => {
            Ok(FiniteConfiguration::Continuous(
                points
                    .iter()
                    .filter(|p| region.contains_point(p))
                    .cloned()
                    .collect(),
            ))
        }
        _ => Err(Error::ModeMismatch {
            required: "matching configuration and window modes",
            actual: "mixed",
        }),
    }
}

/// Exact-mode Bernoulli mass of a configuration: atom `i` present with
/// probability `w_i`, independently. This is the normalized point
/// process satisfying the Lebesgue-Poisson identity against the
/// subset-product `lambda`.
pub fn bernoulli_mass(weights: &[f64], mask: ConfigMask) -> f64 {
    weights
        .iter()
        .enumerate()
        .map(|(i, w)| if mask.contains(i) { *w } else { 1.0 - w })
        .product()
}
