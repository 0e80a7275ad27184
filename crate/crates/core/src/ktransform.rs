//! The K-transform `(Kf)(gamma) = sum over xi inside gamma of f(xi)`,
//! its alternating (Moebius) inverse, and the homomorphism property
//! that turns the star convolution into pointwise multiplication.
//!
//! Observables are realized lazily as closures over the underlying
//! function, so they can be evaluated at any finite configuration
//! without tabulating `Gamma_0`. The sum over subsets is finite for
//! every finite `gamma`, and appending points outside the support of
//! every level of `f` leaves the value unchanged.

use std::sync::Arc;

use crate::algebra::{Character, ConfigFunction};
use crate::configuration::{ConfigMask, FiniteConfiguration};
use crate::error::{Error, Result};
use crate::ground::GroundSpace;
use crate::scalar::{Complex64, StarScalar};

/// A function on finite configurations, evaluated lazily.
#[derive(Clone)]
pub struct ConfigObservable<S: StarScalar = Complex64> {
    eval: Arc<dyn Fn(&FiniteConfiguration) -> Result<S> + Send + Sync>,
}

impl<S: StarScalar> ConfigObservable<S> {
    pub fn new(
        eval: impl Fn(&FiniteConfiguration) -> Result<S> + Send + Sync + 'static,
    ) -> Self {
        Self {
            eval: Arc::new(eval),
        }
    }

    /// The constant observable.
    pub fn constant(value: S) -> Self {
        Self::new(move |_| Ok(value.clone()))
    }

    pub fn eval(&self, gamma: &FiniteConfiguration) -> Result<S> {
        (self.eval)(gamma)
    }

    pub fn eval_mask(&self, mask: ConfigMask) -> Result<S> {
        self.eval(&FiniteConfiguration::Exact(mask))
    }
}

/// `Kf`: subset sums of `f` over each configuration.
pub fn k_apply<S: StarScalar>(f: &ConfigFunction<S>) -> ConfigObservable<S> {
    let f = f.clone();
    ConfigObservable::new(move |gamma| match gamma {
        FiniteConfiguration::Exact(mask) => {
            mask.check_within(f.ground().atom_count())?;
            let mut total = S::zero();
            for xi in mask.subsets() {
                total = total.add(&f.value(xi));
            }
            Ok(total)
        }
        FiniteConfiguration::Continuous(_) => Err(Error::ModeMismatch {
            required: "exact",
            actual: "continuous",
        }),
    })
}

/// `K chi_phi^(k)` evaluated through elementary symmetric sums of the
/// values of `phi` on the configuration; works in both ground-space
/// modes. Untruncated characters give the full product
/// `prod (1 + phi(x))`.
pub fn k_apply_character(chi: &Character) -> ConfigObservable<f64> {
    let chi = chi.clone();
    ConfigObservable::new(move |gamma| {
        let values = crate::ground::values_on(gamma, &chi.phi)?;
        match chi.truncation {
            None => Ok(values.iter().map(|v| 1.0 + v).product()),
            Some(k) => Ok(elementary_symmetric_sums(&values, k).iter().sum()),
        }
    })
}

/// `e_0..e_k` of the given values, by the stable product recurrence.
pub fn elementary_symmetric_sums(values: &[f64], k: usize) -> Vec<f64> {
    let mut coeffs = vec![0.0; k + 1];
    coeffs[0] = 1.0;
    for &v in values {
        let top = coeffs.len() - 1;
        for j in (1..=top).rev() {
            coeffs[j] += v * coeffs[j - 1];
        }
    }
    coeffs
}

/// The alternating inverse `(K^-1 F)(xi) = sum over eta inside xi of
/// (-1)^(|xi| - |eta|) F(eta)`, tabulated on levels up to `level_max`.
pub fn k_inverse<S: StarScalar>(
    observable: &ConfigObservable<S>,
    ground: &Arc<GroundSpace>,
    level_max: usize,
) -> Result<ConfigFunction<S>> {
    let m = ground.atom_count();
    let mut entries = Vec::new();
    for xi in ConfigMask::full(m).subsets() {
        if xi.level() > level_max {
            continue;
        }
        let mut total = S::zero();
        for eta in xi.subsets() {
            let term = observable.eval_mask(eta)?;
            if (xi.level() - eta.level()) % 2 == 0 {
                total = total.add(&term);
            } else {
                total = total.sub(&term);
            }
        }
        entries.push((xi, total));
    }
    ConfigFunction::from_entries(ground, entries)
}

/// Largest deviation of `K(f * g)` from `(Kf)(Kg)` over the whole
/// subset lattice.
pub fn homomorphism_residual(
    f: &ConfigFunction<Complex64>,
    g: &ConfigFunction<Complex64>,
) -> Result<f64> {
    let product = f.star(g)?;
    let k_product = k_apply(&product);
    let kf = k_apply(f);
    let kg = k_apply(g);
    let m = f.ground().atom_count();
    let mut max_residual: f64 = 0.0;
    for gamma in ConfigMask::full(m).subsets() {
        let lhs = k_product.eval_mask(gamma)?;
        let rhs = kf.eval_mask(gamma)? * kg.eval_mask(gamma)?;
        max_residual = max_residual.max((lhs - rhs).norm());
    }
    Ok(max_residual)
}
