//! The moment functional `s`, the Hilbert-space Gram structure it
//! induces on the algebra, and the commuting operator family `A(phi)`.
//!
//! Over an exact ground set the algebra is spanned by the indicator
//! functions `1_xi` of the `2^M` configurations, ordered by (level,
//! mask). In that basis the Gram matrix has the closed form
//!
//! ```text
//! G[xi, eta] = s(1_xi * conj(1_eta)) = prod over x in xi union eta of w_x
//! ```
//!
//! because the star product of two indicators is the indicator of the
//! union; positive definiteness for weights in `(0, 1)` is the
//! exact-mode face of the positivity of `s`. The operator `A(phi)` is
//! star multiplication by the level-one function `phi` and acts on the
//! basis by
//!
//! ```text
//! A(phi) 1_eta = sum over i not in eta of phi_i 1_{eta + i}
//!              + (sum over i in eta of phi_i) 1_eta,
//! ```
//!
//! which follows from `1_{i} * 1_eta = 1_{eta + i}`.

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::algebra::{Character, ConfigFunction};
use crate::configuration::{masks_by_level, ConfigMask};
use crate::error::{Error, Result};
use crate::ground::{GroundSpace, TestFunction};
use crate::measure::LebesguePoissonMeasure;
use crate::scalar::Complex64;

/// Cap on exact ground sets for dense Gram assembly (matrices are
/// `2^M x 2^M`).
pub const GRAM_MAX_ATOMS: usize = 12;

/// The moment functional `s(f) = int f dlambda` and the inner product
/// `(f, g) = s(f * conj(g))` it generates.
#[derive(Clone, Debug)]
pub struct MomentFunctional {
    measure: LebesguePoissonMeasure,
}

impl MomentFunctional {
    pub fn new(ground: Arc<GroundSpace>) -> Self {
        Self {
            measure: LebesguePoissonMeasure::new(ground),
        }
    }

    pub fn measure(&self) -> &LebesguePoissonMeasure {
        &self.measure
    }

    pub fn s_apply(&self, f: &ConfigFunction) -> Result<Complex64> {
        self.measure.lp_integral(f)
    }

    pub fn inner_product(&self, f: &ConfigFunction, g: &ConfigFunction) -> Result<Complex64> {
        self.measure.lp_integral(&f.star(&g.involution())?)
    }

    pub fn norm_sq(&self, f: &ConfigFunction) -> Result<f64> {
        Ok(self.inner_product(f, f)?.re)
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct NamedOperator {
    pub name: String,
    pub phi_values: Vec<f64>,
    #[serde(skip)]
    pub matrix: DMatrix<f64>,
}

/// Gram matrix of the indicator basis plus operator matrices for
/// requested generators, with spectral diagnostics. Immutable once
/// assembled (operators may be appended for export).
#[derive(Clone, Debug)]
pub struct GramOperatorBundle {
    ground: Arc<GroundSpace>,
    pub basis: Vec<ConfigMask>,
    pub gram: DMatrix<f64>,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    pub operators: Vec<NamedOperator>,
}

/// Assemble the Gram bundle over all configurations with level at most
/// `level_max` (default: everything). Fails hard when the matrix is
/// not positive definite, which for valid weights cannot happen.
pub fn gram_matrix(
    ground: &Arc<GroundSpace>,
    level_max: Option<usize>,
) -> Result<GramOperatorBundle> {
    let m = ground.atoms()?.len();
    let basis = masks_by_level(m, level_max.unwrap_or(m));
    gram_matrix_with_basis(ground, basis)
}

/// Same, over an explicit basis order. The basis must consist of
/// distinct valid masks; the canonical order is (level, mask).
pub fn gram_matrix_with_basis(
    ground: &Arc<GroundSpace>,
    basis: Vec<ConfigMask>,
) -> Result<GramOperatorBundle> {
    let weights = ground.weights()?;
    if weights.len() > GRAM_MAX_ATOMS {
        return Err(Error::TooManyAtoms {
            max: GRAM_MAX_ATOMS,
            got: weights.len(),
        });
    }
    for mask in &basis {
        mask.check_within(weights.len())?;
    }
    let n = basis.len();
    let mut gram = DMatrix::zeros(n, n);
    for (r, xi) in basis.iter().enumerate() {
        for (c, eta) in basis.iter().enumerate() {
            let union = xi.union(*eta);
            gram[(r, c)] = union.atoms().map(|i| weights[i]).product();
        }
    }
    let eigenvalues = gram.clone().symmetric_eigenvalues();
    let min_eigenvalue = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let max_eigenvalue = eigenvalues.iter().copied().fold(0.0f64, f64::max);
    if min_eigenvalue <= 0.0 {
        return Err(Error::GramNotPositive { min_eigenvalue });
    }
    Ok(GramOperatorBundle {
        ground: Arc::clone(ground),
        basis,
        gram,
        min_eigenvalue,
        max_eigenvalue,
        operators: Vec::new(),
    })
}

impl GramOperatorBundle {
    pub fn ground(&self) -> &Arc<GroundSpace> {
        &self.ground
    }

    pub fn index_of(&self, mask: ConfigMask) -> Option<usize> {
        self.basis.iter().position(|m| *m == mask)
    }

    /// Matrix of `A(phi)` in the bundle basis (column `eta`: the
    /// expansion of `phi * 1_eta`). Real for real `phi`.
    pub fn operator_matrix(&self, phi: &TestFunction) -> Result<DMatrix<f64>> {
        let values = phi.exact_values()?;
        let m = self.ground.atom_count();
        if values.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: values.len(),
            });
        }
        let n = self.basis.len();
        let mut matrix = DMatrix::zeros(n, n);
        for (col, eta) in self.basis.iter().enumerate() {
            let mut diagonal = 0.0;
            for i in 0..m {
                if eta.contains(i) {
                    diagonal += values[i];
                } else if let Some(row) = self.index_of(eta.insert(i)) {
                    matrix[(row, col)] += values[i];
                }
            }
            matrix[(col, col)] += diagonal;
        }
        Ok(matrix)
    }

    /// Append a named operator matrix for export.
    pub fn add_operator(&mut self, name: impl Into<String>, phi: &TestFunction) -> Result<()> {
        let matrix = self.operator_matrix(phi)?;
        self.operators.push(NamedOperator {
            name: name.into(),
            phi_values: phi.exact_values()?.to_vec(),
            matrix,
        });
        Ok(())
    }

    /// `max |A^T G - G A|`: symmetry of `A(phi)` with respect to the
    /// moment inner product (the basis is not orthonormal, so matrix
    /// symmetry itself is not expected).
    pub fn symmetry_residual(&self, phi: &TestFunction) -> Result<f64> {
        let a = self.operator_matrix(phi)?;
        let lhs = a.transpose() * &self.gram;
        let rhs = &self.gram * a;
        Ok((lhs - rhs).amax())
    }

    /// `max |A(phi) A(psi) - A(psi) A(phi)|`.
    pub fn commutator_residual(&self, phi: &TestFunction, psi: &TestFunction) -> Result<f64> {
        let a = self.operator_matrix(phi)?;
        let b = self.operator_matrix(psi)?;
        Ok((&a * &b - b * a).amax())
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        let atoms = self.ground.atoms()?;
        let basis: Vec<Vec<&str>> = self
            .basis
            .iter()
            .map(|mask| mask.atoms().map(|i| atoms[i].label.as_str()).collect())
            .collect();
        let gram: Vec<Vec<f64>> = (0..self.gram.nrows())
            .map(|r| self.gram.row(r).iter().copied().collect())
            .collect();
        let operators: Vec<serde_json::Value> = self
            .operators
            .iter()
            .map(|op| {
                let rows: Vec<Vec<f64>> = (0..op.matrix.nrows())
                    .map(|r| op.matrix.row(r).iter().copied().collect())
                    .collect();
                serde_json::json!({
                    "name": op.name,
                    "phi": op.phi_values,
                    "matrix": rows,
                })
            })
            .collect();
        Ok(serde_json::json!({
            "basis": basis,
            "gram": gram,
            "operators": operators,
            "diagnostics": {
                "min_eigenvalue": self.min_eigenvalue,
                "max_eigenvalue": self.max_eigenvalue,
                "condition": self.max_eigenvalue / self.min_eigenvalue,
            },
        }))
    }
}

#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct CharacterNormBound {
    pub norm_sq: f64,
    pub bound: f64,
}

/// Squared moment norm of the character `chi_phi` against its
/// exponential bound: with `theta = 2 phi + phi^2`,
/// `|chi_phi|^2 = s(chi_theta) = prod (1 + w_i theta_i)` and the bound
/// is `prod exp(w_i |theta_i|)`.
pub fn character_norm_bound(
    ground: &Arc<GroundSpace>,
    phi: &TestFunction,
) -> Result<CharacterNormBound> {
    let theta = phi.theta();
    let theta_values = theta.exact_values()?.to_vec();
    let weights = ground.weights()?;
    let measure = LebesguePoissonMeasure::new(Arc::clone(ground));
    let norm_sq = measure.lp_integral_character(&Character::new(theta))?;
    let bound = weights
        .iter()
        .zip(&theta_values)
        .map(|(w, t)| (w * t.abs()).exp())
        .product();
    Ok(CharacterNormBound { norm_sq, bound })
}

/// `|chi_phi - chi_phi^(k)|^2` in the moment norm, computed through the
/// star product of the tail with itself.
pub fn subcharacter_tail_norm(
    ground: &Arc<GroundSpace>,
    phi: &TestFunction,
    k: usize,
) -> Result<f64> {
    let functional = MomentFunctional::new(Arc::clone(ground));
    let full = ConfigFunction::<Complex64>::character(ground, phi, None)?;
    let truncated = ConfigFunction::<Complex64>::character(ground, phi, Some(k))?;
    functional.norm_sq(&full.sub(&truncated)?)
}

/// `lambda` mass of the level-`n` configurations inside an atom window:
/// the elementary symmetric sum of the weights in the window.
pub fn level_mass(ground: &Arc<GroundSpace>, window_mask: ConfigMask, n: usize) -> Result<f64> {
    let weights = ground.weights()?;
    window_mask.check_within(weights.len())?;
    let selected: Vec<f64> = window_mask.atoms().map(|i| weights[i]).collect();
    Ok(*crate::ktransform::elementary_symmetric_sums(&selected, n)
        .get(n)
        .unwrap_or(&0.0))
}

/// Exact rational cross-check of the Gram closed form against the
/// independent star-plus-integral route, feasible for small ground
/// sets. Returns true when every entry matches exactly.
pub fn gram_matches_rational_oracle(ground: &Arc<GroundSpace>) -> Result<bool> {
    use crate::scalar::{weight_to_rational, RationalComplex};
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    let weights = ground.weights()?;
    if weights.len() > 4 {
        return Err(Error::TooManyAtoms {
            max: 4,
            got: weights.len(),
        });
    }
    let rational_weights: Vec<BigRational> =
        weights.iter().map(|w| weight_to_rational(*w)).collect();
    let measure = LebesguePoissonMeasure::new(Arc::clone(ground));
    for xi in ConfigMask::full(weights.len()).subsets() {
        for eta in ConfigMask::full(weights.len()).subsets() {
            let f = ConfigFunction::<RationalComplex>::indicator(ground, xi)?;
            let g = ConfigFunction::<RationalComplex>::indicator(ground, eta)?;
            let via_star = measure.lp_integral_rational(&f.star(&g.involution())?)?;
            let mut closed = BigRational::one();
            for i in xi.union(eta).atoms() {
                closed *= &rational_weights[i];
            }
            if via_star.re != closed || !via_star.im.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::CounterStream;
    use approx::assert_abs_diff_eq;

    fn ground1() -> Arc<GroundSpace> {
        GroundSpace::exact([("a", 0.5)]).unwrap()
    }

    fn random_ground(m: usize, seed: u64) -> Arc<GroundSpace> {
        let mut stream = CounterStream::from_seed(seed);
        GroundSpace::exact_random(m, 0.2, 0.8, &mut stream).unwrap()
    }

    #[test]
    fn moment_functional_examples() {
        let g = ground1();
        let s = MomentFunctional::new(Arc::clone(&g));
        let e = ConfigFunction::<Complex64>::unit(&g).unwrap();
        assert_abs_diff_eq!(s.s_apply(&e).unwrap().re, 1.0);
        let ia = ConfigFunction::<Complex64>::indicator(&g, ConfigMask(0b1)).unwrap();
        assert_abs_diff_eq!(s.s_apply(&ia).unwrap().re, 0.5);

        assert_abs_diff_eq!(s.inner_product(&e, &e).unwrap().re, 1.0);
        assert_abs_diff_eq!(s.inner_product(&ia, &ia).unwrap().re, 0.5);
        assert_abs_diff_eq!(s.inner_product(&ia, &e).unwrap().re, 0.5);
    }

    #[test]
    fn truncated_character_integral_matches_s() {
        let g = random_ground(5, 2);
        let s = MomentFunctional::new(Arc::clone(&g));
        let phi = TestFunction::exact(vec![0.5, -0.3, 0.8, 0.1, -0.9]);
        for k in 0..=5 {
            let chi = ConfigFunction::<Complex64>::character(&g, &phi, Some(k)).unwrap();
            let direct = s.s_apply(&chi).unwrap().re;
            let closed = s
                .measure()
                .lp_integral_character(&Character::truncated(phi.clone(), k))
                .unwrap();
            assert_abs_diff_eq!(direct, closed, epsilon = 1e-12);
        }
    }

    #[test]
    fn inner_product_is_sesquilinear_and_conjugate_symmetric() {
        let g = random_ground(4, 3);
        let s = MomentFunctional::new(Arc::clone(&g));
        let mut stream = CounterStream::from_seed(5);
        let f = ConfigFunction::<Complex64>::random(&g, 2, &mut stream).unwrap();
        let h = ConfigFunction::<Complex64>::random(&g, 2, &mut stream).unwrap();
        let fg = s.inner_product(&f, &h).unwrap();
        let gf = s.inner_product(&h, &f).unwrap();
        assert!((fg - gf.conj()).norm() < 1e-12);
        assert!(s.norm_sq(&f).unwrap() >= 0.0);

        let alpha = Complex64::new(0.5, -1.5);
        let lhs = s.inner_product(&f.scale(&alpha), &h).unwrap();
        assert!((lhs - alpha * fg).norm() < 1e-12);
    }

    #[test]
    fn gram_single_atom_closed_form() {
        let g = ground1();
        let bundle = gram_matrix(&g, None).unwrap();
        assert_eq!(bundle.basis, vec![ConfigMask(0), ConfigMask(1)]);
        assert_abs_diff_eq!(bundle.gram[(0, 0)], 1.0);
        assert_abs_diff_eq!(bundle.gram[(0, 1)], 0.5);
        assert_abs_diff_eq!(bundle.gram[(1, 0)], 0.5);
        assert_abs_diff_eq!(bundle.gram[(1, 1)], 0.5);
        let det = bundle.gram.determinant();
        assert_abs_diff_eq!(det, 0.25, epsilon = 1e-14);
        assert!(bundle.min_eigenvalue > 0.0);
    }

    #[test]
    fn gram_entries_match_star_integral_oracle() {
        let g = random_ground(5, 7);
        let bundle = gram_matrix(&g, None).unwrap();
        let s = MomentFunctional::new(Arc::clone(&g));
        for (r, xi) in bundle.basis.iter().enumerate() {
            for (c, eta) in bundle.basis.iter().enumerate() {
                let f = ConfigFunction::<Complex64>::indicator(&g, *xi).unwrap();
                let h = ConfigFunction::<Complex64>::indicator(&g, *eta).unwrap();
                let oracle = s.inner_product(&f, &h).unwrap().re;
                assert_abs_diff_eq!(bundle.gram[(r, c)], oracle, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn gram_is_positive_definite_for_random_weights() {
        for seed in 0..10u64 {
            let g = random_ground(6, seed);
            let bundle = gram_matrix(&g, None).unwrap();
            assert!(bundle.min_eigenvalue > 0.0, "seed {seed}");
        }
    }

    #[test]
    fn gram_min_eigenvalue_matches_tensor_factorization() {
        // per-atom 2x2 blocks [[1, w], [w, w]] tensor together; with
        // all eigenvalues positive the smallest product is the product
        // of the smallest factors
        let g = random_ground(5, 11);
        let weights = g.weights().unwrap();
        let bundle = gram_matrix(&g, None).unwrap();
        let expected: f64 = weights
            .iter()
            .map(|w| {
                let t = 1.0 + w;
                0.5 * (t - (t * t - 4.0 * w * (1.0 - w)).sqrt())
            })
            .product();
        assert_abs_diff_eq!(bundle.min_eigenvalue, expected, epsilon = 1e-10);
    }

    #[test]
    fn rational_oracle_agrees_for_small_ground_sets() {
        let g =
            GroundSpace::exact([("a", 0.5), ("b", 0.25), ("c", 0.75), ("d", 0.375)]).unwrap();
        assert!(gram_matches_rational_oracle(&g).unwrap());
    }

    #[test]
    fn operator_matrix_single_atom_example() {
        let g = ground1();
        let bundle = gram_matrix(&g, None).unwrap();
        let delta = TestFunction::atom_delta(1, 0);
        let a = bundle.operator_matrix(&delta).unwrap();
        assert_eq!(a.nrows(), 2);
        assert_abs_diff_eq!(a[(0, 0)], 0.0);
        assert_abs_diff_eq!(a[(0, 1)], 0.0);
        assert_abs_diff_eq!(a[(1, 0)], 1.0);
        assert_abs_diff_eq!(a[(1, 1)], 1.0);
    }

    #[test]
    fn zero_generator_gives_zero_operator() {
        let g = random_ground(3, 13);
        let bundle = gram_matrix(&g, None).unwrap();
        let zero = TestFunction::exact(vec![0.0; 3]);
        assert_eq!(bundle.operator_matrix(&zero).unwrap().amax(), 0.0);
    }

    #[test]
    fn operator_columns_match_the_star_oracle() {
        let g = random_ground(4, 17);
        let bundle = gram_matrix(&g, None).unwrap();
        let mut stream = CounterStream::from_seed(19);
        let values: Vec<f64> = (0..4).map(|_| stream.uniform(-1.0, 1.0)).collect();
        let phi = TestFunction::exact(values.clone());
        let a = bundle.operator_matrix(&phi).unwrap();
        // phi as a level-one algebra element
        let phi_fn = ConfigFunction::from_entries(
            &g,
            values
                .iter()
                .enumerate()
                .map(|(i, v)| (ConfigMask::singleton(i), Complex64::from(*v))),
        )
        .unwrap();
        for (col, eta) in bundle.basis.iter().enumerate() {
            let image = phi_fn
                .star(&ConfigFunction::<Complex64>::indicator(&g, *eta).unwrap())
                .unwrap();
            for (row, zeta) in bundle.basis.iter().enumerate() {
                assert_abs_diff_eq!(a[(row, col)], image.value(*zeta).re, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn operators_are_gram_symmetric_and_commute() {
        let g = random_ground(6, 23);
        let bundle = gram_matrix(&g, None).unwrap();
        let mut stream = CounterStream::from_seed(29);
        for _ in 0..5 {
            let phi =
                TestFunction::exact((0..6).map(|_| stream.uniform(-1.0, 1.0)).collect());
            let psi =
                TestFunction::exact((0..6).map(|_| stream.uniform(-1.0, 1.0)).collect());
            assert!(bundle.symmetry_residual(&phi).unwrap() < 1e-10);
            assert!(bundle.commutator_residual(&phi, &psi).unwrap() < 1e-10);
            assert_eq!(bundle.commutator_residual(&phi, &phi).unwrap(), 0.0);
        }
    }

    #[test]
    fn functional_is_bounded_by_the_moment_norm() {
        // |s(f)| = |(f, e)| <= |f| since |e| = 1
        let g = random_ground(5, 31);
        let s = MomentFunctional::new(Arc::clone(&g));
        let mut stream = CounterStream::from_seed(37);
        for _ in 0..10 {
            let f = ConfigFunction::<Complex64>::random(&g, 3, &mut stream).unwrap();
            let value = s.s_apply(&f).unwrap().norm();
            let norm = s.norm_sq(&f).unwrap().max(0.0).sqrt();
            assert!(value <= norm + 1e-10, "s = {value}, norm = {norm}");
        }
    }

    #[test]
    fn character_norm_examples() {
        let g = ground1();
        let zero = TestFunction::exact(vec![0.0]);
        let b = character_norm_bound(&g, &zero).unwrap();
        assert_abs_diff_eq!(b.norm_sq, 1.0);
        assert_abs_diff_eq!(b.bound, 1.0);

        let phi = TestFunction::exact(vec![1.0]);
        let b = character_norm_bound(&g, &phi).unwrap();
        // theta = 3: norm^2 = 1 + 0.5 * 3 = 2.5, bound = e^{1.5}
        assert_abs_diff_eq!(b.norm_sq, 2.5, epsilon = 1e-14);
        assert_abs_diff_eq!(b.bound, 1.5f64.exp(), epsilon = 1e-12);
        assert!(b.norm_sq <= b.bound);
    }

    #[test]
    fn norm_bound_holds_for_random_generators() {
        let g = random_ground(6, 41);
        let mut stream = CounterStream::from_seed(43);
        for _ in 0..20 {
            let phi =
                TestFunction::exact((0..6).map(|_| stream.uniform(-1.0, 1.0)).collect());
            let b = character_norm_bound(&g, &phi).unwrap();
            assert!(b.norm_sq <= b.bound + 1e-12, "{b:?}");
            // the norm is also computable through the star route
            let functional = MomentFunctional::new(Arc::clone(&g));
            let chi = ConfigFunction::<Complex64>::character(&g, &phi, None).unwrap();
            assert_abs_diff_eq!(
                functional.norm_sq(&chi).unwrap(),
                b.norm_sq,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn subcharacter_tails_vanish_at_full_level() {
        let g = random_ground(4, 47);
        let phi = TestFunction::exact(vec![0.7, 0.3, 0.9, 0.5]);
        let tail = subcharacter_tail_norm(&g, &phi, 4).unwrap();
        assert_abs_diff_eq!(tail, 0.0, epsilon = 1e-14);
        // positive generators decrease strictly below the cutoff
        let norms: Vec<f64> = (0..4)
            .map(|k| subcharacter_tail_norm(&g, &phi, k).unwrap())
            .collect();
        for pair in norms.windows(2) {
            assert!(pair[1] < pair[0], "{norms:?}");
        }
    }

    #[test]
    fn level_masses_obey_the_growth_bound() {
        let g = random_ground(6, 53);
        let weights = g.weights().unwrap();
        let window = ConfigMask::full(6);
        let c: f64 = weights.iter().sum::<f64>() + 1.0;
        for n in 0..=6 {
            let mass = level_mass(&g, window, n).unwrap();
            assert!(mass <= c.powi(n as i32) + 1e-12, "n = {n}");
        }
        assert_abs_diff_eq!(level_mass(&g, window, 0).unwrap(), 1.0);
        assert_abs_diff_eq!(
            level_mass(&g, window, 1).unwrap(),
            weights.iter().sum::<f64>(),
            epsilon = 1e-12
        );
        assert_eq!(level_mass(&g, window, 7).unwrap(), 0.0);
    }

    #[test]
    fn bundle_json_exposes_basis_gram_and_operators() {
        let g = GroundSpace::exact([("a", 0.5), ("b", 0.25)]).unwrap();
        let mut bundle = gram_matrix(&g, None).unwrap();
        bundle
            .add_operator("delta_a", &TestFunction::atom_delta(2, 0))
            .unwrap();
        let json = bundle.to_json().unwrap();
        assert_eq!(json["basis"][0].as_array().unwrap().len(), 0);
        assert_eq!(json["basis"][1][0], "a");
        assert_eq!(json["gram"][0][0], 1.0);
        assert_eq!(json["operators"][0]["name"], "delta_a");
        assert!(json["diagnostics"]["min_eigenvalue"].as_f64().unwrap() > 0.0);
    }

    #[test]
    fn truncated_basis_is_supported_for_gram_only_use() {
        let g = random_ground(5, 59);
        let bundle = gram_matrix(&g, Some(2)).unwrap();
        assert_eq!(bundle.basis.len(), 1 + 5 + 10);
        assert!(bundle.min_eigenvalue > 0.0);
    }
}
