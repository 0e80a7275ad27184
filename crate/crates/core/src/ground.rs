//! Ground space `X`, its intensity measure `sigma`, and test functions.
//!
//! Exact mode replaces the non-atomic intensity measure with finitely
//! many atoms of weight `w_i` in `(0, 1)`; that range is exactly what
//! makes the Bernoulli analog of the Poisson process satisfy the
//! Lebesgue-Poisson identity and keeps the moment Gram matrix positive
//! definite. Continuous mode is an axis-aligned box with an intensity
//! density, integrated by Gauss-Legendre quadrature.

use std::fmt;
use std::sync::Arc;

use crate::configuration::{ConfigMask, FiniteConfiguration};
use crate::error::{Error, Result};
use crate::quad;

/// Default tensor quadrature order per axis.
pub const DEFAULT_QUAD_ORDER: usize = 32;

/// Hard cap on exact-mode ground sets; dense subset enumeration is
/// 2^M and the spectral machinery is dense in 2^M x 2^M.
pub const MAX_ATOMS: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct Atom {
    pub label: String,
    pub weight: f64,
}

/// An axis-aligned box in `R^d`.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BoxRegion {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl BoxRegion {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                got: hi.len(),
            });
        }
        if lo.is_empty() || lo.iter().zip(&hi).any(|(a, b)| !(a < b) || !a.is_finite() || !b.is_finite()) {
            return Err(Error::DegenerateBox { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    /// 1-d interval `[a, b]`.
    pub fn interval(a: f64, b: f64) -> Result<Self> {
        Self::new(vec![a], vec![b])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    pub fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b - a).product()
    }

    pub fn contains_point(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(xi, (a, b))| *a <= *xi && *xi <= *b)
    }

    pub fn contains_box(&self, other: &BoxRegion) -> bool {
        other.dim() == self.dim()
            && self
                .lo
                .iter()
                .zip(&other.lo)
                .all(|(outer, inner)| outer <= inner)
            && self
                .hi
                .iter()
                .zip(&other.hi)
                .all(|(outer, inner)| outer >= inner)
    }

    /// Smallest box containing both.
    pub fn hull(&self, other: &BoxRegion) -> Result<BoxRegion> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let lo = self
            .lo
            .iter()
            .zip(&other.lo)
            .map(|(a, b)| a.min(*b))
            .collect();
        let hi = self
            .hi
            .iter()
            .zip(&other.hi)
            .map(|(a, b)| a.max(*b))
            .collect();
        BoxRegion::new(lo, hi)
    }
}

/// Intensity density `rho(x) >= 0` on the continuous window.
#[derive(Clone)]
pub enum Density {
    Constant(f64),
    /// Arbitrary density with a declared supremum bound over the
    /// window, used for rejection sampling.
    Custom {
        eval: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
        sup_bound: f64,
    },
}

impl Density {
    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Density::Constant(c) => *c,
            Density::Custom { eval, .. } => eval(x),
        }
    }

    pub fn sup_bound(&self) -> f64 {
        match self {
            Density::Constant(c) => *c,
            Density::Custom { sup_bound, .. } => *sup_bound,
        }
    }
}

impl fmt::Debug for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Density::Constant(c) => write!(f, "Density::Constant({c})"),
            Density::Custom { sup_bound, .. } => {
                write!(f, "Density::Custom {{ sup_bound: {sup_bound} }}")
            }
        }
    }
}

#[derive(Clone, Debug)]
enum Mode {
    Exact { atoms: Vec<Atom> },
    Continuous { window: BoxRegion, density: Density, quad_order: usize },
}

/// The ground space `X` together with its intensity measure.
#[derive(Clone, Debug)]
pub struct GroundSpace {
    mode: Mode,
}

impl GroundSpace {
    /// Exact ground space from `(label, weight)` pairs.
    ///
    /// Weights must lie in the open interval `(0, 1)` and labels must
    /// be pairwise distinct.
    pub fn exact<L: Into<String>>(atoms: impl IntoIterator<Item = (L, f64)>) -> Result<Arc<Self>> {
        let atoms: Vec<Atom> = atoms
            .into_iter()
            .map(|(label, weight)| Atom {
                label: label.into(),
                weight,
            })
            .collect();
        if atoms.len() > MAX_ATOMS {
            return Err(Error::TooManyAtoms {
                max: MAX_ATOMS,
                got: atoms.len(),
            });
        }
        for (i, atom) in atoms.iter().enumerate() {
            if !(atom.weight > 0.0 && atom.weight < 1.0) {
                return Err(Error::InvalidWeight {
                    label: atom.label.clone(),
                    weight: atom.weight,
                });
            }
            if atoms[..i].iter().any(|prev| prev.label == atom.label) {
                return Err(Error::DuplicateLabel(atom.label.clone()));
            }
        }
        Ok(Arc::new(Self {
            mode: Mode::Exact { atoms },
        }))
    }

    /// Exact ground space with `m` atoms labelled `a0..` and weights
    /// drawn uniformly from `(lo, hi)` using the given stream.
    pub fn exact_random(
        m: usize,
        lo: f64,
        hi: f64,
        stream: &mut crate::rng::CounterStream,
    ) -> Result<Arc<Self>> {
        Self::exact((0..m).map(|i| (format!("a{i}"), stream.uniform(lo, hi))))
    }

    pub fn continuous(window: BoxRegion, density: Density) -> Result<Arc<Self>> {
        Self::continuous_with_order(window, density, DEFAULT_QUAD_ORDER)
    }

    pub fn continuous_with_order(
        window: BoxRegion,
        density: Density,
        quad_order: usize,
    ) -> Result<Arc<Self>> {
        if density.sup_bound() < 0.0 {
            return Err(Error::Malformed(
                "density supremum bound must be nonnegative".into(),
            ));
        }
        Ok(Arc::new(Self {
            mode: Mode::Continuous {
                window,
                density,
                quad_order,
            },
        }))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.mode, Mode::Exact { .. })
    }

    pub fn mode_name(&self) -> &'static str {
        match self.mode {
            Mode::Exact { .. } => "exact",
            Mode::Continuous { .. } => "continuous",
        }
    }

    pub fn atoms(&self) -> Result<&[Atom]> {
        match &self.mode {
            Mode::Exact { atoms } => Ok(atoms),
            Mode::Continuous { .. } => Err(Error::ModeMismatch {
                required: "exact",
                actual: "continuous",
            }),
        }
    }

    pub fn atom_count(&self) -> usize {
        match &self.mode {
            Mode::Exact { atoms } => atoms.len(),
            Mode::Continuous { .. } => 0,
        }
    }

    pub fn weights(&self) -> Result<Vec<f64>> {
        Ok(self.atoms()?.iter().map(|a| a.weight).collect())
    }

    pub fn atom_index(&self, label: &str) -> Result<usize> {
        self.atoms()?
            .iter()
            .position(|a| a.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn continuous_window(&self) -> Result<&BoxRegion> {
        match &self.mode {
            Mode::Continuous { window, .. } => Ok(window),
            Mode::Exact { .. } => Err(Error::ModeMismatch {
                required: "continuous",
                actual: "exact",
            }),
        }
    }

    pub fn density(&self) -> Result<&Density> {
        match &self.mode {
            Mode::Continuous { density, .. } => Ok(density),
            Mode::Exact { .. } => Err(Error::ModeMismatch {
                required: "continuous",
                actual: "exact",
            }),
        }
    }

    pub fn quad_order(&self) -> usize {
        match &self.mode {
            Mode::Continuous { quad_order, .. } => *quad_order,
            Mode::Exact { .. } => DEFAULT_QUAD_ORDER,
        }
    }

    /// True when both spaces are exact with identical atoms. Algebra
    /// elements living on different ground sets must never be combined.
    pub fn same_exact(&self, other: &GroundSpace) -> bool {
        match (&self.mode, &other.mode) {
            (Mode::Exact { atoms: a }, Mode::Exact { atoms: b }) => a == b,
            _ => false,
        }
    }

    /// The whole ground space as a window.
    pub fn full_window(&self) -> Window {
        match &self.mode {
            Mode::Exact { atoms } => Window::Atoms(ConfigMask::full(atoms.len())),
            Mode::Continuous { window, .. } => Window::Box(window.clone()),
        }
    }

    /// Window over an exact atom subset given by labels.
    pub fn window_of_labels(&self, labels: &[&str]) -> Result<Window> {
        let mut mask = ConfigMask::EMPTY;
        for label in labels {
            mask = mask.insert(self.atom_index(label)?);
        }
        Ok(Window::Atoms(mask))
    }

    /// Window over an exact atom subset given by mask.
    pub fn window_of_mask(&self, mask: ConfigMask) -> Result<Window> {
        mask.check_within(self.atom_count())?;
        if !self.is_exact() {
            return Err(Error::ModeMismatch {
                required: "exact",
                actual: "continuous",
            });
        }
        Ok(Window::Atoms(mask))
    }

    /// Window over a sub-box of the continuous ground window.
    pub fn window_of_box(&self, region: BoxRegion) -> Result<Window> {
        let window = self.continuous_window()?;
        if !window.contains_box(&region) {
            return Err(Error::WindowNotContained);
        }
        Ok(Window::Box(region))
    }

    /// Intensity `sigma(Y)` of a window.
    ///
    /// Exact: the sum of atom weights in `Y`. Continuous: quadrature of
    /// the density over `Y`, with a convergence check that surfaces the
    /// achieved error estimate on failure.
    pub fn intensity_of(&self, window: &Window) -> Result<f64> {
        match (&self.mode, window) {
            (Mode::Exact { atoms }, Window::Atoms(mask)) => {
                mask.check_within(atoms.len())?;
                Ok(mask.atoms().map(|i| atoms[i].weight).sum())
            }
            (
                Mode::Continuous {
                    density,
                    quad_order,
                    window: ground_window,
                },
                Window::Box(region),
            ) => {
                if !ground_window.contains_box(region) {
                    return Err(Error::WindowNotContained);
                }
                if let Density::Constant(c) = density {
                    return Ok(c * region.volume());
                }
                quad::integrate_box_checked(
                    &|x| density.eval(x),
                    region.lo(),
                    region.hi(),
                    *quad_order,
                    quad::DEFAULT_REL_TOL,
                )
            }
            (Mode::Exact { .. }, Window::Box(_)) => Err(Error::ModeMismatch {
                required: "continuous",
                actual: "exact",
            }),
            (Mode::Continuous { .. }, Window::Atoms(_)) => Err(Error::ModeMismatch {
                required: "exact",
                actual: "continuous",
            }),
        }
    }
}

/// A compactly supported observation window `Y` inside the ground space.
#[derive(Clone, Debug, PartialEq)]
pub enum Window {
    Atoms(ConfigMask),
    Box(BoxRegion),
}

impl Window {
    /// Everything the empty window: zero atoms or... there is no empty
    /// box, so exact mode owns the empty-window tests.
    pub fn empty_exact() -> Window {
        Window::Atoms(ConfigMask::EMPTY)
    }

    pub fn contains_window(&self, inner: &Window) -> bool {
        match (self, inner) {
            (Window::Atoms(outer), Window::Atoms(inner)) => inner.is_subset_of(*outer),
            (Window::Box(outer), Window::Box(inner)) => outer.contains_box(inner),
            _ => false,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Window::Atoms(mask) => format!("atoms({:#b})", mask.0),
            Window::Box(region) => format!("box({:?}..{:?})", region.lo(), region.hi()),
        }
    }
}

/// A real-valued test function `phi` on the ground space with compact
/// (exact: trivially finite) support.
#[derive(Clone)]
pub enum TestFunction {
    /// One value per atom.
    Exact(Vec<f64>),
    /// A callable, zero outside the declared support box.
    Continuous {
        support: BoxRegion,
        eval: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
    },
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::Exact(values) => write!(f, "TestFunction::Exact({values:?})"),
            TestFunction::Continuous { support, .. } => {
                write!(f, "TestFunction::Continuous {{ support: {support:?} }}")
            }
        }
    }
}

impl TestFunction {
    pub fn exact(values: Vec<f64>) -> Self {
        TestFunction::Exact(values)
    }

    /// `phi = delta_i`: one at atom `i`, zero elsewhere.
    pub fn atom_delta(m: usize, i: usize) -> Self {
        let mut values = vec![0.0; m];
        values[i] = 1.0;
        TestFunction::Exact(values)
    }

    pub fn continuous(
        support: BoxRegion,
        eval: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        TestFunction::Continuous {
            support,
            eval: Arc::new(eval),
        }
    }

    /// `scale * 1_B(x)` on the box `B`.
    pub fn box_indicator(support: BoxRegion, scale: f64) -> Self {
        TestFunction::Continuous {
            support,
            eval: Arc::new(move |_| scale),
        }
    }

    pub fn exact_values(&self) -> Result<&[f64]> {
        match self {
            TestFunction::Exact(values) => Ok(values),
            TestFunction::Continuous { .. } => Err(Error::ModeMismatch {
                required: "exact",
                actual: "continuous",
            }),
        }
    }

    pub fn support(&self) -> Result<&BoxRegion> {
        match self {
            TestFunction::Continuous { support, .. } => Ok(support),
            TestFunction::Exact(_) => Err(Error::ModeMismatch {
                required: "continuous",
                actual: "exact",
            }),
        }
    }

    /// Evaluate at a point of `R^d`; zero outside the support box.
    pub fn eval_point(&self, x: &[f64]) -> Result<f64> {
        match self {
            TestFunction::Continuous { support, eval } => {
                if support.contains_point(x) {
                    Ok(eval(x))
                } else {
                    Ok(0.0)
                }
            }
            TestFunction::Exact(_) => Err(Error::ModeMismatch {
                required: "continuous",
                actual: "exact",
            }),
        }
    }

    /// Pointwise combination `alpha * phi + beta * psi`.
    pub fn linear(&self, alpha: f64, other: &TestFunction, beta: f64) -> Result<TestFunction> {
        self.combine(other, move |a, b| alpha * a + beta * b)
    }

    /// Pointwise `phi + psi + phi * psi`, the character composition law.
    pub fn char_combine(&self, other: &TestFunction) -> Result<TestFunction> {
        self.combine(other, |a, b| a + b + a * b)
    }

    /// Pointwise `e^phi - 1`; maps the zero function to zero, so the
    /// support box is preserved.
    pub fn exp_minus_one(&self) -> TestFunction {
        self.map(|a| a.exp_m1())
    }

    /// Pointwise `2 phi + phi^2`, the squared-character generator.
    pub fn theta(&self) -> TestFunction {
        self.map(|a| 2.0 * a + a * a)
    }

    pub fn map(&self, op: impl Fn(f64) -> f64 + Send + Sync + Copy + 'static) -> TestFunction {
        match self {
            TestFunction::Exact(values) => {
                TestFunction::Exact(values.iter().map(|&v| op(v)).collect())
            }
            TestFunction::Continuous { support, eval } => {
                let inner = Arc::clone(eval);
                TestFunction::Continuous {
                    support: support.clone(),
                    eval: Arc::new(move |x| op(inner(x))),
                }
            }
        }
    }

    fn combine(
        &self,
        other: &TestFunction,
        op: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Result<TestFunction> {
        match (self, other) {
            (TestFunction::Exact(a), TestFunction::Exact(b)) => {
                if a.len() != b.len() {
                    return Err(Error::DimensionMismatch {
                        expected: a.len(),
                        got: b.len(),
                    });
                }
                Ok(TestFunction::Exact(
                    a.iter().zip(b).map(|(x, y)| op(*x, *y)).collect(),
                ))
            }
            (
                TestFunction::Continuous { support: sa, eval: fa },
                TestFunction::Continuous { support: sb, eval: fb },
            ) => {
                let support = sa.hull(sb)?;
                let (sa, sb) = (sa.clone(), sb.clone());
                let (fa, fb) = (Arc::clone(fa), Arc::clone(fb));
                Ok(TestFunction::Continuous {
                    support,
                    eval: Arc::new(move |x| {
                        let a = if sa.contains_point(x) { fa(x) } else { 0.0 };
                        let b = if sb.contains_point(x) { fb(x) } else { 0.0 };
                        op(a, b)
                    }),
                })
            }
            _ => Err(Error::ModeMismatch {
                required: "matching test-function modes",
                actual: "mixed",
            }),
        }
    }
}

/// The pairing `<gamma, phi> = sum_{x in gamma} phi(x)`.
pub fn pairing(gamma: &FiniteConfiguration, phi: &TestFunction) -> Result<f64> {
    match (gamma, phi) {
        (FiniteConfiguration::Exact(mask), TestFunction::Exact(values)) => {
            mask.check_within(values.len())?;
            Ok(mask.atoms().map(|i| values[i]).sum())
        }
        (FiniteConfiguration::Continuous(points), phi @ TestFunction::Continuous { .. }) => {
            points.iter().map(|p| phi.eval_point(p)).sum()
        }
        _ => Err(Error::ModeMismatch {
            required: "matching configuration and test-function modes",
            actual: "mixed",
        }),
    }
}

/// Values `phi(x)` over the points of a configuration, mode-matched.
pub fn values_on(gamma: &FiniteConfiguration, phi: &TestFunction) -> Result<Vec<f64>> {
    match (gamma, phi) {
        (FiniteConfiguration::Exact(mask), TestFunction::Exact(values)) => {
            mask.check_within(values.len())?;
            Ok(mask.atoms().map(|i| values[i]).collect())
        }
        (FiniteConfiguration::Continuous(points), phi @ TestFunction::Continuous { .. }) => {
            points.iter().map(|p| phi.eval_point(p)).collect()
        }
        _ => Err(Error::ModeMismatch {
            required: "matching configuration and test-function modes",
            actual: "mixed",
        }),
    }
}
