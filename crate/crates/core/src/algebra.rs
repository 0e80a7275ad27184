//! The star-convolution algebra of finitely supported functions on
//! finite configurations.
//!
//! Over an exact ground set, a [`ConfigFunction`] assigns a scalar to
//! every finite configuration (bitmask); the star product
//!
//! ```text
//! (f * g)(xi) = sum over ordered splittings xi = xi' + xi'' + xi'''
//!               of f(xi' + xi'') * g(xi'' + xi''')
//! ```
//!
//! equals the sum of `f(A) g(B)` over all pairs of subsets with
//! `A union B = xi` (identify `A = xi' + xi''`, `B = xi'' + xi'''`).
//! The implementation accumulates over support pairs, which realizes
//! exactly that three-part sum; brute-force splitting enumeration is
//! kept to the tests as an independent oracle.
//!
//! Note the two-part sum over disjoint splittings alone - which would
//! make characters multiplicative without the cross term - does not
//! satisfy the character composition law or the K-transform
//! homomorphism; the three-part form is the one used throughout.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::configuration::{ConfigMask, FiniteConfiguration};
use crate::error::{Error, Result};
use crate::ground::{GroundSpace, TestFunction};
use crate::rng::CounterStream;
use crate::scalar::{Complex64, RationalComplex64, StarScalar};

/// Ground sets up to this size use dense `2^M` storage.
const DENSE_MAX_ATOMS: usize = 12;

#[derive(Clone, Debug)]
enum Storage<S> {
    Dense(Vec<S>),
    Sparse(BTreeMap<u32, S>),
}

/// A finitely supported function on finite configurations over an
/// exact ground set; an element of the star-convolution algebra.
/// Immutable after construction.
#[derive(Clone, Debug)]
pub struct ConfigFunction<S: StarScalar = Complex64> {
    ground: Arc<GroundSpace>,
    storage: Storage<S>,
    level_max: usize,
}

impl<S: StarScalar> ConfigFunction<S> {
    fn empty_storage(ground: &Arc<GroundSpace>) -> Storage<S> {
        if ground.atom_count() <= DENSE_MAX_ATOMS {
            Storage::Dense(vec![S::zero(); 1 << ground.atom_count()])
        } else {
            Storage::Sparse(BTreeMap::new())
        }
    }

    fn require_exact(ground: &Arc<GroundSpace>) -> Result<()> {
        if ground.is_exact() {
            Ok(())
        } else {
            Err(Error::ModeMismatch {
                required: "exact",
                actual: ground.mode_name(),
            })
        }
    }

    /// The zero element.
    pub fn zero(ground: &Arc<GroundSpace>) -> Result<Self> {
        Self::require_exact(ground)?;
        Ok(Self {
            ground: Arc::clone(ground),
            storage: Self::empty_storage(ground),
            level_max: 0,
        })
    }

    /// The algebra unit `e`: one at the empty configuration, zero
    /// elsewhere.
    pub fn unit(ground: &Arc<GroundSpace>) -> Result<Self> {
        Self::from_entries(ground, [(ConfigMask::EMPTY, S::one())])
    }

    /// The indicator of a single configuration.
    pub fn indicator(ground: &Arc<GroundSpace>, mask: ConfigMask) -> Result<Self> {
        Self::from_entries(ground, [(mask, S::one())])
    }

    pub fn from_entries(
        ground: &Arc<GroundSpace>,
        entries: impl IntoIterator<Item = (ConfigMask, S)>,
    ) -> Result<Self> {
        Self::require_exact(ground)?;
        let mut f = Self::zero(ground)?;
        for (mask, value) in entries {
            mask.check_within(ground.atom_count())?;
            f.accumulate(mask, &value);
        }
        f.refresh_level();
        Ok(f)
    }

    /// The truncated character `chi_phi^(k)`: the product of `phi` over
    /// the configuration on levels up to `k`, zero above. `None` means
    /// no truncation, which over a finite exact ground set is the same
    /// as truncating at the number of atoms.
    pub fn character(
        ground: &Arc<GroundSpace>,
        phi: &TestFunction,
        truncation: Option<usize>,
    ) -> Result<Self> {
        Self::require_exact(ground)?;
        let values = phi.exact_values()?;
        if values.len() != ground.atom_count() {
            return Err(Error::DimensionMismatch {
                expected: ground.atom_count(),
                got: values.len(),
            });
        }
        let k = truncation.unwrap_or(ground.atom_count());
        let mut entries = Vec::new();
        for mask in ConfigMask::full(ground.atom_count()).subsets() {
            if mask.level() > k {
                continue;
            }
            let mut prod = S::one();
            for i in mask.atoms() {
                prod = prod.mul(&S::from_f64(values[i]));
            }
            entries.push((mask, prod));
        }
        Self::from_entries(ground, entries)
    }

    /// A random element with uniform values in the complex unit square
    /// on every level up to `level_max`.
    pub fn random(
        ground: &Arc<GroundSpace>,
        level_max: usize,
        stream: &mut CounterStream,
    ) -> Result<Self>
    where
        S: RandomScalar,
    {
        Self::require_exact(ground)?;
        let mut entries = Vec::new();
        for mask in ConfigMask::full(ground.atom_count()).subsets() {
            if mask.level() <= level_max {
                entries.push((mask, S::random(stream)));
            }
        }
        Self::from_entries(ground, entries)
    }

    pub fn ground(&self) -> &Arc<GroundSpace> {
        &self.ground
    }

    /// Largest level carrying a nonzero value.
    pub fn level_max(&self) -> usize {
        self.level_max
    }

    pub fn value(&self, mask: ConfigMask) -> S {
        match &self.storage {
            Storage::Dense(v) => v
                .get(mask.0 as usize)
                .cloned()
                .unwrap_or_else(S::zero),
            Storage::Sparse(m) => m.get(&mask.0).cloned().unwrap_or_else(S::zero),
        }
    }

    /// Evaluate at a finite configuration (exact mode only).
    pub fn eval(&self, gamma: &FiniteConfiguration) -> Result<S> {
        match gamma {
            FiniteConfiguration::Exact(mask) => {
                mask.check_within(self.ground.atom_count())?;
                Ok(self.value(*mask))
            }
            FiniteConfiguration::Continuous(_) => Err(Error::ModeMismatch {
                required: "exact",
                actual: "continuous",
            }),
        }
    }

    /// Nonzero entries, sorted by mask value.
    pub fn entries(&self) -> Vec<(ConfigMask, S)> {
        match &self.storage {
            Storage::Dense(v) => v
                .iter()
                .enumerate()
                .filter(|(_, s)| !s.is_zero())
                .map(|(i, s)| (ConfigMask(i as u32), s.clone()))
                .collect(),
            Storage::Sparse(m) => m
                .iter()
                .filter(|(_, s)| !s.is_zero())
                .map(|(&k, s)| (ConfigMask(k), s.clone()))
                .collect(),
        }
    }

    fn accumulate(&mut self, mask: ConfigMask, value: &S) {
        if value.is_zero() {
            return;
        }
        match &mut self.storage {
            Storage::Dense(v) => {
                let slot = &mut v[mask.0 as usize];
                *slot = slot.add(value);
            }
            Storage::Sparse(m) => {
                let slot = m.entry(mask.0).or_insert_with(S::zero);
                *slot = slot.add(value);
            }
        }
    }

    fn refresh_level(&mut self) {
        self.level_max = self
            .entries()
            .iter()
            .map(|(mask, _)| mask.level())
            .max()
            .unwrap_or(0);
    }

    fn check_same_ground(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ground, &other.ground) || self.ground.same_exact(&other.ground) {
            Ok(())
        } else {
            Err(Error::GroundMismatch)
        }
    }

    /// Star convolution; see the module docs for the splitting sum.
    pub fn star(&self, other: &Self) -> Result<Self> {
        self.check_same_ground(other)?;
        let mut out = Self::zero(&self.ground)?;
        let rhs = other.entries();
        for (a, fa) in self.entries() {
            for (b, gb) in &rhs {
                out.accumulate(a.union(*b), &fa.mul(gb));
            }
        }
        out.refresh_level();
        Ok(out)
    }

    /// Pointwise conjugation.
    pub fn involution(&self) -> Self {
        let mut out = Self {
            ground: Arc::clone(&self.ground),
            storage: Self::empty_storage(&self.ground),
            level_max: 0,
        };
        for (mask, value) in self.entries() {
            out.accumulate(mask, &value.conjugate());
        }
        out.refresh_level();
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_ground(other)?;
        let mut out = self.clone();
        for (mask, value) in other.entries() {
            out.accumulate(mask, &value);
        }
        out.refresh_level();
        Ok(out)
    }

    pub fn scale(&self, factor: &S) -> Self {
        let mut out = Self {
            ground: Arc::clone(&self.ground),
            storage: Self::empty_storage(&self.ground),
            level_max: 0,
        };
        for (mask, value) in self.entries() {
            out.accumulate(mask, &value.mul(factor));
        }
        out.refresh_level();
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&S::one().neg()))
    }

    /// Drop all levels above `k`.
    pub fn truncate(&self, k: usize) -> Self {
        let entries = self
            .entries()
            .into_iter()
            .filter(|(mask, _)| mask.level() <= k);
        Self::from_entries(&self.ground, entries).expect("masks already validated")
    }

    /// Largest pointwise distance to `other`, as `f64`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut masks: Vec<ConfigMask> = self.entries().into_iter().map(|(m, _)| m).collect();
        masks.extend(other.entries().into_iter().map(|(m, _)| m));
        masks
            .into_iter()
            .map(|m| self.value(m).sub(&other.value(m)).abs_f64())
            .fold(0.0, f64::max)
    }

    /// Exact equality of all values; meaningful for rational scalars.
    pub fn identical_to(&self, other: &Self) -> bool {
        let mut masks: Vec<ConfigMask> = self.entries().into_iter().map(|(m, _)| m).collect();
        masks.extend(other.entries().into_iter().map(|(m, _)| m));
        masks
            .into_iter()
            .all(|m| self.value(m).sub(&other.value(m)).is_zero())
    }
}

/// Scalars that can be drawn from a random stream, for generating
/// random algebra elements in tests and suites.
pub trait RandomScalar: StarScalar {
    fn random(stream: &mut CounterStream) -> Self;
}

impl RandomScalar for Complex64 {
    fn random(stream: &mut CounterStream) -> Self {
        Complex64::new(stream.uniform(-1.0, 1.0), stream.uniform(-1.0, 1.0))
    }
}

impl RandomScalar for RationalComplex64 {
    /// Small numerators and denominators: products through two nested
    /// star convolutions stay far from `i64` overflow.
    fn random(stream: &mut CounterStream) -> Self {
        let part = |s: &mut CounterStream| {
            let num = (s.next_u64() % 7) as i64 - 3;
            let den = (s.next_u64() % 4) as i64 + 1;
            num_rational::Rational64::new(num, den)
        };
        num_complex::Complex::new(part(stream), part(stream))
    }
}

impl ConfigFunction<Complex64> {
    /// Serialized exact-mode form:
    /// `{"level_max": m, "entries": [{"config": [labels], "re": x, "im": y}]}`.
    pub fn to_json_value(&self) -> serde_json::Value {
        let atoms = self.ground.atoms().expect("exact by construction");
        let entries: Vec<serde_json::Value> = self
            .entries()
            .into_iter()
            .map(|(mask, value)| {
                let labels: Vec<&str> = mask.atoms().map(|i| atoms[i].label.as_str()).collect();
                serde_json::json!({"config": labels, "re": value.re, "im": value.im})
            })
            .collect();
        serde_json::json!({"level_max": self.level_max, "entries": entries})
    }

    pub fn from_json_value(
        ground: &Arc<GroundSpace>,
        value: &serde_json::Value,
    ) -> Result<Self> {
        let entries = value
            .get("entries")
            .and_then(|e| e.as_array())
            .ok_or_else(|| Error::Malformed("missing `entries` array".into()))?;
        let mut parsed = Vec::with_capacity(entries.len());
        for entry in entries {
            let config = entry
                .get("config")
                .and_then(|c| c.as_array())
                .ok_or_else(|| Error::Malformed("entry missing `config`".into()))?;
            let mut mask = ConfigMask::EMPTY;
            for label in config {
                let label = label
                    .as_str()
                    .ok_or_else(|| Error::Malformed("config labels must be strings".into()))?;
                let index = ground.atom_index(label)?;
                if mask.contains(index) {
                    return Err(Error::DuplicatePoint);
                }
                mask = mask.insert(index);
            }
            let re = entry.get("re").and_then(|v| v.as_f64()).unwrap_or(0.0);
            let im = entry.get("im").and_then(|v| v.as_f64()).unwrap_or(0.0);
            parsed.push((mask, Complex64::new(re, im)));
        }
        Self::from_entries(ground, parsed)
    }
}

/// A multiplicative character `chi_phi`, optionally truncated to levels
/// `<= k` (a subcharacter). Untruncated characters are not finitely
/// supported; they are admitted only where a closed form consumes them
/// (integration against the Lebesgue-Poisson measure, norm bounds, the
/// character composition law).
#[derive(Clone, Debug)]
pub struct Character {
    pub phi: TestFunction,
    pub truncation: Option<usize>,
}

impl Character {
    pub fn new(phi: TestFunction) -> Self {
        Self {
            phi,
            truncation: None,
        }
    }

    pub fn truncated(phi: TestFunction, k: usize) -> Self {
        Self {
            phi,
            truncation: Some(k),
        }
    }

    /// The composition law: `chi_phi * chi_psi = chi_{phi+psi+phi psi}`.
    /// Defined for untruncated characters, where it is exact on all of
    /// `Gamma_0`; truncated characters obey it only below the cutoff
    /// and must go through [`ConfigFunction::star`].
    pub fn star(&self, other: &Character) -> Result<Character> {
        if self.truncation.is_some() || other.truncation.is_some() {
            return Err(Error::UntruncatedCharacter);
        }
        Ok(Character::new(self.phi.char_combine(&other.phi)?))
    }

    /// Value at a configuration: the product of `phi` over its points,
    /// `1` at the empty configuration, `0` above the truncation level.
    pub fn eval(&self, gamma: &FiniteConfiguration) -> Result<f64> {
        if let Some(k) = self.truncation {
            if gamma.level() > k {
                return Ok(0.0);
            }
        }
        Ok(crate::ground::values_on(gamma, &self.phi)?
            .into_iter()
            .product())
    }

    /// Materialize as a finitely supported algebra element over an
    /// exact ground set.
    pub fn to_config_function(&self, ground: &Arc<GroundSpace>) -> Result<ConfigFunction> {
        ConfigFunction::character(ground, &self.phi, self.truncation)
    }
}
