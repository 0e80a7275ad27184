//! Finite configurations: the points of `Gamma_0`.

use crate::error::{Error, Result};

/// A finite configuration over an exact ground set, stored as a bitmask
/// over atom indices. Bit `i` set means atom `i` belongs to the
/// configuration; distinctness is inherent in the representation.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConfigMask(pub u32);

impl ConfigMask {
    pub const EMPTY: ConfigMask = ConfigMask(0);

    /// Number of points in the configuration (the level `n = |xi|`).
    pub fn level(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, atom: usize) -> bool {
        self.0 >> atom & 1 == 1
    }

    pub fn union(self, other: ConfigMask) -> ConfigMask {
        ConfigMask(self.0 | other.0)
    }

    pub fn intersection(self, other: ConfigMask) -> ConfigMask {
        ConfigMask(self.0 & other.0)
    }

    pub fn minus(self, other: ConfigMask) -> ConfigMask {
        ConfigMask(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: ConfigMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn singleton(atom: usize) -> ConfigMask {
        ConfigMask(1 << atom)
    }

    pub fn insert(self, atom: usize) -> ConfigMask {
        ConfigMask(self.0 | 1 << atom)
    }

    /// Full configuration over a ground set of `m` atoms.
    pub fn full(m: usize) -> ConfigMask {
        debug_assert!(m <= 32);
        if m == 32 {
            ConfigMask(u32::MAX)
        } else {
            ConfigMask((1u32 << m) - 1)
        }
    }

    pub fn check_within(self, atoms: usize) -> Result<()> {
        if self.is_subset_of(ConfigMask::full(atoms)) {
            Ok(())
        } else {
            Err(Error::MaskOutOfRange { mask: self.0, atoms })
        }
    }

    /// Iterate the atom indices in the configuration, ascending.
    pub fn atoms(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// Iterate all sub-configurations (submasks), including `self` and
    /// the empty configuration.
    pub fn subsets(self) -> SubmaskIter {
        SubmaskIter {
            mask: self.0,
            next: Some(self.0),
        }
    }
}

/// Iterator over submasks in decreasing numeric order, ending at 0.
pub struct SubmaskIter {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for SubmaskIter {
    type Item = ConfigMask;

    fn next(&mut self) -> Option<ConfigMask> {
        let current = self.next?;
        self.next = if current == 0 {
            None
        } else {
            Some((current - 1) & self.mask)
        };
        Some(ConfigMask(current))
    }
}

/// All configurations over `m` atoms, ordered by (level, mask value).
/// The empty configuration comes first; this is the canonical basis
/// order used by the moment-space machinery.
pub fn masks_by_level(m: usize, level_max: usize) -> Vec<ConfigMask> {
    let mut all: Vec<ConfigMask> = (0..1u32 << m)
        .map(ConfigMask)
        .filter(|c| c.level() <= level_max)
        .collect();
    all.sort_by_key(|c| (c.level(), c.0));
    all
}

/// A finite configuration in either ground-space mode.
///
/// Continuous configurations hold pairwise distinct points of `R^d` in
/// sorted (lexicographic) canonical order.
#[derive(Clone, Debug, PartialEq)]
pub enum FiniteConfiguration {
    Exact(ConfigMask),
    Continuous(Vec<Vec<f64>>),
}

impl FiniteConfiguration {
    pub fn empty_exact() -> Self {
        FiniteConfiguration::Exact(ConfigMask::EMPTY)
    }

    pub fn empty_continuous() -> Self {
        FiniteConfiguration::Continuous(Vec::new())
    }

    /// Build a continuous configuration, sorting points into canonical
    /// order and rejecting exact duplicates.
    pub fn continuous(mut points: Vec<Vec<f64>>) -> Result<Self> {
        if let Some(first) = points.first() {
            let d = first.len();
            if points.iter().any(|p| p.len() != d) {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: points.iter().map(|p| p.len()).find(|&l| l != d).unwrap(),
                });
            }
        }
        points.sort_by(|a, b| {
            a.iter()
                .zip(b.iter())
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| !o.is_eq())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint);
        }
        Ok(FiniteConfiguration::Continuous(points))
    }

    /// Number of points (the level).
    pub fn level(&self) -> usize {
        match self {
            FiniteConfiguration::Exact(mask) => mask.level(),
            FiniteConfiguration::Continuous(points) => points.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.level() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submask_iteration_covers_the_lattice() {
        let m = ConfigMask(0b1011);
        let subs: Vec<u32> = m.subsets().map(|c| c.0).collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.contains(&0));
        assert!(subs.contains(&0b1011));
        assert!(subs.iter().all(|&s| s & !0b1011 == 0));
    }

    #[test]
    fn atoms_iterates_set_bits() {
        let m = ConfigMask(0b10101);
        assert_eq!(m.atoms().collect::<Vec<_>>(), vec![0, 2, 4]);
        assert_eq!(m.level(), 3);
    }

    #[test]
    fn level_ordering_puts_empty_first() {
        let basis = masks_by_level(3, 3);
        assert_eq!(basis.len(), 8);
        assert_eq!(basis[0], ConfigMask::EMPTY);
        assert!(basis.windows(2).all(|w| w[0].level() <= w[1].level()));
    }

    #[test]
    fn masks_by_level_respects_cap() {
        let basis = masks_by_level(4, 2);
        assert_eq!(basis.len(), 1 + 4 + 6);
    }

    #[test]
    fn duplicate_points_are_rejected() {
        let err = FiniteConfiguration::continuous(vec![vec![0.5], vec![0.5]]).unwrap_err();
        assert!(matches!(err, Error::DuplicatePoint));
    }

    #[test]
    fn points_are_canonically_sorted() {
        let c = FiniteConfiguration::continuous(vec![vec![0.9], vec![0.1], vec![0.5]]).unwrap();
        match c {
            FiniteConfiguration::Continuous(pts) => {
                assert_eq!(pts, vec![vec![0.1], vec![0.5], vec![0.9]]);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn mask_out_of_range_is_detected() {
        assert!(ConfigMask(0b100).check_within(2).is_err());
        assert!(ConfigMask(0b011).check_within(2).is_ok());
    }
}
