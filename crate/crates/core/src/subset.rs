//! Ground sets and subsets over element ids `0..n`.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// The universe: element ids `0..n`, optionally with unique external labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    n: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("ground set must be nonempty".into()));
        }
        Ok(GroundSet { n, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut g = GroundSet::new(labels.len())?;
        g.set_labels(labels)?;
        Ok(g)
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "{} labels given for {} elements",
                labels.len(),
                self.n
            )));
        }
        let mut seen = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if let Some(j) = seen.insert(l.as_str(), i) {
                return Err(Error::InvalidInput(format!(
                    "label {l:?} used by elements {j} and {i}"
                )));
            }
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false; present for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, id: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[id].as_str())
    }

    pub fn id_of(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn empty_subset(&self) -> Subset {
        Subset::empty(self.n)
    }

    pub fn full_subset(&self) -> Subset {
        Subset::full(self.n)
    }
}

/// A set of element ids drawn from a universe of size `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    n: usize,
    bits: FixedBitSet,
}

impl Subset {
    pub fn empty(n: usize) -> Self {
        Subset {
            n,
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        Subset { n, bits }
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(n: usize, ids: I) -> Result<Self> {
        let mut s = Subset::empty(n);
        for id in ids {
            if id >= n {
                return Err(Error::InvalidInput(format!(
                    "element id {id} out of range for n = {n}"
                )));
            }
            s.bits.insert(id);
        }
        Ok(s)
    }

    /// Bit `i` of `mask` set means element `i` is a member. Requires `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(n <= 64);
        debug_assert!(n == 64 || mask >> n == 0);
        let mut s = Subset::empty(n);
        let mut m = mask;
        while m != 0 {
            s.bits.insert(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        s
    }

    /// Inverse of [`Subset::from_mask`]; panics if `n > 64`.
    pub fn to_mask(&self) -> u64 {
        assert!(
            self.n <= 64,
            "subset over {} elements has no u64 mask",
            self.n
        );
        self.bits.ones().fold(0u64, |m, i| m | (1u64 << i))
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn contains(&self, id: usize) -> bool {
        id < self.n && self.bits.contains(id)
    }

    pub fn insert(&mut self, id: usize) {
        assert!(
            id < self.n,
            "element id {id} out of range for n = {}",
            self.n
        );
        self.bits.insert(id);
    }

    pub fn remove(&mut self, id: usize) {
        if id < self.n {
            self.bits.set(id, false);
        }
    }

    /// Cardinality `|S|`.
    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n
    }

    /// Member ids in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn ids(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &Subset) -> Subset {
        self.check_same_universe(other);
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Subset { n: self.n, bits }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        self.check_same_universe(other);
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Subset { n: self.n, bits }
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        self.check_same_universe(other);
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Subset { n: self.n, bits }
    }

    pub fn complement(&self) -> Subset {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        Subset { n: self.n, bits }
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.check_same_universe(other);
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &Subset) -> bool {
        self.check_same_universe(other);
        self.bits.is_disjoint(&other.bits)
    }

    /// Compares sorted id lists lexicographically.
    pub fn lex_cmp(&self, other: &Subset) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }

    fn check_same_universe(&self, other: &Subset) {
        assert_eq!(
            self.n, other.n,
            "subsets over different universes ({} vs {})",
            self.n, other.n
        );
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, id) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{id}")?;
        }
        write!(f, "}}")
    }
}
