//! Ground sets and subsets encoded as bitmasks.
//!
//! Bit `i` of a [`Subset`] mask is the `i`-th label of its [`GroundSet`].

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 24;

/// An ordered list of distinct element names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Arc<[String]>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_GROUND {
            return Err(Error::GroundTooLarge(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::InvalidLabel(l.clone()));
            }
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self {
            labels: labels.into(),
        })
    }

    /// Ground set `{v0, .., v(n-1)}`.
    pub fn indexed(prefix: &str, n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| format!("{prefix}{i}")))
    }

    /// Ground set whose labels are the first `n` lowercase letters.
    pub fn letters(n: usize) -> Result<Self> {
        if n > 26 {
            return Err(Error::GroundTooLarge(n));
        }
        Self::new((0..n).map(|i| char::from(b'a' + i as u8).to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// The whole ground set as a subset.
    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    /// Number of subsets, `2^n`.
    pub fn power_set_size(&self) -> usize {
        1usize << self.len()
    }

    pub fn subset<S: AsRef<str>>(&self, names: &[S]) -> Result<Subset> {
        let mut mask = 0u32;
        for n in names {
            mask |= 1 << self.index_of(n.as_ref())?;
        }
        Ok(Subset(mask))
    }

    pub fn singleton(&self, name: &str) -> Result<Subset> {
        Ok(Subset::singleton(self.index_of(name)?))
    }

    /// Rejects masks with bits outside the ground set.
    pub fn check(&self, x: Subset) -> Result<Subset> {
        if x.0 >> self.len() != 0 {
            Err(Error::GroundMismatch)
        } else {
            Ok(x)
        }
    }

    /// Element names of `x` in ground order.
    pub fn names(&self, x: Subset) -> Vec<String> {
        x.elements().map(|i| self.labels[i].clone()).collect()
    }

    /// All subsets in canonical order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        canonical_subsets(self.len()).into_iter()
    }

    /// Ground set with the elements of `keep`, order preserved.
    pub fn restrict(&self, keep: Subset) -> GroundSet {
        GroundSet {
            labels: keep.elements().map(|i| self.labels[i].clone()).collect(),
        }
    }

    /// Concatenation of two ground sets; fails on a shared label.
    pub fn concat(&self, other: &GroundSet) -> Result<GroundSet> {
        if let Some(l) = other.labels.iter().find(|l| self.labels.contains(l)) {
            return Err(Error::LabelCollision(l.clone()));
        }
        GroundSet::new(self.labels.iter().chain(other.labels.iter()).cloned())
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels.iter()).finish()
    }
}

/// A subset of a ground set with at most [`MAX_GROUND`] elements.
///
/// Ordered canonically: first by cardinality, then by mask value.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        if n == 0 {
            Subset(0)
        } else {
            Subset(u32::MAX >> (32 - n))
        }
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn sym_diff(self, other: Subset) -> Subset {
        Subset(self.0 ^ other.0)
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    pub fn toggle(self, i: usize) -> Subset {
        Subset(self.0 ^ 1 << i)
    }

    /// Complement within a ground set of size `n`.
    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    /// Element indices in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, in canonical order.
    pub fn subsets(self) -> Vec<Subset> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mut s = 0u32;
        loop {
            out.push(Subset(s));
            if s == self.0 {
                break;
            }
            s = (s.wrapping_sub(self.0)) & self.0;
        }
        out.sort_unstable();
        out
    }

    /// Maps the elements of `self` lying inside `keep` to positions in the
    /// restricted ground set `keep`.
    pub fn compress(self, keep: Subset) -> Subset {
        let mut out = 0u32;
        for (j, i) in keep.elements().enumerate() {
            if self.contains(i) {
                out |= 1 << j;
            }
        }
        Subset(out)
    }

    /// Inverse of [`Subset::compress`].
    pub fn expand(self, keep: Subset) -> Subset {
        let mut out = 0u32;
        for (j, i) in keep.elements().enumerate() {
            if self.contains(j) {
                out |= 1 << i;
            }
        }
        Subset(out)
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0.count_ones(), self.0).cmp(&(other.0.count_ones(), other.0))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

/// All `2^n` subsets of an `n`-set in canonical order.
pub fn canonical_subsets(n: usize) -> Vec<Subset> {
    Subset::full(n).subsets()
}
