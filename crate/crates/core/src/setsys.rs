//! Set systems and the elementary vertex-flip operations on them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dense::DenseFamily;
use crate::error::{Error, Result};
use crate::ground::{GroundSet, Subset};

/// A ground set together with a family of its subsets.
///
/// The family is kept sorted in canonical [`Subset`] order without
/// duplicates, so two systems are equal exactly when their families are
/// equal element by element.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SetSystemJson", into = "SetSystemJson")]
pub struct SetSystem {
    ground: GroundSet,
    family: Vec<Subset>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremal {
    /// Inclusion-minimal members.
    Min,
    /// Inclusion-maximal members.
    Max,
    /// Members of least cardinality.
    #[serde(rename = "minc")]
    MinCard,
    /// Members of greatest cardinality.
    #[serde(rename = "maxc")]
    MaxCard,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PseudoMode {
    /// `{Y ∪ {v} | Y ∈ D, v ∉ Y}`
    Delete,
    /// `{Y ∖ {v} | Y ∈ D, v ∈ Y}`
    Contract,
}

impl SetSystem {
    /// Builds a set system from lists of element names.
    pub fn new<S: AsRef<str>>(ground: GroundSet, sets: &[Vec<S>]) -> Result<Self> {
        let family = sets
            .iter()
            .map(|s| ground.subset(s))
            .collect::<Result<Vec<_>>>()?;
        Self::from_family(ground, family)
    }

    /// Builds a set system from masks, rejecting duplicates.
    pub fn from_family(ground: GroundSet, mut family: Vec<Subset>) -> Result<Self> {
        for &s in &family {
            ground.check(s)?;
        }
        family.sort_unstable();
        if let Some(w) = family.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSubset(ground.names(w[0])));
        }
        Ok(Self { ground, family })
    }

    /// Builds a set system from masks known to lie inside the ground set;
    /// duplicates are merged.
    pub(crate) fn collect<I: IntoIterator<Item = Subset>>(ground: GroundSet, family: I) -> Self {
        let mut family: Vec<Subset> = family.into_iter().collect();
        family.sort_unstable();
        family.dedup();
        Self { ground, family }
    }

    pub(crate) fn to_dense(&self) -> DenseFamily {
        DenseFamily::from_members(self.n(), self.family.iter().copied())
    }

    /// The power set `2^V`.
    pub fn power_set(ground: GroundSet) -> Self {
        let family = ground.subsets().collect();
        Self { ground, family }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn family(&self) -> &[Subset] {
        &self.family
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn is_proper(&self) -> bool {
        !self.family.is_empty()
    }

    pub fn contains(&self, x: Subset) -> bool {
        self.family.binary_search(&x).is_ok()
    }

    pub fn is_subfamily_of(&self, other: &SetSystem) -> bool {
        self.family.iter().all(|&x| other.contains(x))
    }

    fn require_proper(&self) -> Result<()> {
        if self.is_proper() {
            Ok(())
        } else {
            Err(Error::ImproperSystem)
        }
    }

    /// Resolves an element name to its index.
    pub fn element(&self, name: &str) -> Result<usize> {
        self.ground.index_of(name)
    }

    /// Pivot (twist) `M * X`.
    pub fn pivot(&self, x: Subset) -> Result<Self> {
        self.ground.check(x)?;
        Ok(Self::collect(
            self.ground.clone(),
            self.family.iter().map(|y| y.sym_diff(x)),
        ))
    }

    /// Loop complementation `M + X`, one element at a time.
    pub fn loop_complement(&self, x: Subset) -> Result<Self> {
        self.ground.check(x)?;
        let mut family = self.family.clone();
        for v in x.elements() {
            family = toggle_merge(
                &family,
                family.iter().filter(|z| !z.contains(v)).map(|z| z.with(v)),
            );
        }
        Ok(Self {
            ground: self.ground.clone(),
            family,
        })
    }

    /// Dual pivot `M ∂ X = M + X * X + X`, one element at a time.
    pub fn dual_pivot(&self, x: Subset) -> Result<Self> {
        self.ground.check(x)?;
        let mut family = self.family.clone();
        for v in x.elements() {
            family = toggle_merge(
                &family,
                family
                    .iter()
                    .filter(|z| z.contains(v))
                    .map(|z| z.without(v)),
            );
        }
        Ok(Self {
            ground: self.ground.clone(),
            family,
        })
    }

    /// `M[X]`: members inside `X`, over the ground set `X`.
    pub fn restrict(&self, x: Subset) -> Result<Self> {
        self.ground.check(x)?;
        let ground = self.ground.restrict(x);
        let family = self
            .family
            .iter()
            .filter(|y| y.is_subset_of(x))
            .map(|y| y.compress(x));
        Ok(Self::collect(ground, family))
    }

    /// `M ∖ X = M[V ∖ X]`.
    pub fn delete(&self, x: Subset) -> Result<Self> {
        self.ground.check(x)?;
        self.restrict(x.complement(self.n()))
    }

    pub fn extremal(&self, kind: Extremal) -> Result<Self> {
        self.require_proper()?;
        let f = &self.family;
        let family: Vec<Subset> = match kind {
            Extremal::Min => f
                .iter()
                .copied()
                .filter(|&y| !f.iter().any(|&z| z != y && z.is_subset_of(y)))
                .collect(),
            Extremal::Max => f
                .iter()
                .copied()
                .filter(|&y| !f.iter().any(|&z| z != y && y.is_subset_of(z)))
                .collect(),
            Extremal::MinCard => {
                let k = f[0].len();
                f.iter().copied().take_while(|y| y.len() == k).collect()
            }
            Extremal::MaxCard => {
                let k = f[f.len() - 1].len();
                f.iter().copied().filter(|y| y.len() == k).collect()
            }
        };
        Ok(Self {
            ground: self.ground.clone(),
            family,
        })
    }

    /// `d_M(X) = min{|X Δ Y| : Y ∈ M}`.
    pub fn distance(&self, x: Subset) -> Result<usize> {
        self.require_proper()?;
        self.ground.check(x)?;
        Ok(self.distance_unchecked(x))
    }

    pub(crate) fn distance_unchecked(&self, x: Subset) -> usize {
        self.family
            .iter()
            .map(|y| y.sym_diff(x).len())
            .min()
            .unwrap_or(usize::MAX)
    }

    /// `d_M = d_M(∅)`, the least cardinality of a member.
    pub fn min_distance(&self) -> Result<usize> {
        self.require_proper()?;
        Ok(self.family[0].len())
    }

    /// Pseudo-deletion `M ∖̂ v` or pseudo-contraction `M /̂ v`; the ground set
    /// is kept. The result may be improper.
    pub fn pseudo(&self, v: usize, mode: PseudoMode) -> Result<Self> {
        self.require_proper()?;
        if v >= self.n() {
            return Err(Error::GroundMismatch);
        }
        let family: Vec<Subset> = match mode {
            PseudoMode::Delete => self
                .family
                .iter()
                .filter(|y| !y.contains(v))
                .map(|y| y.with(v))
                .collect(),
            PseudoMode::Contract => self
                .family
                .iter()
                .filter(|y| y.contains(v))
                .map(|y| y.without(v))
                .collect(),
        };
        Ok(Self::collect(self.ground.clone(), family))
    }

    pub fn is_equicardinal(&self) -> Result<bool> {
        self.require_proper()?;
        let k = self.family[0].len();
        Ok(self.family.iter().all(|y| y.len() == k))
    }

    /// Every subset of a member is a member.
    pub fn is_downward_closed(&self) -> bool {
        self.first_missing_subset().is_none()
    }

    /// First `(member, missing immediate subset)` pair violating downward closure.
    pub fn first_missing_subset(&self) -> Option<(Subset, Subset)> {
        self.family.iter().find_map(|&y| {
            y.elements()
                .map(|i| y.without(i))
                .find(|&z| !self.contains(z))
                .map(|z| (y, z))
        })
    }

    /// Family as lists of element names.
    pub fn named_sets(&self) -> Vec<Vec<String>> {
        self.family.iter().map(|&s| self.ground.names(s)).collect()
    }
}

/// Symmetric difference of a canonical family with a second list of sets.
fn toggle_merge<I: Iterator<Item = Subset>>(base: &[Subset], extra: I) -> Vec<Subset> {
    let mut all: Vec<Subset> = base.iter().copied().chain(extra).collect();
    all.sort_unstable();
    let mut out = Vec::with_capacity(all.len());
    let mut i = 0;
    while i < all.len() {
        let mut j = i;
        while j < all.len() && all[j] == all[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(all[i]);
        }
        i = j;
    }
    out
}

impl fmt::Debug for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        f.debug_list().entries(self.ground.labels()).finish()?;
        write!(f, ", {{")?;
        for (i, s) in self.family.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{{}}}", self.ground.names(*s).join(","))?;
        }
        write!(f, "}})")
    }
}

/// Reference definitions of loop complementation and dual pivot by interval
/// parity counts. Quadratic in `2^n`; used to cross-check the element-wise
/// implementations.
pub mod parity {
    use super::*;

    /// `Y ∈ M + X` iff `|{Z ∈ M : Y ∖ X ⊆ Z ⊆ Y}|` is odd.
    pub fn loop_complement(m: &SetSystem, x: Subset) -> Result<SetSystem> {
        m.ground.check(x)?;
        let family = m.ground.subsets().filter(|&y| {
            let lo = y.minus(x);
            m.family
                .iter()
                .filter(|z| lo.is_subset_of(**z) && z.is_subset_of(y))
                .count()
                % 2
                == 1
        });
        Ok(SetSystem::collect(m.ground.clone(), family))
    }

    /// `Y ∈ M ∂ X` iff `|{Z ∈ M : Y ⊆ Z ⊆ Y ∪ X}|` is odd.
    pub fn dual_pivot(m: &SetSystem, x: Subset) -> Result<SetSystem> {
        m.ground.check(x)?;
        let family = m.ground.subsets().filter(|&y| {
            let hi = y.union(x);
            m.family
                .iter()
                .filter(|z| y.is_subset_of(**z) && z.is_subset_of(hi))
                .count()
                % 2
                == 1
        });
        Ok(SetSystem::collect(m.ground.clone(), family))
    }
}

#[derive(Clone, Serialize, Deserialize)]
pub(crate) struct SetSystemJson {
    ground: Vec<String>,
    sets: Vec<Vec<String>>,
}

impl TryFrom<SetSystemJson> for SetSystem {
    type Error = Error;

    fn try_from(j: SetSystemJson) -> Result<Self> {
        let ground = GroundSet::new(j.ground)?;
        SetSystem::new(ground, &j.sets)
    }
}

impl From<SetSystem> for SetSystemJson {
    fn from(m: SetSystem) -> Self {
        SetSystemJson {
            sets: m.named_sets(),
            ground: m.ground.labels().to_vec(),
        }
    }
}
