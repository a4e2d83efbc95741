//! Delta-matroid and matroid characterization checkers.
//!
//! Every checker is a brute-force sweep returning a [`CheckVerdict`]; a
//! negative verdict carries the first violation in canonical order, and the
//! violation can be re-validated against the input with
//! [`Witness::revalidate`]. Checkers that are provably equivalent are run
//! against each other in the `Both`/cross-check modes, where a disagreement
//! is reported as [`Error::OracleDisagreement`] rather than a verdict.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::dense::DenseFamily;
use crate::error::{Error, Result};
use crate::flip::NormalForm;
use crate::ground::{GroundSet, Subset};
use crate::setsys::{Extremal, PseudoMode, SetSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl CheckVerdict {
    pub fn pass() -> Self {
        Self {
            holds: true,
            witness: None,
        }
    }

    pub fn fail(witness: Witness) -> Self {
        Self {
            holds: false,
            witness: Some(witness),
        }
    }

    pub fn to_json(&self, ground: &GroundSet) -> Value {
        json!({
            "holds": self.holds,
            "witness": self.witness.as_ref().map(|w| w.to_json(ground)),
        })
    }
}

/// A concrete violation found by a checker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `X, Y ∈ M`, `u ∈ X Δ Y`, and neither `X Δ {u}` nor any `X Δ {u, v}`
    /// with `v ∈ X Δ Y` is a member.
    Exchange { x: Subset, y: Subset, u: usize },
    /// Two inclusion-minimal members of `M * pivot` with different sizes.
    MinNotEquicardinal {
        pivot: Subset,
        smaller: Subset,
        larger: Subset,
    },
    /// Two inclusion-maximal members of `M * pivot` with different sizes.
    MaxNotEquicardinal {
        pivot: Subset,
        smaller: Subset,
        larger: Subset,
    },
    /// Two members of `M` with different sizes.
    NotEquicardinal { smaller: Subset, larger: Subset },
    /// `missing ⊂ member ∈ M` but `missing ∉ M`.
    NotDownwardClosed { member: Subset, missing: Subset },
    /// Two inclusion-maximal members of `M[within]` with different sizes.
    CardinalityProperty {
        within: Subset,
        smaller: Subset,
        larger: Subset,
    },
    /// `d_{M*pivot} ≠ d_{(M*pivot)[within]}`.
    DistanceMinor {
        within: Subset,
        pivot: Subset,
        full: usize,
        restricted: usize,
    },
    /// `d_{M[within]}(target) ≠ d_M(target)` for `target ⊆ within`.
    RestrictedDistance {
        within: Subset,
        target: Subset,
        full: usize,
        restricted: usize,
    },
    /// The image of `M` under a vertex-flip normal form is not a
    /// delta-matroid; `image` is the violation inside that image.
    FlipImage {
        normal_form: NormalForm,
        image: Box<Witness>,
    },
}

impl Witness {
    pub fn to_json(&self, g: &GroundSet) -> Value {
        let s = |x: &Subset| g.names(*x);
        match self {
            Witness::Exchange { x, y, u } => json!({
                "kind": "exchange", "x": s(x), "y": s(y), "u": g.label(*u),
            }),
            Witness::MinNotEquicardinal {
                pivot,
                smaller,
                larger,
            } => json!({
                "kind": "min_not_equicardinal", "pivot": s(pivot),
                "smaller": s(smaller), "larger": s(larger),
            }),
            Witness::MaxNotEquicardinal {
                pivot,
                smaller,
                larger,
            } => json!({
                "kind": "max_not_equicardinal", "pivot": s(pivot),
                "smaller": s(smaller), "larger": s(larger),
            }),
            Witness::NotEquicardinal { smaller, larger } => json!({
                "kind": "not_equicardinal", "smaller": s(smaller), "larger": s(larger),
            }),
            Witness::NotDownwardClosed { member, missing } => json!({
                "kind": "not_downward_closed", "member": s(member), "missing": s(missing),
            }),
            Witness::CardinalityProperty {
                within,
                smaller,
                larger,
            } => json!({
                "kind": "cardinality_property", "within": s(within),
                "smaller": s(smaller), "larger": s(larger),
            }),
            Witness::DistanceMinor {
                within,
                pivot,
                full,
                restricted,
            } => json!({
                "kind": "distance_minor", "within": s(within), "pivot": s(pivot),
                "full": full, "restricted": restricted,
            }),
            Witness::RestrictedDistance {
                within,
                target,
                full,
                restricted,
            } => json!({
                "kind": "restricted_distance", "within": s(within), "target": s(target),
                "full": full, "restricted": restricted,
            }),
            Witness::FlipImage { normal_form, image } => json!({
                "kind": "flip_image",
                "normal_form": normal_form.to_json(g),
                "image": image.to_json(g),
            }),
        }
    }

    /// Re-checks that this witness is a genuine violation for `m`.
    pub fn revalidate(&self, m: &SetSystem) -> bool {
        match *self {
            Witness::Exchange { x, y, u } => {
                let xy = x.sym_diff(y);
                m.contains(x)
                    && m.contains(y)
                    && xy.contains(u)
                    && !m.contains(x.toggle(u))
                    && xy
                        .elements()
                        .filter(|&v| v != u)
                        .all(|v| !m.contains(x.toggle(u).toggle(v)))
            }
            Witness::MinNotEquicardinal {
                pivot,
                smaller,
                larger,
            } => extremal_pair(m, pivot, Extremal::Min, smaller, larger),
            Witness::MaxNotEquicardinal {
                pivot,
                smaller,
                larger,
            } => extremal_pair(m, pivot, Extremal::Max, smaller, larger),
            Witness::NotEquicardinal { smaller, larger } => {
                m.contains(smaller) && m.contains(larger) && smaller.len() != larger.len()
            }
            Witness::NotDownwardClosed { member, missing } => {
                m.contains(member) && missing.is_subset_of(member) && !m.contains(missing)
            }
            Witness::CardinalityProperty {
                within,
                smaller,
                larger,
            } => {
                let Ok(r) = m.restrict(within) else {
                    return false;
                };
                r.is_proper()
                    && r.extremal(Extremal::Max).is_ok_and(|mx| {
                        mx.contains(smaller.compress(within))
                            && mx.contains(larger.compress(within))
                    })
                    && smaller.len() != larger.len()
            }
            Witness::DistanceMinor {
                within,
                pivot,
                full,
                restricted,
            } => {
                let Ok(p) = m.pivot(pivot) else { return false };
                let Ok(r) = p.restrict(within) else {
                    return false;
                };
                r.is_proper()
                    && p.min_distance() == Ok(full)
                    && r.min_distance() == Ok(restricted)
                    && full != restricted
            }
            Witness::RestrictedDistance {
                within,
                target,
                full,
                restricted,
            } => {
                let Ok(r) = m.restrict(within) else {
                    return false;
                };
                target.is_subset_of(within)
                    && m.distance(target) == Ok(full)
                    && r.distance(target.compress(within)) == Ok(restricted)
                    && full != restricted
            }
            Witness::FlipImage {
                ref normal_form,
                ref image,
            } => normal_form
                .apply(m)
                .is_ok_and(|img| image.revalidate(&img) && !is_isodistant(&img)),
        }
    }
}

fn extremal_pair(m: &SetSystem, pivot: Subset, kind: Extremal, a: Subset, b: Subset) -> bool {
    m.pivot(pivot)
        .and_then(|p| p.extremal(kind))
        .is_ok_and(|e| e.contains(a) && e.contains(b) && a.len() != b.len())
}

fn require_proper(m: &SetSystem) -> Result<()> {
    if m.is_proper() {
        Ok(())
    } else {
        Err(Error::ImproperSystem)
    }
}

/// Symmetric exchange axiom, checked over every `(X, Y, u)`.
pub fn check_exchange(m: &SetSystem) -> Result<CheckVerdict> {
    require_proper(m)?;
    let dense = m.to_dense();
    for &x in m.family() {
        for &y in m.family() {
            let xy = x.sym_diff(y);
            for u in xy.elements() {
                let xu = x.toggle(u);
                if dense.contains(xu) {
                    continue;
                }
                if !xy
                    .elements()
                    .any(|v| v != u && dense.contains(xu.toggle(v)))
                {
                    return Ok(CheckVerdict::fail(Witness::Exchange { x, y, u }));
                }
            }
        }
    }
    Ok(CheckVerdict::pass())
}

/// For every `X ⊆ V`, `min(M * X)` is equicardinal.
pub fn check_isodistant(m: &SetSystem) -> Result<CheckVerdict> {
    require_proper(m)?;
    let dense = m.to_dense();
    for x in m.ground().subsets() {
        if let Some((smaller, larger)) = dense.pivot(x).minimal().unequal_pair() {
            return Ok(CheckVerdict::fail(Witness::MinNotEquicardinal {
                pivot: x,
                smaller,
                larger,
            }));
        }
    }
    Ok(CheckVerdict::pass())
}

/// For every `X ⊆ V`, `max(M * X)` is equicardinal; equivalent to
/// [`check_isodistant`] through `min(M) * V = max(M * V)`.
pub fn check_isodistant_max(m: &SetSystem) -> Result<CheckVerdict> {
    require_proper(m)?;
    let dense = m.to_dense();
    for x in m.ground().subsets() {
        if let Some((smaller, larger)) = dense.pivot(x).maximal().unequal_pair() {
            return Ok(CheckVerdict::fail(Witness::MaxNotEquicardinal {
                pivot: x,
                smaller,
                larger,
            }));
        }
    }
    Ok(CheckVerdict::pass())
}

/// Fast boolean isodistance test; `false` for improper systems.
pub(crate) fn is_isodistant(m: &SetSystem) -> bool {
    if !m.is_proper() {
        return false;
    }
    dense_is_isodistant(&m.to_dense(), m.n())
}

pub(crate) fn dense_is_isodistant(dense: &DenseFamily, n: usize) -> bool {
    !dense.is_empty()
        && (0..1u32 << n).all(|x| dense.pivot(Subset(x)).minimal().unequal_pair().is_none())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exchange,
    Isodistant,
    Both,
}

pub fn is_delta_matroid(m: &SetSystem, method: Method) -> Result<CheckVerdict> {
    match method {
        Method::Exchange => check_exchange(m),
        Method::Isodistant => check_isodistant(m),
        Method::Both => {
            let ex = check_exchange(m)?;
            let iso = check_isodistant(m)?;
            if ex.holds != iso.holds {
                return Err(Error::OracleDisagreement {
                    check: "is_delta_matroid",
                    detail: format!(
                        "exchange says {}, isodistance says {} on {m:?}",
                        ex.holds, iso.holds
                    ),
                });
            }
            Ok(ex)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatroidDescription {
    Bases,
    Independent,
}

pub fn is_matroid(m: &SetSystem, description: MatroidDescription) -> Result<CheckVerdict> {
    require_proper(m)?;
    match description {
        MatroidDescription::Bases => {
            let f = m.family();
            if let Some(&larger) = f.iter().find(|y| y.len() != f[0].len()) {
                return Ok(CheckVerdict::fail(Witness::NotEquicardinal {
                    smaller: f[0],
                    larger,
                }));
            }
            check_isodistant(m)
        }
        MatroidDescription::Independent => {
            let via_isodistance = match m.first_missing_subset() {
                Some((member, missing)) => {
                    CheckVerdict::fail(Witness::NotDownwardClosed { member, missing })
                }
                None => check_isodistant(m)?,
            };
            let via_cardinality = independent_by_cardinality(m);
            if via_isodistance.holds != via_cardinality.holds {
                return Err(Error::OracleDisagreement {
                    check: "is_matroid",
                    detail: format!(
                        "isodistance says {}, cardinality property says {} on {m:?}",
                        via_isodistance.holds, via_cardinality.holds
                    ),
                });
            }
            Ok(via_isodistance)
        }
    }
}

/// Downward closure plus: for every `X`, `max(M[X])` is equicardinal.
fn independent_by_cardinality(m: &SetSystem) -> CheckVerdict {
    if let Some((member, missing)) = m.first_missing_subset() {
        return CheckVerdict::fail(Witness::NotDownwardClosed { member, missing });
    }
    let dense = m.to_dense();
    for x in m.ground().subsets() {
        let mut restricted = crate::dense::DenseFamily::empty(m.n());
        for y in dense.members().filter(|y| y.is_subset_of(x)) {
            restricted.insert(y);
        }
        if let Some((smaller, larger)) = restricted.maximal().unequal_pair() {
            return CheckVerdict::fail(Witness::CardinalityProperty {
                within: x,
                smaller,
                larger,
            });
        }
    }
    CheckVerdict::pass()
}

/// For all `X, Y` with `(M * Y)[X]` proper: `d_{M*Y} = d_{(M*Y)[X]}`.
pub fn distance_minor_check(m: &SetSystem) -> Result<CheckVerdict> {
    require_proper(m)?;
    let n = m.n();
    let size = 1usize << n;
    let mut least = vec![u8::MAX; size];
    for y in m.ground().subsets() {
        // least[S] = least size of a member of M*Y inside S
        least.fill(u8::MAX);
        for z in m.family() {
            let p = z.sym_diff(y);
            least[p.0 as usize] = p.len() as u8;
        }
        for i in 0..n {
            let b = 1 << i;
            for s in 0..size {
                if s & b != 0 {
                    least[s] = least[s].min(least[s ^ b]);
                }
            }
        }
        let full = least[size - 1];
        for x in m.ground().subsets() {
            let r = least[x.0 as usize];
            if r != u8::MAX && r != full {
                return Ok(CheckVerdict::fail(Witness::DistanceMinor {
                    within: x,
                    pivot: y,
                    full: full as usize,
                    restricted: r as usize,
                }));
            }
        }
    }
    Ok(CheckVerdict::pass())
}

/// For all `X` with `M[X]` proper and `Y ⊆ X`: `d_{M[X]}(Y) = d_M(Y)`.
///
/// Holds for every delta-matroid but, unlike [`distance_minor_check`], does
/// not characterize them.
pub fn restriction_distance_check(m: &SetSystem) -> Result<CheckVerdict> {
    require_proper(m)?;
    for x in m.ground().subsets() {
        let r = m.restrict(x)?;
        if !r.is_proper() {
            continue;
        }
        for target in x.subsets() {
            let full = m.distance_unchecked(target);
            let restricted = r.distance_unchecked(target.compress(x));
            if full != restricted {
                return Ok(CheckVerdict::fail(Witness::RestrictedDistance {
                    within: x,
                    target,
                    full,
                    restricted,
                }));
            }
        }
    }
    Ok(CheckVerdict::pass())
}

/// Three derived systems of which exactly two coincide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleReport {
    pub systems: [SetSystem; 3],
    /// Indices of the two equal systems (`M₁`).
    pub equal_pair: (usize, usize),
    /// Index of the remaining system (`M₂`).
    pub odd_one: usize,
    /// Measure of `M₂` minus measure of `M₁`.
    pub delta: i32,
    pub relation_holds: bool,
}

impl TripleReport {
    pub fn m1(&self) -> &SetSystem {
        &self.systems[self.equal_pair.0]
    }

    pub fn m2(&self) -> &SetSystem {
        &self.systems[self.odd_one]
    }

    /// Builds a report from three systems, a per-system measure and the
    /// relation `M₂ → M₁`. Fails unless exactly two systems coincide.
    pub(crate) fn classify(
        check: &'static str,
        systems: [SetSystem; 3],
        measure: impl Fn(&SetSystem) -> usize,
        relation: impl Fn(&SetSystem, &SetSystem) -> Result<bool>,
    ) -> Result<Self> {
        let eq01 = systems[0] == systems[1];
        let eq02 = systems[0] == systems[2];
        let eq12 = systems[1] == systems[2];
        let (equal_pair, odd_one) = match (eq01, eq02, eq12) {
            (true, false, false) => ((0, 1), 2),
            (false, true, false) => ((0, 2), 1),
            (false, false, true) => ((1, 2), 0),
            _ => {
                return Err(Error::OracleDisagreement {
                    check,
                    detail: format!("expected exactly two equal systems in {systems:?}"),
                })
            }
        };
        let delta = measure(&systems[odd_one]) as i32 - measure(&systems[equal_pair.0]) as i32;
        let relation_holds = relation(&systems[odd_one], &systems[equal_pair.0])?;
        Ok(Self {
            systems,
            equal_pair,
            odd_one,
            delta,
            relation_holds,
        })
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn require_delta_matroid(m: &SetSystem) -> Result<()> {
    if is_isodistant(m) {
        Ok(())
    } else {
        Err(Error::NotDeltaMatroid)
    }
}

/// `min(M)`, `min(M * v)`, `minc(M ∂ v)`: two coincide (`M₁`), the third
/// `M₂` has `d_{M₂} = d_{M₁} + 1` and `M₂ /̂ v = M₁`.
pub fn min_triple(m: &SetSystem, v: usize) -> Result<TripleReport> {
    if v >= m.n() {
        return Err(Error::GroundMismatch);
    }
    require_delta_matroid(m)?;
    let x = Subset::singleton(v);
    let systems = [
        m.extremal(Extremal::Min)?,
        m.pivot(x)?.extremal(Extremal::Min)?,
        m.dual_pivot(x)?.extremal(Extremal::MinCard)?,
    ];
    TripleReport::classify(
        "min_triple",
        systems,
        |s| s.family()[0].len(),
        |m2, m1| Ok(&m2.pseudo(v, PseudoMode::Contract)? == m1),
    )
}

/// `max(M)`, `max(M * v)`, `maxc(M + v)`: two coincide (`M₁`), the third
/// `M₂` has `d_{M₁} = d_{M₂} + 1` and `M₂ ∖̂ v = M₁`.
pub fn max_triple(m: &SetSystem, v: usize) -> Result<TripleReport> {
    if v >= m.n() {
        return Err(Error::GroundMismatch);
    }
    require_delta_matroid(m)?;
    let x = Subset::singleton(v);
    let systems = [
        m.extremal(Extremal::Max)?,
        m.pivot(x)?.extremal(Extremal::Max)?,
        m.loop_complement(x)?.extremal(Extremal::MaxCard)?,
    ];
    TripleReport::classify(
        "max_triple",
        systems,
        |s| s.family()[0].len(),
        |m2, m1| Ok(&m2.pseudo(v, PseudoMode::Delete)? == m1),
    )
}

/// Distances from `X` in the three systems of the m,m,m+1 statement:
/// `(d_M, d_{M*v}, d_{M∂v})` when `v ∉ X`, `(d_M, d_{M*v}, d_{M+v})` when
/// `v ∈ X`.
pub fn distance_triple(m: &SetSystem, v: usize, x: Subset) -> Result<[usize; 3]> {
    if v >= m.n() {
        return Err(Error::GroundMismatch);
    }
    let s = Subset::singleton(v);
    let third = if x.contains(v) {
        m.loop_complement(s)?
    } else {
        m.dual_pivot(s)?
    };
    Ok([m.distance(x)?, m.pivot(s)?.distance(x)?, third.distance(x)?])
}

/// `true` iff exactly two values are equal to some `m` and the third is `m + 1`.
pub fn is_mm_m1(values: [usize; 3]) -> bool {
    let mut v = values;
    v.sort_unstable();
    v[0] == v[1] && v[2] == v[1] + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankProfile {
    /// `|X| - d_M(X)`
    pub r: i64,
    /// `d_M(X)`
    pub d: i64,
    /// `|V| - d_M(X)`
    pub r_prime: i64,
    /// `max{|Z ∩ X| - |Z ∩ (V ∖ X)| : Z ∈ M}`
    pub r_triple_prime: i64,
}

pub fn rank_profile(m: &SetSystem, x: Subset) -> Result<RankProfile> {
    let d = m.distance(x)? as i64;
    let rest = x.complement(m.n());
    let r_triple_prime = m
        .family()
        .iter()
        .map(|z| z.intersection(x).len() as i64 - z.intersection(rest).len() as i64)
        .max()
        .expect("proper");
    let r = x.len() as i64 - d;
    if r != r_triple_prime {
        return Err(Error::OracleDisagreement {
            check: "rank_profile",
            detail: format!("r = {r} but birank = {r_triple_prime}"),
        });
    }
    Ok(RankProfile {
        r,
        d,
        r_prime: m.n() as i64 - d,
        r_triple_prime,
    })
}
