//! The group of invertible vertex flips.
//!
//! Each element carries one of six flips generated by the pivot `*` and the
//! loop complementation `+`; flips on different elements commute, so a word
//! reduces to one group element per ground element.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::checks::{check_exchange, dense_is_isodistant, CheckVerdict, Witness};
use crate::dense::DenseFamily;
use crate::error::{Error, Result};
use crate::ground::{GroundSet, Subset};
use crate::setsys::SetSystem;

/// Default largest ground set for orbit enumeration.
pub const DEFAULT_ORBIT_CAP: usize = 6;

/// A single generator of a flip word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FlipOp {
    Pivot,
    Loop,
    Dual,
}

impl FlipOp {
    pub fn symbol(self) -> char {
        match self {
            FlipOp::Pivot => '*',
            FlipOp::Loop => '+',
            FlipOp::Dual => '~',
        }
    }

    pub fn as_flip(self) -> Flip {
        match self {
            FlipOp::Pivot => Flip::Pivot,
            FlipOp::Loop => Flip::Loop,
            FlipOp::Dual => Flip::Dual,
        }
    }

    fn apply(self, m: &SetSystem, x: Subset) -> Result<SetSystem> {
        match self {
            FlipOp::Pivot => m.pivot(x),
            FlipOp::Loop => m.loop_complement(x),
            FlipOp::Dual => m.dual_pivot(x),
        }
    }
}

/// One of the six flips acting on a single element. Two-letter names read
/// left to right: `PivotLoop` is `*` followed by `+`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flip {
    #[default]
    Id,
    Loop,
    Pivot,
    Dual,
    PivotLoop,
    LoopPivot,
}

impl Flip {
    pub const ALL: [Flip; 6] = [
        Flip::Id,
        Flip::Loop,
        Flip::Pivot,
        Flip::Dual,
        Flip::PivotLoop,
        Flip::LoopPivot,
    ];

    /// Action on the three points `{0, 1, 2}` with `+ = (0 1)`, `* = (1 2)`.
    fn perm(self) -> [u8; 3] {
        match self {
            Flip::Id => [0, 1, 2],
            Flip::Loop => [1, 0, 2],
            Flip::Pivot => [0, 2, 1],
            Flip::Dual => [2, 1, 0],
            // `*` then `+`: i ↦ +(*(i))
            Flip::PivotLoop => [1, 2, 0],
            Flip::LoopPivot => [2, 0, 1],
        }
    }

    fn from_perm(p: [u8; 3]) -> Flip {
        Flip::ALL
            .into_iter()
            .find(|f| f.perm() == p)
            .expect("every permutation of three points is a flip")
    }

    /// `self` followed by `next`.
    pub fn then(self, next: Flip) -> Flip {
        let (a, b) = (self.perm(), next.perm());
        Flip::from_perm([b[a[0] as usize], b[a[1] as usize], b[a[2] as usize]])
    }

    pub fn inverse(self) -> Flip {
        Flip::ALL
            .into_iter()
            .find(|&g| self.then(g) == Flip::Id)
            .expect("group elements are invertible")
    }

    /// A shortest word over the generators.
    pub fn word(self) -> &'static [FlipOp] {
        match self {
            Flip::Id => &[],
            Flip::Loop => &[FlipOp::Loop],
            Flip::Pivot => &[FlipOp::Pivot],
            Flip::Dual => &[FlipOp::Dual],
            Flip::PivotLoop => &[FlipOp::Pivot, FlipOp::Loop],
            Flip::LoopPivot => &[FlipOp::Loop, FlipOp::Pivot],
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Flip::Id => "id",
            Flip::Loop => "+",
            Flip::Pivot => "*",
            Flip::Dual => "~",
            Flip::PivotLoop => "*+",
            Flip::LoopPivot => "+*",
        }
    }

    /// Applies this flip at element `v`.
    pub fn apply_at(self, m: &SetSystem, v: usize) -> Result<SetSystem> {
        let x = m.ground().check(Subset::singleton(v))?;
        self.word()
            .iter()
            .try_fold(m.clone(), |acc, op| op.apply(&acc, x))
    }
}

/// One token of a flip word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlipToken {
    pub element: String,
    pub op: FlipOp,
}

/// A word of flips, applied left to right. Written as whitespace-separated
/// tokens `*v`, `+v` and `~v`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FlipWord {
    pub tokens: Vec<FlipToken>,
}

impl FlipWord {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Every generator is an involution, so the inverse is the reversal.
    pub fn inverse(&self) -> FlipWord {
        FlipWord {
            tokens: self.tokens.iter().rev().cloned().collect(),
        }
    }

    /// Applies the tokens one at a time.
    pub fn apply(&self, m: &SetSystem) -> Result<SetSystem> {
        self.tokens.iter().try_fold(m.clone(), |acc, t| {
            let v = acc.element(&t.element)?;
            t.op.apply(&acc, Subset::singleton(v))
        })
    }
}

impl FromStr for FlipWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = s
            .split_whitespace()
            .map(|tok| {
                let mut chars = tok.chars();
                let op = match chars.next() {
                    Some('*') => FlipOp::Pivot,
                    Some('+') => FlipOp::Loop,
                    Some('~') => FlipOp::Dual,
                    _ => {
                        return Err(Error::Parse(format!(
                            "flip token `{tok}` must start with `*`, `+` or `~`"
                        )))
                    }
                };
                let element = chars.as_str();
                if element.is_empty() {
                    return Err(Error::Parse(format!("flip token `{tok}` names no element")));
                }
                Ok(FlipToken {
                    element: element.to_string(),
                    op,
                })
            })
            .collect::<Result<_>>()?;
        Ok(FlipWord { tokens })
    }
}

impl fmt::Display for FlipWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", t.op.symbol(), t.element)?;
        }
        Ok(())
    }
}

/// A flip for every element of a ground set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlipAssignment {
    pub flips: Vec<Flip>,
}

impl FlipAssignment {
    pub fn identity(n: usize) -> Self {
        Self {
            flips: vec![Flip::Id; n],
        }
    }

    /// The `index`-th of the `6^n` assignments, first element varying fastest.
    pub fn nth(n: usize, mut index: usize) -> Self {
        let flips = (0..n)
            .map(|_| {
                let f = Flip::ALL[index % 6];
                index /= 6;
                f
            })
            .collect();
        Self { flips }
    }

    /// All `6^n` assignments.
    pub fn all(n: usize) -> impl Iterator<Item = FlipAssignment> {
        (0..6usize.pow(n as u32)).map(move |i| Self::nth(n, i))
    }

    pub fn inverse(&self) -> Self {
        Self {
            flips: self.flips.iter().map(|f| f.inverse()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.flips.iter().all(|&f| f == Flip::Id)
    }

    pub fn to_json(&self, g: &GroundSet) -> Value {
        Value::Object(
            g.labels()
                .iter()
                .zip(&self.flips)
                .map(|(l, f)| (l.clone(), json!(f.symbol())))
                .collect(),
        )
    }
}

/// Per-element product of a word.
pub fn reduce_word(ground: &GroundSet, word: &FlipWord) -> Result<FlipAssignment> {
    let mut a = FlipAssignment::identity(ground.len());
    for t in &word.tokens {
        let v = ground.index_of(&t.element)?;
        a.flips[v] = a.flips[v].then(t.op.as_flip());
    }
    Ok(a)
}

/// Applies every element's flip in element order.
pub fn apply_assignment(m: &SetSystem, a: &FlipAssignment) -> Result<SetSystem> {
    if !m.is_proper() {
        return Err(Error::ImproperSystem);
    }
    if a.flips.len() != m.n() {
        return Err(Error::GroundMismatch);
    }
    a.flips
        .iter()
        .enumerate()
        .try_fold(m.clone(), |acc, (v, f)| f.apply_at(&acc, v))
}

/// `+X`, then `*Y`, then `+Z`, with `X ⊆ Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub x: Subset,
    pub y: Subset,
    pub z: Subset,
}

impl NormalForm {
    pub fn new(x: Subset, y: Subset, z: Subset) -> Result<Self> {
        if !x.is_subset_of(y) {
            return Err(Error::Parameter(
                "normal form needs the first loop set inside the pivot set".into(),
            ));
        }
        Ok(Self { x, y, z })
    }

    pub fn from_assignment(a: &FlipAssignment) -> Self {
        let mut nf = Self {
            x: Subset::EMPTY,
            y: Subset::EMPTY,
            z: Subset::EMPTY,
        };
        for (v, f) in a.flips.iter().enumerate() {
            let (x, y, z) = match f {
                Flip::Id => (false, false, false),
                Flip::Loop => (false, false, true),
                Flip::Pivot => (false, true, false),
                Flip::PivotLoop => (false, true, true),
                Flip::LoopPivot => (true, true, false),
                Flip::Dual => (true, true, true),
            };
            if x {
                nf.x = nf.x.with(v);
            }
            if y {
                nf.y = nf.y.with(v);
            }
            if z {
                nf.z = nf.z.with(v);
            }
        }
        nf
    }

    pub fn to_assignment(&self, n: usize) -> FlipAssignment {
        let flips = (0..n)
            .map(|v| {
                let at = |s: Subset| if s.contains(v) { Flip::Loop } else { Flip::Id };
                let mid = if self.y.contains(v) {
                    Flip::Pivot
                } else {
                    Flip::Id
                };
                at(self.x).then(mid).then(at(self.z))
            })
            .collect();
        FlipAssignment { flips }
    }

    /// All `6^n` normal forms: pivot sets in canonical order, loop-first
    /// sets ascending within each, loop-last sets descending.
    pub fn all(n: usize) -> impl Iterator<Item = NormalForm> {
        let subsets = crate::ground::canonical_subsets(n);
        let descending: Vec<Subset> = subsets.iter().rev().copied().collect();
        subsets.into_iter().flat_map(move |y| {
            let descending = descending.clone();
            y.subsets().into_iter().flat_map(move |x| {
                descending
                    .clone()
                    .into_iter()
                    .map(move |z| NormalForm { x, y, z })
            })
        })
    }

    pub fn apply(&self, m: &SetSystem) -> Result<SetSystem> {
        m.loop_complement(self.x)?
            .pivot(self.y)?
            .loop_complement(self.z)
    }

    pub(crate) fn apply_dense(&self, d: &DenseFamily) -> DenseFamily {
        let mut out = d.clone();
        for v in self.x.elements() {
            out = out.loop_complement_at(v);
        }
        out = out.pivot(self.y);
        for v in self.z.elements() {
            out = out.loop_complement_at(v);
        }
        out
    }

    pub fn word(&self, g: &GroundSet) -> FlipWord {
        let tokens = [
            (self.x, FlipOp::Loop),
            (self.y, FlipOp::Pivot),
            (self.z, FlipOp::Loop),
        ]
        .into_iter()
        .flat_map(|(s, op)| {
            s.elements().map(move |v| FlipToken {
                element: g.label(v).to_string(),
                op,
            })
        })
        .collect();
        FlipWord { tokens }
    }

    pub fn to_json(&self, g: &GroundSet) -> Value {
        json!({
            "x": g.names(self.x),
            "y": g.names(self.y),
            "z": g.names(self.z),
            "word": self.word(g).to_string(),
        })
    }
}

fn check_orbit_size(m: &SetSystem, cap: usize) -> Result<()> {
    if !m.is_proper() {
        return Err(Error::ImproperSystem);
    }
    if m.n() > cap {
        return Err(Error::OrbitTooLarge { n: m.n(), cap });
    }
    Ok(())
}

/// Distinct images of `m` under all flip assignments, in canonical order.
pub fn orbit(m: &SetSystem) -> Result<Vec<SetSystem>> {
    orbit_with_cap(m, DEFAULT_ORBIT_CAP)
}

pub fn orbit_with_cap(m: &SetSystem, cap: usize) -> Result<Vec<SetSystem>> {
    check_orbit_size(m, cap)?;
    let dense = m.to_dense();
    let images: BTreeSet<Vec<Subset>> = NormalForm::all(m.n())
        .map(|nf| {
            let mut fam: Vec<Subset> = nf.apply_dense(&dense).members().collect();
            fam.sort_unstable();
            fam
        })
        .collect();
    images
        .into_iter()
        .map(|fam| SetSystem::from_family(m.ground().clone(), fam))
        .collect()
}

/// Whether every flip image of the delta-matroid `m` is a delta-matroid.
pub fn is_vf_closed(m: &SetSystem) -> Result<CheckVerdict> {
    is_vf_closed_with_cap(m, DEFAULT_ORBIT_CAP)
}

pub fn is_vf_closed_with_cap(m: &SetSystem, cap: usize) -> Result<CheckVerdict> {
    check_orbit_size(m, cap)?;
    let dense = m.to_dense();
    if !dense_is_isodistant(&dense, m.n()) {
        return Err(Error::NotDeltaMatroid);
    }
    for nf in NormalForm::all(m.n()) {
        if dense_is_isodistant(&nf.apply_dense(&dense), m.n()) {
            continue;
        }
        let image = nf.apply(m)?;
        let verdict = check_exchange(&image)?;
        let Some(inner) = verdict.witness else {
            return Err(Error::OracleDisagreement {
                check: "is_vf_closed",
                detail: format!("image {image:?} is not isodistant but satisfies exchange"),
            });
        };
        return Ok(CheckVerdict::fail(Witness::FlipImage {
            normal_form: nf,
            image: Box::new(inner),
        }));
    }
    Ok(CheckVerdict::pass())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(g: &GroundSet, sets: &[&[&str]]) -> SetSystem {
        let sets: Vec<Vec<&str>> = sets.iter().map(|s| s.to_vec()).collect();
        SetSystem::new(g.clone(), &sets).unwrap()
    }

    fn uniform(r: usize, n: usize) -> SetSystem {
        let g = GroundSet::letters(n).unwrap();
        let fam = g.subsets().filter(|s| s.len() == r).collect();
        SetSystem::from_family(g, fam).unwrap()
    }

    #[test]
    fn group_relations() {
        use Flip::*;
        for f in Flip::ALL {
            assert_eq!(f.then(f.inverse()), Id);
            assert_eq!(Id.then(f), f);
        }
        assert_eq!(Loop.then(Loop), Id);
        assert_eq!(Pivot.then(Pivot), Id);
        assert_eq!(Dual.then(Dual), Id);
        assert_eq!(Loop.then(Pivot).then(Loop), Dual);
        assert_eq!(Pivot.then(Loop).then(Pivot), Dual);
        assert_eq!(Pivot.then(Loop), PivotLoop);
        assert_eq!(Loop.then(Pivot), LoopPivot);
        assert_eq!(LoopPivot.then(LoopPivot).then(LoopPivot), Id);
        assert_eq!(Pivot.then(Loop), Loop.then(Dual));
        assert_eq!(Pivot.then(Loop), Dual.then(Pivot));
        for f in Flip::ALL {
            let w = f.word().iter().fold(Id, |acc, op| acc.then(op.as_flip()));
            assert_eq!(w, f);
        }
    }

    #[test]
    fn reduce_word_examples() {
        let g = GroundSet::new(["v"]).unwrap();
        let r = |s: &str| reduce_word(&g, &s.parse().unwrap()).unwrap().flips[0];
        assert_eq!(r("+v *v +v"), Flip::Dual);
        assert_eq!(r("*v *v"), Flip::Id);
        assert_eq!(r("*v +v"), Flip::PivotLoop);
        assert_eq!(
            reduce_word(&g, &"*w".parse().unwrap()),
            Err(Error::UnknownElement("w".into()))
        );
    }

    #[test]
    fn word_parsing() {
        let w: FlipWord = "*a  +b ~c".parse().unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.to_string(), "*a +b ~c");
        assert_eq!(w.inverse().to_string(), "~c +b *a");
        assert!("a".parse::<FlipWord>().is_err());
        assert!("*".parse::<FlipWord>().is_err());
        assert!("".parse::<FlipWord>().unwrap().is_empty());
    }

    #[test]
    fn normal_form_examples() {
        let id = FlipAssignment::identity(2);
        let nf = NormalForm::from_assignment(&id);
        assert_eq!((nf.x, nf.y, nf.z), (Subset(0), Subset(0), Subset(0)));
        let dual = FlipAssignment {
            flips: vec![Flip::Dual],
        };
        let nf = NormalForm::from_assignment(&dual);
        assert_eq!((nf.x, nf.y, nf.z), (Subset(1), Subset(1), Subset(1)));
        let pl = FlipAssignment {
            flips: vec![Flip::PivotLoop],
        };
        let nf = NormalForm::from_assignment(&pl);
        assert_eq!((nf.x, nf.y, nf.z), (Subset(0), Subset(1), Subset(1)));
        for a in FlipAssignment::all(3) {
            let nf = NormalForm::from_assignment(&a);
            assert!(nf.x.is_subset_of(nf.y));
            assert_eq!(nf.to_assignment(3), a);
        }
        assert_eq!(NormalForm::all(3).count(), 216);
        let distinct: BTreeSet<_> = NormalForm::all(3)
            .map(|nf| nf.to_assignment(3).flips)
            .collect();
        assert_eq!(distinct.len(), 216);
    }

    #[test]
    fn apply_assignment_examples() {
        let g = GroundSet::letters(3).unwrap();
        let m = sys(&g, &[&["a"], &["b", "c"]]);
        assert_eq!(
            apply_assignment(&m, &FlipAssignment::identity(3)).unwrap(),
            m
        );
        let a = FlipAssignment {
            flips: vec![Flip::Id, Flip::Dual, Flip::Id],
        };
        assert_eq!(
            apply_assignment(&m, &a).unwrap(),
            sys(&g, &[&["a"], &["c"], &["b", "c"]])
        );

        let u26 = uniform(2, 6);
        let all_loops = FlipAssignment {
            flips: vec![Flip::Loop; 6],
        };
        let img = apply_assignment(&u26, &all_loops).unwrap();
        let want: Vec<Subset> = u26
            .ground()
            .subsets()
            .filter(|s| matches!(s.len(), 2 | 3 | 6))
            .collect();
        assert_eq!(img.family(), want.as_slice());

        let empty = SetSystem::from_family(g, vec![]).unwrap();
        assert_eq!(
            apply_assignment(&empty, &FlipAssignment::identity(3)),
            Err(Error::ImproperSystem)
        );
    }

    #[test]
    fn orbit_examples() {
        let g = GroundSet::new(["v"]).unwrap();
        let m = sys(&g, &[&[]]);
        let orb = orbit(&m).unwrap();
        let mut direct: Vec<SetSystem> = Flip::ALL
            .iter()
            .map(|f| f.apply_at(&m, 0).unwrap())
            .collect();
        direct.sort_by(|a, b| a.family().cmp(b.family()));
        direct.dedup();
        assert_eq!(orb, direct);
        assert!(orb.contains(&m));
        assert_eq!(
            orbit(&uniform(1, 7)).unwrap_err(),
            Error::OrbitTooLarge { n: 7, cap: 6 }
        );
        assert!(orbit_with_cap(&uniform(1, 7), 7).is_ok());
    }

    #[test]
    fn vf_closed_examples() {
        assert!(is_vf_closed(&uniform(2, 4)).unwrap().holds);
        let u26 = uniform(2, 6);
        let v = is_vf_closed(&u26).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        let Witness::FlipImage { normal_form, .. } = &w else {
            panic!("expected a flip image witness");
        };
        assert_eq!(
            (normal_form.x, normal_form.y, normal_form.z),
            (Subset::EMPTY, Subset::EMPTY, Subset::full(6))
        );
        assert!(w.revalidate(&u26));
        let g = GroundSet::letters(3).unwrap();
        assert_eq!(
            is_vf_closed(&sys(&g, &[&[], &["a", "b", "c"]])),
            Err(Error::NotDeltaMatroid)
        );
    }
}
