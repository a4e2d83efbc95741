//! Families stored as `2^n`-bit indicator vectors.
//!
//! Used by the sweeping checkers, which need pivots, subset closures and
//! inclusion-minimal members for every `X ⊆ V`.

use crate::ground::Subset;

// Positions whose bit `i` is clear, within one 64-bit word.
const LOW_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct DenseFamily {
    n: usize,
    words: Vec<u64>,
}

impl DenseFamily {
    pub fn empty(n: usize) -> Self {
        let words = if n <= 6 { 1 } else { 1 << (n - 6) };
        Self {
            n,
            words: vec![0; words],
        }
    }

    pub fn from_members<I: IntoIterator<Item = Subset>>(n: usize, members: I) -> Self {
        let mut f = Self::empty(n);
        for s in members {
            f.insert(s);
        }
        f
    }

    pub fn insert(&mut self, s: Subset) {
        let m = s.0 as usize;
        self.words[m >> 6] |= 1 << (m & 63);
    }

    pub fn contains(&self, s: Subset) -> bool {
        let m = s.0 as usize;
        self.words[m >> 6] >> (m & 63) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in increasing mask order.
    pub fn members(&self) -> impl Iterator<Item = Subset> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(Subset(((wi << 6) | b) as u32))
                }
            })
        })
    }

    /// `{Y Δ x | Y ∈ self}`.
    pub fn pivot(&self, x: Subset) -> Self {
        let lo = (x.0 & 63) as usize;
        let hi = (x.0 >> 6) as usize;
        let mut words = vec![0; self.words.len()];
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            for (i, &m) in LOW_MASKS.iter().enumerate() {
                if lo >> i & 1 == 1 {
                    let s = 1 << i;
                    w = ((w & m) << s) | ((w >> s) & m);
                }
            }
            words[wi ^ hi] = w;
        }
        Self { n: self.n, words }
    }

    /// `S ↦ [some member is ⊆ S]`.
    fn subset_closure(&self) -> Vec<u64> {
        let mut w = self.words.clone();
        for (i, &m) in LOW_MASKS.iter().enumerate().take(self.n) {
            let s = 1 << i;
            for x in w.iter_mut() {
                *x |= (*x & m) << s;
            }
        }
        for i in 6..self.n {
            let b = 1 << (i - 6);
            for wi in 0..w.len() {
                if wi & b != 0 {
                    w[wi] |= w[wi ^ b];
                }
            }
        }
        w
    }

    /// Inclusion-minimal members.
    pub fn minimal(&self) -> Self {
        let closed = self.subset_closure();
        // below[S] = some member is a proper subset of S
        let mut below = vec![0u64; closed.len()];
        for (i, &m) in LOW_MASKS.iter().enumerate().take(self.n) {
            let s = 1 << i;
            for (b, &c) in below.iter_mut().zip(&closed) {
                *b |= (c & m) << s;
            }
        }
        for i in 6..self.n {
            let b = 1 << (i - 6);
            for wi in 0..closed.len() {
                if wi & b != 0 {
                    below[wi] |= closed[wi ^ b];
                }
            }
        }
        let words = self
            .words
            .iter()
            .zip(&below)
            .map(|(&w, &b)| w & !b)
            .collect();
        Self { n: self.n, words }
    }

    /// Inclusion-maximal members, via `max(D) = min(D * V) * V`.
    pub fn maximal(&self) -> Self {
        let full = Subset::full(self.n);
        self.pivot(full).minimal().pivot(full)
    }

    /// Two members of different cardinality, smallest first, if any.
    pub fn unequal_pair(&self) -> Option<(Subset, Subset)> {
        let mut first: Option<Subset> = None;
        let mut smallest: Option<Subset> = None;
        let mut largest: Option<Subset> = None;
        for s in self.members() {
            first.get_or_insert(s);
            if smallest.is_none_or(|m| s < m) {
                smallest = Some(s);
            }
            if largest.is_none_or(|m| s.len() > m.len()) {
                largest = Some(s);
            }
        }
        match (smallest, largest) {
            (Some(a), Some(b)) if a.len() != b.len() => Some((a, b)),
            _ => None,
        }
    }

    /// `D Δ {Z ∪ {v} | Z ∈ D, v ∉ Z}`.
    pub fn loop_complement_at(&self, v: usize) -> Self {
        let mut out = self.clone();
        if v < 6 {
            let m = LOW_MASKS[v];
            let s = 1 << v;
            for (o, &w) in out.words.iter_mut().zip(&self.words) {
                *o ^= (w & m) << s;
            }
        } else {
            let b = 1 << (v - 6);
            for wi in 0..self.words.len() {
                if wi & b == 0 {
                    out.words[wi | b] ^= self.words[wi];
                }
            }
        }
        out
    }
}
