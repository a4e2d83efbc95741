//! Seeded generators.
//!
//! Each generator takes a 64-bit seed and a stream index, so a corpus can
//! hand case `i` its own independent stream.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ground::{GroundSet, Subset, MAX_GROUND};
use crate::linalg::{FMatrix, Field, StandardRep};
use crate::setsys::SetSystem;

/// Largest ground set for which random families are drawn subset by subset.
pub const MAX_RANDOM_FAMILY: usize = 16;

/// Deterministic generator for stream `stream` of `seed`.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn ground(n: usize) -> Result<GroundSet> {
    if n > MAX_GROUND {
        return Err(Error::Parameter(format!(
            "ground set size {n} exceeds {MAX_GROUND}"
        )));
    }
    if n <= 26 {
        GroundSet::letters(n)
    } else {
        GroundSet::indexed("v", n)
    }
}

/// All `r`-subsets of an `n`-set.
pub fn uniform_matroid(r: usize, n: usize) -> Result<SetSystem> {
    if r > n {
        return Err(Error::Parameter(format!(
            "rank {r} exceeds ground size {n}"
        )));
    }
    let g = ground(n)?;
    let fam = g.subsets().filter(|s| s.len() == r).collect();
    SetSystem::from_family(g, fam)
}

/// A proper family on `n` letters. The inclusion probability is itself
/// drawn per family, skewed towards sparse families.
pub fn random_set_system(n: usize, seed: u64, stream: u64) -> Result<SetSystem> {
    if n > MAX_RANDOM_FAMILY {
        return Err(Error::Parameter(format!(
            "random families need n <= {MAX_RANDOM_FAMILY}, got {n}"
        )));
    }
    let g = ground(n)?;
    let mut r = rng(seed, stream);
    let density = r.random::<f64>().powi(3);
    let mut fam: Vec<Subset> = g.subsets().filter(|_| r.random_bool(density)).collect();
    if fam.is_empty() {
        fam.push(Subset(r.random_range(0..1u32 << n)));
    }
    SetSystem::from_family(g, fam)
}

/// Each edge present with probability 1/2, each loop with `loop_prob`.
pub fn random_graph(n: usize, loop_prob: f64, seed: u64, stream: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&loop_prob) {
        return Err(Error::Parameter(format!(
            "loop probability {loop_prob} outside [0, 1]"
        )));
    }
    let g = ground(n)?;
    let mut r = rng(seed, stream);
    let mut adj = FMatrix::zeros(Field::GF2, g);
    for i in 0..n {
        adj.set(i, i, r.random_bool(loop_prob) as u32);
        for j in i + 1..n {
            let e = r.random_bool(0.5) as u32;
            adj.set(i, j, e);
            adj.set(j, i, e);
        }
    }
    Graph::from_matrix(adj)
}

/// Uniform symmetric matrix over `field`.
pub fn random_symmetric(field: Field, n: usize, seed: u64, stream: u64) -> Result<FMatrix> {
    let mut r = rng(seed, stream);
    let mut a = FMatrix::zeros(field, ground(n)?);
    for i in 0..n {
        for j in i..n {
            let e = r.random_range(0..field.p());
            a.set(i, j, e);
            a.set(j, i, e);
        }
    }
    Ok(a)
}

/// Uniform skew-symmetric matrix over `field`, with zero diagonal.
pub fn random_skew(field: Field, n: usize, seed: u64, stream: u64) -> Result<FMatrix> {
    let mut r = rng(seed, stream);
    let mut a = FMatrix::zeros(field, ground(n)?);
    for i in 0..n {
        for j in i + 1..n {
            let e = r.random_range(0..field.p());
            a.set(i, j, e);
            a.set(j, i, field.neg(e));
        }
    }
    Ok(a)
}

/// Uniform `r × (n - r)` binary block for a standard representation
/// `[I | B]`, rows on the first `r` letters.
pub fn random_standard_rep(r: usize, n: usize, seed: u64, stream: u64) -> Result<StandardRep> {
    if r > n {
        return Err(Error::Parameter(format!(
            "rank {r} exceeds ground size {n}"
        )));
    }
    let g = ground(n)?;
    let rows = g.restrict(Subset::full(r));
    let cols = g.restrict(Subset::full(n).minus(Subset::full(r)));
    let mut rg = rng(seed, stream);
    let b = (0..r)
        .map(|_| (r..n).map(|_| rg.random_range(0..2u8)).collect())
        .collect();
    StandardRep::new(rows, cols, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_examples() {
        assert_eq!(uniform_matroid(2, 4).unwrap().len(), 6);
        assert_eq!(uniform_matroid(2, 6).unwrap().len(), 15);
        assert_eq!(uniform_matroid(0, 5).unwrap().family(), &[Subset::EMPTY]);
        assert!(matches!(uniform_matroid(3, 2), Err(Error::Parameter(_))));
    }

    #[test]
    fn deterministic_per_seed_and_stream() {
        assert_eq!(
            random_set_system(4, 7, 3).unwrap(),
            random_set_system(4, 7, 3).unwrap()
        );
        let distinct: std::collections::HashSet<_> = (0..20)
            .map(|s| random_set_system(4, 7, s).unwrap())
            .collect();
        assert!(distinct.len() > 10);
        assert_eq!(
            random_graph(5, 0.3, 1, 2).unwrap(),
            random_graph(5, 0.3, 1, 2).unwrap()
        );
        assert!(random_graph(3, 1.5, 0, 0).is_err());
    }

    #[test]
    fn matrix_shapes() {
        let f2 = Field::GF2;
        for s in 0..20 {
            let a = random_skew(f2, 5, 9, s).unwrap();
            assert!(a.is_skew_symmetric());
            let b = random_symmetric(Field::new(5).unwrap(), 4, 9, s).unwrap();
            assert!(b.is_symmetric());
            let c = random_skew(Field::new(3).unwrap(), 4, 9, s).unwrap();
            assert!(c.is_skew_symmetric());
        }
        let rep = random_standard_rep(2, 5, 1, 0).unwrap();
        assert_eq!((rep.rows.len(), rep.cols.len()), (2, 3));
    }
}
