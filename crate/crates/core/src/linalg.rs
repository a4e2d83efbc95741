//! Exact linear algebra over prime fields GF(p).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ground::{GroundSet, Subset};
use crate::setsys::SetSystem;

/// A prime modulus `2 <= p < 2^16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Field(u32);

impl Field {
    pub const GF2: Field = Field(2);

    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 16).contains(&p)
            || (2..p)
                .take_while(|d| d * d <= p)
                .any(|d| p.is_multiple_of(d))
        {
            return Err(Error::NotPrime(p));
        }
        Ok(Field(p as u32))
    }

    pub fn p(self) -> u32 {
        self.0
    }

    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.0
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.0 - b) % self.0
    }

    pub fn neg(self, a: u32) -> u32 {
        (self.0 - a) % self.0
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.0 as u64) as u32
    }

    /// Inverse of a nonzero residue, by Fermat.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.0));
        let (mut base, mut exp, mut acc) = (a as u64, self.0 as u64 - 2, 1u64);
        let p = self.0 as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc as u32
    }
}

impl TryFrom<u64> for Field {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        Field::new(p)
    }
}

impl From<Field> for u64 {
    fn from(f: Field) -> u64 {
        f.0 as u64
    }
}

/// A square matrix over GF(p) whose rows and columns are indexed by a
/// ground set.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct FMatrix {
    field: Field,
    labels: GroundSet,
    entries: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    /// `Aᵀ = A`
    Symmetric,
    /// `Aᵀ = -A`, with zero diagonal
    Skew,
}

/// Basis of a null space, in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelBasis {
    pub field: Field,
    pub vectors: Vec<Vec<u32>>,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

impl FMatrix {
    pub fn zeros(field: Field, labels: GroundSet) -> Self {
        let n = labels.len();
        Self {
            field,
            labels,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(field: Field, labels: GroundSet) -> Self {
        let mut m = Self::zeros(field, labels);
        for i in 0..m.n() {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of residues in `[0, p)`.
    pub fn from_rows(field: Field, labels: GroundSet, rows: &[Vec<u32>]) -> Result<Self> {
        let n = labels.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeViolation(format!("expected a {n}x{n} matrix")));
        }
        if let Some(&e) = rows.iter().flatten().find(|&&e| e >= field.p()) {
            return Err(Error::ShapeViolation(format!(
                "entry {e} is not a residue mod {}",
                field.p()
            )));
        }
        Ok(Self {
            field,
            labels,
            entries: rows.concat(),
        })
    }

    /// Builds a matrix from integer rows reduced mod `p`.
    pub fn from_ints(field: Field, labels: GroundSet, rows: &[Vec<i64>]) -> Result<Self> {
        let reduced: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| r.iter().map(|&e| field.reduce(e)).collect())
            .collect();
        Self::from_rows(field, labels, &reduced)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn labels(&self) -> &GroundSet {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        let n = self.n();
        self.entries[i * n + j] = v % self.field.p();
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        let n = self.n();
        (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n();
        let mut t = self.clone();
        for i in 0..n {
            for j in 0..n {
                t.entries[j * n + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `Aᵀ = -A` and zero diagonal (the latter only matters over GF(2)).
    pub fn is_skew_symmetric(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| {
            self.get(i, i) == 0 && (0..i).all(|j| self.get(i, j) == self.field.neg(self.get(j, i)))
        })
    }

    pub fn check_symmetry(&self, require: Symmetry) -> Result<()> {
        let ok = match require {
            Symmetry::Symmetric => self.is_symmetric(),
            Symmetry::Skew => self.is_skew_symmetric(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ShapeViolation(
                format!("matrix is not {require:?}").to_lowercase(),
            ))
        }
    }

    /// Rank, nullity and a canonical basis of the right null space.
    pub fn rank_nullity_kernel(&self) -> (usize, usize, KernelBasis) {
        let n = self.n();
        let f = self.field;
        let mut rows = self.rows();
        let pivots = row_reduce(f, &mut rows, n);
        let rank = pivots.len();
        let mut vectors = Vec::with_capacity(n - rank);
        for free in (0..n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u32; n];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rows[r][free]);
            }
            vectors.push(v);
        }
        row_reduce(f, &mut vectors, n);
        (rank, n - rank, KernelBasis { field: f, vectors })
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows();
        row_reduce(self.field, &mut rows, self.n()).len()
    }

    pub fn nullity(&self) -> usize {
        self.n() - self.rank()
    }

    /// The 0x0 matrix counts as nonsingular.
    pub fn is_nonsingular(&self) -> bool {
        self.rank() == self.n()
    }

    /// `A[X]`, order preserved.
    pub fn principal_submatrix(&self, x: Subset) -> Result<Self> {
        self.labels.check(x)?;
        let idx: Vec<usize> = x.elements().collect();
        let k = idx.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in &idx {
            for &j in &idx {
                entries.push(self.get(i, j));
            }
        }
        Ok(Self {
            field: self.field,
            labels: self.labels.restrict(x),
            entries,
        })
    }

    fn is_principal_nonsingular(&self, x: Subset) -> bool {
        let idx: Vec<usize> = x.elements().collect();
        let mut rows: Vec<Vec<u32>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.get(i, j)).collect())
            .collect();
        row_reduce(self.field, &mut rows, idx.len()).len() == idx.len()
    }

    /// `{X ⊆ V : A[X] nonsingular}` for an arbitrary square matrix.
    pub fn nonsingular_principal_family(&self) -> SetSystem {
        SetSystem::collect(
            self.labels.clone(),
            self.labels
                .subsets()
                .filter(|&x| self.is_principal_nonsingular(x)),
        )
    }

    /// The support delta-matroid `M_A` of a symmetric or skew-symmetric matrix.
    pub fn support_deltamatroid(&self, require: Symmetry) -> Result<SetSystem> {
        self.check_symmetry(require)?;
        Ok(self.nonsingular_principal_family())
    }

    fn inverse(&self) -> Option<Self> {
        let n = self.n();
        let f = self.field;
        let mut aug: Vec<Vec<u32>> = self
            .rows()
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                r.extend((0..n).map(|j| u32::from(i == j)));
                r
            })
            .collect();
        let pivots = row_reduce(f, &mut aug, n);
        if pivots.len() < n {
            return None;
        }
        let mut inv = Self::zeros(f, self.labels.clone());
        for (i, row) in aug.iter().enumerate() {
            for j in 0..n {
                inv.set(i, j, row[n + j]);
            }
        }
        Some(inv)
    }

    /// Blocks `P = A[X]`, `Q = A[X, V∖X]`, `R = A[V∖X, X]`, `S = A[V∖X]` and
    /// `P⁻¹`, as dense index-addressed arrays.
    fn pivot_blocks(&self, x: Subset) -> Result<PivotBlocks> {
        self.labels.check(x)?;
        let p = self.principal_submatrix(x)?;
        let p_inv = p
            .inverse()
            .ok_or_else(|| Error::SingularPivotBlock(self.labels.names(x)))?;
        Ok(PivotBlocks {
            inside: x.elements().collect(),
            outside: x.complement(self.n()).elements().collect(),
            p_inv,
        })
    }

    /// Principal pivot transform `A * X`: blocks `P⁻¹`, `P⁻¹Q`, `-RP⁻¹`,
    /// `S - RP⁻¹Q`, reassembled in the original index order.
    pub fn ppt(&self, x: Subset) -> Result<Self> {
        let b = self.pivot_blocks(x)?;
        let f = self.field;
        let (ins, out) = (&b.inside, &b.outside);
        let mut res = self.clone();
        // P⁻¹Q and RP⁻¹
        let piq: Vec<Vec<u32>> = (0..ins.len())
            .map(|a| {
                out.iter()
                    .map(|&c| {
                        dot(
                            f,
                            (0..ins.len()).map(|k| (b.p_inv.get(a, k), self.get(ins[k], c))),
                        )
                    })
                    .collect()
            })
            .collect();
        let rpi: Vec<Vec<u32>> = out
            .iter()
            .map(|&r| {
                (0..ins.len())
                    .map(|a| {
                        dot(
                            f,
                            (0..ins.len()).map(|k| (self.get(r, ins[k]), b.p_inv.get(k, a))),
                        )
                    })
                    .collect()
            })
            .collect();
        for (a, &i) in ins.iter().enumerate() {
            for (c, &j) in ins.iter().enumerate() {
                res.set(i, j, b.p_inv.get(a, c));
            }
            for (c, &j) in out.iter().enumerate() {
                res.set(i, j, piq[a][c]);
            }
        }
        for (r, &i) in out.iter().enumerate() {
            for (a, &j) in ins.iter().enumerate() {
                res.set(i, j, f.neg(rpi[r][a]));
            }
            for (c, &j) in out.iter().enumerate() {
                let s = schur_entry(f, self, &b, i, j);
                res.set(i, j, s);
                let _ = c;
            }
        }
        Ok(res)
    }

    /// Schur complement `S - RP⁻¹Q` of the block `A[X]`, indexed by `V ∖ X`.
    pub fn schur_complement(&self, x: Subset) -> Result<Self> {
        let b = self.pivot_blocks(x)?;
        let f = self.field;
        let rest = x.complement(self.n());
        let mut res = Self::zeros(f, self.labels.restrict(rest));
        for (r, &i) in b.outside.iter().enumerate() {
            for (c, &j) in b.outside.iter().enumerate() {
                res.set(r, c, schur_entry(f, self, &b, i, j));
            }
        }
        Ok(res)
    }

    /// Column subsets forming a basis of the column space.
    pub fn column_matroid(&self) -> SetSystem {
        column_bases(self.field, &self.rows(), &self.labels)
    }
}

struct PivotBlocks {
    inside: Vec<usize>,
    outside: Vec<usize>,
    p_inv: FMatrix,
}

fn dot(f: Field, terms: impl Iterator<Item = (u32, u32)>) -> u32 {
    terms.fold(0, |acc, (a, b)| f.add(acc, f.mul(a, b)))
}

fn schur_entry(f: Field, a: &FMatrix, b: &PivotBlocks, i: usize, j: usize) -> u32 {
    let k = b.inside.len();
    let mut acc = 0;
    for s in 0..k {
        let r_is = a.get(i, b.inside[s]);
        if r_is == 0 {
            continue;
        }
        for t in 0..k {
            acc = f.add(
                acc,
                f.mul(r_is, f.mul(b.p_inv.get(s, t), a.get(b.inside[t], j))),
            );
        }
    }
    f.sub(a.get(i, j), acc)
}

/// In-place reduced row echelon form over the first `ncols` columns.
/// Returns the pivot columns; rows beyond the rank are dropped.
pub(crate) fn row_reduce(f: Field, rows: &mut Vec<Vec<u32>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]);
        for e in rows[r].iter_mut() {
            *e = f.mul(*e, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for k in 0..rows[i].len() {
                    let v = f.mul(factor, rows[r][k]);
                    rows[i][k] = f.sub(rows[i][k], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Bases of the column space of a (possibly rectangular) matrix whose
/// columns are labelled by `labels`.
pub(crate) fn column_bases(f: Field, rows: &[Vec<u32>], labels: &GroundSet) -> SetSystem {
    let ncols = labels.len();
    let rank = row_reduce(f, &mut rows.to_vec(), ncols).len();
    let bases = labels.subsets().filter(|x| x.len() == rank).filter(|&x| {
        let mut sub: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| x.elements().map(|j| r[j]).collect())
            .collect();
        row_reduce(f, &mut sub, rank).len() == rank
    });
    SetSystem::collect(labels.clone(), bases)
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}) {:?} {:?}",
            self.field.p(),
            self.labels,
            self.rows()
        )
    }
}

#[derive(Clone, Serialize, Deserialize)]
pub(crate) struct MatrixJson {
    field: u64,
    labels: Vec<String>,
    entries: Vec<Vec<u32>>,
}

impl TryFrom<MatrixJson> for FMatrix {
    type Error = Error;
    fn try_from(j: MatrixJson) -> Result<Self> {
        let field = Field::new(j.field).map_err(|e| Error::schema("field", e.to_string()))?;
        let labels = GroundSet::new(j.labels)?;
        FMatrix::from_rows(field, labels, &j.entries)
            .map_err(|e| Error::schema("entries", e.to_string()))
    }
}

impl From<FMatrix> for MatrixJson {
    fn from(m: FMatrix) -> Self {
        MatrixJson {
            field: m.field.p() as u64,
            entries: m.rows(),
            labels: m.labels.labels().to_vec(),
        }
    }
}

/// The `B` block of a standard binary representation `[I | B]`: rows are
/// labelled by the basis `R`, columns by the remaining elements `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardRep {
    pub rows: GroundSet,
    pub cols: GroundSet,
    pub b: Vec<Vec<u8>>,
}

impl StandardRep {
    pub fn new(rows: GroundSet, cols: GroundSet, b: Vec<Vec<u8>>) -> Result<Self> {
        if b.len() != rows.len() || b.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::ShapeViolation(format!(
                "expected a {}x{} block",
                rows.len(),
                cols.len()
            )));
        }
        if b.iter().flatten().any(|&e| e > 1) {
            return Err(Error::ShapeViolation("entries must be 0 or 1".into()));
        }
        Ok(Self { rows, cols, b })
    }

    /// Ground set `R` followed by `C`.
    pub fn ground(&self) -> Result<GroundSet> {
        self.rows.concat(&self.cols)
    }

    /// Bases of the matroid represented by `[I | B]`, as column subsets.
    pub fn bases(&self) -> Result<SetSystem> {
        let ground = self.ground()?;
        let r = self.rows.len();
        let rows: Vec<Vec<u32>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| u32::from(i == j))
                    .chain(self.b[i].iter().map(|&e| e as u32))
                    .collect()
            })
            .collect();
        Ok(column_bases(Field::GF2, &rows, &ground))
    }
}

/// Loopless bipartite graph on `R ∪ C` with `A[R, C] = B`, and the twist `R`.
///
/// The bases of the represented matroid are `M_{A(G)} * R`.
pub fn binary_matroid_to_graph_rep(rep: &StandardRep) -> Result<(Graph, Subset)> {
    let ground = rep.ground()?;
    let r = rep.rows.len();
    let mut adj = FMatrix::zeros(Field::GF2, ground);
    for (i, row) in rep.b.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            adj.set(i, r + j, e as u32);
            adj.set(r + j, i, e as u32);
        }
    }
    Ok((Graph::from_matrix(adj)?, Subset::full(r)))
}
