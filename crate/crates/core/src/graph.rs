//! Graphs with loops as symmetric GF(2) matrices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::checks::TripleReport;
use crate::error::{Error, Result};
use crate::ground::{GroundSet, Subset};
use crate::linalg::{FMatrix, Field, Symmetry};
use crate::setsys::SetSystem;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    adj: FMatrix,
}

/// Which set-system flip a local complementation realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LocalMode {
    /// Looped vertex; the support is pivoted.
    Pivot,
    /// Unlooped vertex; the support is dual-pivoted.
    Dual,
    /// Chooses by the loop at the vertex.
    Auto,
}

/// The null space of an adjacency matrix as a family of vertex subsets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelSet {
    pub dim: usize,
    pub members: SetSystem,
}

impl Graph {
    pub fn empty(vertices: GroundSet) -> Self {
        Self {
            adj: FMatrix::zeros(Field::GF2, vertices),
        }
    }

    pub fn new<S: AsRef<str>>(vertices: GroundSet, edges: &[(S, S)], loops: &[S]) -> Result<Self> {
        let mut g = Self::empty(vertices);
        for (u, v) in edges {
            let (i, j) = (g.vertex(u.as_ref())?, g.vertex(v.as_ref())?);
            if i == j {
                return Err(Error::ShapeViolation(format!(
                    "edge on `{}` joins a vertex to itself; list it as a loop",
                    u.as_ref()
                )));
            }
            g.adj.set(i, j, 1);
            g.adj.set(j, i, 1);
        }
        for l in loops {
            let i = g.vertex(l.as_ref())?;
            g.adj.set(i, i, 1);
        }
        Ok(g)
    }

    /// Wraps a symmetric GF(2) matrix.
    pub fn from_matrix(adj: FMatrix) -> Result<Self> {
        if adj.field() != Field::GF2 {
            return Err(Error::ShapeViolation(format!(
                "adjacency matrices live over GF(2), not GF({})",
                adj.field().p()
            )));
        }
        adj.check_symmetry(Symmetry::Symmetric)?;
        Ok(Self { adj })
    }

    pub fn matrix(&self) -> &FMatrix {
        &self.adj
    }

    pub fn vertices(&self) -> &GroundSet {
        self.adj.labels()
    }

    pub fn n(&self) -> usize {
        self.adj.n()
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vertices().index_of(name)
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.adj.get(v, v) == 1
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj.get(u, v) == 1
    }

    pub fn loops(&self) -> Subset {
        Subset(
            (0..self.n())
                .filter(|&v| self.has_loop(v))
                .fold(0, |m, v| m | 1 << v),
        )
    }

    pub fn is_loopless(&self) -> bool {
        self.loops().is_empty()
    }

    /// Edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.has_edge(u, v))
            .collect()
    }

    /// Neighbours of `u`, excluding `u`.
    pub fn neighbors(&self, u: usize) -> Subset {
        Subset(
            (0..self.n())
                .filter(|&v| self.has_edge(u, v))
                .fold(0, |m, v| m | 1 << v),
        )
    }

    /// Toggles the loops on `X`.
    pub fn loop_complement(&self, x: Subset) -> Result<Self> {
        self.vertices().check(x)?;
        let mut g = self.clone();
        for v in x.elements() {
            g.adj.set(v, v, 1 - self.adj.get(v, v));
        }
        Ok(g)
    }

    /// Toggles every adjacency `{v, w}` with `v, w` neighbours of `u`,
    /// including `v = w`.
    pub fn local_complement(&self, u: usize, mode: LocalMode) -> Result<Self> {
        self.vertices().check(Subset::singleton(u))?;
        let looped = self.has_loop(u);
        match mode {
            LocalMode::Pivot if !looped => {
                return Err(Error::LoopRequired(self.vertices().label(u).into()))
            }
            LocalMode::Dual if looped => {
                return Err(Error::LoopForbidden(self.vertices().label(u).into()))
            }
            _ => {}
        }
        let nbrs: Vec<usize> = self.neighbors(u).elements().collect();
        let mut g = self.clone();
        for &v in &nbrs {
            for &w in &nbrs {
                g.adj.set(v, w, 1 - self.adj.get(v, w));
            }
        }
        Ok(g)
    }

    /// `G * v` for a looped vertex, as a principal pivot transform.
    pub fn pivot_vertex(&self, v: usize) -> Result<Self> {
        self.vertices().check(Subset::singleton(v))?;
        if !self.has_loop(v) {
            return Err(Error::LoopRequired(self.vertices().label(v).into()));
        }
        Self::from_matrix(self.adj.ppt(Subset::singleton(v))?)
    }

    /// `G ∖ v`.
    pub fn delete_vertex(&self, v: usize) -> Result<Self> {
        self.vertices().check(Subset::singleton(v))?;
        let keep = Subset::singleton(v).complement(self.n());
        Ok(Self {
            adj: self.adj.principal_submatrix(keep)?,
        })
    }

    /// Sets `X` with `A(G)[X]` nonsingular.
    pub fn support(&self) -> SetSystem {
        self.adj.nonsingular_principal_family()
    }

    pub fn nullity(&self) -> usize {
        self.adj.nullity()
    }

    pub fn kernel(&self) -> KernelSet {
        let (_, dim, basis) = self.adj.rank_nullity_kernel();
        let basis: Vec<u32> = basis
            .vectors
            .iter()
            .map(|v| v.iter().enumerate().fold(0, |m, (i, &e)| m | (e & 1) << i))
            .collect();
        let members = (0..1u32 << dim).map(|c| {
            Subset(
                basis
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| c >> i & 1 == 1)
                    .fold(0, |m, (_, &b)| m ^ b),
            )
        });
        KernelSet {
            dim,
            members: SetSystem::collect(self.vertices().clone(), members),
        }
    }

    /// Kernels of `G`, `G * v` and `G + v` for a looped `v`.
    ///
    /// Two coincide (`K₁`); the third (`K₂`) has one more dimension and
    /// `K₁` is its part avoiding `v`.
    pub fn kernel_triple(&self, v: usize) -> Result<TripleReport> {
        let looped = self.pivot_vertex(v)?;
        let systems = [
            self.kernel().members,
            looped.kernel().members,
            self.loop_complement(Subset::singleton(v))?.kernel().members,
        ];
        TripleReport::classify(
            "kernel_triple",
            systems,
            |k| k.len().trailing_zeros() as usize,
            |k2, k1| {
                let free: Vec<Subset> = k2
                    .family()
                    .iter()
                    .copied()
                    .filter(|x| !x.contains(v))
                    .collect();
                Ok(free.as_slice() == k1.family())
            },
        )
    }

    /// The unique graph whose support is `m`.
    ///
    /// Loops sit on the singletons of `m`; `uv` is an edge iff
    /// `{u, v} ∈ m` differs from `{u} ∈ m ∧ {v} ∈ m`. The candidate is
    /// checked against `m` on every subset.
    pub fn reconstruct(m: &SetSystem) -> Result<Self> {
        if !m.is_proper() {
            return Err(Error::ImproperSystem);
        }
        let ground = m.ground();
        if !m.contains(Subset::EMPTY) {
            return Err(Error::NotGraphic(vec![]));
        }
        let n = m.n();
        let mut g = Self::empty(ground.clone());
        for v in 0..n {
            if m.contains(Subset::singleton(v)) {
                g.adj.set(v, v, 1);
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                let pair = m.contains(Subset::singleton(u).with(v));
                if pair != (g.has_loop(u) && g.has_loop(v)) {
                    g.adj.set(u, v, 1);
                    g.adj.set(v, u, 1);
                }
            }
        }
        let support = g.support();
        if let Some(x) = ground
            .subsets()
            .find(|&x| m.contains(x) != support.contains(x))
        {
            return Err(Error::NotGraphic(ground.names(x)));
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.vertices();
        let edges: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(u, v)| format!("{}{}", g.label(u), g.label(v)))
            .collect();
        write!(
            f,
            "Graph {{ vertices: {:?}, edges: {:?}, loops: {:?} }}",
            g,
            edges,
            g.names(self.loops())
        )
    }
}

#[derive(Clone, Serialize, Deserialize)]
pub(crate) struct GraphJson {
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<(String, String)>,
    #[serde(default)]
    loops: Vec<String>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;
    fn try_from(j: GraphJson) -> Result<Self> {
        let vertices = GroundSet::new(j.vertices)?;
        Graph::new(vertices, &j.edges, &j.loops).map_err(|e| match e {
            Error::ShapeViolation(msg) => Error::schema("edges", msg),
            other => other,
        })
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        let v = g.vertices();
        GraphJson {
            edges: g
                .edges()
                .into_iter()
                .map(|(a, b)| (v.label(a).to_string(), v.label(b).to_string()))
                .collect(),
            loops: v.names(g.loops()),
            vertices: v.labels().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(&str, &str)], loops: &[&str]) -> Graph {
        Graph::new(GroundSet::letters(n).unwrap(), edges, loops).unwrap()
    }

    fn sys(g: &GroundSet, sets: &[&[&str]]) -> SetSystem {
        let sets: Vec<Vec<&str>> = sets.iter().map(|s| s.to_vec()).collect();
        SetSystem::new(g.clone(), &sets).unwrap()
    }

    #[test]
    fn loop_complement_examples() {
        let g = graph(1, &[], &[]);
        let h = g.loop_complement(Subset(1)).unwrap();
        assert!(h.has_loop(0));
        assert_eq!(h.loop_complement(Subset(1)).unwrap(), g);

        let looped = graph(1, &[], &["a"]);
        let lhs = looped.loop_complement(Subset(1)).unwrap().support();
        let rhs = looped.support().loop_complement(Subset(1)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.family(), &[Subset::EMPTY]);
    }

    #[test]
    fn local_complement_examples() {
        let path = graph(3, &[("a", "b"), ("b", "c")], &[]);
        let h = path.local_complement(1, LocalMode::Dual).unwrap();
        assert_eq!(
            h,
            graph(3, &[("a", "b"), ("b", "c"), ("a", "c")], &["a", "c"])
        );
        assert_eq!(path.local_complement(1, LocalMode::Auto).unwrap(), h);
        assert_eq!(
            path.local_complement(1, LocalMode::Pivot),
            Err(Error::LoopRequired("b".into()))
        );

        let iso = graph(1, &[], &["a"]);
        assert_eq!(iso.local_complement(0, LocalMode::Pivot).unwrap(), iso);
        assert_eq!(
            iso.local_complement(0, LocalMode::Dual),
            Err(Error::LoopForbidden("a".into()))
        );

        let g = graph(2, &[("a", "b")], &["a"]);
        let h = g.local_complement(0, LocalMode::Pivot).unwrap();
        assert_eq!(h, graph(2, &[("a", "b")], &["a", "b"]));
        assert_eq!(h, g.pivot_vertex(0).unwrap());
    }

    #[test]
    fn support_examples() {
        let g1 = GroundSet::letters(1).unwrap();
        assert_eq!(graph(1, &[], &["a"]).support(), sys(&g1, &[&[], &["a"]]));
        let g2 = GroundSet::letters(2).unwrap();
        assert_eq!(
            graph(2, &[("a", "b")], &[]).support(),
            sys(&g2, &[&[], &["a", "b"]])
        );
        assert_eq!(graph(2, &[], &[]).support(), sys(&g2, &[&[]]));
    }

    #[test]
    fn reconstruct_examples() {
        let g2 = GroundSet::letters(2).unwrap();
        let m = sys(&g2, &[&[], &["a"], &["b"], &["a", "b"]]);
        assert_eq!(Graph::reconstruct(&m).unwrap(), graph(2, &[], &["a", "b"]));
        let m = sys(&g2, &[&[], &["a", "b"]]);
        assert_eq!(
            Graph::reconstruct(&m).unwrap(),
            graph(2, &[("a", "b")], &[])
        );

        // Loops on a and b plus the edge ab give a singular 2x2 block.
        let m = sys(&g2, &[&[], &["a"], &["b"]]);
        assert_eq!(
            Graph::reconstruct(&m).unwrap(),
            graph(2, &[("a", "b")], &["a", "b"])
        );

        let g3 = GroundSet::letters(3).unwrap();
        assert_eq!(
            Graph::reconstruct(&sys(&g3, &[&[], &["a", "b", "c"]])),
            Err(Error::NotGraphic(vec!["a".into(), "b".into(), "c".into()]))
        );
        assert_eq!(
            Graph::reconstruct(&sys(&g3, &[&["a"]])),
            Err(Error::NotGraphic(vec![]))
        );
        assert_eq!(
            Graph::reconstruct(&SetSystem::from_family(g3, vec![]).unwrap()),
            Err(Error::ImproperSystem)
        );
    }

    #[test]
    fn kernel_examples() {
        let k = graph(1, &[], &[]).kernel();
        assert_eq!(
            (k.dim, k.members.family()),
            (1, &[Subset(0), Subset(1)][..])
        );
        let k = graph(1, &[], &["a"]).kernel();
        assert_eq!((k.dim, k.members.family()), (0, &[Subset(0)][..]));
        let k = graph(2, &[("a", "b")], &[]).kernel();
        assert_eq!(k.dim, 0);
    }

    #[test]
    fn kernel_triple_examples() {
        let g = graph(1, &[], &["a"]);
        let t = g.kernel_triple(0).unwrap();
        assert_eq!(t.m1().family(), &[Subset(0)]);
        assert_eq!(t.m2().family(), &[Subset(0), Subset(1)]);
        assert_eq!(t.delta, 1);
        assert!(t.relation_holds);

        let g = graph(2, &[("a", "b")], &["a"]);
        let t = g.kernel_triple(0).unwrap();
        assert_eq!(t.delta, 1);
        assert!(t.relation_holds);
        assert!(t.m1().is_subfamily_of(t.m2()));

        assert_eq!(
            graph(1, &[], &[]).kernel_triple(0),
            Err(Error::LoopRequired("a".into()))
        );
    }

    #[test]
    fn delete_vertex_examples() {
        let g = graph(2, &[("a", "b")], &[]);
        assert_eq!(
            g.delete_vertex(1).unwrap(),
            Graph::empty(GroundSet::new(["a"]).unwrap())
        );
        let g = graph(1, &[], &["a"]);
        assert_eq!(g.delete_vertex(0).unwrap().n(), 0);
        let g = graph(3, &[("a", "b"), ("b", "c")], &["a"]);
        assert_eq!(
            g.pivot_vertex(0)
                .unwrap()
                .delete_vertex(0)
                .unwrap()
                .nullity(),
            g.nullity()
        );
    }

    #[test]
    fn graph_json_roundtrip() {
        let g: Graph =
            serde_json::from_str(r#"{"vertices":["a","b"],"edges":[["a","b"]],"loops":["a"]}"#)
                .unwrap();
        assert_eq!(g, graph(2, &[("a", "b")], &["a"]));
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(
            s,
            r#"{"vertices":["a","b"],"edges":[["a","b"]],"loops":["a"]}"#
        );
        let m: FMatrix = serde_json::from_str(&serde_json::to_string(g.matrix()).unwrap()).unwrap();
        assert_eq!(Graph::from_matrix(m).unwrap(), g);
        assert!(
            serde_json::from_str::<Graph>(r#"{"vertices":["a"],"edges":[["a","a"]]}"#).is_err()
        );
    }
}
