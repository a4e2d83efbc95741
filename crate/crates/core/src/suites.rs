//! Named property suites over exhaustive and seeded corpora.
//!
//! Each suite walks its corpus in a fixed order and records every failing
//! case together with a JSON witness, so a report is a pure function of the
//! suite name, seed and sample count.

use serde::Serialize;
use serde_json::{json, Value};

use crate::checks::{
    check_exchange, check_isodistant, check_isodistant_max, distance_minor_check, is_isodistant,
    is_mm_m1, max_triple, min_triple, rank_profile, restriction_distance_check, CheckVerdict,
    Witness,
};
use crate::error::{Error, Result};
use crate::flip::{
    apply_assignment, is_vf_closed, reduce_word, Flip, FlipAssignment, FlipOp, FlipToken, FlipWord,
    NormalForm,
};
use crate::gen;
use crate::graph::{Graph, LocalMode};
use crate::ground::{GroundSet, Subset};
use crate::linalg::{binary_matroid_to_graph_rep, FMatrix, Field, Symmetry};
use crate::setsys::{parity, Extremal, SetSystem};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Overrides the suite's default number of random samples.
    pub samples: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub case: Value,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

pub struct Suite {
    pub name: &'static str,
    pub summary: &'static str,
    pub default_samples: usize,
    run: fn(&mut Run),
}

impl Suite {
    pub fn run(&self, opts: &SuiteOptions) -> Report {
        let mut r = Run {
            seed: opts.seed,
            samples: opts.samples.unwrap_or(self.default_samples),
            report: Report {
                suite: self.name.to_string(),
                seed: opts.seed,
                cases: 0,
                failures: Vec::new(),
            },
        };
        (self.run)(&mut r);
        r.report
    }
}

pub const SUITES: &[Suite] = &[
    Suite {
        name: "exchange-isodistance",
        summary: "symmetric exchange, min-isodistance and max-isodistance agree",
        default_samples: 10_000,
        run: exchange_isodistance,
    },
    Suite {
        name: "distance-minor",
        summary: "the pivot-minor distance property agrees with delta-matroid membership",
        default_samples: 10_000,
        run: distance_minor,
    },
    Suite {
        name: "min-max-triples",
        summary: "min and max triples of every delta-matroid on four elements",
        default_samples: 0,
        run: min_max_triples,
    },
    Suite {
        name: "support-distance",
        summary: "distance equals nullity of principal submatrices; max of the support is the column matroid",
        default_samples: 500,
        run: support_distance,
    },
    Suite {
        name: "pivot-transform",
        summary: "principal pivot transforms pivot the support, are involutions and Schur complements keep nullity",
        default_samples: 500,
        run: pivot_transform,
    },
    Suite {
        name: "graph-layer",
        summary: "loop and local complementation, reconstruction, kernels and nullity patterns of graphs",
        default_samples: 1_000,
        run: graph_layer,
    },
    Suite {
        name: "vf-census",
        summary: "vertex-flip closure of uniform, graphic and binary examples",
        default_samples: 200,
        run: vf_census,
    },
    Suite {
        name: "flip-group",
        summary: "identities of pivot, loop complementation and dual pivot; word reduction and normal forms",
        default_samples: 10_000,
        run: flip_group,
    },
];

pub fn suite(name: &str) -> Result<&'static Suite> {
    SUITES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))
}

pub fn run_verify(name: &str, opts: &SuiteOptions) -> Result<Report> {
    Ok(suite(name)?.run(opts))
}

struct Run {
    seed: u64,
    samples: usize,
    report: Report,
}

impl Run {
    /// Records one case; `outcome` is `Ok(None)` on success.
    fn case(&mut self, describe: impl FnOnce() -> Value, outcome: Result<Option<Value>>) {
        self.report.cases += 1;
        let witness = match outcome {
            Ok(None) => return,
            Ok(Some(w)) => w,
            Err(e) => json!({ "error": e.to_string() }),
        };
        self.report.failures.push(Failure {
            case: describe(),
            witness,
        });
    }
}

/// Collects named boolean checks; the first failing name becomes the witness.
struct Expect(Vec<Value>);

impl Expect {
    fn new() -> Self {
        Expect(Vec::new())
    }

    fn that(&mut self, ok: bool, what: impl FnOnce() -> Value) -> &mut Self {
        if !ok {
            self.0.push(what());
        }
        self
    }

    fn done(self) -> Option<Value> {
        if self.0.is_empty() {
            None
        } else {
            Some(Value::Array(self.0))
        }
    }
}

fn sys_json(m: &SetSystem) -> Value {
    serde_json::to_value(m).expect("set system serializes")
}

fn subset_json(g: &GroundSet, x: Subset) -> Value {
    json!(g.names(x))
}

/// Family of the subsets of an `n`-set selected by the bits of `mask`,
/// bit `i` standing for the subset with mask `i`.
pub fn family_from_bits(g: &GroundSet, mask: u64) -> SetSystem {
    let fam = (0..1u32 << g.len())
        .filter(|&s| mask >> s & 1 == 1)
        .map(Subset)
        .collect();
    SetSystem::from_family(g.clone(), fam).expect("distinct subsets")
}

/// All 255 proper systems on three letters, then `samples` seeded systems
/// each on four and five letters.
pub fn decision_corpus(seed: u64, samples: usize) -> impl Iterator<Item = Result<SetSystem>> {
    let g3 = GroundSet::letters(3).expect("three letters");
    let exhaustive = (1u64..256).map(move |mask| Ok(family_from_bits(&g3, mask)));
    let random = [4usize, 5].into_iter().flat_map(move |n| {
        (0..samples as u64).map(move |i| gen::random_set_system(n, seed, (n as u64) << 32 | i))
    });
    exhaustive.chain(random)
}

fn revalidates(v: &CheckVerdict, m: &SetSystem) -> bool {
    v.holds || v.witness.as_ref().is_some_and(|w| w.revalidate(m))
}

fn exchange_isodistance(r: &mut Run) {
    for m in decision_corpus(r.seed, r.samples) {
        let m = match m {
            Ok(m) => m,
            Err(e) => {
                r.case(|| json!("generator"), Err(e));
                continue;
            }
        };
        let outcome = (|| {
            let ex = check_exchange(&m)?;
            let iso = check_isodistant(&m)?;
            let iso_max = check_isodistant_max(&m)?;
            let g = m.ground();
            let mut e = Expect::new();
            e.that(ex.holds == iso.holds && iso.holds == iso_max.holds, || {
                json!({
                    "exchange": ex.to_json(g),
                    "isodistant": iso.to_json(g),
                    "isodistant_max": iso_max.to_json(g),
                })
            });
            for (name, v) in [
                ("exchange", &ex),
                ("isodistant", &iso),
                ("isodistant_max", &iso_max),
            ] {
                e.that(
                    revalidates(v, &m),
                    || json!({ "witness_does_not_revalidate": name }),
                );
            }
            Ok(e.done())
        })();
        r.case(|| sys_json(&m), outcome);
    }
}

fn distance_minor(r: &mut Run) {
    for m in decision_corpus(r.seed, r.samples) {
        let m = match m {
            Ok(m) => m,
            Err(e) => {
                r.case(|| json!("generator"), Err(e));
                continue;
            }
        };
        let outcome = (|| {
            let dm = distance_minor_check(&m)?;
            let delta = is_isodistant(&m);
            let g = m.ground();
            let mut e = Expect::new();
            e.that(
                dm.holds == delta,
                || json!({ "distance_minor": dm.to_json(g), "delta_matroid": delta }),
            );
            e.that(revalidates(&dm, &m), || {
                json!("distance_minor witness does not revalidate")
            });
            if delta {
                let rd = restriction_distance_check(&m)?;
                e.that(
                    rd.holds,
                    || json!({ "restriction_distance": rd.to_json(g) }),
                );
                for x in g.subsets() {
                    let inside = m.family().iter().filter(|y| y.is_subset_of(x));
                    if let Some(best) = inside.map(|y| x.minus(*y).len()).min() {
                        let d = m.distance(x)?;
                        e.that(d == best, || {
                            json!({ "inner_distance": subset_json(g, x), "distance": d, "inner": best })
                        });
                    }
                }
            }
            Ok(e.done())
        })();
        r.case(|| sys_json(&m), outcome);
    }

    // Restriction distance holds on a system that is not a delta-matroid.
    let g = GroundSet::letters(3).expect("three letters");
    let m = SetSystem::new(g.clone(), &[vec![], vec!["a"], vec!["b", "c"]]).expect("valid");
    let outcome = (|| {
        let rd = restriction_distance_check(&m)?;
        let dm = distance_minor_check(&m)?;
        let mut e = Expect::new();
        e.that(
            rd.holds,
            || json!({ "restriction_distance": rd.to_json(&g) }),
        )
        .that(!is_isodistant(&m), || json!("system is a delta-matroid"))
        .that(
            !dm.holds && revalidates(&dm, &m),
            || json!({ "distance_minor": dm.to_json(&g) }),
        );
        Ok(e.done())
    })();
    r.case(
        || json!({ "restriction_distance_is_not_a_characterization": sys_json(&m) }),
        outcome,
    );

    // {∅, V} on three letters: full distance 1, restricted distance 2.
    let m = SetSystem::from_family(g.clone(), vec![Subset::EMPTY, g.full()]).expect("valid");
    let outcome = (|| {
        let dm = distance_minor_check(&m)?;
        let mut e = Expect::new();
        e.that(!dm.holds, || json!("distance minor check passed"));
        if let Some(Witness::DistanceMinor {
            within,
            full,
            restricted,
            ..
        }) = dm.witness
        {
            e.that(within.len() == 2 && full == 1 && restricted == 2, || {
                dm.to_json(&g)
            });
        } else {
            e.that(false, || dm.to_json(&g));
        }
        for u in 0..3 {
            let rest = Subset::singleton(u).complement(3);
            let deleted = m.restrict(rest)?;
            e.that(
                deleted.distance(rest.compress(rest))? == 2 && m.distance(rest)? == 1,
                || json!({ "deleted": u }),
            );
        }
        Ok(e.done())
    })();
    r.case(|| json!({ "empty_and_full": sys_json(&m) }), outcome);
}

fn min_max_triples(r: &mut Run) {
    let g = GroundSet::letters(4).expect("four letters");
    for mask in 1u64..1 << 16 {
        let m = family_from_bits(&g, mask);
        if !is_isodistant(&m) {
            continue;
        }
        for v in 0..4 {
            let outcome = triples_at(&m, v);
            r.case(
                || json!({ "system": sys_json(&m), "v": g.label(v) }),
                outcome,
            );
        }
    }

    // {∅, V} on four letters has the m, m+1, m pattern everywhere yet is
    // not a delta-matroid.
    let m = SetSystem::from_family(g.clone(), vec![Subset::EMPTY, g.full()]).expect("valid");
    let outcome = (|| {
        let mut e = Expect::new();
        e.that(!is_isodistant(&m), || json!("system is a delta-matroid"));
        for v in 0..4 {
            for x in g.subsets().filter(|x| x.contains(v)) {
                let [a, b, c] = crate::checks::distance_triple(&m, v, x)?;
                e.that(
                    c == a.min(b) && a.max(b) == c + 1,
                    || json!({ "v": g.label(v), "x": subset_json(&g, x), "distances": [a, b, c] }),
                );
            }
        }
        Ok(e.done())
    })();
    r.case(|| json!({ "empty_and_full": sys_json(&m) }), outcome);
}

fn triples_at(m: &SetSystem, v: usize) -> Result<Option<Value>> {
    let g = m.ground();
    let sv = Subset::singleton(v);
    let mut e = Expect::new();
    let lo = min_triple(m, v)?;
    e.that(
        lo.delta == 1 && lo.relation_holds,
        || json!({ "min_triple": lo.to_json() }),
    );
    let hi = max_triple(m, v)?;
    e.that(
        hi.delta == -1 && hi.relation_holds,
        || json!({ "max_triple": hi.to_json() }),
    );
    for x in g.subsets() {
        let d = crate::checks::distance_triple(m, v, x)?;
        e.that(
            is_mm_m1(d),
            || json!({ "x": subset_json(g, x), "distances": d }),
        );
    }

    let pv = m.pivot(sv)?;
    let dv = m.dual_pivot(sv)?;
    let (d, d_piv, d_dual) = (m.min_distance()?, pv.min_distance()?, dv.min_distance()?);
    if d == d_piv {
        let mins = m.extremal(Extremal::Min)?;
        e.that(mins.family().iter().all(|y| !y.contains(v)), || {
            json!("a minimal member contains v")
        })
        .that(mins == pv.extremal(Extremal::Min)?, || {
            json!("min(M) differs from min(M*v)")
        })
        .that(
            d_dual == d + 1,
            || json!({ "dual_distance": d_dual, "distance": d }),
        );
    } else {
        e.that(dv.extremal(Extremal::Min)?.is_equicardinal()?, || {
            json!("min(M dual-pivot v) is not equicardinal")
        });
    }
    Ok(e.done())
}

struct MatrixCase {
    field: Field,
    symmetry: Symmetry,
    index: usize,
    matrix: FMatrix,
}

/// `samples` symmetric and skew matrices over GF(2) with `n ≤ 6`, and
/// `2 * samples / 5` of each over GF(3) and GF(5) with `n ≤ 5`.
fn matrix_corpus(seed: u64, samples: usize) -> Vec<Result<MatrixCase>> {
    let small = samples * 2 / 5;
    let plan = [(2u64, 6usize, samples), (3, 5, small), (5, 5, small)];
    let mut out = Vec::new();
    for (p, max_n, count) in plan {
        let field = Field::new(p).expect("prime");
        for (k, symmetry) in [Symmetry::Symmetric, Symmetry::Skew]
            .into_iter()
            .enumerate()
        {
            for index in 0..count {
                let n = index % max_n + 1;
                let stream = p << 40 | (k as u64) << 32 | index as u64;
                let matrix = match symmetry {
                    Symmetry::Symmetric => gen::random_symmetric(field, n, seed, stream),
                    Symmetry::Skew => gen::random_skew(field, n, seed, stream),
                };
                out.push(matrix.map(|matrix| MatrixCase {
                    field,
                    symmetry,
                    index,
                    matrix,
                }));
            }
        }
    }
    out
}

fn matrix_case_json(c: &MatrixCase) -> Value {
    json!({
        "field": c.field.p(),
        "symmetry": c.symmetry,
        "index": c.index,
        "matrix": serde_json::to_value(&c.matrix).expect("matrix serializes"),
    })
}

fn support_distance(r: &mut Run) {
    for c in matrix_corpus(r.seed, r.samples) {
        let c = match c {
            Ok(c) => c,
            Err(e) => {
                r.case(|| json!("generator"), Err(e));
                continue;
            }
        };
        let outcome =
            (|| {
                let a = &c.matrix;
                let g = a.labels();
                let m = a.support_deltamatroid(c.symmetry)?;
                let mut e = Expect::new();
                e.that(is_isodistant(&m), || {
                    json!("support is not a delta-matroid")
                });
                for x in g.subsets() {
                    let sub = a.principal_submatrix(x)?;
                    let d = m.distance(x)?;
                    e.that(d == sub.nullity(), || {
                    json!({ "x": subset_json(g, x), "distance": d, "nullity": sub.nullity() })
                });
                    let rp = rank_profile(&m, x)?;
                    e.that(rp.r as usize == sub.rank(), || {
                    json!({ "x": subset_json(g, x), "rank_profile": rp, "rank": sub.rank() })
                });
                }
                let mx = m.extremal(Extremal::Max)?;
                let cm = a.column_matroid();
                e.that(
                    mx == cm,
                    || json!({ "max_support": sys_json(&mx), "column_matroid": sys_json(&cm) }),
                );
                Ok(e.done())
            })();
        r.case(|| matrix_case_json(&c), outcome);
    }
}

fn pivot_transform(r: &mut Run) {
    for c in matrix_corpus(r.seed, r.samples) {
        let c = match c {
            Ok(c) => c,
            Err(e) => {
                r.case(|| json!("generator"), Err(e));
                continue;
            }
        };
        let outcome = (|| {
            let a = &c.matrix;
            let g = a.labels();
            let m = a.support_deltamatroid(c.symmetry)?;
            let nullity = a.nullity();
            let mut e = Expect::new();
            for x in g.subsets() {
                if !m.contains(x) {
                    e.that(
                        matches!(a.ppt(x), Err(Error::SingularPivotBlock(_))),
                        || json!({ "singular_block_accepted": subset_json(g, x) }),
                    );
                    continue;
                }
                let b = a.ppt(x)?;
                let lhs = b.nonsingular_principal_family();
                let rhs = m.pivot(x)?;
                e.that(lhs == rhs, || {
                    json!({ "x": subset_json(g, x), "support_of_transform": sys_json(&lhs), "pivoted_support": sys_json(&rhs) })
                })
                .that(b.ppt(x)? == *a, || json!({ "not_an_involution": subset_json(g, x) }));
                let s = a.schur_complement(x)?;
                e.that(s.nullity() == nullity, || {
                    json!({ "x": subset_json(g, x), "schur_nullity": s.nullity(), "nullity": nullity })
                });
            }
            Ok(e.done())
        })();
        r.case(|| matrix_case_json(&c), outcome);
    }
}

/// The graph on `n` letters encoded by the upper-triangular bits of `code`,
/// row by row including the diagonal.
fn graph_from_code(n: usize, code: u64) -> Graph {
    let mut a = FMatrix::zeros(Field::GF2, GroundSet::letters(n).expect("letters"));
    let mut bit = 0;
    for i in 0..n {
        for j in i..n {
            let e = (code >> bit & 1) as u32;
            a.set(i, j, e);
            a.set(j, i, e);
            bit += 1;
        }
    }
    Graph::from_matrix(a).expect("symmetric over GF(2)")
}

pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    (0..1u64 << (n * (n + 1) / 2)).map(move |code| graph_from_code(n, code))
}

fn graph_json(g: &Graph) -> Value {
    serde_json::to_value(g).expect("graph serializes")
}

fn graph_layer(r: &mut Run) {
    for n in 0..=4 {
        for graph in all_graphs(n) {
            let outcome = graph_identities(&graph);
            r.case(|| graph_json(&graph), outcome);
        }
    }
    for i in 0..r.samples {
        let n = i % 8 + 1;
        let graph = match gen::random_graph(n, 0.5, r.seed, i as u64) {
            Ok(g) => g,
            Err(e) => {
                r.case(|| json!("generator"), Err(e));
                continue;
            }
        };
        let outcome = graph_nullities(&graph);
        r.case(
            || json!({ "index": i, "graph": graph_json(&graph) }),
            outcome,
        );
    }
}

fn graph_identities(graph: &Graph) -> Result<Option<Value>> {
    let g = graph.vertices();
    let s = graph.support();
    let mut e = Expect::new();
    for x in g.subsets() {
        e.that(
            graph.loop_complement(x)?.support() == s.loop_complement(x)?,
            || json!({ "loop_complement": subset_json(g, x) }),
        );
    }
    for u in 0..graph.n() {
        let loc = graph.local_complement(u, LocalMode::Auto)?;
        let su = Subset::singleton(u);
        let want = if graph.has_loop(u) {
            s.pivot(su)?
        } else {
            s.dual_pivot(su)?
        };
        e.that(
            loc.support() == want,
            || json!({ "local_complement": g.label(u) }),
        );
    }
    let back = Graph::reconstruct(&s);
    e.that(
        back.as_ref() == Ok(graph),
        || json!({ "reconstruct": format!("{back:?}") }),
    );
    Ok(e.done())
}

/// `A x = 0` by direct evaluation.
fn annihilates(graph: &Graph, x: Subset) -> bool {
    (0..graph.n()).all(|i| {
        x.elements()
            .filter(|&j| graph.matrix().get(i, j) == 1)
            .count()
            % 2
            == 0
    })
}

fn graph_nullities(graph: &Graph) -> Result<Option<Value>> {
    let g = graph.vertices();
    let n0 = graph.nullity();
    let mut e = Expect::new();
    for v in 0..graph.n() {
        let sv = Subset::singleton(v);
        let deleted = graph.delete_vertex(v)?.nullity();
        let plus = graph.loop_complement(sv)?.nullity();
        e.that(
            is_mm_m1([n0, deleted, plus]),
            || json!({ "v": g.label(v), "deleted_and_looped": [n0, deleted, plus] }),
        );
        if graph.has_loop(v) {
            let t = graph.kernel_triple(v)?;
            e.that(
                t.delta == 1 && t.relation_holds && t.m1().is_subfamily_of(t.m2()),
                || json!({ "v": g.label(v), "kernel_triple": t.to_json() }),
            );
            let piv = graph.pivot_vertex(v)?.nullity();
            e.that(
                is_mm_m1([n0, piv, plus]),
                || json!({ "v": g.label(v), "pivoted_and_looped": [n0, piv, plus] }),
            )
            .that(
                piv == deleted,
                || json!({ "v": g.label(v), "pivoted": piv, "deleted": deleted }),
            );
        }
    }

    let loopless = graph.loop_complement(graph.loops())?;
    let ln = loopless.nullity();
    for v in 0..graph.n() {
        let d = loopless.delete_vertex(v)?.nullity();
        e.that(
            ln.abs_diff(d) == 1,
            || json!({ "loopless_v": g.label(v), "nullities": [ln, d] }),
        );
    }
    e.that(
        loopless.support().family().iter().all(|x| x.len() % 2 == 0),
        || json!("loopless support has an odd member"),
    );

    let s = graph.support();
    e.that(
        s.extremal(Extremal::Max)? == graph.matrix().column_matroid(),
        || json!("max of the support differs from the column matroid"),
    );
    let k = graph.kernel();
    let direct: Vec<Subset> = g.subsets().filter(|&x| annihilates(graph, x)).collect();
    e.that(
        k.members.family() == direct.as_slice() && k.dim == n0,
        || json!({ "kernel": sys_json(&k.members) }),
    );
    Ok(e.done())
}

/// `U(2,6)` is not closed: looping every element yields the 2-sets, the
/// 3-sets and the ground set.
fn u26_counterexample() -> Result<Option<Value>> {
    let m = gen::uniform_matroid(2, 6)?;
    let g = m.ground().clone();
    let full = g.full();
    let verdict = is_vf_closed(&m)?;
    let mut e = Expect::new();
    let Some(Witness::FlipImage { normal_form, image }) = verdict.witness.clone() else {
        e.that(false, || verdict.to_json(&g));
        return Ok(e.done());
    };
    e.that(
        normal_form == NormalForm::new(Subset::EMPTY, Subset::EMPTY, full)?,
        || json!({ "normal_form": normal_form.to_json(&g) }),
    );
    e.that(
        verdict.witness.as_ref().is_some_and(|w| w.revalidate(&m)),
        || json!("witness does not revalidate"),
    );
    if let Witness::Exchange { y, .. } = *image {
        e.that(y == full, || json!({ "exchange_y": subset_json(&g, y) }));
    }
    let img = normal_form.apply(&m)?;
    let want: Vec<Subset> = g
        .subsets()
        .filter(|s| matches!(s.len(), 2 | 3 | 6))
        .collect();
    e.that(
        img.family() == want.as_slice(),
        || json!({ "image": sys_json(&img) }),
    );
    // Members of M below a set of size k: 15 for k = 6, 10 for 5, 6 for 4.
    for (k, count) in [(6usize, 15usize), (5, 10), (4, 6)] {
        let y = g.subsets().find(|s| s.len() == k).expect("exists");
        let below = m.family().iter().filter(|z| z.is_subset_of(y)).count();
        e.that(
            below == count,
            || json!({ "size": k, "members_below": below }),
        );
    }
    Ok(e.done())
}

/// Every flip image of `M_G` is a delta-matroid and a twist of a graph support.
fn flip_images_are_graphic(graph: &Graph) -> Result<Option<Value>> {
    let s = graph.support();
    let g = s.ground();
    let mut e = Expect::new();
    e.that(is_vf_closed(&s)?.holds, || {
        json!("support is not vf-closed")
    });
    for nf in NormalForm::all(g.len()) {
        let img = nf.apply(&s)?;
        let twisted = img
            .family()
            .iter()
            .any(|&w| img.pivot(w).is_ok_and(|t| Graph::reconstruct(&t).is_ok()));
        e.that(
            is_isodistant(&img) && twisted,
            || json!({ "normal_form": nf.to_json(g) }),
        );
    }
    for u in 0..g.len() {
        let rest = s.delete(Subset::singleton(u))?;
        if rest.is_proper() {
            e.that(
                is_vf_closed(&rest)?.holds,
                || json!({ "deletion_not_closed": g.label(u) }),
            );
        }
    }
    Ok(e.done())
}

fn vf_census(r: &mut Run) {
    let u24 = gen::uniform_matroid(2, 4);
    r.case(
        || json!("U(2,4)"),
        u24.and_then(|m| is_vf_closed(&m))
            .map(|v| (!v.holds).then(|| v.to_json(&GroundSet::letters(4).expect("letters")))),
    );
    r.case(|| json!("U(2,6)"), u26_counterexample());

    for graph in all_graphs(3) {
        let outcome = flip_images_are_graphic(&graph);
        r.case(|| graph_json(&graph), outcome);
    }

    for i in 0..r.samples {
        let rank = i % 3 + 1;
        let n = rank + (i / 3) % (6 - rank);
        let outcome = (|| {
            let rep = gen::random_standard_rep(rank, n, r.seed, i as u64)?;
            let (graph, twist) = binary_matroid_to_graph_rep(&rep)?;
            let bases = graph.support().pivot(twist)?;
            let mut e = Expect::new();
            e.that(bases == rep.bases()?, || {
                json!({ "graph_bases": sys_json(&bases), "column_bases": sys_json(&rep.bases().expect("bases")) })
            });
            let closed = is_vf_closed(&bases)?;
            e.that(
                closed.holds,
                || json!({ "bases": sys_json(&bases), "verdict": closed.to_json(bases.ground()) }),
            );
            for u in 0..n {
                let rest = bases.delete(Subset::singleton(u))?;
                if rest.is_proper() {
                    e.that(
                        is_vf_closed(&rest)?.holds,
                        || json!({ "deletion_not_closed": u }),
                    );
                }
            }
            Ok(e.done())
        })();
        r.case(
            || json!({ "binary_matroid": i, "rank": rank, "n": n }),
            outcome,
        );
    }
}

fn apply_op(m: &SetSystem, op: FlipOp, x: Subset) -> Result<SetSystem> {
    match op {
        FlipOp::Pivot => m.pivot(x),
        FlipOp::Loop => m.loop_complement(x),
        FlipOp::Dual => m.dual_pivot(x),
    }
}

const OPS: [FlipOp; 3] = [FlipOp::Pivot, FlipOp::Loop, FlipOp::Dual];

fn set_identities(m: &SetSystem) -> Result<Option<Value>> {
    let g = m.ground();
    let n = g.len();
    let mut e = Expect::new();
    for x in g.subsets() {
        let xj = || subset_json(g, x);
        for op in OPS {
            e.that(
                apply_op(&apply_op(m, op, x)?, op, x)? == *m,
                || json!({ "not_an_involution": op.symbol().to_string(), "x": xj() }),
            );
        }
        let dual = m.dual_pivot(x)?;
        e.that(
            dual == m.loop_complement(x)?.pivot(x)?.loop_complement(x)?,
            || json!({ "dual_vs_loop_pivot_loop": xj() }),
        )
        .that(
            dual == m.pivot(x)?.loop_complement(x)?.pivot(x)?,
            || json!({ "dual_vs_pivot_loop_pivot": xj() }),
        )
        .that(
            m.loop_complement(x)? == parity::loop_complement(m, x)?,
            || json!({ "loop_parity": xj() }),
        )
        .that(
            dual == parity::dual_pivot(m, x)?,
            || json!({ "dual_parity": xj() }),
        );
        if m.is_proper() {
            e.that(
                m.extremal(Extremal::Min)? == m.loop_complement(x)?.extremal(Extremal::Min)?,
                || json!({ "min_under_loop": xj() }),
            )
            .that(
                m.extremal(Extremal::Max)? == dual.extremal(Extremal::Max)?,
                || json!({ "max_under_dual": xj() }),
            )
            .that(
                m.distance(x)? == m.pivot(x)?.distance(Subset::EMPTY)?,
                || json!({ "distance_reduction": xj() }),
            );
            for z in g.subsets() {
                e.that(
                    m.pivot(z)?.distance(x)? == m.distance(x.sym_diff(z))?,
                    || json!({ "pivot_distance": xj(), "z": subset_json(g, z) }),
                );
            }
        }
    }
    for v in 0..n {
        let sv = Subset::singleton(v);
        let lp = |s: &SetSystem| -> Result<SetSystem> { s.loop_complement(sv)?.pivot(sv) };
        e.that(
            lp(&lp(&lp(m)?)?)? == *m,
            || json!({ "loop_pivot_order_three": g.label(v) }),
        )
        .that(
            m.loop_complement(sv)?.delete(sv)? == m.delete(sv)?,
            || json!({ "deletion_absorbs_loop": g.label(v) }),
        );
        for u in (0..n).filter(|&u| u != v) {
            let su = Subset::singleton(u);
            for a in OPS {
                for b in OPS {
                    let ab = apply_op(&apply_op(m, a, su)?, b, sv)?;
                    let ba = apply_op(&apply_op(m, b, sv)?, a, su)?;
                    e.that(ab == ba, || {
                        json!({ "commutation": [format!("{}{}", a.symbol(), g.label(u)), format!("{}{}", b.symbol(), g.label(v))] })
                    });
                }
            }
        }
        if m.is_proper() {
            let d = m.min_distance()?;
            let dp = m.pivot(sv)?.min_distance()?;
            let low = d.min(dp);
            for f in Flip::ALL {
                let df = f.apply_at(m, v)?.min_distance()?;
                e.that(d.abs_diff(df) <= 1 && (df == low || df == low + 1), || {
                    json!({ "flip_distance": f.symbol(), "v": g.label(v), "values": [d, dp, df] })
                });
            }
            if d < dp {
                let minc = m.extremal(Extremal::MinCard)?;
                e.that(
                    m.dual_pivot(sv)?.extremal(Extremal::MinCard)? == minc
                        && minc.family().iter().all(|y| !y.contains(v)),
                    || json!({ "dual_keeps_smallest": g.label(v) }),
                );
            }
        }
    }
    Ok(e.done())
}

fn random_word(rng: &mut impl rand::Rng, g: &GroundSet) -> FlipWord {
    let len = rng.random_range(1..=8);
    let tokens = (0..len)
        .map(|_| FlipToken {
            element: g.label(rng.random_range(0..g.len())).to_string(),
            op: OPS[rng.random_range(0..3)],
        })
        .collect();
    FlipWord { tokens }
}

fn word_round_trip(word: &FlipWord, systems: &[SetSystem]) -> Result<Option<Value>> {
    let mut e = Expect::new();
    for m in systems {
        let a = reduce_word(m.ground(), word)?;
        let folded = word.apply(m)?;
        e.that(
            folded == apply_assignment(m, &a)?,
            || json!({ "fold_vs_assignment": sys_json(m) }),
        )
        .that(
            folded == NormalForm::from_assignment(&a).apply(m)?,
            || json!({ "fold_vs_normal_form": sys_json(m) }),
        )
        .that(
            word.inverse().apply(&folded)? == *m,
            || json!({ "inverse_word": sys_json(m) }),
        );
    }
    Ok(e.done())
}

fn flip_group(r: &mut Run) {
    let g3 = GroundSet::letters(3).expect("letters");
    let all3: Vec<SetSystem> = (0u64..256)
        .map(|mask| family_from_bits(&g3, mask))
        .collect();
    for m in &all3 {
        let outcome = set_identities(m);
        r.case(|| json!({ "identities": sys_json(m) }), outcome);
    }

    let proper3: Vec<SetSystem> = all3.into_iter().filter(|m| m.is_proper()).collect();
    for a in FlipAssignment::all(3) {
        let outcome = (|| {
            let nf = NormalForm::from_assignment(&a);
            let mut e = Expect::new();
            e.that(nf.x.is_subset_of(nf.y) && nf.to_assignment(3) == a, || {
                json!("normal form round trip")
            });
            for m in &proper3 {
                e.that(
                    apply_assignment(m, &a)? == nf.apply(m)?,
                    || json!({ "system": sys_json(m) }),
                );
            }
            Ok(e.done())
        })();
        r.case(|| json!({ "assignment": a.to_json(&g3) }), outcome);
    }

    let g4 = GroundSet::letters(4).expect("letters");
    for i in 0..r.samples {
        let mut rng = gen::rng(r.seed, i as u64);
        let (word, outcome) = if i % 2 == 0 {
            let word = random_word(&mut rng, &g3);
            let outcome = word_round_trip(&word, &proper3);
            (word, outcome)
        } else {
            let word = random_word(&mut rng, &g4);
            let systems: Result<Vec<SetSystem>> = (0..4)
                .map(|k| gen::random_set_system(4, r.seed, (i as u64) << 8 | k))
                .collect();
            let outcome = systems.and_then(|s| word_round_trip(&word, &s));
            (word, outcome)
        };
        r.case(|| json!({ "word": word.to_string() }), outcome);
    }
}
