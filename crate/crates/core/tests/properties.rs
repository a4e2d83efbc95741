use deltaflip_core::checks::{
    check_exchange, check_isodistant, distance_minor_check, is_delta_matroid, Method,
};
use deltaflip_core::flip::{
    apply_assignment, reduce_word, FlipOp, FlipToken, FlipWord, NormalForm,
};
use deltaflip_core::setsys::parity;
use deltaflip_core::{Extremal, FMatrix, Field, Graph, GroundSet, SetSystem, Subset, Symmetry};
use proptest::prelude::*;

fn set_system(max_n: usize) -> impl Strategy<Value = SetSystem> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), 1 << n).prop_map(move |bits| {
            let g = GroundSet::letters(n).unwrap();
            let fam = (0..1u32 << n)
                .filter(|&s| bits[s as usize])
                .map(Subset)
                .collect();
            SetSystem::from_family(g, fam).unwrap()
        })
    })
}

fn proper_system(max_n: usize) -> impl Strategy<Value = SetSystem> {
    set_system(max_n).prop_filter("proper", |m| m.is_proper())
}

fn with_subset(m: SetSystem) -> impl Strategy<Value = (SetSystem, Subset)> {
    let n = m.n();
    (Just(m), 0..1u32 << n).prop_map(|(m, x)| (m, Subset(x)))
}

fn matrix(field: u64, max_n: usize, symmetry: Symmetry) -> impl Strategy<Value = FMatrix> {
    let f = Field::new(field).unwrap();
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(0..f.p(), n * n).prop_map(move |raw| {
            let mut a = FMatrix::zeros(f, GroundSet::letters(n).unwrap());
            for i in 0..n {
                for j in i..n {
                    let e = raw[i * n + j];
                    match symmetry {
                        Symmetry::Symmetric => {
                            a.set(i, j, e);
                            a.set(j, i, e);
                        }
                        Symmetry::Skew if i != j => {
                            a.set(i, j, e);
                            a.set(j, i, f.neg(e));
                        }
                        Symmetry::Skew => {}
                    }
                }
            }
            a
        })
    })
}

fn any_matrix() -> impl Strategy<Value = FMatrix> {
    prop_oneof![
        matrix(2, 6, Symmetry::Symmetric),
        matrix(2, 6, Symmetry::Skew),
        matrix(3, 5, Symmetry::Symmetric),
        matrix(5, 4, Symmetry::Skew),
        matrix(7, 4, Symmetry::Symmetric),
    ]
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    matrix(2, max_n, Symmetry::Symmetric).prop_map(|a| Graph::from_matrix(a).unwrap())
}

fn word_over(n: usize) -> impl Strategy<Value = FlipWord> {
    let op = prop_oneof![Just(FlipOp::Pivot), Just(FlipOp::Loop), Just(FlipOp::Dual)];
    proptest::collection::vec((0..n, op), 0..10).prop_map(|toks| FlipWord {
        tokens: toks
            .into_iter()
            .map(|(v, op)| FlipToken {
                element: char::from(b'a' + v as u8).to_string(),
                op,
            })
            .collect(),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn flips_are_involutions((m, x) in set_system(5).prop_flat_map(with_subset)) {
        prop_assert_eq!(m.pivot(x).unwrap().pivot(x).unwrap(), m.clone());
        prop_assert_eq!(m.loop_complement(x).unwrap().loop_complement(x).unwrap(), m.clone());
        prop_assert_eq!(m.dual_pivot(x).unwrap().dual_pivot(x).unwrap(), m.clone());
        prop_assert_eq!(m.pivot(x).unwrap().is_proper(), m.is_proper());
        prop_assert_eq!(m.loop_complement(x).unwrap().is_proper(), m.is_proper());
    }

    #[test]
    fn dual_pivot_is_conjugated_pivot((m, x) in set_system(5).prop_flat_map(with_subset)) {
        let d = m.dual_pivot(x).unwrap();
        prop_assert_eq!(&d, &m.loop_complement(x).unwrap().pivot(x).unwrap().loop_complement(x).unwrap());
        prop_assert_eq!(&d, &m.pivot(x).unwrap().loop_complement(x).unwrap().pivot(x).unwrap());
        prop_assert_eq!(&d, &parity::dual_pivot(&m, x).unwrap());
        prop_assert_eq!(m.loop_complement(x).unwrap(), parity::loop_complement(&m, x).unwrap());
    }

    #[test]
    fn flips_on_disjoint_sets_commute(
        (m, x, y) in set_system(5).prop_flat_map(|m| {
            let n = m.n();
            (Just(m), 0..1u32 << n, 0..1u32 << n)
        })
    ) {
        let (x, y) = (Subset(x), Subset(y).minus(Subset(x)));
        type Op = fn(&SetSystem, Subset) -> deltaflip_core::Result<SetSystem>;
        let ops: [Op; 3] = [SetSystem::pivot, SetSystem::loop_complement, SetSystem::dual_pivot];
        for a in ops {
            for b in ops {
                let ab = b(&a(&m, x).unwrap(), y).unwrap();
                let ba = a(&b(&m, y).unwrap(), x).unwrap();
                prop_assert_eq!(ab, ba);
            }
        }
    }

    #[test]
    fn extremal_members_survive_flips((m, x) in proper_system(5).prop_flat_map(with_subset)) {
        prop_assert_eq!(
            m.extremal(Extremal::Min).unwrap(),
            m.loop_complement(x).unwrap().extremal(Extremal::Min).unwrap()
        );
        prop_assert_eq!(
            m.extremal(Extremal::Max).unwrap(),
            m.dual_pivot(x).unwrap().extremal(Extremal::Max).unwrap()
        );
        let full = m.ground().full();
        prop_assert_eq!(
            m.extremal(Extremal::Max).unwrap(),
            m.pivot(full).unwrap().extremal(Extremal::Min).unwrap().pivot(full).unwrap()
        );
    }

    #[test]
    fn distance_under_pivot(
        (m, x, z) in proper_system(5).prop_flat_map(|m| {
            let n = m.n();
            (Just(m), 0..1u32 << n, 0..1u32 << n)
        })
    ) {
        let (x, z) = (Subset(x), Subset(z));
        prop_assert_eq!(m.pivot(z).unwrap().distance(x).unwrap(), m.distance(x.sym_diff(z)).unwrap());
        prop_assert_eq!(m.distance(x).unwrap(), m.pivot(x).unwrap().distance(Subset::EMPTY).unwrap());
    }

    #[test]
    fn deletion_absorbs_loop_complement(m in set_system(5)) {
        for v in 0..m.n() {
            let sv = Subset::singleton(v);
            prop_assert_eq!(m.loop_complement(sv).unwrap().delete(sv).unwrap(), m.delete(sv).unwrap());
        }
    }

    #[test]
    fn delta_matroid_oracles_agree(m in proper_system(5)) {
        let ex = check_exchange(&m).unwrap();
        let iso = check_isodistant(&m).unwrap();
        prop_assert_eq!(ex.holds, iso.holds);
        prop_assert_eq!(distance_minor_check(&m).unwrap().holds, iso.holds);
        prop_assert!(is_delta_matroid(&m, Method::Both).is_ok());
        for v in [ex, iso] {
            if let Some(w) = v.witness {
                prop_assert!(w.revalidate(&m));
            }
        }
    }

    #[test]
    fn reduced_words_act_like_their_fold(
        (m, word) in proper_system(4)
            .prop_filter("nonempty ground set", |m| m.n() > 0)
            .prop_flat_map(|m| {
                let n = m.n();
                (Just(m), word_over(n))
            })
    ) {
        let a = reduce_word(m.ground(), &word).unwrap();
        let folded = word.apply(&m).unwrap();
        prop_assert_eq!(&folded, &apply_assignment(&m, &a).unwrap());
        let nf = NormalForm::from_assignment(&a);
        prop_assert!(nf.x.is_subset_of(nf.y));
        prop_assert_eq!(&folded, &nf.apply(&m).unwrap());
        prop_assert_eq!(word.inverse().apply(&folded).unwrap(), m);
    }

    #[test]
    fn matrix_support_matches_nullity(a in any_matrix()) {
        let symmetry = if a.is_symmetric() { Symmetry::Symmetric } else { Symmetry::Skew };
        let m = a.support_deltamatroid(symmetry).unwrap();
        prop_assert!(check_isodistant(&m).unwrap().holds);
        for x in a.labels().subsets() {
            prop_assert_eq!(m.distance(x).unwrap(), a.principal_submatrix(x).unwrap().nullity());
        }
        prop_assert_eq!(m.extremal(Extremal::Max).unwrap(), a.column_matroid());
    }

    #[test]
    fn pivot_transform_pivots_the_support(a in any_matrix()) {
        let m = a.nonsingular_principal_family();
        for &x in m.family() {
            let b = a.ppt(x).unwrap();
            prop_assert_eq!(b.nonsingular_principal_family(), m.pivot(x).unwrap());
            prop_assert_eq!(b.ppt(x).unwrap(), a.clone());
            prop_assert_eq!(a.schur_complement(x).unwrap().nullity(), a.nullity());
        }
    }

    #[test]
    fn kernel_is_annihilated(a in any_matrix()) {
        let (rank, nullity, k) = a.rank_nullity_kernel();
        prop_assert_eq!(rank + nullity, a.n());
        prop_assert_eq!(k.dim(), nullity);
        let f = a.field();
        for v in &k.vectors {
            for i in 0..a.n() {
                let s = (0..a.n()).fold(0, |acc, j| f.add(acc, f.mul(a.get(i, j), v[j])));
                prop_assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn graph_supports_follow_graph_operations((g, x) in graph(6).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), 0..1u32 << n)
    })) {
        let s = g.support();
        let x = Subset(x);
        prop_assert_eq!(g.loop_complement(x).unwrap().support(), s.loop_complement(x).unwrap());
        for u in 0..g.n() {
            let su = Subset::singleton(u);
            let loc = g.local_complement(u, deltaflip_core::LocalMode::Auto).unwrap().support();
            if g.has_loop(u) {
                prop_assert_eq!(loc, s.pivot(su).unwrap());
            } else {
                prop_assert_eq!(loc, s.dual_pivot(su).unwrap());
            }
        }
        prop_assert_eq!(Graph::reconstruct(&s).unwrap(), g);
    }

    #[test]
    fn json_round_trips(m in set_system(4), a in any_matrix(), g in graph(5)) {
        let m2: SetSystem = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        prop_assert_eq!(m2, m);
        let a2: FMatrix = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert_eq!(a2, a);
        let g2: Graph = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        prop_assert_eq!(g2, g);
    }
}
