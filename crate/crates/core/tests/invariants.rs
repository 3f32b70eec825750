//! Property tests over random small systems.

use extremal_sets::format::{from_json, from_text, to_json, to_text};
use extremal_sets::graph::InclusionGraph;
use extremal_sets::oracle::{sh_by_definition, st_by_definition};
use extremal_sets::sets::IntervalQuery;
use extremal_sets::shattering::{
    shattered_sets, strong_witnesses, strongly_shattered_sets, ShatterProfile,
};
use extremal_sets::{SetMask, SetSystem};
use proptest::prelude::*;

fn system(max_n: usize) -> impl Strategy<Value = SetSystem> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0u64..(1 << n), 1..=(1usize << n).min(40))
            .prop_map(move |bits| SetSystem::from_masks(n, bits.into_iter().map(SetMask::from_bits)).unwrap())
    })
}

fn system_and_mask(max_n: usize) -> impl Strategy<Value = (SetSystem, SetMask)> {
    system(max_n).prop_flat_map(|f| {
        let n = f.n();
        (Just(f), (0u64..(1 << n)).prop_map(SetMask::from_bits))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sauer_and_reverse_sauer(f in system(7)) {
        let p = ShatterProfile::compute(&f).unwrap();
        prop_assert!(p.st.len() <= f.len() && f.len() <= p.sh.len());
        prop_assert!(p.st.iter().all(|s| p.sh.contains(s)));
        prop_assert!(p.sh.is_down_closed() && p.st.is_down_closed());
    }

    #[test]
    fn fast_paths_match_definitions(f in system(6)) {
        prop_assert_eq!(shattered_sets(&f).unwrap().sets, sh_by_definition(&f).unwrap().sets);
        prop_assert_eq!(strongly_shattered_sets(&f).unwrap().sets, st_by_definition(&f).unwrap().sets);
    }

    #[test]
    fn extremality_equivalence(f in system(6)) {
        let p = ShatterProfile::compute(&f).unwrap();
        let r = p.report().unwrap();
        prop_assert_eq!(r.extremal, p.sh.len() == f.len());
        prop_assert_eq!(r.extremal, p.st.len() == f.len());
    }

    #[test]
    fn flip_is_an_involution((f, mask) in system_and_mask(7)) {
        let g = f.flip_by(mask).unwrap();
        prop_assert_eq!(g.len(), f.len());
        prop_assert_eq!(g.flip_by(mask).unwrap(), f);
    }

    #[test]
    fn flip_preserves_shattering((f, mask) in system_and_mask(6)) {
        let g = f.flip_by(mask).unwrap();
        prop_assert_eq!(shattered_sets(&f).unwrap().sets, shattered_sets(&g).unwrap().sets);
        prop_assert_eq!(strongly_shattered_sets(&f).unwrap().sets, strongly_shattered_sets(&g).unwrap().sets);
    }

    #[test]
    fn flip_preserves_graph_distances((f, mask) in system_and_mask(5)) {
        let g = f.flip_by(mask).unwrap();
        let (gf, gg) = (InclusionGraph::build(&f), InclusionGraph::build(&g));
        prop_assert_eq!(gf.edges().len(), gg.edges().len());
        for a in f.iter() {
            for b in f.iter() {
                prop_assert_eq!(
                    gf.distance(a, b).unwrap(),
                    gg.distance(a.sym_diff(mask), b.sym_diff(mask)).unwrap()
                );
            }
        }
    }

    #[test]
    fn subdivision_counts(f in system(7), pick in 0usize..7) {
        let i = 1 + pick % f.n();
        let (without, with) = f.standard_subdivision(i).unwrap();
        prop_assert_eq!(without.len() + with.len(), f.len());
        let both = without.iter().filter(|m| with.contains(*m)).count();
        let union = without.len() + with.len() - both;
        // |Sh(F)| >= |Sh(F0 ∪ F1)| + |Sh(F0 ∩ F1)| when both halves are nonempty
        if both > 0 {
            let u = SetSystem::from_masks(f.n(), without.iter().chain(with.iter())).unwrap();
            let c = SetSystem::from_masks(f.n(), without.iter().filter(|m| with.contains(*m))).unwrap();
            prop_assert_eq!(u.len(), union);
            let sh = shattered_sets(&f).unwrap().len();
            prop_assert!(sh >= shattered_sets(&u).unwrap().len() + shattered_sets(&c).unwrap().len());
        }
    }

    #[test]
    fn interval_restriction_is_idempotent((f, a) in system_and_mask(7), b in 0u64..128) {
        let upper = a.union(SetMask::from_bits(b & SetMask::full(f.n()).bits()));
        let q = IntervalQuery::new(a, upper).unwrap();
        let once = f.interval_restrict(q);
        prop_assert!(once.is_subfamily_of(&f));
        prop_assert_eq!(once.interval_restrict(q), once.clone());
        prop_assert!(once.iter().all(|m| a.is_subset(m) && m.is_subset(upper)));
    }

    #[test]
    fn text_and_json_round_trip(f in system(8)) {
        prop_assert_eq!(from_text(&to_text(&f)).unwrap(), f.clone());
        prop_assert_eq!(from_json(&to_json(&f)).unwrap(), f);
    }

    #[test]
    fn cube_copies_are_strong_witnesses(f in system(5), s in 0u64..32) {
        let s = SetMask::from_bits(s & SetMask::full(f.n()).bits());
        let copies = InclusionGraph::build(&f).find_cube_copies(s).unwrap();
        let witnesses = strong_witnesses(&f, s).unwrap();
        prop_assert_eq!(copies.len(), witnesses.len());
        for c in &copies {
            prop_assert!(c.vertices().iter().all(|v| f.contains(*v)));
        }
    }

    #[test]
    fn two_copies_extend_a_shattered_set(f in system(5), s in 0u64..32) {
        let s = SetMask::from_bits(s & SetMask::full(f.n()).bits());
        let witnesses = strong_witnesses(&f, s).unwrap();
        if let [w1, w2, ..] = witnesses.as_slice() {
            let sh = shattered_sets(&f).unwrap();
            let diff = w1.offset.sym_diff(w2.offset);
            prop_assert!(diff.elements().any(|a| sh.contains(s.with(a))));
        }
    }
}
