use extremal_sets::builder::{
    peel, random_build, reconstruct_script, removable_set, BuildScript, BuildState, BuildStep, Reconstruction,
};
use extremal_sets::graph::InclusionGraph;
use extremal_sets::oracle::enumerate_extremal;
use extremal_sets::shattering::is_extremal;
use extremal_sets::{SetMask, SetSystem};

fn m(elems: &[usize]) -> SetMask {
    SetMask::from_elements(63, elems.iter().copied()).unwrap()
}

#[test]
fn reconstruction_replays_every_census_member() {
    for n in 1..=4 {
        for f in enumerate_extremal(n, true, 2).unwrap() {
            let script = match reconstruct_script(&f).unwrap() {
                Reconstruction::Script(s) => s,
                other => panic!("{f}: {other:?}"),
            };
            assert_eq!(script.steps.len(), f.len() - 1);
            assert_eq!(script.replay().unwrap(), f);
            assert_eq!(BuildScript::parse(&script.to_json()).unwrap(), script);
            assert_eq!(BuildScript::parse(&script.to_text()).unwrap(), script);
        }
    }
}

#[test]
fn new_vertex_has_degree_one_or_two() {
    for seed in 0..40 {
        let (script, _) = random_build(5, 15, seed).unwrap();
        let states = script.replay_states().unwrap();
        for (state, step) in states.iter().skip(1).zip(&script.steps) {
            let graph = InclusionGraph::build(state.current());
            let expected = match step {
                BuildStep::A { .. } => 1,
                BuildStep::B { .. } => 2,
                BuildStep::General { .. } => unreachable!(),
            };
            assert_eq!(graph.degree(step.new_set()).unwrap(), expected, "{step:?} in {}", state.current());
        }
    }
}

#[test]
fn cache_tracks_recomputation_along_random_builds() {
    for seed in 0..30 {
        let (script, f) = random_build(7, 20, seed).unwrap();
        for state in script.replay_states().unwrap() {
            assert!(state.verify_cache().unwrap());
        }
        assert!(is_extremal(&f).unwrap().extremal);
    }
}

#[test]
fn invalid_steps_are_rejected() {
    let state = BuildState::new(3).unwrap();
    let twice = state.apply_step(&BuildStep::A { alpha: 1, w: SetMask::EMPTY }).unwrap();
    assert!(twice.apply_step(&BuildStep::A { alpha: 1, w: SetMask::EMPTY }).is_err());
    // P = {2} and Q = {1} are not both present yet
    assert!(twice
        .apply_step(&BuildStep::B { alpha: 1, beta: 2, w: SetMask::EMPTY })
        .is_err());
}

#[test]
fn peel_leaves_extremal_systems_down_to_one_member() {
    for f in enumerate_extremal(3, false, 2).unwrap() {
        let mut current = f.clone();
        for set in peel(&f).unwrap() {
            current = current.without_member(set).unwrap();
            assert!(is_extremal(&current).unwrap().extremal);
        }
        assert_eq!(current.len(), 1);
    }
}

#[test]
fn removable_set_of_the_figure_family() {
    let f = SetSystem::from_lists(3, vec![vec![], vec![1], vec![2], vec![3], vec![2, 3]]).unwrap();
    assert_eq!(removable_set(&f, None).unwrap(), m(&[2, 3]));
    let g = SetSystem::from_lists(2, vec![vec![], vec![1, 2]]).unwrap();
    assert!(removable_set(&g, None).is_err());
}

#[test]
fn random_build_is_deterministic() {
    assert_eq!(random_build(8, 25, 99).unwrap(), random_build(8, 25, 99).unwrap());
}
