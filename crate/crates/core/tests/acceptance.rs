//! Acceptance suite: one test per exit criterion, each printing a single
//! `[PASS]`/`[FAIL]` line. Run with `cargo test --test acceptance`.

use std::io::Write;
use std::time::{Duration, Instant};

use extremal_sets::graph::{check_vc1_characterization, InclusionGraph};
use extremal_sets::oracle::{
    all_systems, enumerate_extremal, random_build_prefixes, sample_systems, sh_by_definition,
    st_by_definition, verify_build_invariants, verify_build_invariants_on, verify_general_steps,
    verify_inequalities, verify_ladders, verify_ladders_on, verify_propositions_on, verify_theorem1,
    verify_theorem1_with, verify_theorem2, verify_theorem2_on, Params, VerificationReport,
};
use extremal_sets::shattering::{
    is_extremal, shattered_sets, strong_witnesses, strongly_shattered_sets, vc_dimension,
};
use extremal_sets::{SetMask, SetSystem};

const SEED: u64 = 20_240_601;

// written to the stdout handle rather than `println!` so the line shows up
// even when the harness captures test output
fn verdict(id: &str, what: &str, ok: bool, detail: &str) {
    let line = format!("[{}] {id} {what} {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
}

fn expect_pass(report: &VerificationReport) {
    assert!(report.passed, "{}", report.summary());
}

fn sys(n: usize, sets: &[&[usize]]) -> SetSystem {
    SetSystem::from_lists(n, sets.iter().map(|s| s.iter().copied())).unwrap()
}

fn m(elems: &[usize]) -> SetMask {
    SetMask::from_elements(63, elems.iter().copied()).unwrap()
}

#[test]
fn c01_theorem1_exhaustive() {
    let started = Instant::now();
    for n in 1..=3 {
        let report = verify_theorem1(n).unwrap();
        expect_pass(&report);
    }
    let small = started.elapsed();
    let started = Instant::now();
    let report = verify_theorem1(4).unwrap();
    let big = started.elapsed();
    let census = report.find("census_equals_reachable").unwrap().checked;
    let ok = report.passed && small < Duration::from_secs(1) && big < Duration::from_secs(300);
    verdict(
        "C1",
        "theorem 1 census == reachable",
        ok,
        &format!("(n<=3 in {small:?}, n=4: {census} systems in {big:?})"),
    );
    expect_pass(&report);
    assert!(small < Duration::from_secs(1), "n <= 3 took {small:?}");
    assert!(big < Duration::from_secs(300), "n = 4 took {big:?}");
}

#[test]
fn c02_theorem2_removal_and_peeling() {
    let mut checked = 0;
    let mut ok = true;
    for n in 1..=4 {
        let report = verify_theorem2(n, 0, SEED).unwrap();
        checked += report.checked;
        ok &= report.passed;
        expect_pass(&report);
    }
    let random = verify_theorem2(10, 500, SEED).unwrap();
    ok &= random.passed;
    verdict(
        "C2",
        "theorem 2 removable set + peel",
        ok,
        &format!("({checked} census systems, {} random builds at n=10)", random.checked),
    );
    expect_pass(&random);
    assert_eq!(random.checked, 500);
}

#[test]
fn c03_sauer_and_reverse_sauer() {
    let started = Instant::now();
    let mut ok = true;
    for n in [6, 8, 10, 12] {
        let report = verify_inequalities(n, 2000, SEED + n as u64).unwrap();
        ok &= report.passed;
        expect_pass(&report);
        assert_eq!(report.checked, 2000);
    }
    let elapsed = started.elapsed();
    ok &= elapsed < Duration::from_secs(60);
    verdict("C3", "|Sh| >= |F| >= |st|, st ⊆ Sh", ok, &format!("(8000 systems in {elapsed:?})"));
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
}

#[test]
fn c04_build_prefixes_follow_closed_formula() {
    let report = verify_build_invariants(1000, 12, 30, SEED).unwrap();
    verdict(
        "C4",
        "random build prefixes extremal, VC<=2, st == closed formula",
        report.passed,
        &format!("({} build prefixes)", report.checked),
    );
    expect_pass(&report);
}

#[test]
fn c05_extremal_implies_isometric() {
    let mut census = Vec::new();
    for n in 1..=4 {
        census.extend(enumerate_extremal(n, false, usize::MAX).unwrap());
    }
    let failures = census
        .iter()
        .filter(|f| !InclusionGraph::build(f).is_isometrically_embedded())
        .count();
    let diagonal = InclusionGraph::build(&sys(2, &[&[], &[1, 2]])).isometry();
    let witness = diagonal.violation.map(|v| (v.first, v.second));
    let ok = failures == 0 && !diagonal.isometric && witness == Some((m(&[]), m(&[1, 2])));
    verdict(
        "C5",
        "extremal => isometric; {∅,{1,2}} rejected at (∅,{1,2})",
        ok,
        &format!("({} extremal systems)", census.len()),
    );
    assert_eq!(failures, 0);
    assert_eq!(witness, Some((m(&[]), m(&[1, 2]))));
}

#[test]
fn c06_vc1_characterization_biconditional() {
    let systems = all_systems(4).unwrap();
    let mismatches = systems
        .iter()
        .filter(|f| {
            let by_graph = check_vc1_characterization(f).unwrap();
            let sh = sh_by_definition(f).unwrap();
            let by_definition = sh.len() == f.len() && sh.max_size() <= 1;
            by_graph != by_definition
        })
        .count();
    verdict(
        "C6",
        "tree with distinct labels <=> extremal and VC<=1",
        mismatches == 0,
        &format!("({} systems over [4])", systems.len()),
    );
    assert_eq!(systems.len(), 65535);
    assert_eq!(mismatches, 0);
}

#[test]
fn c07_fast_path_matches_definitions() {
    let mut sh_bad = 0;
    let mut st_bad = 0;
    for k in 0..1000usize {
        let n = 1 + k % 10;
        let f = &sample_systems(n, 1, SEED ^ k as u64).unwrap()[0];
        if shattered_sets(f).unwrap().sets != sh_by_definition(f).unwrap().sets {
            sh_bad += 1;
        }
        let n = 1 + k % 8;
        let g = &sample_systems(n, 1, SEED ^ (k as u64 + 7919)).unwrap()[0];
        if strongly_shattered_sets(g).unwrap().sets != st_by_definition(g).unwrap().sets {
            st_bad += 1;
        }
    }
    verdict(
        "C7",
        "Sh/st fast path == definitions",
        sh_bad == 0 && st_bad == 0,
        &format!("(1000 systems each; {sh_bad} Sh / {st_bad} st mismatches)"),
    );
    assert_eq!((sh_bad, st_bad), (0, 0));
}

#[test]
fn c08_maximal_sets_have_unique_witness() {
    let mut checked = 0;
    let mut failures = 0;
    for n in 1..=4 {
        for f in enumerate_extremal(n, false, usize::MAX).unwrap() {
            for s in shattered_sets(&f).unwrap().maximal() {
                checked += 1;
                if strong_witnesses(&f, s).unwrap().len() != 1 {
                    failures += 1;
                }
            }
        }
    }
    verdict(
        "C8",
        "maximal S in Sh has exactly one strong witness",
        failures == 0,
        &format!("({checked} maximal sets)"),
    );
    assert_eq!(failures, 0);
}

#[test]
fn c09_ladders_between_same_label_edges() {
    let report = verify_ladders(200, SEED).unwrap();
    verdict("C9", "4-cycle ladders with distinct side labels", report.passed, "(200 random builds)");
    expect_pass(&report);
}

#[test]
fn c10_negative_controls() {
    // a built family with one member deleted: {∅,{1},{2},{1,2}} minus {1}
    // stays extremal, so delete from the two-square family instead
    let two_squares = sys(3, &[&[], &[1], &[2], &[3], &[1, 3], &[2, 3]]);
    assert!(is_extremal(&two_squares).unwrap().extremal);
    let broken = two_squares.without_member(m(&[3])).unwrap();
    assert!(!is_extremal(&broken).unwrap().extremal);

    let mut results = Vec::new();

    let mut census = enumerate_extremal(3, true, 2).unwrap();
    census.push(broken.clone());
    census.sort();
    let t1 = verify_theorem1_with(3, &census).unwrap();
    results.push(("theorem1 (extra non-extremal family)", !t1.passed));
    let mut shrunk = enumerate_extremal(3, true, 2).unwrap();
    shrunk.retain(|f| f != &two_squares);
    let t1b = verify_theorem1_with(3, &shrunk).unwrap();
    results.push(("theorem1 (missing family)", !t1b.passed));

    let t2 = verify_theorem2_on(&[two_squares.clone(), broken.clone()], Params::default());
    results.push(("theorem2", !t2.passed));

    let props = verify_propositions_on(std::slice::from_ref(&two_squares), &[two_squares.clone(), broken.clone()], Params::default());
    let live = ["extremal_sh_equals_st", "extremal_is_isometric"]
        .iter()
        .any(|c| props.find(c).map(|r| !r.passed).unwrap_or(false));
    results.push(("propositions", live));

    let mut builds = random_build_prefixes(5, 6, 10, SEED).unwrap();
    let (f, formula) = builds.iter().find(|(f, _)| f.len() >= 4).cloned().unwrap();
    let victim = *f.members().last().unwrap();
    builds.push((f.without_member(victim).unwrap(), formula));
    let inv = verify_build_invariants_on(&builds, Params::default());
    results.push(("build invariants", !inv.passed));

    let ladders = verify_ladders_on(&[two_squares.clone(), broken.clone()], Params::default());
    results.push(("ladders", !ladders.passed));

    let all_live = results.iter().all(|(_, live)| *live);
    let names: Vec<String> = results
        .iter()
        .map(|(name, live)| format!("{name}:{}", if *live { "caught" } else { "missed" }))
        .collect();
    verdict("C10", "every verifier rejects its mutant", all_live, &format!("({})", names.join(", ")));
    assert!(all_live, "{names:?}");
}

#[test]
fn c11_general_step() {
    let mut ok = true;
    for n in 1..=4 {
        let report = verify_general_steps(n).unwrap();
        ok &= report.passed;
        expect_pass(&report);
    }
    // random t = 3 runs beyond the exhaustive range
    for seed in 0..20 {
        let (_, f) = extremal_sets::builder::random_general_build(5, 20, 3, SEED + seed).unwrap();
        let extremal = is_extremal(&f).unwrap().extremal && vc_dimension(&f).unwrap() <= 3;
        ok &= extremal;
        assert!(extremal, "{f}");
    }
    verdict(
        "C11",
        "Step(S): t=2 reach == A/B reach (n<=4); t=3 outputs extremal",
        ok,
        "",
    );
}
