//! Brute-force reference computations and desk-scale verification sweeps.
//!
//! The `*_by_definition` functions evaluate the definitions literally with
//! no pruning and share no code with [`crate::shattering`]. The `verify_*`
//! functions return a [`VerificationReport`] carrying the parameters needed
//! to replay any failure.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::builder::{peel, random_build, reconstruct_script, removable_set, BuildState, Reconstruction};
use crate::error::{Error, Result};
use crate::graph::{check_vc1_characterization, InclusionGraph};
use crate::sets::{SetMask, SetSystem};
use crate::shattering::{strong_witnesses, ShatterFamily, ShatterKind, ShatterProfile};

pub const SH_ORACLE_LIMIT: usize = 20;
pub const ST_ORACLE_LIMIT: usize = 16;
pub const EXHAUSTIVE_LIMIT: usize = 4;

fn require_n(system: &SetSystem, limit: usize) -> Result<()> {
    if system.n() > limit {
        return Err(Error::UniverseTooLargeFor {
            n: system.n(),
            limit,
        });
    }
    if system.is_empty() {
        return Err(Error::EmptySystem);
    }
    Ok(())
}

/// Scans every `S ⊆ [n]` and counts distinct traces.
pub fn sh_by_definition(system: &SetSystem) -> Result<ShatterFamily> {
    require_n(system, SH_ORACLE_LIMIT)?;
    let sets = SetMask::full(system.n())
        .subsets()
        .filter(|&s| {
            let traces: HashSet<SetMask> = system.iter().map(|f| f.intersection(s)).collect();
            traces.len() == 1usize << s.len()
        })
        .collect();
    Ok(ShatterFamily::new(ShatterKind::Sh, system.n(), sets))
}

/// Tries every `S` and every offset `I ⊆ [n] \ S`.
pub fn st_by_definition(system: &SetSystem) -> Result<ShatterFamily> {
    require_n(system, ST_ORACLE_LIMIT)?;
    let members: HashSet<SetMask> = system.iter().collect();
    let full = SetMask::full(system.n());
    let sets = full
        .subsets()
        .filter(|&s| {
            full.difference(s)
                .subsets()
                .any(|i| s.subsets().all(|h| members.contains(&h.union(i))))
        })
        .collect();
    Ok(ShatterFamily::new(ShatterKind::St, system.n(), sets))
}

pub fn vc_by_definition(system: &SetSystem) -> Result<usize> {
    Ok(sh_by_definition(system)?.max_size())
}

pub fn is_extremal_by_definition(system: &SetSystem) -> Result<bool> {
    Ok(sh_by_definition(system)?.len() == system.len())
}

fn check_exhaustive(n: usize) -> Result<()> {
    if n == 0 || n > EXHAUSTIVE_LIMIT {
        Err(Error::UniverseTooLargeFor {
            n,
            limit: EXHAUSTIVE_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// Decodes bit `k` of `code` as "subset `k` of `[n]` is a member".
fn system_from_code(n: usize, code: u64) -> SetSystem {
    let members = (0..1u64 << n)
        .filter(|k| code & (1 << k) != 0)
        .map(SetMask::from_bits)
        .collect();
    SetSystem::from_sorted_unchecked(n, members)
}

/// Every nonempty system over `[n]`, `n <= 4`, in code order.
pub fn all_systems(n: usize) -> Result<Vec<SetSystem>> {
    check_exhaustive(n)?;
    let count = 1u64 << (1u64 << n);
    Ok((1..count).map(|c| system_from_code(n, c)).collect())
}

/// All nonempty extremal systems over `[n]` with VC dimension at most
/// `vc_cap`, optionally only those containing `∅`; canonical order.
pub fn enumerate_extremal(n: usize, require_empty: bool, vc_cap: usize) -> Result<Vec<SetSystem>> {
    check_exhaustive(n)?;
    let count = 1u64 << (1u64 << n);
    let mut found: Vec<SetSystem> = (1..count)
        .into_par_iter()
        .filter(|&code| !require_empty || code & 1 == 1)
        .map(|code| system_from_code(n, code))
        .filter_map(|f| {
            let profile = ShatterProfile::compute(&f).ok()?;
            let report = profile.report().ok()?;
            (report.extremal && profile.vc_dimension() <= vc_cap).then_some(f)
        })
        .collect();
    found.sort();
    Ok(found)
}

/// Every system reachable from `{∅}` by valid Step A / Step B moves.
pub fn reachable_families(n: usize) -> Result<BTreeSet<SetSystem>> {
    let start = BuildState::new(n)?;
    let mut seen: HashSet<SetSystem> = HashSet::from([start.current().clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(state) = queue.pop_front() {
        for step in state.enumerate_valid_steps(None) {
            let next = state.apply_step(&step)?;
            if seen.insert(next.current().clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Every system reachable with `Step(S)` moves, `|S| <= bound`.
pub fn reachable_general_families(n: usize, bound: usize) -> Result<BTreeSet<SetSystem>> {
    let start = BuildState::new(n)?;
    let mut seen: HashSet<SetSystem> = HashSet::from([start.current().clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(state) = queue.pop_front() {
        for step in state.enumerate_general_steps(bound)? {
            let next = state.apply_step_general(&step, bound)?;
            if seen.insert(next.current().clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

const DENSITIES: [f64; 3] = [0.1, 0.3, 0.5];

/// Each subset of `[n]` kept independently with probability `p`,
/// resampled until nonempty.
pub fn random_system<R: Rng>(n: usize, p: f64, rng: &mut R) -> SetSystem {
    loop {
        let members: Vec<SetMask> = SetMask::full(n)
            .subsets()
            .filter(|_| rng.random_bool(p))
            .collect();
        if !members.is_empty() {
            return SetSystem::from_sorted_unchecked(n, members);
        }
    }
}

/// `count` seeded systems over `[n]` with densities cycling 0.1, 0.3, 0.5.
pub fn sample_systems(n: usize, count: usize, seed: u64) -> Result<Vec<SetSystem>> {
    crate::sets::check_universe(n)?;
    if n > SH_ORACLE_LIMIT {
        return Err(Error::UniverseTooLargeFor {
            n,
            limit: SH_ORACLE_LIMIT,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|k| random_system(n, DENSITIES[k % DENSITIES.len()], &mut rng))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub system: SetSystem,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub params: Params,
    pub passed: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub duration_ms: u128,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub subclaims: Vec<VerificationReport>,
}

impl VerificationReport {
    fn leaf(claim: &str, params: Params, checked: usize, failure: Option<Counterexample>) -> Self {
        VerificationReport {
            claim: claim.to_string(),
            params,
            passed: failure.is_none(),
            checked,
            counterexample: failure,
            duration_ms: 0,
            subclaims: Vec::new(),
        }
    }

    fn group(claim: &str, params: Params, subclaims: Vec<VerificationReport>, started: Instant) -> Self {
        let counterexample = subclaims
            .iter()
            .find_map(|s| s.counterexample.clone());
        VerificationReport {
            claim: claim.to_string(),
            params,
            passed: subclaims.iter().all(|s| s.passed),
            checked: subclaims.iter().map(|s| s.checked).max().unwrap_or(0),
            counterexample,
            duration_ms: started.elapsed().as_millis(),
            subclaims,
        }
    }

    /// The named sub-claim, searched depth-first.
    pub fn find(&self, claim: &str) -> Option<&VerificationReport> {
        if self.claim == claim {
            return Some(self);
        }
        self.subclaims.iter().find_map(|s| s.find(claim))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Fixed-width table, one row per claim.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<40} {:>6} {:>9} {:>9}", "claim", "result", "checked", "ms");
        self.write_rows(&mut out, 0);
        out
    }

    fn write_rows(&self, out: &mut String, depth: usize) {
        let name = format!("{}{}", "  ".repeat(depth), self.claim);
        let verdict = if self.passed { "pass" } else { "FAIL" };
        let _ = writeln!(out, "{name:<40} {verdict:>6} {:>9} {:>9}", self.checked, self.duration_ms);
        if let Some(c) = &self.counterexample {
            if self.subclaims.is_empty() {
                let _ = writeln!(out, "{}  counterexample {}: {}", "  ".repeat(depth), c.system, c.detail);
            }
        }
        for s in &self.subclaims {
            s.write_rows(out, depth + 1);
        }
    }
}

type Check<'a> = (&'static str, &'a (dyn Fn(&SetSystem) -> std::result::Result<(), String> + Sync));

/// Runs each named check over every system in parallel; the first failing
/// system (by corpus index) becomes that claim's counterexample.
fn run_checks(corpus: &[SetSystem], checks: &[Check<'_>], params: &Params) -> Vec<VerificationReport> {
    let names: Vec<&str> = checks.iter().map(|(name, _)| *name).collect();
    run_checks_with(corpus, &names, params, |f| {
        checks.iter().map(|(_, check)| check(f).err()).collect()
    })
}

/// Like `run_checks`, but one call evaluates every claim for a system so
/// shared work is done once. `row` returns one outcome per name.
fn run_checks_with<R>(corpus: &[SetSystem], names: &[&str], params: &Params, row: R) -> Vec<VerificationReport>
where
    R: Fn(&SetSystem) -> Vec<Option<String>> + Sync + Send,
{
    let outcomes: Vec<Vec<Option<String>>> = corpus.par_iter().map(row).collect();
    names
        .iter()
        .enumerate()
        .map(|(k, name)| {
            let failure = outcomes.iter().zip(corpus).find_map(|(row, f)| {
                row[k].clone().map(|detail| Counterexample {
                    system: f.clone(),
                    detail,
                })
            });
            VerificationReport::leaf(name, params.clone(), corpus.len(), failure)
        })
        .collect()
}

fn profile_of(f: &SetSystem) -> std::result::Result<ShatterProfile, String> {
    ShatterProfile::compute(f).map_err(|e| e.to_string())
}

fn extremal_vc2(f: &SetSystem) -> std::result::Result<bool, String> {
    let p = profile_of(f)?;
    let report = p.report().map_err(|e| e.to_string())?;
    Ok(report.extremal && p.vc_dimension() <= 2)
}

/// Both inclusions between `census` and the Step A/B reachable systems.
pub fn verify_theorem1_with(n: usize, census: &[SetSystem]) -> Result<VerificationReport> {
    let started = Instant::now();
    let params = Params {
        n: Some(n),
        ..Params::default()
    };
    let reachable: Vec<SetSystem> = reachable_families(n)?.into_iter().collect();

    let buildable = |f: &SetSystem| -> std::result::Result<(), String> {
        match reconstruct_script(f).map_err(|e| e.to_string())? {
            Reconstruction::Script(script) => {
                let replayed = script.replay().map_err(|e| e.to_string())?;
                if &replayed == f {
                    Ok(())
                } else {
                    Err(format!("replay produced {replayed}"))
                }
            }
            other => Err(format!("not buildable: {other:?}")),
        }
    };
    let mut subclaims = run_checks(census, &[("extremal_vc2_is_buildable", &buildable)], &params);

    let in_class = |f: &SetSystem| -> std::result::Result<(), String> {
        if !f.contains(SetMask::EMPTY) {
            return Err("missing empty set".into());
        }
        if extremal_vc2(f)? {
            Ok(())
        } else {
            Err("reachable system is not extremal with VC <= 2".into())
        }
    };
    subclaims.extend(run_checks(&reachable, &[("buildable_is_extremal_vc2", &in_class)], &params));

    let census_set: BTreeSet<&SetSystem> = census.iter().collect();
    let reach_set: BTreeSet<&SetSystem> = reachable.iter().collect();
    let mismatch = census_set
        .symmetric_difference(&reach_set)
        .next()
        .map(|f| Counterexample {
            system: (*f).clone(),
            detail: if census_set.contains(f) {
                "in census, not reachable".into()
            } else {
                "reachable, not in census".into()
            },
        });
    subclaims.push(VerificationReport::leaf(
        "census_equals_reachable",
        params.clone(),
        census_set.len().max(reach_set.len()),
        mismatch,
    ));
    Ok(VerificationReport::group("theorem1", params, subclaims, started))
}

/// Extremal VC ≤ 2 systems containing `∅` are exactly the buildable ones.
pub fn verify_theorem1(n: usize) -> Result<VerificationReport> {
    let census = enumerate_extremal(n, true, 2)?;
    verify_theorem1_with(n, &census)
}

/// Removal and peeling checks on an explicit corpus of systems that are
/// claimed to be extremal with VC ≤ 2.
pub fn verify_theorem2_on(corpus: &[SetSystem], params: Params) -> VerificationReport {
    let started = Instant::now();
    let removal = |f: &SetSystem| -> std::result::Result<(), String> {
        if f.len() == 1 {
            return Ok(());
        }
        let removed = removable_set(f, None).map_err(|e| e.to_string())?;
        let rest = f.without_member(removed).map_err(|e| e.to_string())?;
        if extremal_vc2(&rest)? {
            Ok(())
        } else {
            Err(format!("removing {removed} breaks extremality"))
        }
    };
    let peeling = |f: &SetSystem| -> std::result::Result<(), String> {
        let order = peel(f).map_err(|e| e.to_string())?;
        if order.len() + 1 != f.len() {
            return Err(format!("peel removed {} of {} members", order.len(), f.len()));
        }
        let mut cur = f.clone();
        for r in order {
            cur = cur.without_member(r).map_err(|e| e.to_string())?;
            if !extremal_vc2(&cur)? {
                return Err(format!("after removing {r}: {cur} not extremal"));
            }
        }
        Ok(())
    };
    let subclaims = run_checks(
        corpus,
        &[("removable_set", &removal), ("peel_to_singleton", &peeling)],
        &params,
    );
    VerificationReport::group("theorem2", params, subclaims, started)
}

/// Seeded random builds at `n`: universe `n`, 1..=30 steps each.
pub fn random_builds(n: usize, count: usize, seed: u64) -> Result<Vec<SetSystem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let steps = rng.random_range(1..=30);
            let build_seed = rng.random();
            random_build(n, steps, build_seed).map(|(_, f)| f)
        })
        .collect()
}

/// Exhaustive census at `n <= 4` (all extremal VC ≤ 2 systems, with or
/// without `∅`) plus `random_samples` random builds at `n`.
pub fn verify_theorem2(n: usize, random_samples: usize, seed: u64) -> Result<VerificationReport> {
    let mut corpus = if n <= EXHAUSTIVE_LIMIT {
        enumerate_extremal(n, false, 2)?
    } else {
        Vec::new()
    };
    corpus.extend(random_builds(n, random_samples, seed)?);
    Ok(verify_theorem2_on(
        &corpus,
        Params {
            n: Some(n),
            samples: Some(random_samples),
            seed: Some(seed),
        },
    ))
}

/// `|Sh| >= |F| >= |st|` and `st ⊆ Sh` on any corpus.
pub fn inequality_checks(corpus: &[SetSystem], params: &Params) -> Vec<VerificationReport> {
    let names = ["sauer", "reverse_sauer", "st_subset_sh"];
    run_checks_with(corpus, &names, params, |f| {
        let p = match profile_of(f) {
            Ok(p) => p,
            Err(e) => return vec![Some(e); names.len()],
        };
        let sauer = (p.sh.len() < f.len()).then(|| format!("|Sh|={} < |F|={}", p.sh.len(), f.len()));
        let reverse = (p.st.len() > f.len()).then(|| format!("|st|={} > |F|={}", p.st.len(), f.len()));
        let subset = p
            .st
            .iter()
            .find(|s| !p.sh.contains(*s))
            .map(|s| format!("{s} in st but not in Sh"));
        vec![sauer, reverse, subset]
    })
}

pub fn verify_inequalities(n: usize, samples: usize, seed: u64) -> Result<VerificationReport> {
    let started = Instant::now();
    let params = Params {
        n: Some(n),
        samples: Some(samples),
        seed: Some(seed),
    };
    let corpus = sample_systems(n, samples, seed)?;
    let subclaims = inequality_checks(&corpus, &params);
    Ok(VerificationReport::group("inequalities", params, subclaims, started))
}

/// Properties of extremal systems, checked on every member of `census`
/// as if it were extremal: `|Sh| = |F|`, `Sh = st`, isometric embedding,
/// and a unique strong witness for each maximal shattered set.
pub fn extremal_census_checks(census: &[SetSystem], params: &Params) -> Vec<VerificationReport> {
    let counts = |f: &SetSystem| {
        let p = profile_of(f)?;
        if p.sh.len() == f.len() && p.sh.sets == p.st.sets {
            Ok(())
        } else {
            Err(format!("|F|={}, |Sh|={}, |st|={}", f.len(), p.sh.len(), p.st.len()))
        }
    };
    let isometry = |f: &SetSystem| match InclusionGraph::build(f).isometry().violation {
        None => Ok(()),
        Some(v) => Err(format!(
            "{} and {}: graph distance {:?}, Hamming {}",
            v.first, v.second, v.graph_distance, v.hamming_distance
        )),
    };
    let unique = |f: &SetSystem| {
        let p = profile_of(f)?;
        for s in p.sh.maximal() {
            let w = strong_witnesses(f, s).map_err(|e| e.to_string())?;
            if w.len() != 1 {
                return Err(format!("maximal {s} has {} strong witnesses", w.len()));
            }
        }
        Ok(())
    };
    run_checks(
        census,
        &[
            ("extremal_sh_equals_st", &counts),
            ("extremal_is_isometric", &isometry),
            ("maximal_uniquely_strongly_shattered", &unique),
        ],
        params,
    )
}

/// Structural identities that hold for every nonempty system.
pub fn general_checks(corpus: &[SetSystem], params: &Params) -> Vec<VerificationReport> {
    let equivalence = |f: &SetSystem| {
        let p = profile_of(f)?;
        let by_sh = p.sh.len() == f.len();
        let by_st = p.st.len() == f.len();
        if by_sh != by_st {
            return Err(format!("|Sh|={}, |st|={}, |F|={}", p.sh.len(), p.st.len(), f.len()));
        }
        if by_sh && p.sh.sets != p.st.sets {
            return Err("extremal but Sh != st".into());
        }
        Ok(())
    };
    let down_closed = |f: &SetSystem| {
        let p = profile_of(f)?;
        if p.sh.is_down_closed() && p.st.is_down_closed() {
            Ok(())
        } else {
            Err("Sh or st not down-closed".into())
        }
    };
    let flips = |f: &SetSystem| {
        let sh = profile_of(f)?.sh;
        for i in 1..=f.n() {
            let flipped = f.bit_flip(i).map_err(|e| e.to_string())?;
            if profile_of(&flipped)?.sh.sets != sh.sets {
                return Err(format!("Sh changes under flip {i}"));
            }
        }
        Ok(())
    };
    let subdivision = |f: &SetSystem| {
        let whole = profile_of(f)?;
        let extremal = whole.sh.len() == f.len();
        for i in 1..=f.n() {
            let (f0, f1) = f.standard_subdivision(i).map_err(|e| e.to_string())?;
            let mut parts = 0;
            for part in [&f0, &f1] {
                if part.is_empty() {
                    continue;
                }
                let p = profile_of(part)?;
                parts += p.sh.len();
                if extremal && p.sh.len() != part.len() {
                    return Err(format!("subdivision part on {i} not extremal: {part}"));
                }
            }
            if whole.sh.len() < parts {
                return Err(format!("|Sh(F)|={} < |Sh(F0)|+|Sh(F1)|={parts} on {i}", whole.sh.len()));
            }
        }
        Ok(())
    };
    let vc1 = |f: &SetSystem| check_vc1_characterization(f).map(|_| ()).map_err(|e| e.to_string());
    run_checks(
        corpus,
        &[
            ("extremality_equivalence", &equivalence),
            ("down_closed", &down_closed),
            ("flip_invariance", &flips),
            ("subdivision", &subdivision),
            ("vc1_characterization", &vc1),
        ],
        params,
    )
}

/// Fast path against the brute-force definitions.
pub fn oracle_agreement_checks(corpus: &[SetSystem], params: &Params) -> Vec<VerificationReport> {
    let sh = |f: &SetSystem| {
        if f.n() > 10 {
            return Ok(());
        }
        let fast = crate::shattering::shattered_sets(f).map_err(|e| e.to_string())?;
        let slow = sh_by_definition(f).map_err(|e| e.to_string())?;
        if fast.sets == slow.sets {
            Ok(())
        } else {
            Err(format!("Sh differs: fast {} vs definition {}", fast.len(), slow.len()))
        }
    };
    let st = |f: &SetSystem| {
        if f.n() > 8 {
            return Ok(());
        }
        let fast = crate::shattering::strongly_shattered_sets(f).map_err(|e| e.to_string())?;
        let slow = st_by_definition(f).map_err(|e| e.to_string())?;
        if fast.sets == slow.sets {
            Ok(())
        } else {
            Err(format!("st differs: fast {} vs definition {}", fast.len(), slow.len()))
        }
    };
    run_checks(corpus, &[("sh_matches_definition", &sh), ("st_matches_definition", &st)], params)
}

/// All proposition-level checks over `systems`, with the extremal-only
/// properties checked on `census`.
pub fn verify_propositions_on(systems: &[SetSystem], census: &[SetSystem], params: Params) -> VerificationReport {
    let started = Instant::now();
    let mut subclaims = inequality_checks(systems, &params);
    subclaims.extend(general_checks(systems, &params));
    subclaims.extend(oracle_agreement_checks(systems, &params));
    subclaims.extend(extremal_census_checks(census, &params));
    VerificationReport::group("propositions", params, subclaims, started)
}

/// Exhaustive over all systems for `n <= 4`, otherwise `samples` seeded systems.
pub fn verify_propositions(n: usize, samples: usize, seed: u64) -> Result<VerificationReport> {
    let systems = if n <= EXHAUSTIVE_LIMIT {
        all_systems(n)?
    } else {
        sample_systems(n, samples, seed)?
    };
    let census: Vec<SetSystem> = systems
        .par_iter()
        .filter(|f| {
            ShatterProfile::compute(f)
                .map(|p| p.sh.len() == f.len())
                .unwrap_or(false)
        })
        .cloned()
        .collect();
    Ok(verify_propositions_on(
        &systems,
        &census,
        Params {
            n: Some(n),
            samples: Some(samples),
            seed: Some(seed),
        },
    ))
}

/// A built system paired with the `st` family its build claims.
pub type ClaimedBuild = (SetSystem, ShatterFamily);

/// Every prefix of `count` seeded random builds (`n` in 1..=`max_n`,
/// 0..=`max_steps` steps), paired with the closed-formula `st`.
pub fn random_build_prefixes(count: usize, max_n: usize, max_steps: usize, seed: u64) -> Result<Vec<ClaimedBuild>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..count {
        let n = rng.random_range(1..=max_n);
        let steps = rng.random_range(0..=max_steps);
        let (script, _) = random_build(n, steps, rng.random())?;
        for state in script.replay_states()? {
            if state.strongly_shattered() != state.closed_formula() {
                return Err(Error::Internal("st cache diverged from closed formula".into()));
            }
            out.push((state.current().clone(), state.closed_formula()));
        }
    }
    Ok(out)
}

/// Each claimed build is extremal with VC ≤ 2 and its recomputed `st`
/// equals the claimed family exactly.
pub fn verify_build_invariants_on(builds: &[ClaimedBuild], params: Params) -> VerificationReport {
    let started = Instant::now();
    let check = |(f, claimed): &ClaimedBuild| -> std::result::Result<(), String> {
        if !extremal_vc2(f)? {
            return Err("not extremal with VC <= 2".into());
        }
        let st = crate::shattering::strongly_shattered_sets(f).map_err(|e| e.to_string())?;
        if st.sets != claimed.sets {
            return Err(format!("st has {} sets, closed formula {}", st.len(), claimed.len()));
        }
        Ok(())
    };
    let outcomes: Vec<Option<String>> = builds.par_iter().map(|b| check(b).err()).collect();
    let failure = outcomes.into_iter().zip(builds).find_map(|(outcome, (f, _))| {
        outcome.map(|detail| Counterexample {
            system: f.clone(),
            detail,
        })
    });
    let leaf = VerificationReport::leaf("prefix_extremal_closed_formula", params.clone(), builds.len(), failure);
    VerificationReport::group("build_invariants", params, vec![leaf], started)
}

pub fn verify_build_invariants(count: usize, max_n: usize, max_steps: usize, seed: u64) -> Result<VerificationReport> {
    let builds = random_build_prefixes(count, max_n, max_steps, seed)?;
    Ok(verify_build_invariants_on(
        &builds,
        Params {
            n: Some(max_n),
            samples: Some(count),
            seed: Some(seed),
        },
    ))
}

/// Every pair of same-label edges is joined by a ladder with distinct side
/// labels whose rails have the Hamming length of the rung endpoints and are
/// shortest paths in the graph.
pub fn ladder_check(f: &SetSystem) -> std::result::Result<(), String> {
    let graph = InclusionGraph::build(f);
    let edges = graph.edges();
    for (k, e1) in edges.iter().enumerate() {
        for e2 in edges[k..].iter().filter(|e| e.label == e1.label) {
            let ladder = graph
                .find_ladder(e1, e2)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("no ladder between {}->{} and {}->{}", e1.from, e1.to, e2.from, e2.to))?;
            let (lower, upper) = ladder.rails();
            let lower_len = lower.len() - 1;
            let upper_len = upper.len() - 1;
            if lower_len != e1.from.distance(e2.from) || upper_len != e1.to.distance(e2.to) {
                return Err(format!("rail lengths {lower_len}/{upper_len} differ from Hamming distance"));
            }
            let graph_dist = graph.distance(e1.from, e2.from).map_err(|e| e.to_string())?;
            if graph_dist != Some(lower_len) {
                return Err(format!("rail is not a shortest path ({graph_dist:?} vs {lower_len})"));
            }
            let mut labels = ladder.side_labels.clone();
            labels.sort_unstable();
            labels.dedup();
            if labels.len() != ladder.side_labels.len() || labels.contains(&ladder.label) {
                return Err("side labels repeat".into());
            }
        }
    }
    Ok(())
}

pub fn verify_ladders_on(corpus: &[SetSystem], params: Params) -> VerificationReport {
    let started = Instant::now();
    let subclaims = run_checks(corpus, &[("same_label_edges_have_ladders", &ladder_check)], &params);
    VerificationReport::group("ladders", params, subclaims, started)
}

/// Ladders in `count` random builds with `n` in 1..=12 and up to 30 steps.
pub fn verify_ladders(count: usize, seed: u64) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let corpus = (0..count)
        .map(|_| {
            let n = rng.random_range(1..=12);
            let steps = rng.random_range(0..=30);
            random_build(n, steps, rng.random()).map(|(_, f)| f)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(verify_ladders_on(
        &corpus,
        Params {
            n: Some(12),
            samples: Some(count),
            seed: Some(seed),
        },
    ))
}

/// `Step(S)` builds: with `|S| <= 2` they reach exactly the Step A/B
/// systems; with `|S| <= 3` everything reached is extremal.
pub fn verify_general_steps(n: usize) -> Result<VerificationReport> {
    check_exhaustive(n)?;
    let started = Instant::now();
    let params = Params {
        n: Some(n),
        ..Params::default()
    };
    let ab = reachable_families(n)?;
    let general2 = reachable_general_families(n, 2)?;
    let mismatch = ab.symmetric_difference(&general2).next().map(|f| Counterexample {
        system: f.clone(),
        detail: if ab.contains(f) {
            "reachable by A/B only".into()
        } else {
            "reachable by Step(S), |S|<=2, only".into()
        },
    });
    let mut subclaims = vec![VerificationReport::leaf(
        "general_t2_equals_ab",
        params.clone(),
        ab.len().max(general2.len()),
        mismatch,
    )];
    let general3: Vec<SetSystem> = reachable_general_families(n, 3)?.into_iter().collect();
    let extremal = |f: &SetSystem| -> std::result::Result<(), String> {
        let p = profile_of(f)?;
        if p.report().map_err(|e| e.to_string())?.extremal && p.vc_dimension() <= 3 {
            Ok(())
        } else {
            Err("Step(S) output not extremal".into())
        }
    };
    subclaims.extend(run_checks(&general3, &[("general_t3_extremal", &extremal)], &params));
    Ok(VerificationReport::group("general_steps", params, subclaims, started))
}
