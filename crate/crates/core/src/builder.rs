//! Step A / Step B construction of extremal systems of VC dimension ≤ 2.
//!
//! Every build starts from `{∅}`. Step A adds `W ∪ {α}` for a fresh label
//! `α`; Step B completes three corners `P, W, Q` of a labelled square to the
//! fourth corner `V = W △ {α, β}` provided `{α, β}` is not yet strongly
//! shattered. Each step grows `st` by exactly one set (`{α}` or `{α, β}`),
//! which is how [`BuildState`] maintains `st` without recomputation.
//!
//! The general step `Step(S)` adds any `F` creating a new translated cube
//! over `S`; it is kept separate and only its soundness is checked.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::format::{parse_header, parse_set_text, set_to_text};
use crate::sets::{check_universe, FlipRecord, SetMask, SetSystem};
use crate::shattering::{
    strong_witnesses, ExtremalityReport, ShatterFamily, ShatterKind, ShatterProfile,
};

/// One growth move. `w` is the anchor corner; the added set is [`BuildStep::new_set`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum BuildStep {
    A {
        alpha: usize,
        w: SetMask,
    },
    B {
        alpha: usize,
        beta: usize,
        w: SetMask,
    },
    #[serde(rename = "G")]
    General {
        s: SetMask,
        f: SetMask,
    },
}

impl BuildStep {
    /// The set the step adds.
    pub fn new_set(&self) -> SetMask {
        match *self {
            BuildStep::A { alpha, w } => w.with(alpha),
            BuildStep::B { alpha, beta, w } => w.toggled(alpha).toggled(beta),
            BuildStep::General { f, .. } => f,
        }
    }

    /// The set the step adds to `st`: `{α}`, `{α, β}` or `S`.
    pub fn characteristic(&self) -> SetMask {
        match *self {
            BuildStep::A { alpha, .. } => SetMask::singleton(alpha),
            BuildStep::B { alpha, beta, .. } => SetMask::singleton(alpha).with(beta),
            BuildStep::General { s, .. } => s,
        }
    }

    fn sort_key(&self) -> (u8, usize, usize, SetMask, SetMask) {
        match *self {
            BuildStep::A { alpha, w } => (0, alpha, 0, w, SetMask::EMPTY),
            BuildStep::B { alpha, beta, w } => (1, alpha, beta, w, SetMask::EMPTY),
            BuildStep::General { s, f } => (2, s.len(), 0, s, f),
        }
    }

    fn to_text(self) -> String {
        match self {
            BuildStep::A { alpha, w } => format!("A {alpha} | {}", set_to_text(w)),
            BuildStep::B { alpha, beta, w } => {
                format!("B {alpha} {beta} | {}", set_to_text(w))
            }
            BuildStep::General { s, f } => {
                format!("G {} | {}", set_to_text(s), set_to_text(f))
            }
        }
    }

    fn parse_text(n: usize, text: &str, line: usize) -> Result<Self> {
        let bad = |message: String| Error::Parse { line, message };
        let (head, tail) = text
            .split_once('|')
            .ok_or_else(|| bad("expected `|` before the anchor set".into()))?;
        let mut toks = head.split_whitespace();
        let kind = toks.next().ok_or_else(|| bad("missing step kind".into()))?;
        let args: Vec<&str> = toks.collect();
        let label = |tok: &str| -> Result<usize> {
            tok.parse()
                .map_err(|_| bad(format!("`{tok}` is not an element label")))
        };
        match (kind, args.as_slice()) {
            ("A", [a]) => Ok(BuildStep::A {
                alpha: label(a)?,
                w: parse_set_text(n, tail, line)?,
            }),
            ("B", [a, b]) => Ok(BuildStep::B {
                alpha: label(a)?,
                beta: label(b)?,
                w: parse_set_text(n, tail, line)?,
            }),
            ("G", _) => Ok(BuildStep::General {
                s: parse_set_text(n, &args.join(" "), line)?,
                f: parse_set_text(n, tail, line)?,
            }),
            _ => Err(bad(format!("unrecognised step `{}`", text.trim()))),
        }
    }
}

impl fmt::Display for BuildStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BuildStep::A { alpha, w } => write!(f, "A({alpha}, W={w})"),
            BuildStep::B { alpha, beta, w } => write!(f, "B({alpha},{beta}, W={w})"),
            BuildStep::General { s, f: set } => write!(f, "Step(S={s}, F={set})"),
        }
    }
}

/// Why a step cannot be applied to the current state.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("label {label} outside universe [1..{n}]")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("label {0} already in support")]
    LabelInSupport(usize),
    #[error("label {0} not in support")]
    LabelNotInSupport(usize),
    #[error("labels must differ (both {0})")]
    SameLabels(usize),
    #[error("{0} already strongly shattered")]
    AlreadyStronglyShattered(SetMask),
    #[error("corner {corner}={set} is not a member")]
    MissingCorner { corner: char, set: SetMask },
    #[error("new set {0} is already a member")]
    AlreadyMember(SetMask),
    #[error("set {set} outside universe [1..{n}]")]
    OutOfUniverse { set: SetMask, n: usize },
    #[error("|S|={size} exceeds the dimension bound {bound}")]
    ShapeTooLarge { size: usize, bound: usize },
    #[error("Step({0}) was already used in this build")]
    ShapeAlreadyUsed(SetMask),
    #[error("adding {f} does not make {s} strongly shattered")]
    ShapeNotCreated { s: SetMask, f: SetMask },
    #[error("result is not extremal (|F|={size}, |Sh|={shattered}, |st|={strongly})")]
    NotExtremalAfter {
        size: usize,
        shattered: usize,
        strongly: usize,
    },
    #[error("shattering computation failed: {0}")]
    Computation(String),
}

/// A system under construction together with the labels used so far.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildState {
    current: SetSystem,
    used_singletons: SetMask,
    used_pairs: BTreeSet<(usize, usize)>,
    used_shapes: BTreeSet<SetMask>,
    st_cache: BTreeSet<SetMask>,
}

impl BuildState {
    /// Step 0: the system `{∅}` over `[n]`.
    pub fn new(n: usize) -> Result<Self> {
        Ok(BuildState {
            current: SetSystem::singleton_empty(n)?,
            used_singletons: SetMask::EMPTY,
            used_pairs: BTreeSet::new(),
            used_shapes: BTreeSet::new(),
            st_cache: BTreeSet::from([SetMask::EMPTY]),
        })
    }

    pub fn current(&self) -> &SetSystem {
        &self.current
    }

    pub fn into_system(self) -> SetSystem {
        self.current
    }

    pub fn n(&self) -> usize {
        self.current.n()
    }

    /// `st` of the current system as maintained step by step.
    pub fn strongly_shattered(&self) -> ShatterFamily {
        ShatterFamily::new(
            ShatterKind::St,
            self.n(),
            self.st_cache.iter().copied().collect(),
        )
    }

    /// `{∅} ∪ {{α} : Step A used α} ∪ {{α,β} : Step B used α,β}`.
    pub fn closed_formula(&self) -> ShatterFamily {
        let mut sets = vec![SetMask::EMPTY];
        sets.extend(self.used_singletons.elements().map(SetMask::singleton));
        sets.extend(
            self.used_pairs
                .iter()
                .map(|&(a, b)| SetMask::singleton(a).with(b)),
        );
        ShatterFamily::new(ShatterKind::St, self.n(), sets)
    }

    /// Recomputes `st` from scratch and compares it with the cache.
    pub fn verify_cache(&self) -> Result<bool> {
        let fresh = crate::shattering::strongly_shattered_sets(&self.current)?;
        Ok(fresh.sets.iter().copied().eq(self.st_cache.iter().copied()))
    }

    fn check_label(&self, label: usize) -> std::result::Result<(), StepError> {
        if label == 0 || label > self.n() {
            Err(StepError::LabelOutOfRange {
                label,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    fn require_member(&self, corner: char, set: SetMask) -> std::result::Result<(), StepError> {
        if self.current.contains(set) {
            Ok(())
        } else {
            Err(StepError::MissingCorner { corner, set })
        }
    }

    /// Validates and applies one step, returning the grown state.
    pub fn apply_step(&self, step: &BuildStep) -> std::result::Result<BuildState, StepError> {
        match *step {
            BuildStep::A { alpha, w } => {
                self.check_label(alpha)?;
                if self.current.support().contains(alpha) {
                    return Err(StepError::LabelInSupport(alpha));
                }
                self.require_member('W', w)?;
                let mut next = self.grown(step.new_set())?;
                next.used_singletons = next.used_singletons.with(alpha);
                next.st_cache.insert(step.characteristic());
                Ok(next)
            }
            BuildStep::B { alpha, beta, w } => {
                self.check_label(alpha)?;
                self.check_label(beta)?;
                if alpha == beta {
                    return Err(StepError::SameLabels(alpha));
                }
                let support = self.current.support();
                for label in [alpha, beta] {
                    if !support.contains(label) {
                        return Err(StepError::LabelNotInSupport(label));
                    }
                }
                let pair = step.characteristic();
                if self.st_cache.contains(&pair) {
                    return Err(StepError::AlreadyStronglyShattered(pair));
                }
                self.require_member('W', w)?;
                self.require_member('P', w.toggled(beta))?;
                self.require_member('Q', w.toggled(alpha))?;
                let mut next = self.grown(step.new_set())?;
                next.used_pairs.insert((alpha.min(beta), alpha.max(beta)));
                next.st_cache.insert(pair);
                Ok(next)
            }
            BuildStep::General { .. } => self.apply_step_general(step, usize::MAX),
        }
    }

    fn grown(&self, v: SetMask) -> std::result::Result<BuildState, StepError> {
        if self.current.contains(v) {
            return Err(StepError::AlreadyMember(v));
        }
        let current = self.current.with_member(v).map_err(|_| StepError::OutOfUniverse {
            set: v,
            n: self.n(),
        })?;
        Ok(BuildState {
            current,
            ..self.clone()
        })
    }

    /// `Step(S)`: adds `f` when it completes a new translated cube over `s`,
    /// with `|s| <= bound` and `s` not used before. The result is checked
    /// to be extremal.
    pub fn apply_step_general(
        &self,
        step: &BuildStep,
        bound: usize,
    ) -> std::result::Result<BuildState, StepError> {
        let BuildStep::General { s, f } = *step else {
            return self.apply_step(step);
        };
        let n = self.n();
        for set in [s, f] {
            if !set.fits(n) {
                return Err(StepError::OutOfUniverse { set, n });
            }
        }
        if s.len() > bound {
            return Err(StepError::ShapeTooLarge {
                size: s.len(),
                bound,
            });
        }
        if self.used_shapes.contains(&s) {
            return Err(StepError::ShapeAlreadyUsed(s));
        }
        if self.st_cache.contains(&s) {
            return Err(StepError::AlreadyStronglyShattered(s));
        }
        let mut next = self.grown(f)?;
        let witnesses = strong_witnesses(&next.current, s)
            .map_err(|e| StepError::Computation(e.to_string()))?;
        if witnesses.is_empty() {
            return Err(StepError::ShapeNotCreated { s, f });
        }
        let profile = ShatterProfile::compute(&next.current)
            .map_err(|e| StepError::Computation(e.to_string()))?;
        let report = profile
            .report()
            .map_err(|e| StepError::Computation(e.to_string()))?;
        if !report.extremal {
            return Err(StepError::NotExtremalAfter {
                size: report.size,
                shattered: report.shattered,
                strongly: report.strongly_shattered,
            });
        }
        next.used_shapes.insert(s);
        next.st_cache = profile.st.sets.into_iter().collect();
        Ok(next)
    }

    /// All valid Step A / Step B moves whose new set lies in `target`
    /// (anywhere in `2^[n]` when `target` is `None`), in canonical order:
    /// A before B, then by labels, then by `W`.
    pub fn enumerate_valid_steps(&self, target: Option<&SetSystem>) -> Vec<BuildStep> {
        let n = self.n();
        let support = self.current.support();
        let fresh: Vec<usize> = (1..=n).filter(|&e| !support.contains(e)).collect();
        let pairs: Vec<(usize, usize)> = support
            .elements()
            .flat_map(|a| support.elements().filter(move |&b| b > a).map(move |b| (a, b)))
            .filter(|&(a, b)| !self.st_cache.contains(&SetMask::singleton(a).with(b)))
            .collect();
        let mut steps = Vec::new();
        match target {
            None => {
                for &alpha in &fresh {
                    for w in self.current.iter() {
                        steps.push(BuildStep::A { alpha, w });
                    }
                }
                for &(alpha, beta) in &pairs {
                    for w in self.current.iter() {
                        let step = BuildStep::B { alpha, beta, w };
                        if self.b_corners_present(alpha, beta, w) {
                            steps.push(step);
                        }
                    }
                }
            }
            Some(target) => {
                for v in target.iter().filter(|&v| !self.current.contains(v)) {
                    for &alpha in fresh.iter().filter(|&&a| v.contains(a)) {
                        let w = v.without(alpha);
                        if self.current.contains(w) {
                            steps.push(BuildStep::A { alpha, w });
                        }
                    }
                    for &(alpha, beta) in &pairs {
                        let w = v.toggled(alpha).toggled(beta);
                        if self.b_corners_present(alpha, beta, w) {
                            steps.push(BuildStep::B { alpha, beta, w });
                        }
                    }
                }
            }
        }
        steps.sort_by_key(BuildStep::sort_key);
        steps
    }

    fn b_corners_present(&self, alpha: usize, beta: usize, w: SetMask) -> bool {
        self.current.contains(w)
            && self.current.contains(w.toggled(beta))
            && self.current.contains(w.toggled(alpha))
            && !self.current.contains(w.toggled(alpha).toggled(beta))
    }

    /// All `Step(S)` moves with `|S| <= bound`, ordered by `|S|`, `S`, `F`.
    /// Scans every candidate `F`, so `n` is capped at 16.
    pub fn enumerate_general_steps(&self, bound: usize) -> Result<Vec<BuildStep>> {
        let n = self.n();
        if n > 16 {
            return Err(Error::UniverseTooLargeFor { n, limit: 16 });
        }
        let full = SetMask::full(n);
        let mut steps = Vec::new();
        for s in full.subsets().filter(|s| s.len() <= bound) {
            if self.st_cache.contains(&s) || self.used_shapes.contains(&s) {
                continue;
            }
            for f in full.subsets().filter(|&f| !self.current.contains(f)) {
                // the new cube must contain f, so its base is f \ s
                let base = f.difference(s);
                let completes = s
                    .subsets()
                    .map(|h| h.union(base))
                    .all(|x| x == f || self.current.contains(x));
                if completes {
                    steps.push(BuildStep::General { s, f });
                }
            }
        }
        steps.sort_by_key(BuildStep::sort_key);
        Ok(steps)
    }
}

/// Replayable build: Step 0 is implicit. `flip`, when present, records a
/// bit flip that maps the replayed system back to the original input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildScript {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flip: Option<SetMask>,
    pub steps: Vec<BuildStep>,
}

impl BuildScript {
    pub fn new(n: usize, steps: Vec<BuildStep>) -> Self {
        BuildScript {
            n,
            flip: None,
            steps,
        }
    }

    /// Every intermediate state, starting with `{∅}`.
    pub fn replay_states(&self) -> Result<Vec<BuildState>> {
        let mut states = vec![BuildState::new(self.n)?];
        for (index, step) in self.steps.iter().enumerate() {
            let next = states[index]
                .apply_step(step)
                .map_err(|source| Error::Replay { index, source })?;
            states.push(next);
        }
        Ok(states)
    }

    /// The built system, before any recorded flip.
    pub fn replay(&self) -> Result<SetSystem> {
        let mut state = BuildState::new(self.n)?;
        for (index, step) in self.steps.iter().enumerate() {
            state = state
                .apply_step(step)
                .map_err(|source| Error::Replay { index, source })?;
        }
        Ok(state.into_system())
    }

    /// The replayed system with the recorded flip undone.
    pub fn replay_original(&self) -> Result<SetSystem> {
        let built = self.replay()?;
        match self.flip {
            Some(mask) => built.flip_by(mask),
            None => Ok(built),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("script serializes")
    }

    pub fn from_json(input: &str) -> Result<Self> {
        let script: BuildScript = serde_json::from_str(input)?;
        check_universe(script.n)?;
        Ok(script)
    }

    /// `n=<int>`, an optional `flip=<labels>` line, then one step per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        if let Some(flip) = self.flip {
            out.push_str(&format!("flip={}\n", set_to_text(flip)));
        }
        for step in &self.steps {
            out.push_str(&step.to_text());
            out.push('\n');
        }
        out
    }

    pub fn from_text(input: &str) -> Result<Self> {
        let mut lines = input
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.trim().is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty input".into(),
        })?;
        let n = parse_header(header, hline)?;
        check_universe(n).map_err(|e| Error::Parse {
            line: hline,
            message: e.to_string(),
        })?;
        let mut script = BuildScript::new(n, Vec::new());
        for (line, text) in lines {
            if let Some(rest) = text.trim().strip_prefix("flip=") {
                script.flip = Some(parse_set_text(n, rest, line)?);
            } else {
                script.steps.push(BuildStep::parse_text(n, text, line)?);
            }
        }
        Ok(script)
    }

    /// JSON when the input starts with `{`, text otherwise.
    pub fn parse(input: &str) -> Result<Self> {
        if input.trim_start().starts_with('{') {
            BuildScript::from_json(input)
        } else {
            BuildScript::from_text(input)
        }
    }
}

/// Outcome of a membership test for the buildable class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reconstruction {
    Script(BuildScript),
    NotExtremal(ExtremalityReport),
    VcTooLarge {
        report: ExtremalityReport,
        vc_dimension: usize,
    },
}

impl Reconstruction {
    pub fn script(&self) -> Option<&BuildScript> {
        match self {
            Reconstruction::Script(s) => Some(s),
            _ => None,
        }
    }
}

/// Greedy reconstruction of a build script for `target`, which must contain
/// `∅`. At each turn the canonically first valid step into `target` is
/// taken; getting stuck on an extremal VC ≤ 2 input is an internal error.
pub fn reconstruct_script(target: &SetSystem) -> Result<Reconstruction> {
    if target.is_empty() {
        return Err(Error::EmptySystem);
    }
    if !target.contains(SetMask::EMPTY) {
        return Err(Error::MissingEmptySet);
    }
    let profile = ShatterProfile::compute(target)?;
    let report = profile.report()?;
    if !report.extremal {
        return Ok(Reconstruction::NotExtremal(report));
    }
    let vc_dimension = profile.vc_dimension();
    if vc_dimension > 2 {
        return Ok(Reconstruction::VcTooLarge {
            report,
            vc_dimension,
        });
    }
    let mut state = BuildState::new(target.n())?;
    let mut steps = Vec::with_capacity(target.len() - 1);
    while state.current().len() < target.len() {
        let Some(step) = state.enumerate_valid_steps(Some(target)).into_iter().next() else {
            return Err(Error::Internal(format!(
                "reconstruction stuck at {} below extremal target {}",
                state.current(),
                target
            )));
        };
        state = state.apply_step(&step)?;
        steps.push(step);
    }
    Ok(Reconstruction::Script(BuildScript::new(target.n(), steps)))
}

fn require_extremal_vc2(system: &SetSystem) -> Result<()> {
    if system.is_empty() {
        return Err(Error::EmptySystem);
    }
    let profile = ShatterProfile::compute(system)?;
    let report = profile.report()?;
    let vc_dimension = profile.vc_dimension();
    if !report.extremal || vc_dimension > 2 {
        return Err(Error::NotExtremalVc2 {
            report,
            vc_dimension,
        });
    }
    Ok(())
}

/// A member whose removal keeps the system extremal with VC dimension ≤ 2.
///
/// The system is flipped so that `anchor` (default: first member) becomes
/// `∅`, a script is reconstructed, and the set added by its last step is
/// mapped back through the flip.
pub fn removable_set(system: &SetSystem, anchor: Option<SetMask>) -> Result<SetMask> {
    require_extremal_vc2(system)?;
    if system.len() == 1 {
        return Err(Error::LastMember);
    }
    let anchor = anchor.unwrap_or(system.members()[0]);
    let (flipped, record): (SetSystem, FlipRecord) = system.flip_to_empty(anchor)?;
    let script = match reconstruct_script(&flipped)? {
        Reconstruction::Script(script) => script,
        other => {
            return Err(Error::Internal(format!(
                "bit flip of an extremal system failed reconstruction: {other:?}"
            )))
        }
    };
    let last = script
        .steps
        .last()
        .ok_or_else(|| Error::Internal("empty script for a multi-member system".into()))?
        .new_set();
    let removed = record.apply(last);
    let rest = system.without_member(removed)?;
    let profile = ShatterProfile::compute(&rest)?;
    if !profile.report()?.extremal || profile.vc_dimension() > 2 {
        return Err(Error::Internal(format!(
            "removing {removed} from {system} broke extremality"
        )));
    }
    Ok(removed)
}

/// Repeated [`removable_set`] down to a single member; returns the removal order.
pub fn peel(system: &SetSystem) -> Result<Vec<SetMask>> {
    require_extremal_vc2(system)?;
    let mut current = system.clone();
    let mut order = Vec::with_capacity(system.len().saturating_sub(1));
    while current.len() > 1 {
        let removed = removable_set(&current, None)?;
        current = current.without_member(removed)?;
        order.push(removed);
    }
    Ok(order)
}

/// Seeded random build: at each turn a step is drawn uniformly from
/// [`BuildState::enumerate_valid_steps`]; stops early when none is valid.
pub fn random_build(n: usize, steps: usize, seed: u64) -> Result<(BuildScript, SetSystem)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = BuildState::new(n)?;
    let mut taken = Vec::with_capacity(steps);
    for _ in 0..steps {
        let options = state.enumerate_valid_steps(None);
        if options.is_empty() {
            break;
        }
        let step = options[rng.random_range(0..options.len())];
        state = state.apply_step(&step)?;
        taken.push(step);
    }
    Ok((BuildScript::new(n, taken), state.into_system()))
}

/// Seeded random build using only `Step(S)` moves with `|S| <= bound`.
pub fn random_general_build(
    n: usize,
    steps: usize,
    bound: usize,
    seed: u64,
) -> Result<(BuildScript, SetSystem)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = BuildState::new(n)?;
    let mut taken = Vec::with_capacity(steps);
    for _ in 0..steps {
        let options = state.enumerate_general_steps(bound)?;
        if options.is_empty() {
            break;
        }
        let step = options[rng.random_range(0..options.len())];
        state = state.apply_step_general(&step, bound)?;
        taken.push(step);
    }
    Ok((BuildScript::new(n, taken), state.into_system()))
}
