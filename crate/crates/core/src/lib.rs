//! Shattering-theoretic invariants of finite set systems.
//!
//! * [`sets`]: subsets of `[n]` as bitmasks, set systems, bit flips,
//!   standard subdivision and interval restriction.
//! * [`shattering`]: `Sh(F)`, `st(F)`, VC dimension and extremality.
//! * [`graph`]: the labelled inclusion graph, isometry, cube copies,
//!   4-cycle ladders and the VC ≤ 1 tree test.
//! * [`builder`]: Step A / Step B builds, script replay, reconstruction of
//!   a script for an extremal system of VC dimension ≤ 2, removable sets
//!   and peeling.
//! * [`oracle`]: brute-force references and verification sweeps.
//! * [`cli`]: the subcommands behind the `extremal` binary.

pub mod builder;
pub mod cli;
pub mod error;
pub mod format;
pub mod graph;
pub mod oracle;
pub mod report;
pub mod sets;
pub mod shattering;

pub use builder::{BuildScript, BuildState, BuildStep, Reconstruction, StepError};
pub use error::{Error, Result};
pub use graph::{CubeCopy, Edge, FourCycleLadder, InclusionGraph};
pub use report::AnalysisReport;
pub use sets::{FlipRecord, IntervalQuery, SetMask, SetSystem};
pub use shattering::{ExtremalityReport, ShatterFamily, ShatterKind, StrongWitness};
