use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::builder::reconstruct_script;
use crate::error::Result;
use crate::graph::InclusionGraph;
use crate::sets::{SetMask, SetSystem};
use crate::shattering::ShatterProfile;

/// Bundled invariants of one system, as printed by `extremal analyze`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub size: usize,
    pub shattered: usize,
    pub strongly_shattered: usize,
    pub vc_dimension: usize,
    pub extremal: bool,
    pub isometric: bool,
    pub maximal_shattered: Vec<SetMask>,
    /// Length of the reconstructed build script when the system contains
    /// `∅` and is extremal of VC dimension ≤ 2.
    pub script_length: Option<usize>,
}

impl AnalysisReport {
    pub fn analyze(system: &SetSystem) -> Result<Self> {
        let profile = ShatterProfile::compute(system)?;
        let report = profile.report()?;
        let vc_dimension = profile.vc_dimension();
        let script_length = if report.extremal && vc_dimension <= 2 && system.contains(SetMask::EMPTY) {
            reconstruct_script(system)?.script().map(|s| s.steps.len())
        } else {
            None
        };
        Ok(AnalysisReport {
            n: system.n(),
            size: system.len(),
            shattered: report.shattered,
            strongly_shattered: report.strongly_shattered,
            vc_dimension,
            extremal: report.extremal,
            isometric: InclusionGraph::build(system).is_isometrically_embedded(),
            maximal_shattered: profile.sh.maximal(),
            script_length,
        })
    }

    /// `is_extremal ⟺ |Sh| = |F| ⟺ |st| = |F|`.
    pub fn is_consistent(&self) -> bool {
        self.extremal == (self.shattered == self.size) && self.extremal == (self.strongly_shattered == self.size)
    }

    pub fn to_text(&self) -> String {
        let yes = |b: bool| if b { "yes" } else { "no" };
        let maximal: Vec<String> = self.maximal_shattered.iter().map(|s| s.to_string()).collect();
        let mut out = String::new();
        let _ = writeln!(out, "universe     n={}", self.n);
        let _ = writeln!(out, "|F|          {}", self.size);
        let _ = writeln!(out, "|Sh(F)|      {}", self.shattered);
        let _ = writeln!(out, "|st(F)|      {}", self.strongly_shattered);
        let _ = writeln!(out, "VC dimension {}", self.vc_dimension);
        let _ = writeln!(out, "extremal     {}", yes(self.extremal));
        let _ = writeln!(out, "isometric    {}", yes(self.isometric));
        let _ = writeln!(out, "maximal Sh   {}", maximal.join(" "));
        match self.script_length {
            Some(len) => {
                let _ = writeln!(out, "buildable    yes ({len} steps)");
            }
            None => {
                let _ = writeln!(out, "buildable    no");
            }
        }
        out
    }
}
