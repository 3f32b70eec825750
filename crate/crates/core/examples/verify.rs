//! Small verification sweeps: exhaustive over [3], sampled beyond.

use extremal_sets::oracle::{verify_inequalities, verify_propositions, verify_theorem1, verify_theorem2};

fn main() -> extremal_sets::Result<()> {
    for report in [
        verify_theorem1(3)?,
        verify_theorem2(3, 0, 0)?,
        verify_theorem2(8, 50, 1)?,
        verify_inequalities(8, 200, 2)?,
        verify_propositions(3, 0, 0)?,
    ] {
        print!("{}", report.summary());
    }
    Ok(())
}
