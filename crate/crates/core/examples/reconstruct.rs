//! Recovering a build script for an extremal family of VC dimension at
//! most 2, and what happens for families outside that class.

use extremal_sets::builder::{reconstruct_script, Reconstruction};
use extremal_sets::SetSystem;

fn show(f: &SetSystem) -> extremal_sets::Result<()> {
    match reconstruct_script(f)? {
        Reconstruction::Script(script) => {
            println!("{f}: {} steps", script.steps.len());
            print!("{}", script.to_text());
            assert_eq!(&script.replay()?, f);
        }
        Reconstruction::NotExtremal(report) => {
            println!("{f}: not extremal (|Sh|={}, |F|={})", report.shattered, report.size);
        }
        Reconstruction::VcTooLarge { vc_dimension, .. } => {
            println!("{f}: extremal but VC dimension {vc_dimension}");
        }
    }
    Ok(())
}

fn main() -> extremal_sets::Result<()> {
    show(&SetSystem::from_lists(3, vec![vec![], vec![1], vec![2], vec![3], vec![2, 3]])?)?;
    show(&SetSystem::from_lists(3, vec![vec![], vec![1], vec![2], vec![3], vec![1, 3], vec![2, 3]])?)?;
    show(&SetSystem::from_lists(2, vec![vec![], vec![1, 2]])?)?;
    show(&SetSystem::cube(3, extremal_sets::SetMask::full(3))?)?;
    Ok(())
}
