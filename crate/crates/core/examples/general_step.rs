//! Step(S) with |S| up to 3, which reaches families of VC dimension 3.

use extremal_sets::builder::{random_general_build, BuildState};
use extremal_sets::shattering::{is_extremal, vc_dimension};

fn main() -> extremal_sets::Result<()> {
    let state = BuildState::new(3)?;
    println!("{} general steps from {{∅}}", state.enumerate_general_steps(3)?.len());

    let (script, f) = random_general_build(4, 14, 3, 11)?;
    print!("{}", script.to_text());
    println!("{f}");
    println!("extremal: {}  VC: {}", is_extremal(&f)?.extremal, vc_dimension(&f)?);
    Ok(())
}
