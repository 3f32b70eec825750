//! Growing an extremal family one set at a time with Step A and Step B,
//! checking the cached strongly shattered sets at each stage, then
//! round-tripping the script through its text form.

use extremal_sets::builder::{BuildScript, BuildState, BuildStep};
use extremal_sets::shattering::is_extremal;
use extremal_sets::SetMask;

fn main() -> extremal_sets::Result<()> {
    let steps = vec![
        BuildStep::A { alpha: 1, w: SetMask::EMPTY },
        BuildStep::A { alpha: 2, w: SetMask::EMPTY },
        BuildStep::A { alpha: 3, w: SetMask::EMPTY },
        BuildStep::B { alpha: 2, beta: 3, w: SetMask::EMPTY },
    ];

    let mut state = BuildState::new(3)?;
    for step in &steps {
        state = state.apply_step(step)?;
        println!(
            "+ {:<6} -> {}  st = {}  cache ok: {}",
            step.new_set().to_string(),
            state.current(),
            state.strongly_shattered(),
            state.verify_cache()?,
        );
    }
    println!("extremal: {}", is_extremal(state.current())?.extremal);

    // a repeated step is rejected with the violated condition
    if let Err(err) = state.apply_step(&steps[3]) {
        println!("rejected: {err}");
    }

    let script = BuildScript::new(3, steps);
    let text = script.to_text();
    print!("{text}");
    let parsed = BuildScript::parse(&text)?;
    assert_eq!(parsed.replay()?, *state.current());
    println!("valid next steps: {}", state.enumerate_valid_steps(None).len());
    Ok(())
}
