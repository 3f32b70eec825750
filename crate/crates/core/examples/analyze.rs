//! Shattered and strongly shattered sets of a small family, and the
//! extremality verdict that follows from comparing them.
//!
//! ```text
//! cargo run --example analyze
//! ```

use extremal_sets::report::AnalysisReport;
use extremal_sets::shattering::{shattered_sets, strong_witnesses, strongly_shattered_sets};
use extremal_sets::{SetMask, SetSystem};

fn main() -> extremal_sets::Result<()> {
    let f = SetSystem::from_lists(3, vec![vec![], vec![1], vec![2], vec![3], vec![2, 3]])?;
    println!("F      = {f}");

    let sh = shattered_sets(&f)?;
    let st = strongly_shattered_sets(&f)?;
    println!("Sh(F)  = {sh}");
    println!("st(F)  = {st}");

    // {2,3} is shattered, and the square {∅,{2},{3},{2,3}} is a witness
    let s = SetMask::from_elements(3, [2, 3])?;
    for w in strong_witnesses(&f, s)? {
        println!("witness for {s}: offset {}", w.offset);
    }

    print!("{}", AnalysisReport::analyze(&f)?.to_text());

    let diagonal = SetSystem::from_lists(2, vec![vec![], vec![1, 2]])?;
    let r = AnalysisReport::analyze(&diagonal)?;
    println!("\n{diagonal}: |Sh|={} |F|={} |st|={} extremal={}", r.shattered, r.size, r.strongly_shattered, r.extremal);
    Ok(())
}
