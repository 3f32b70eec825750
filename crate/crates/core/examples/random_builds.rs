//! Seeded random builds. The same seed always gives the same script.

use extremal_sets::builder::random_build;
use extremal_sets::report::AnalysisReport;

fn main() -> extremal_sets::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let (script, f) = random_build(6, 12, seed)?;
    print!("{}", script.to_text());
    println!("{f}");
    let r = AnalysisReport::analyze(&f)?;
    println!("|F|={} VC={} extremal={}", r.size, r.vc_dimension, r.extremal);

    let (again, _) = random_build(6, 12, seed)?;
    assert_eq!(script, again);
    Ok(())
}
