//! Bit flips, the standard subdivision on one element, and interval
//! restriction. Flips preserve both Sh and st up to the same flip of
//! labels, so extremality survives them.

use extremal_sets::sets::IntervalQuery;
use extremal_sets::shattering::is_extremal;
use extremal_sets::{SetMask, SetSystem};

fn main() -> extremal_sets::Result<()> {
    let f = SetSystem::from_lists(3, vec![vec![], vec![1], vec![2], vec![3], vec![2, 3]])?;
    let flipped = f.bit_flip(2)?;
    println!("F            = {f}");
    println!("F flipped @2 = {flipped}");
    println!("both extremal: {} {}", is_extremal(&f)?.extremal, is_extremal(&flipped)?.extremal);

    let target = SetMask::from_elements(3, [2, 3])?;
    let (anchored, record) = f.flip_to_empty(target)?;
    println!("flip {target} to ∅: {anchored}");
    println!("undo:               {}", record.invert(&anchored)?);

    let (without, with) = f.standard_subdivision(3)?;
    println!("subdivide on 3: F0 = {without}, F1 = {with}");
    assert_eq!(without.len() + with.len(), f.len());

    let q = IntervalQuery::new(SetMask::from_elements(3, [2])?, SetMask::full(3))?;
    println!("members between {{2}} and [3]: {}", f.interval_restrict(q));
    Ok(())
}
