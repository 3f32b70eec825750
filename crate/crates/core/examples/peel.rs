//! Removing members one at a time without leaving the extremal class.

use extremal_sets::builder::{peel, removable_set};
use extremal_sets::shattering::is_extremal;
use extremal_sets::SetSystem;

fn main() -> extremal_sets::Result<()> {
    let f = SetSystem::from_lists(3, vec![vec![], vec![1], vec![2], vec![3], vec![2, 3]])?;
    println!("removable from {f}: {}", removable_set(&f, None)?);

    let mut current = f.clone();
    for set in peel(&f)? {
        current = current.without_member(set)?;
        println!("remove {set:<6} -> {current}  extremal: {}", is_extremal(&current)?.extremal);
    }
    Ok(())
}
