//! The one-inclusion graph: members joined when they differ in one element.
//! Prints distances, the isometry check, cube copies and the DOT export.

use extremal_sets::graph::InclusionGraph;
use extremal_sets::{SetMask, SetSystem};

fn main() -> extremal_sets::Result<()> {
    let f = SetSystem::from_lists(3, vec![vec![], vec![1], vec![2], vec![3], vec![1, 3], vec![2, 3]])?;
    let g = InclusionGraph::build(&f);
    println!("{} vertices, {} edges, connected: {}", g.vertices().len(), g.edges().len(), g.is_connected());

    let a = SetMask::from_elements(3, [1])?;
    let b = SetMask::from_elements(3, [2, 3])?;
    println!("d({a}, {b}) = {:?}, Hamming {}", g.distance(a, b)?, a.distance(b));
    println!("isometric: {}", g.is_isometrically_embedded());

    let square = SetMask::from_elements(3, [1, 3])?;
    for copy in g.find_cube_copies(square)? {
        println!("cube over {} at {}: {:?}", copy.shape, copy.base, copy.vertices());
    }

    let e = g.edges().iter().filter(|e| e.label == 3).cloned().collect::<Vec<_>>();
    if let [first, .., last] = e.as_slice() {
        if let Some(ladder) = g.find_ladder(first, last)? {
            println!("ladder between label-3 edges, side labels {:?}", ladder.side_labels);
        }
    }

    let diagonal = InclusionGraph::build(&SetSystem::from_lists(2, vec![vec![], vec![1, 2]])?);
    if let Some(v) = diagonal.isometry().violation {
        let apart = v.graph_distance.map_or("unreachable".to_string(), |d| d.to_string());
        println!("{{∅,{{1,2}}}} fails at {} and {}: graph {apart}, Hamming {}", v.first, v.second, v.hamming_distance);
    }

    print!("{}", g.to_dot());
    Ok(())
}
