//! Labelled inclusion graph (Hasse diagram) of a set system.
//!
//! Vertices are the members; there is an edge `G → F` labelled `j` whenever
//! `F = G ∪ {j}`. Distance queries ignore edge direction.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sets::{SetMask, SetSystem};
use crate::shattering::{self, is_extremal, vc_dimension};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub from: SetMask,
    pub to: SetMask,
    pub label: usize,
}

#[derive(Clone, Debug)]
pub struct InclusionGraph {
    system: SetSystem,
    edges: Vec<Edge>,
    // undirected adjacency by vertex index: (neighbor index, label)
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl InclusionGraph {
    /// Builds the graph from every member pair at Hamming distance 1.
    pub fn build(system: &SetSystem) -> Self {
        let n = system.n();
        let members = system.members();
        let mut edges = Vec::new();
        let mut adjacency = vec![Vec::new(); members.len()];
        for (u, &from) in members.iter().enumerate() {
            for label in (1..=n).filter(|&e| !from.contains(e)) {
                let to = from.with(label);
                if let Some(v) = system.index_of(to) {
                    edges.push(Edge { from, to, label });
                    adjacency[u].push((v, label));
                    adjacency[v].push((u, label));
                }
            }
        }
        edges.sort_unstable();
        InclusionGraph {
            system: system.clone(),
            edges,
            adjacency,
        }
    }

    pub fn system(&self) -> &SetSystem {
        &self.system
    }

    pub fn vertices(&self) -> &[SetMask] {
        self.system.members()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_vertex(&self, v: SetMask) -> bool {
        self.system.contains(v)
    }

    pub fn has_edge(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// Undirected neighbors of `v` with the connecting label.
    pub fn neighbors(&self, v: SetMask) -> Result<Vec<(SetMask, usize)>> {
        let i = self.index(v)?;
        Ok(self.adjacency[i]
            .iter()
            .map(|&(j, l)| (self.vertices()[j], l))
            .collect())
    }

    pub fn degree(&self, v: SetMask) -> Result<usize> {
        Ok(self.adjacency[self.index(v)?].len())
    }

    fn index(&self, v: SetMask) -> Result<usize> {
        self.system.index_of(v).ok_or(Error::NotAVertex(v))
    }

    fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertices().len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for &(v, _) in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Shortest undirected path length; `None` when unreachable.
    pub fn distance(&self, f: SetMask, g: SetMask) -> Result<Option<usize>> {
        let (s, t) = (self.index(f)?, self.index(g)?);
        Ok(self.bfs(s)[t])
    }

    pub fn is_connected(&self) -> bool {
        self.vertices().is_empty() || self.bfs(0).iter().all(Option::is_some)
    }

    /// Compares graph distance with Hamming distance for every vertex pair,
    /// stopping at the first (canonically ordered) mismatch.
    pub fn isometry(&self) -> IsometryReport {
        let verts = self.vertices();
        for s in 0..verts.len() {
            let dist = self.bfs(s);
            for t in s + 1..verts.len() {
                let hamming = verts[s].distance(verts[t]);
                if dist[t] != Some(hamming) {
                    return IsometryReport {
                        isometric: false,
                        violation: Some(IsometryViolation {
                            first: verts[s],
                            second: verts[t],
                            graph_distance: dist[t],
                            hamming_distance: hamming,
                        }),
                    };
                }
            }
        }
        IsometryReport {
            isometric: true,
            violation: None,
        }
    }

    pub fn is_isometrically_embedded(&self) -> bool {
        self.isometry().isometric
    }

    /// Every copy of the cube over `shape` in the graph, ascending by base.
    pub fn find_cube_copies(&self, shape: SetMask) -> Result<Vec<CubeCopy>> {
        if !shape.fits(self.system.n()) {
            return Err(Error::SetOutOfUniverse {
                set: shape,
                n: self.system.n(),
            });
        }
        let elems: Vec<usize> = shape.elements().collect();
        let copies = match elems.as_slice() {
            [] => self
                .vertices()
                .iter()
                .map(|&base| CubeCopy { base, shape })
                .collect(),
            [a] => self
                .edges
                .iter()
                .filter(|e| e.label == *a)
                .map(|e| CubeCopy {
                    base: e.from,
                    shape,
                })
                .collect(),
            [a, b] => {
                let mut out: Vec<CubeCopy> = self
                    .edges
                    .iter()
                    .filter(|e| e.label == *a && !e.from.contains(*b))
                    .filter(|e| {
                        self.has_vertex(e.from.with(*b)) && self.has_vertex(e.to.with(*b))
                    })
                    .map(|e| CubeCopy {
                        base: e.from,
                        shape,
                    })
                    .collect();
                out.sort_unstable();
                out
            }
            _ => {
                if self.system.is_empty() {
                    Vec::new()
                } else {
                    shattering::strong_witnesses(&self.system, shape)?
                        .into_iter()
                        .map(|w| CubeCopy {
                            base: w.offset,
                            shape,
                        })
                        .collect()
                }
            }
        };
        Ok(copies)
    }

    /// Connects two same-label edges by a chain of labelled 4-cycles.
    ///
    /// Rungs are edges with the common label; consecutive rungs are joined
    /// when their lower endpoints differ in exactly one element. Returns the
    /// shortest such chain when its side labels are pairwise distinct, which
    /// makes both rails shortest paths in the hypercube.
    pub fn find_ladder(&self, e1: &Edge, e2: &Edge) -> Result<Option<FourCycleLadder>> {
        if e1.label != e2.label {
            return Err(Error::LabelMismatch(e1.label, e2.label));
        }
        for e in [e1, e2] {
            if !self.has_edge(e) {
                return Err(Error::NotAVertex(e.from));
            }
        }
        let label = e1.label;
        let rungs: Vec<SetMask> = self
            .edges
            .iter()
            .filter(|e| e.label == label)
            .map(|e| e.from)
            .collect();
        let start = rungs.binary_search(&e1.from).ok();
        let goal = rungs.binary_search(&e2.from).ok();
        let (Some(start), Some(goal)) = (start, goal) else {
            return Ok(None);
        };
        let mut parent: Vec<Option<usize>> = vec![None; rungs.len()];
        let mut visited = vec![false; rungs.len()];
        visited[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            if u == goal {
                break;
            }
            for (v, &w) in rungs.iter().enumerate() {
                if !visited[v] && rungs[u].distance(w) == 1 {
                    visited[v] = true;
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        if !visited[goal] {
            return Ok(None);
        }
        let mut path = vec![goal];
        while let Some(p) = parent[*path.last().unwrap_or(&goal)] {
            path.push(p);
        }
        path.reverse();
        let bases: Vec<SetMask> = path.iter().map(|&i| rungs[i]).collect();
        let side_labels: Vec<usize> = bases
            .windows(2)
            .map(|w| w[0].sym_diff(w[1]).max_element().unwrap_or(0))
            .collect();
        let mut sorted = side_labels.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != side_labels.len() {
            return Ok(None);
        }
        Ok(Some(FourCycleLadder {
            label,
            rungs: bases
                .into_iter()
                .map(|from| Edge {
                    from,
                    to: from.with(label),
                    label,
                })
                .collect(),
            side_labels,
        }))
    }

    /// Deterministic Graphviz rendering; vertices are named by set literal.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph inclusion {\n");
        for v in self.vertices() {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for e in &self.edges {
            let _ = writeln!(out, "  \"{}\" -> \"{}\" [label=\"{}\"];", e.from, e.to, e.label);
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Repr<'a> {
            vertices: &'a [SetMask],
            edges: &'a [Edge],
        }
        serde_json::to_string(&Repr {
            vertices: self.vertices(),
            edges: &self.edges,
        })
        .expect("graph serializes")
    }
}

/// Reads back the edge lines of [`InclusionGraph::to_dot`].
pub fn parse_dot_edges(dot: &str) -> Result<Vec<Edge>> {
    let mut edges = Vec::new();
    for (k, line) in dot.lines().enumerate() {
        let line = line.trim();
        let Some((lhs, rhs)) = line.split_once(" -> ") else {
            continue;
        };
        let bad = |message: &str| Error::Parse {
            line: k + 1,
            message: message.to_string(),
        };
        let from = parse_set_literal(lhs).ok_or_else(|| bad("bad source vertex"))?;
        let (target, attrs) = rhs
            .split_once(" [label=\"")
            .ok_or_else(|| bad("missing label attribute"))?;
        let to = parse_set_literal(target).ok_or_else(|| bad("bad target vertex"))?;
        let label = attrs
            .trim_end_matches("\"];")
            .parse()
            .map_err(|_| bad("bad label"))?;
        edges.push(Edge { from, to, label });
    }
    Ok(edges)
}

fn parse_set_literal(s: &str) -> Option<SetMask> {
    let inner = s.trim().strip_prefix("\"{")?.strip_suffix("}\"")?;
    if inner.is_empty() {
        return Some(SetMask::EMPTY);
    }
    let elems = inner
        .split(',')
        .map(|t| t.parse::<usize>().ok())
        .collect::<Option<Vec<_>>>()?;
    SetMask::from_elements(64, elems).ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IsometryViolation {
    pub first: SetMask,
    pub second: SetMask,
    pub graph_distance: Option<usize>,
    pub hamming_distance: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IsometryReport {
    pub isometric: bool,
    pub violation: Option<IsometryViolation>,
}

/// `{H ∪ base : H ⊆ shape}` present in the graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CubeCopy {
    pub base: SetMask,
    pub shape: SetMask,
}

impl CubeCopy {
    pub fn vertices(&self) -> Vec<SetMask> {
        self.shape.subsets().map(|h| h.union(self.base)).collect()
    }
}

/// Chain of 4-cycles between two edges sharing `label`.
///
/// Consecutive rungs `k` and `k + 1` span a square whose two other sides are
/// labelled `side_labels[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FourCycleLadder {
    pub label: usize,
    pub rungs: Vec<Edge>,
    pub side_labels: Vec<usize>,
}

impl FourCycleLadder {
    /// The lower and upper rails as vertex paths.
    pub fn rails(&self) -> (Vec<SetMask>, Vec<SetMask>) {
        (
            self.rungs.iter().map(|e| e.from).collect(),
            self.rungs.iter().map(|e| e.to).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.side_labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.side_labels.is_empty()
    }
}

/// Tree with pairwise distinct labels, cross-checked against
/// "extremal with VC dimension at most 1".
pub fn check_vc1_characterization(system: &SetSystem) -> Result<bool> {
    if system.is_empty() {
        return Err(Error::EmptySystem);
    }
    let graph = InclusionGraph::build(system);
    let mut labels: Vec<usize> = graph.edges().iter().map(|e| e.label).collect();
    labels.sort_unstable();
    let distinct = labels.windows(2).all(|w| w[0] != w[1]);
    let tree = graph.is_connected() && graph.edges().len() + 1 == system.len();
    let by_graph = tree && distinct;
    if system.support().len() <= shattering::SUPPORT_LIMIT {
        let by_counts = is_extremal(system)?.extremal && vc_dimension(system)? <= 1;
        if by_counts != by_graph {
            return Err(Error::Internal(format!(
                "tree characterization ({by_graph}) disagrees with extremality and VC <= 1 ({by_counts}) on {system}"
            )));
        }
    }
    Ok(by_graph)
}
