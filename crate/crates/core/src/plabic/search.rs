//! Bounded breadth-first search over square moves on fully contracted graphs.
//! This is the brute-force side of the reducedness and move-equivalence
//! checks; it never looks at trips.

use std::collections::{HashSet, VecDeque};

use super::{PlabicGraph, VertexId};

const STATE_LIMIT: usize = 50_000;

fn key(g: &PlabicGraph) -> String {
    format!("{:?}", g.canonical_form())
}

fn has_reducible_pattern(g: &PlabicGraph) -> bool {
    g.parallel_pair().is_some() || !g.interior_leaves().is_empty()
}

fn neighbors(g: &PlabicGraph) -> Vec<(Vec<VertexId>, PlabicGraph)> {
    g.square_faces()
        .into_iter()
        .filter_map(|f| g.square_move_general(&f).ok().map(|h| (f.vertices(), h)))
        .collect()
}

/// Whether some sequence of at most `depth` square moves (with degree-two
/// vertices contracted throughout) reaches a parallel pair or an interior
/// leaf.
pub fn reducible_within(g: &PlabicGraph, depth: usize) -> bool {
    let start = g.contract_all();
    let mut seen = HashSet::from([key(&start)]);
    let mut queue = VecDeque::from([(start, 0)]);
    while let Some((h, d)) = queue.pop_front() {
        if has_reducible_pattern(&h) {
            return true;
        }
        if d == depth || seen.len() > STATE_LIMIT {
            continue;
        }
        for (_, next) in neighbors(&h) {
            if seen.insert(key(&next)) {
                queue.push_back((next, d + 1));
            }
        }
    }
    false
}

/// A sequence of square faces (by corner ids in the graph current at each
/// step) leading from `g` to `h` up to degree-two moves and ids.
pub fn move_path(g: &PlabicGraph, h: &PlabicGraph, depth: usize) -> Option<Vec<Vec<VertexId>>> {
    let target = key(&h.contract_all());
    let start = g.contract_all();
    let mut seen = HashSet::from([key(&start)]);
    let mut queue = VecDeque::from([(start, Vec::new())]);
    while let Some((cur, path)) = queue.pop_front() {
        if key(&cur) == target {
            return Some(path);
        }
        if path.len() == depth || seen.len() > STATE_LIMIT {
            continue;
        }
        for (face, next) in neighbors(&cur) {
            if seen.insert(key(&next)) {
                let mut p = path.clone();
                p.push(face);
                queue.push_back((next, p));
            }
        }
    }
    None
}
