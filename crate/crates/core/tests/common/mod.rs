#![allow(dead_code)]

use std::collections::HashMap;

use lagplabic::coxeter::*;

/// Every `P`-Bruhat interval `[x, y]`, grouped by its canonical pair.
pub fn interval_classes(k: usize, n: usize) -> HashMap<(Permutation, Permutation), Vec<(Permutation, Permutation)>> {
    let perms = all_permutations(n);
    let mut classes: HashMap<_, Vec<_>> = HashMap::new();
    for y in &perms {
        for x in &perms {
            if k_bruhat_leq(x, y, k).unwrap() {
                classes.entry(canonical_rep(x, y, k).unwrap()).or_default().push((x.clone(), y.clone()));
            }
        }
    }
    classes
}

/// `⟨u,w⟩ ≤ ⟨x,y⟩` iff some representative interval `[x', y']` sits inside
/// some representative `[u', w']`. Containment is taken in Bruhat order:
/// with `≤_P` the cover `⟨id,312⟩ < ⟨132,312⟩` of `Q(1,3)` would be missed.
pub fn q_leq(
    classes: &HashMap<(Permutation, Permutation), Vec<(Permutation, Permutation)>>,
    a: &(Permutation, Permutation),
    b: &(Permutation, Permutation),
) -> bool {
    for (u1, w1) in &classes[a] {
        for (x1, y1) in &classes[b] {
            if bruhat_leq(u1, x1).unwrap() && bruhat_leq(y1, w1).unwrap() {
                return true;
            }
        }
    }
    false
}

use std::collections::BTreeMap;

use lagplabic::affine::Color;
use lagplabic::plabic::{PlabicGraph, Vertex};

/// A graph from a drawing: rotations are read off the coordinates by
/// sorting incident edges by angle.
pub fn from_drawing(n: usize, points: &[(usize, Color, Option<usize>, f64, f64)], edges: &[(usize, usize)]) -> PlabicGraph {
    let pos: BTreeMap<usize, (f64, f64)> = points.iter().map(|&(id, _, _, x, y)| (id, (x, y))).collect();
    let vertices = points.iter().map(|&(id, color, boundary, _, _)| (id, Vertex { color, boundary })).collect();
    let edge_map: BTreeMap<usize, (usize, usize)> = edges.iter().enumerate().map(|(i, &e)| (i + 1, e)).collect();
    let mut rotation: BTreeMap<usize, Vec<usize>> = pos.keys().map(|&v| (v, Vec::new())).collect();
    for (&e, &(u, v)) in &edge_map {
        rotation.get_mut(&u).unwrap().push(e);
        rotation.get_mut(&v).unwrap().push(e);
    }
    for (&v, rot) in rotation.iter_mut() {
        let (x0, y0) = pos[&v];
        let angle = |e: &usize| {
            let (a, b) = edge_map[e];
            let w = if a == v { b } else { a };
            let (x, y) = pos[&w];
            (y - y0).atan2(x - x0)
        };
        rot.sort_by(|a, b| angle(a).partial_cmp(&angle(b)).unwrap());
    }
    PlabicGraph::from_parts(n, vertices, edge_map, rotation).unwrap()
}

/// The eight-boundary symmetric graph of the introductory figure: a square
/// bisected by the diameter with four legs, and two degree-two vertices
/// joining boundary 2 to 3 and 6 to 7. Edge ids: 1 top (crossing), 2 left,
/// 3 bottom (crossing), 4 right.
pub fn figure_graph() -> PlabicGraph {
    use Color::{Black as B, White as W};
    let r = 3.0_f64;
    let at = |deg: f64, rad: f64| (rad * deg.to_radians().cos(), rad * deg.to_radians().sin());
    let p = |id, c, b, (x, y): (f64, f64)| (id, c, b, x, y);
    let points = vec![
        p(1, B, None, at(60.0, 2.0)),
        p(2, W, None, at(120.0, 2.0)),
        p(3, B, None, at(240.0, 2.0)),
        p(4, W, None, at(300.0, 2.0)),
        p(5, W, None, (2.0, 0.0)),
        p(6, B, None, (-2.0, 0.0)),
        p(11, W, Some(1), at(60.0, r)),
        p(12, B, Some(2), at(30.0, r)),
        p(13, B, Some(3), at(-30.0, r)),
        p(14, B, Some(4), at(-60.0, r)),
        p(15, W, Some(5), at(240.0, r)),
        p(16, W, Some(6), at(210.0, r)),
        p(17, W, Some(7), at(150.0, r)),
        p(18, B, Some(8), at(120.0, r)),
    ];
    let edges = [(1, 2), (2, 3), (3, 4), (4, 1), (1, 11), (2, 18), (3, 15), (4, 14), (12, 5), (5, 13), (17, 6), (6, 16)];
    from_drawing(8, &points, &edges)
}
