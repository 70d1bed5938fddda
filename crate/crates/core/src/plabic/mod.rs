//! Plabic graphs stored as rotation systems.
//!
//! Every vertex lists its incident edges in counterclockwise order. Boundary
//! vertices sit on the rim in clockwise order `1..n` and have degree one.
//! Colors are stored on boundary vertices too, always opposite to the unique
//! neighbor in a well-formed graph, which keeps the graph bipartite.
//!
//! Constructions follow one fixed picture: boundary `i` at `x = -i` on a
//! horizontal rim with the interior above it. Legs run straight up, and a
//! bridge `(a, b)` is a horizontal edge just above the rim between the legs.

mod moves;
mod search;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::affine::{BoundedAffinePermutation, Color, DecoratedPermutation};
use crate::coxeter::{pds, reduced_word, Permutation, Word, WordType};
use crate::error::{invalid, Error, Result};

pub use moves::{Move, Reduction};
pub use search::{move_path, reducible_within};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Vertex {
    pub color: Color,
    pub boundary: Option<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlabicGraph {
    n: usize,
    vertices: BTreeMap<VertexId, Vertex>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
    rotation: BTreeMap<VertexId, Vec<EdgeId>>,
}

/// A traversal of an edge from one endpoint to the other.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Dart {
    pub edge: EdgeId,
    pub from: VertexId,
    pub to: VertexId,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Trip {
    pub start: usize,
    pub end: usize,
    /// `vertices[i] -edges[i]-> vertices[i+1]`.
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

/// A face of the embedding as a closed walk.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Face {
    pub darts: Vec<Dart>,
}

impl Face {
    pub fn vertices(&self) -> Vec<VertexId> {
        self.darts.iter().map(|d| d.from).collect()
    }

    pub fn edges(&self) -> Vec<EdgeId> {
        self.darts.iter().map(|d| d.edge).collect()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    BoundaryLabels(String),
    BoundaryDegree { vertex: VertexId, degree: usize },
    Bipartite { edge: EdgeId },
    Unreachable { vertex: VertexId },
    NoMatching,
    NonPlanar { faces: usize, expected: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::BoundaryLabels(msg) => write!(f, "boundary labels: {msg}"),
            Violation::BoundaryDegree { vertex, degree } => {
                write!(f, "boundary degree: vertex {vertex} has degree {degree}")
            }
            Violation::Bipartite { edge } => write!(f, "bipartite: edge {edge} joins equal colors"),
            Violation::Unreachable { vertex } => write!(f, "connectivity: vertex {vertex} has no path to the boundary"),
            Violation::NoMatching => write!(f, "matching: no almost perfect matching"),
            Violation::NonPlanar { faces, expected } => {
                write!(f, "planarity: {faces} faces with the rim closed up, Euler needs {expected}")
            }
        }
    }
}

/// A bridge or a mirror-symmetric group of bridges sharing one parameter.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BridgeGroup {
    pub param: String,
    pub pairs: Vec<(usize, usize)>,
    pub edges: Vec<EdgeId>,
}

// ---------------------------------------------------------------------------
// construction and access

impl PlabicGraph {
    /// Builds a graph and checks that the rotation system matches the edges.
    /// Semantic conditions are left to [`PlabicGraph::validate`].
    pub fn from_parts(
        n: usize,
        vertices: BTreeMap<VertexId, Vertex>,
        edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
        rotation: BTreeMap<VertexId, Vec<EdgeId>>,
    ) -> Result<Self> {
        let g = PlabicGraph { n, vertices, edges, rotation };
        g.check_structure()?;
        Ok(g)
    }

    fn check_structure(&self) -> Result<()> {
        let mut incident: BTreeMap<VertexId, Vec<EdgeId>> = self.vertices.keys().map(|&v| (v, Vec::new())).collect();
        for (&e, &(u, v)) in &self.edges {
            if u == v {
                return Err(Error::Graph(format!("edge {e} is a loop")));
            }
            for x in [u, v] {
                incident
                    .get_mut(&x)
                    .ok_or_else(|| Error::Graph(format!("edge {e} uses unknown vertex {x}")))?
                    .push(e);
            }
        }
        for (v, mut inc) in incident {
            let mut rot = self.rotation.get(&v).cloned().unwrap_or_default();
            inc.sort_unstable();
            rot.sort_unstable();
            if inc != rot {
                return Err(Error::Graph(format!("rotation at {v} lists {rot:?}, incident edges are {inc:?}")));
            }
        }
        if let Some(v) = self.rotation.keys().find(|v| !self.vertices.contains_key(v)) {
            return Err(Error::Graph(format!("rotation for unknown vertex {v}")));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &BTreeMap<VertexId, Vertex> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeMap<EdgeId, (VertexId, VertexId)> {
        &self.edges
    }

    pub fn rotation(&self, v: VertexId) -> &[EdgeId] {
        self.rotation.get(&v).map(|r| r.as_slice()).unwrap_or(&[])
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[&v]
    }

    pub fn color(&self, v: VertexId) -> Color {
        self.vertices[&v].color
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation(v).len()
    }

    pub fn is_boundary(&self, v: VertexId) -> bool {
        self.vertices[&v].boundary.is_some()
    }

    pub fn ends(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[&e]
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[&e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn boundary_vertex(&self, a: usize) -> Option<VertexId> {
        self.vertices.iter().find(|(_, x)| x.boundary == Some(a)).map(|(&v, _)| v)
    }

    fn boundary_vertex_checked(&self, a: usize) -> Result<VertexId> {
        self.boundary_vertex(a)
            .ok_or_else(|| Error::Invalid(format!("no boundary vertex {a} in a graph with n = {}", self.n)))
    }

    pub fn internal_vertices(&self) -> Vec<VertexId> {
        self.vertices.iter().filter(|(_, x)| x.boundary.is_none()).map(|(&v, _)| v).collect()
    }

    /// The unique neighbor of boundary vertex `a`.
    pub fn leg_end(&self, a: usize) -> Result<(EdgeId, VertexId)> {
        let b = self.boundary_vertex_checked(a)?;
        match self.rotation(b) {
            [e] => Ok((*e, self.other_end(*e, b))),
            r => Err(Error::Graph(format!("boundary vertex {a} has degree {}", r.len()))),
        }
    }

    /// The leaf at the end of the leg at `a`, following degree-two vertices.
    pub fn lollipop_leaf(&self, a: usize) -> Option<VertexId> {
        let (mut e, mut v) = self.leg_end(a).ok()?;
        for _ in 0..self.vertices.len() {
            if self.is_boundary(v) {
                return None;
            }
            match self.rotation(v) {
                [_] => return Some(v),
                [x, y] => {
                    e = if *x == e { *y } else { *x };
                    v = self.other_end(e, v);
                }
                _ => return None,
            }
        }
        None
    }

    /// Whether the leg at `a` ends in an internal leaf, possibly through
    /// degree-two vertices.
    pub fn is_lollipop(&self, a: usize) -> bool {
        self.lollipop_leaf(a).is_some()
    }

    /// Leaves that do not end a lollipop.
    pub fn interior_leaves(&self) -> Vec<VertexId> {
        let lollipops: BTreeSet<VertexId> = (1..=self.n).filter_map(|a| self.lollipop_leaf(a)).collect();
        self.internal_vertices()
            .into_iter()
            .filter(|&v| self.degree(v) == 1 && !lollipops.contains(&v))
            .collect()
    }

    pub(crate) fn next_vertex_id(&self) -> VertexId {
        self.vertices.keys().next_back().map_or(1, |v| v + 1)
    }

    pub(crate) fn next_edge_id(&self) -> EdgeId {
        self.edges.keys().next_back().map_or(1, |e| e + 1)
    }

    pub(crate) fn add_vertex(&mut self, color: Color, boundary: Option<usize>) -> VertexId {
        let id = self.next_vertex_id();
        self.vertices.insert(id, Vertex { color, boundary });
        self.rotation.insert(id, Vec::new());
        id
    }

    /// Adds an edge without touching rotations.
    pub(crate) fn add_edge_raw(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        let id = self.next_edge_id();
        self.edges.insert(id, (u, v));
        id
    }

    pub(crate) fn rotation_mut(&mut self, v: VertexId) -> &mut Vec<EdgeId> {
        self.rotation.entry(v).or_default()
    }

    pub(crate) fn set_color(&mut self, v: VertexId, c: Color) {
        self.vertices.get_mut(&v).expect("vertex").color = c;
    }

    /// Re-points the end of `e` at `old` to `new`; rotations untouched.
    pub(crate) fn repoint(&mut self, e: EdgeId, old: VertexId, new: VertexId) {
        let ends = self.edges.get_mut(&e).expect("edge");
        if ends.0 == old {
            ends.0 = new;
        } else {
            debug_assert_eq!(ends.1, old);
            ends.1 = new;
        }
    }

    pub(crate) fn remove_edge(&mut self, e: EdgeId) {
        let (u, v) = self.edges.remove(&e).expect("edge");
        for x in [u, v] {
            if let Some(r) = self.rotation.get_mut(&x) {
                r.retain(|&f| f != e);
            }
        }
    }

    pub(crate) fn remove_vertex(&mut self, v: VertexId) {
        for e in self.rotation(v).to_vec() {
            if self.edges.contains_key(&e) {
                self.remove_edge(e);
            }
        }
        self.vertices.remove(&v);
        self.rotation.remove(&v);
    }

    /// Sets each boundary vertex to the opposite of its neighbor.
    pub(crate) fn recolor_boundary(&mut self) {
        for v in self.vertices.keys().copied().collect::<Vec<_>>() {
            if self.is_boundary(v) {
                if let [e] = self.rotation(v) {
                    let c = self.color(self.other_end(*e, v)).flip();
                    self.set_color(v, c);
                }
            }
        }
    }

    /// The graph with `n` lollipops, white exactly on `j`.
    pub fn lollipop(j: &BTreeSet<usize>, n: usize) -> Result<Self> {
        if let Some(bad) = j.iter().find(|&&x| x == 0 || x > n) {
            return invalid(format!("{bad} is not in [{n}]"));
        }
        let mut g = PlabicGraph { n, vertices: BTreeMap::new(), edges: BTreeMap::new(), rotation: BTreeMap::new() };
        for a in 1..=n {
            let leaf_color = if j.contains(&a) { Color::White } else { Color::Black };
            let b = g.add_vertex(leaf_color.flip(), Some(a));
            let l = g.add_vertex(leaf_color, None);
            let e = g.add_edge_raw(b, l);
            g.rotation_mut(b).push(e);
            g.rotation_mut(l).push(e);
        }
        Ok(g)
    }

    /// Adds an `(a, b)`-bridge, white on the leg at `a` and black on the leg
    /// at `b`, after checking the hypotheses that make the result reduced.
    pub fn add_bridge(&self, a: usize, b: usize) -> Result<(PlabicGraph, EdgeId)> {
        if !(1 <= a && a < b && b <= self.n) {
            return Err(Error::Hypothesis(format!("need 1 <= a < b <= {}, got ({a}, {b})", self.n)));
        }
        if let Some(c) = (a + 1..b).find(|&c| !self.is_lollipop(c)) {
            return Err(Error::Hypothesis(format!("{c} lies between {a} and {b} and is not a lollipop")));
        }
        let f = self.bounded_affine()?;
        if f.at(a as i64) <= f.at(b as i64) {
            return Err(Error::Hypothesis(format!(
                "f({a}) = {} is not greater than f({b}) = {}",
                f.at(a as i64),
                f.at(b as i64)
            )));
        }
        Ok(self.add_bridge_unchecked(a, b))
    }

    pub(crate) fn add_bridge_unchecked(&self, a: usize, b: usize) -> (PlabicGraph, EdgeId) {
        let mut g = self.clone();
        let p = g.bridge_endpoint(a, Color::White);
        let q = g.bridge_endpoint(b, Color::Black);
        let e = g.add_edge_raw(p, q);
        // [up, bridge, down] at a; [bridge, up, down] at b; a reused leaf only
        // has [bridge, down]
        let rot_p = g.rotation_mut(p);
        if rot_p.len() == 1 {
            rot_p.insert(0, e);
        } else {
            rot_p.insert(1, e);
        }
        g.rotation_mut(q).insert(0, e);
        g.recolor_boundary();
        (g, e)
    }

    /// The vertex on the leg at `a` that the bridge attaches to. A fresh
    /// vertex gets rotation `[up, down]`.
    fn bridge_endpoint(&mut self, a: usize, color: Color) -> VertexId {
        let (leg, x) = self.leg_end(a).expect("valid leg");
        if !self.is_boundary(x) && self.degree(x) == 1 && self.color(x) == color {
            return x;
        }
        let bv = self.boundary_vertex(a).expect("boundary");
        let p = self.add_vertex(color, None);
        // the leg keeps its id as the upper part
        self.repoint(leg, bv, p);
        let down = self.add_edge_raw(bv, p);
        *self.rotation_mut(bv) = vec![down];
        self.rotation_mut(p).extend([leg, down]);
        if !self.is_boundary(x) && self.color(x) == color {
            self.subdivide(leg, p);
        }
        p
    }

    /// Puts a degree-two vertex of the opposite color on `e`, next to `near`.
    pub(crate) fn subdivide(&mut self, e: EdgeId, near: VertexId) -> VertexId {
        let c = self.color(near).flip();
        let z = self.add_vertex(c, None);
        self.repoint(e, near, z);
        let f = self.add_edge_raw(near, z);
        for slot in self.rotation_mut(near).iter_mut() {
            if *slot == e {
                *slot = f;
            }
        }
        self.rotation_mut(z).extend([e, f]);
        z
    }

    // -----------------------------------------------------------------------
    // validation

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let labels: Vec<usize> = self.vertices.values().filter_map(|v| v.boundary).collect();
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted != (1..=self.n).collect::<Vec<_>>() {
            out.push(Violation::BoundaryLabels(format!("expected 1..{}, found {sorted:?}", self.n)));
        }
        for (&v, x) in &self.vertices {
            if x.boundary.is_some() && self.degree(v) != 1 {
                out.push(Violation::BoundaryDegree { vertex: v, degree: self.degree(v) });
            }
        }
        for (&e, &(u, v)) in &self.edges {
            if self.color(u) == self.color(v) {
                out.push(Violation::Bipartite { edge: e });
            }
        }
        let reach = self.reachable_from_boundary();
        for &v in self.vertices.keys() {
            if !reach.contains(&v) {
                out.push(Violation::Unreachable { vertex: v });
            }
        }
        if crate::measurement::first_matching(self).is_none() {
            out.push(Violation::NoMatching);
        }
        if out.iter().all(|v| !matches!(v, Violation::BoundaryLabels(_) | Violation::BoundaryDegree { .. })) {
            let (faces, expected) = self.euler_check();
            if faces != expected {
                out.push(Violation::NonPlanar { faces, expected });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn reachable_from_boundary(&self) -> BTreeSet<VertexId> {
        let mut seen: BTreeSet<VertexId> =
            self.vertices.iter().filter(|(_, x)| x.boundary.is_some()).map(|(&v, _)| v).collect();
        let mut queue: VecDeque<VertexId> = seen.iter().copied().collect();
        while let Some(v) = queue.pop_front() {
            for &e in self.rotation(v) {
                let w = self.other_end(e, v);
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Closes the disk with an outer vertex joined to the boundary in order
    /// and compares the face count with Euler's formula.
    fn euler_check(&self) -> (usize, usize) {
        let mut h = self.clone();
        let o = h.add_vertex(Color::Black, None);
        for a in 1..=self.n {
            let b = h.boundary_vertex(a).expect("labels checked");
            let e = h.add_edge_raw(o, b);
            h.rotation_mut(o).push(e);
            h.rotation_mut(b).push(e);
        }
        let faces = h.faces().len();
        let comps = h.component_count();
        let expected = 2 * comps + h.edges.len() - h.vertices.len();
        (faces, expected)
    }

    fn component_count(&self) -> usize {
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for &s in self.vertices.keys() {
            if !seen.insert(s) {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &e in self.rotation(v) {
                    let w = self.other_end(e, v);
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// Faces as orbits of "arrive at v, leave by the next edge counterclockwise".
    pub fn faces(&self) -> Vec<Face> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (&e, &(u, v)) in &self.edges {
            for (from, to) in [(u, v), (v, u)] {
                if seen.contains(&(e, from)) {
                    continue;
                }
                let mut darts = Vec::new();
                let (mut ce, mut cf, mut ct) = (e, from, to);
                while seen.insert((ce, cf)) {
                    darts.push(Dart { edge: ce, from: cf, to: ct });
                    let rot = self.rotation(ct);
                    let pos = rot.iter().position(|&x| x == ce).expect("rotation lists the edge");
                    let ne = rot[(pos + 1) % rot.len()];
                    cf = ct;
                    ct = self.other_end(ne, cf);
                    ce = ne;
                }
                out.push(Face { darts });
            }
        }
        out
    }

    // -----------------------------------------------------------------------
    // trips

    /// Rules of the road: after arriving along `e` at an internal vertex,
    /// leave by the counterclockwise predecessor of `e` at a white vertex
    /// (the sharpest left turn) and by its successor at a black one.
    fn turn(&self, e: EdgeId, at: VertexId) -> EdgeId {
        let rot = self.rotation(at);
        let d = rot.len();
        let pos = rot.iter().position(|&x| x == e).expect("rotation lists the edge");
        match self.color(at) {
            Color::White => rot[(pos + d - 1) % d],
            Color::Black => rot[(pos + 1) % d],
        }
    }

    pub fn trip(&self, a: usize) -> Result<Trip> {
        let (mut e, mut v) = self.leg_end(a)?;
        let start = self.boundary_vertex_checked(a)?;
        let mut vertices = vec![start, v];
        let mut edges = vec![e];
        let limit = 2 * self.edges.len() + 1;
        while !self.is_boundary(v) {
            if edges.len() > limit {
                return Err(Error::Graph(format!("trip from {a} does not reach the boundary")));
            }
            e = self.turn(e, v);
            v = self.other_end(e, v);
            vertices.push(v);
            edges.push(e);
        }
        let end = self.vertices[&v].boundary.expect("boundary");
        Ok(Trip { start: a, end, vertices, edges })
    }

    pub fn trips(&self) -> Result<Vec<Trip>> {
        (1..=self.n).map(|a| self.trip(a)).collect()
    }

    /// Trips that never meet the boundary, as dart cycles.
    pub fn closed_trips(&self) -> Result<Vec<Vec<Dart>>> {
        let mut used = BTreeSet::new();
        for t in self.trips()? {
            for (i, &e) in t.edges.iter().enumerate() {
                used.insert((e, t.vertices[i]));
            }
        }
        let mut out = Vec::new();
        for (&e, &(u, v)) in &self.edges {
            for (from, to) in [(u, v), (v, u)] {
                if used.contains(&(e, from)) {
                    continue;
                }
                let mut cycle = Vec::new();
                let (mut ce, mut cf, mut ct) = (e, from, to);
                while used.insert((ce, cf)) {
                    cycle.push(Dart { edge: ce, from: cf, to: ct });
                    let ne = self.turn(ce, ct);
                    cf = ct;
                    ct = self.other_end(ne, cf);
                    ce = ne;
                }
                out.push(cycle);
            }
        }
        Ok(out)
    }

    /// `σ_G`. A fixed point is colored like its lollipop leaf, or like the
    /// neighbor of the boundary vertex when there is no leaf.
    pub fn trip_permutation(&self) -> Result<DecoratedPermutation> {
        let trips = self.trips()?;
        let perm = Permutation::new(trips.iter().map(|t| t.end).collect())?;
        let mut white = BTreeSet::new();
        let mut black = BTreeSet::new();
        for t in &trips {
            if t.end == t.start {
                let v = self.lollipop_leaf(t.start).unwrap_or(t.vertices[1]);
                match self.color(v) {
                    Color::White => white.insert(t.start),
                    Color::Black => black.insert(t.start),
                };
            }
        }
        DecoratedPermutation::new(perm, white, black)
    }

    pub fn bounded_affine(&self) -> Result<BoundedAffinePermutation> {
        BoundedAffinePermutation::from_decorated(&self.trip_permutation()?)
    }

    /// Reducedness through the trip criterion. Interior leaves have to be
    /// removed first.
    pub fn is_reduced(&self) -> Result<bool> {
        if let Some(&v) = self.interior_leaves().first() {
            return Err(Error::Graph(format!("interior leaf {v}; apply leaf removal before testing reducedness")));
        }
        Ok(self.reducedness_witness()?.is_none())
    }

    /// The first failed condition of the trip criterion, if any.
    pub fn reducedness_witness(&self) -> Result<Option<String>> {
        if let Some(c) = self.closed_trips()?.first() {
            return Ok(Some(format!("closed trip through edge {}", c[0].edge)));
        }
        let trips = self.trips()?;
        for t in &trips {
            let lollipop_trip = t.start == t.end && self.is_lollipop(t.start);
            let distinct: BTreeSet<_> = t.edges.iter().collect();
            if distinct.len() < t.edges.len() && !lollipop_trip {
                return Ok(Some(format!("trip from {} uses an edge twice", t.start)));
            }
        }
        for (i, t) in trips.iter().enumerate() {
            for s in &trips[i + 1..] {
                if let Some((e1, e2)) = bad_double_crossing(t, s) {
                    return Ok(Some(format!(
                        "trips from {} and {} share edges {e1} and {e2} in the same order",
                        t.start, s.start
                    )));
                }
            }
        }
        for t in &trips {
            if t.start == t.end && !self.is_lollipop(t.start) {
                return Ok(Some(format!("fixed point {} is not a lollipop", t.start)));
            }
        }
        Ok(None)
    }

    // -----------------------------------------------------------------------
    // canonical form and output

    /// Relabels vertices and edges by a planar search from the boundary in
    /// order, so graphs equal up to ids get equal canonical forms.
    pub fn canonical_form(&self) -> PlabicGraph {
        let mut vmap: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut emap: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
        let mut entry: BTreeMap<VertexId, Option<EdgeId>> = BTreeMap::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        let mut seeds: Vec<VertexId> = (1..=self.n).filter_map(|a| self.boundary_vertex(a)).collect();
        seeds.extend(self.vertices.keys().filter(|v| !self.is_boundary(**v)));
        for s in seeds {
            if vmap.contains_key(&s) {
                continue;
            }
            vmap.insert(s, vmap.len() + 1);
            entry.insert(s, self.rotation(s).first().copied());
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for e in self.rotated_from(v, entry[&v]) {
                    if !emap.contains_key(&e) {
                        emap.insert(e, emap.len() + 1);
                    }
                    let w = self.other_end(e, v);
                    if !vmap.contains_key(&w) {
                        vmap.insert(w, vmap.len() + 1);
                        entry.insert(w, Some(e));
                        queue.push_back(w);
                    }
                }
            }
        }
        let vertices = self.vertices.iter().map(|(v, x)| (vmap[v], *x)).collect();
        let edges = self.edges.iter().map(|(e, (u, v))| (emap[e], (vmap[u], vmap[v]))).collect();
        let rotation = order
            .iter()
            .map(|&v| (vmap[&v], self.rotated_from(v, entry[&v]).into_iter().map(|e| emap[&e]).collect()))
            .collect();
        let mut g = PlabicGraph { n: self.n, vertices, edges, rotation };
        // endpoints stored in increasing order so equal graphs compare equal
        for ends in g.edges.values_mut() {
            if ends.0 > ends.1 {
                *ends = (ends.1, ends.0);
            }
        }
        g
    }

    fn rotated_from(&self, v: VertexId, start: Option<EdgeId>) -> Vec<EdgeId> {
        let rot = self.rotation(v);
        let pos = start.and_then(|s| rot.iter().position(|&e| e == s)).unwrap_or(0);
        rot[pos..].iter().chain(&rot[..pos]).copied().collect()
    }

    /// Move equivalence of reduced graphs, decided by comparing trip
    /// permutations. [`move_path`] finds explicit moves at small sizes.
    pub fn move_equivalent(&self, other: &PlabicGraph) -> Result<bool> {
        for g in [self, other] {
            if !g.is_reduced()? {
                return Err(Error::Graph("move equivalence is decided for reduced graphs only".into()));
            }
        }
        Ok(self.n == other.n && self.trip_permutation()? == other.trip_permutation()?)
    }

    /// Reflection: rotations reversed, colors flipped, boundary `a` relabeled
    /// `n + 1 - a`. Ids are kept.
    pub fn mirror_image(&self) -> PlabicGraph {
        let mut g = self.clone();
        for x in g.vertices.values_mut() {
            x.color = x.color.flip();
            x.boundary = x.boundary.map(|a| self.n + 1 - a);
        }
        for rot in g.rotation.values_mut() {
            rot.reverse();
        }
        g
    }

    pub fn same_up_to_ids(&self, other: &PlabicGraph) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// Graphviz text with the boundary pinned on a circle, clockwise from the
    /// top. A mirror map adds the distinguished diameter as a dashed line.
    pub fn to_dot(&self, mirror: Option<&BTreeMap<VertexId, VertexId>>) -> String {
        let mut s = String::from("graph plabic {\n  layout=neato;\n  node [shape=circle, style=filled, label=\"\", width=0.2];\n");
        let radius = 3.0_f64;
        let angle = |pos: f64| {
            let t = std::f64::consts::FRAC_PI_2 - 2.0 * std::f64::consts::PI * pos / self.n as f64;
            (radius * t.cos(), radius * t.sin())
        };
        for (&v, x) in &self.vertices {
            let fill = match x.color {
                Color::Black => "black",
                Color::White => "white",
            };
            match x.boundary {
                Some(a) => {
                    let (px, py) = angle(a as f64 - 1.0);
                    let _ = writeln!(
                        s,
                        "  v{v} [fillcolor={fill}, shape=doublecircle, xlabel=\"{a}\", pos=\"{px:.3},{py:.3}!\"];"
                    );
                }
                None => {
                    let _ = writeln!(s, "  v{v} [fillcolor={fill}];");
                }
            }
        }
        for (&e, &(u, v)) in &self.edges {
            let _ = writeln!(s, "  v{u} -- v{v} [id=\"e{e}\"];");
        }
        if mirror.is_some() {
            let half = self.n as f64 / 2.0;
            let (x1, y1) = angle(half - 0.5);
            let (x2, y2) = angle(-0.5);
            let _ = writeln!(s, "  d1 [shape=point, width=0.05, pos=\"{x1:.3},{y1:.3}!\"];");
            let _ = writeln!(s, "  d2 [shape=point, width=0.05, pos=\"{x2:.3},{y2:.3}!\"];");
            s.push_str("  d1 -- d2 [style=dashed, color=gray];\n");
        }
        s.push_str("}\n");
        s
    }
}

fn bad_double_crossing(t: &Trip, s: &Trip) -> Option<(EdgeId, EdgeId)> {
    let first_pos = |trip: &Trip| {
        let mut m = BTreeMap::new();
        for (i, &e) in trip.edges.iter().enumerate() {
            m.entry(e).or_insert(i);
        }
        m
    };
    let pt = first_pos(t);
    let ps = first_pos(s);
    let mut common: Vec<EdgeId> = pt.keys().filter(|e| ps.contains_key(e)).copied().collect();
    common.sort_by_key(|e| pt[e]);
    for (i, &e1) in common.iter().enumerate() {
        for &e2 in &common[i + 1..] {
            if ps[&e1] < ps[&e2] {
                return Some((e1, e2));
            }
        }
    }
    None
}

/// Bridges `(a_r, b_r) = u_(j_r - 1) s_{i_{j_r}} u_(j_r - 1)^{-1}` for the
/// letters outside the positive distinguished subexpression, listed in the
/// order they are added (last letter first).
pub fn bridge_sequence(u: &Permutation, word: &Word) -> Result<Vec<(usize, usize)>> {
    let mask = pds(u, word)?;
    let mut prefix = Permutation::identity(word.degree());
    let mut seq = Vec::new();
    for (&i, &keep) in word.letters.iter().zip(&mask) {
        let g = word.generator(i);
        if keep {
            prefix = prefix.compose(&g);
        } else {
            // the conjugate of a type A simple reflection is a transposition
            let moved: Vec<usize> = (1..=word.degree()).filter(|&x| g.at(x) != x).collect();
            let (x, y) = (prefix.at(moved[0]), prefix.at(moved[1]));
            seq.push((x.min(y), x.max(y)));
        }
    }
    seq.reverse();
    Ok(seq)
}

/// The bridge graph of `<u, w>_k`, built from the lollipop graph of `u([k])`.
/// Bridge `r` carries parameter `t_r` in the indexing where the first added
/// bridge is `t_d`.
pub fn bridge_graph(
    u: &Permutation,
    w: &Permutation,
    k: usize,
    word: Option<&Word>,
) -> Result<(PlabicGraph, Vec<BridgeGroup>)> {
    if !crate::coxeter::k_bruhat_leq(u, w, k)? {
        return Err(Error::NotBelow(format!("{u} is not below {w} in the {k}-Bruhat order")));
    }
    let owned;
    let word = match word {
        Some(wd) => {
            if wd.kind != WordType::A || wd.product() != *w || !wd.is_reduced() {
                return invalid("the supplied word is not a reduced type A word for w");
            }
            wd
        }
        None => {
            owned = reduced_word(w, WordType::A);
            &owned
        }
    };
    let seq = bridge_sequence(u, word)?;
    let n = u.n();
    let mut g = PlabicGraph::lollipop(&u.image(1..=k), n)?;
    let d = seq.len();
    let mut groups = Vec::new();
    for (idx, &(a, b)) in seq.iter().enumerate() {
        let (next, e) = g.add_bridge(a, b)?;
        g = next;
        groups.push(BridgeGroup { param: format!("t{}", d - idx), pairs: vec![(a, b)], edges: vec![e] });
    }
    Ok((g, groups))
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: VertexId,
    color: Color,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    boundary: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    id: EdgeId,
    ends: [VertexId; 2],
}

#[derive(Serialize, Deserialize)]
struct BridgeJson {
    edges: Vec<EdgeId>,
    param: String,
    #[serde(default)]
    pairs: Vec<(usize, usize)>,
}

/// Graph JSON with optional mirror map and bridge list.
#[derive(Serialize, Deserialize)]
pub struct GraphDocument {
    n: usize,
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
    rotation: BTreeMap<VertexId, Vec<EdgeId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    symmetry: Option<BTreeMap<VertexId, VertexId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bridges: Option<Vec<BridgeJson>>,
}

impl GraphDocument {
    pub fn new(
        g: &PlabicGraph,
        symmetry: Option<&BTreeMap<VertexId, VertexId>>,
        bridges: Option<&[BridgeGroup]>,
    ) -> Self {
        GraphDocument {
            n: g.n,
            vertices: g
                .vertices
                .iter()
                .map(|(&id, x)| VertexJson { id, color: x.color, boundary: x.boundary })
                .collect(),
            edges: g.edges.iter().map(|(&id, &(u, v))| EdgeJson { id, ends: [u, v] }).collect(),
            rotation: g.rotation.clone(),
            symmetry: symmetry.cloned(),
            bridges: bridges.map(|bs| {
                bs.iter()
                    .map(|b| BridgeJson { edges: b.edges.clone(), param: b.param.clone(), pairs: b.pairs.clone() })
                    .collect()
            }),
        }
    }

    pub fn graph(&self) -> Result<PlabicGraph> {
        let mut vertices = BTreeMap::new();
        for v in &self.vertices {
            if vertices.insert(v.id, Vertex { color: v.color, boundary: v.boundary }).is_some() {
                return Err(Error::Graph(format!("duplicate vertex id {}", v.id)));
            }
        }
        let mut edges = BTreeMap::new();
        for e in &self.edges {
            if edges.insert(e.id, (e.ends[0], e.ends[1])).is_some() {
                return Err(Error::Graph(format!("duplicate edge id {}", e.id)));
            }
        }
        PlabicGraph::from_parts(self.n, vertices, edges, self.rotation.clone())
    }

    pub fn symmetry(&self) -> Option<&BTreeMap<VertexId, VertexId>> {
        self.symmetry.as_ref()
    }

    pub fn bridges(&self) -> Option<Vec<BridgeGroup>> {
        self.bridges.as_ref().map(|bs| {
            bs.iter()
                .map(|b| BridgeGroup { param: b.param.clone(), pairs: b.pairs.clone(), edges: b.edges.clone() })
                .collect()
        })
    }
}
