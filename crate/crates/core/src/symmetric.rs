//! Plabic graphs symmetric under reflection through a diameter.
//!
//! The diameter runs from the gap between boundary `2n` and `1` to the gap
//! between `n` and `n + 1`. Reflection reverses every rotation, flips every
//! color and sends boundary `a` to `a' = 2n + 1 - a`. The reflection is
//! re-derived from the rotation system by a search seeded at the boundary,
//! so a stored map is only ever compared against the derived one.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::affine::{BoundedAffinePermutation, Color};
use crate::coxeter::{pds, reduced_word, Permutation, SignedPermutation, Word, WordType};
use crate::error::{Error, Result};
use crate::plabic::{BridgeGroup, Dart, EdgeId, Move, PlabicGraph, VertexId};

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricPlabicGraph {
    graph: PlabicGraph,
    mirror: BTreeMap<VertexId, VertexId>,
    edge_mirror: BTreeMap<EdgeId, EdgeId>,
}

/// Reflection maps on vertices and edges.
pub type MirrorMaps = (BTreeMap<VertexId, VertexId>, BTreeMap<EdgeId, EdgeId>);

/// The reflection of `g`, if `g` is symmetric.
pub fn derive_mirror(g: &PlabicGraph) -> Result<MirrorMaps> {
    let big_n = g.n();
    if big_n % 2 != 0 {
        return Err(Error::Graph(format!("a symmetric graph has an even number of boundary vertices, got {big_n}")));
    }
    let mut vmap: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut emap: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    let mut anchor: BTreeMap<VertexId, (EdgeId, EdgeId)> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let bad = |msg: String| Error::Graph(format!("not symmetric: {msg}"));
    for a in 1..=big_n {
        let (e, _) = g.leg_end(a)?;
        let (f, _) = g.leg_end(big_n + 1 - a)?;
        let v = g.boundary_vertex(a).expect("leg found");
        let w = g.boundary_vertex(big_n + 1 - a).expect("leg found");
        vmap.insert(v, w);
        anchor.insert(v, (e, f));
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        let w = vmap[&v];
        let (e, f) = anchor[&v];
        let (rv, rw) = (g.rotation(v), g.rotation(w));
        if rv.len() != rw.len() {
            return Err(bad(format!("vertex {v} has degree {} but its image {w} has {}", rv.len(), rw.len())));
        }
        let d = rv.len();
        let pe = rv.iter().position(|&x| x == e).expect("anchor at v");
        let pf = rw.iter().position(|&x| x == f).expect("anchor at w");
        for i in 0..d {
            // counterclockwise at v becomes clockwise at w
            let ei = rv[(pe + i) % d];
            let fi = rw[(pf + d - i) % d];
            match emap.get(&ei) {
                Some(&old) if old != fi => return Err(bad(format!("edge {ei} maps to both {old} and {fi}"))),
                _ => {
                    emap.insert(ei, fi);
                }
            }
            let x = g.other_end(ei, v);
            let y = g.other_end(fi, w);
            match vmap.get(&x) {
                Some(&old) if old != y => return Err(bad(format!("vertex {x} maps to both {old} and {y}"))),
                Some(_) => {}
                None => {
                    vmap.insert(x, y);
                    anchor.insert(x, (ei, fi));
                    queue.push_back(x);
                }
            }
        }
    }
    if vmap.len() != g.vertices().len() || emap.len() != g.edges().len() {
        return Err(bad("some vertex is not reached from the boundary".into()));
    }
    for (&v, &w) in &vmap {
        if v == w {
            return Err(bad(format!("vertex {v} lies on the diameter")));
        }
        if vmap.get(&w) != Some(&v) {
            return Err(bad(format!("reflection is not an involution at {v}")));
        }
        if g.color(v) == g.color(w) {
            return Err(bad(format!("vertices {v} and {w} have the same color")));
        }
    }
    for (&e, &f) in &emap {
        if emap.get(&f) != Some(&e) {
            return Err(bad(format!("edge reflection is not an involution at {e}")));
        }
    }
    Ok((vmap, emap))
}

/// Whether `r` is the reflection of `g`.
pub fn check_symmetry(g: &PlabicGraph, r: &BTreeMap<VertexId, VertexId>) -> bool {
    g.is_valid() && matches!(derive_mirror(g), Ok((m, _)) if &m == r)
}

impl SymmetricPlabicGraph {
    /// Checks `mirror` against the reflection derived from `graph`.
    pub fn new(graph: PlabicGraph, mirror: BTreeMap<VertexId, VertexId>) -> Result<Self> {
        let s = Self::from_graph(graph)?;
        if s.mirror != mirror {
            return Err(Error::Graph("the stored symmetry differs from the reflection of the graph".into()));
        }
        Ok(s)
    }

    pub fn from_graph(graph: PlabicGraph) -> Result<Self> {
        let violations = graph.validate();
        if let Some(v) = violations.first() {
            return Err(Error::Graph(v.to_string()));
        }
        let (mirror, edge_mirror) = derive_mirror(&graph)?;
        Ok(SymmetricPlabicGraph { graph, mirror, edge_mirror })
    }

    /// The lollipop graph for `j`, which must contain exactly one of `i`
    /// and `i'` for every `i`.
    pub fn lollipop(j: &BTreeSet<usize>, n: usize) -> Result<Self> {
        for i in 1..=n {
            if j.contains(&i) == j.contains(&(2 * n + 1 - i)) {
                return Err(Error::NotTypeC(format!("{j:?} must contain exactly one of {i} and {}", 2 * n + 1 - i)));
            }
        }
        Self::from_graph(PlabicGraph::lollipop(j, 2 * n)?)
    }

    pub fn graph(&self) -> &PlabicGraph {
        &self.graph
    }

    pub fn into_graph(self) -> PlabicGraph {
        self.graph
    }

    /// Half the number of boundary vertices.
    pub fn half(&self) -> usize {
        self.graph.n() / 2
    }

    pub fn mirror(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.mirror
    }

    pub fn mirror_vertex(&self, v: VertexId) -> VertexId {
        self.mirror[&v]
    }

    pub fn mirror_edge(&self, e: EdgeId) -> EdgeId {
        self.edge_mirror[&e]
    }

    /// Edges that cross the diameter: those joining a vertex to its mirror.
    /// A single such edge is fixed by the reflection; a parallel pair of them
    /// is swapped.
    pub fn crossing_edges(&self) -> Vec<EdgeId> {
        self.graph.edges().keys().copied().filter(|&e| self.is_crossing(e)).collect()
    }

    pub fn is_crossing(&self, e: EdgeId) -> bool {
        matches!(self.graph.edges().get(&e), Some(&(u, v)) if self.mirror[&u] == v)
    }

    pub fn bounded_affine(&self) -> Result<BoundedAffinePermutation> {
        self.graph.bounded_affine()
    }

    /// Reducedness of a symmetric graph is ordinary reducedness.
    pub fn is_reduced(&self) -> Result<bool> {
        self.graph.is_reduced()
    }

    pub fn to_dot(&self) -> String {
        self.graph.to_dot(Some(&self.mirror))
    }

    // -----------------------------------------------------------------------
    // sides and halves

    /// Vertices on the side of boundary `1..n`.
    pub fn side_one(&self) -> Result<BTreeSet<VertexId>> {
        let g = &self.graph;
        let crossing: BTreeSet<EdgeId> = self.crossing_edges().into_iter().collect();
        let mut seeds: Vec<VertexId> = (1..=self.half()).filter_map(|a| g.boundary_vertex(a)).collect();
        for (e, from) in self.crossing_order()? {
            seeds.push(from_side_one(g, e, from));
        }
        let mut seen: BTreeSet<VertexId> = seeds.iter().copied().collect();
        let mut queue: VecDeque<VertexId> = seeds.into_iter().collect();
        while let Some(v) = queue.pop_front() {
            for &e in g.rotation(v) {
                if crossing.contains(&e) {
                    continue;
                }
                let w = g.other_end(e, v);
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|v| seen.contains(&self.mirror[v])) || 2 * seen.len() != g.vertices().len() {
            return Err(Error::Graph("the diameter does not split the graph into mirror halves".into()));
        }
        Ok(seen)
    }

    /// Crossing edges in order along the diameter from the gap between `n`
    /// and `n + 1` up to the gap between `2n` and `1`, each with the dart
    /// seen from the face below it.
    fn crossing_order(&self) -> Result<Vec<(EdgeId, VertexId)>> {
        let g = &self.graph;
        let n = self.half();
        let closed = closed_disk(g);
        let faces = closed.graph.faces();
        let mut face_of: BTreeMap<(EdgeId, VertexId), usize> = BTreeMap::new();
        for (i, f) in faces.iter().enumerate() {
            for d in &f.darts {
                face_of.insert((d.edge, d.from), i);
            }
        }
        let start = face_of[&(closed.spokes[n], closed.outer)];
        let end = face_of[&(closed.spokes[0], closed.outer)];
        let crossing: BTreeSet<EdgeId> = self.crossing_edges().into_iter().collect();
        let mut order = Vec::new();
        let mut cur = start;
        let mut came: Option<EdgeId> = None;
        while cur != end {
            let exits: Vec<&Dart> = faces[cur]
                .darts
                .iter()
                .filter(|d| crossing.contains(&d.edge) && Some(d.edge) != came)
                .collect();
            let [d] = exits.as_slice() else {
                return Err(Error::Graph(format!(
                    "a face along the diameter meets {} crossing edges; cannot cut along it",
                    exits.len()
                )));
            };
            order.push((d.edge, d.from));
            came = Some(d.edge);
            cur = face_of[&(d.edge, d.to)];
            if order.len() > crossing.len() {
                return Err(Error::Graph("the walk along the diameter does not terminate".into()));
            }
        }
        if order.len() != crossing.len() {
            return Err(Error::Graph("some crossing edges are not met by the diameter walk".into()));
        }
        Ok(order)
    }

    /// Cuts along the diameter. Each half gets a new boundary vertex on every
    /// crossing edge; the second half is relabeled so that it is the mirror
    /// image of the first.
    pub fn split_halves(&self) -> Result<(PlabicGraph, PlabicGraph)> {
        let g = &self.graph;
        let n = self.half();
        let order = self.crossing_order()?;
        let m = order.len();
        let side = self.side_one()?;
        let half = |keep: &dyn Fn(VertexId) -> bool, label: &dyn Fn(usize) -> usize, stub_label: &dyn Fn(usize) -> usize| {
            let mut vertices = BTreeMap::new();
            let mut edges = BTreeMap::new();
            let mut rotation = BTreeMap::new();
            for (&v, x) in g.vertices() {
                if keep(v) {
                    let mut x = *x;
                    x.boundary = x.boundary.map(label);
                    vertices.insert(v, x);
                    rotation.insert(v, g.rotation(v).to_vec());
                }
            }
            for (&e, &(u, v)) in g.edges() {
                if keep(u) && keep(v) {
                    edges.insert(e, (u, v));
                }
            }
            let mut next = g.vertices().keys().max().copied().unwrap_or(0) + 1;
            for (j, &(e, _)) in order.iter().enumerate() {
                let (u, v) = g.ends(e);
                let inner = if keep(u) { u } else { v };
                let stub = next;
                next += 1;
                vertices.insert(stub, crate::plabic::Vertex { color: g.color(inner).flip(), boundary: Some(stub_label(j + 1)) });
                edges.insert(e, (inner, stub));
                rotation.insert(stub, vec![e]);
            }
            PlabicGraph::from_parts(n + m, vertices, edges, rotation)
        };
        let g1 = half(&|v| side.contains(&v), &|a| a, &|j| n + j)?;
        let g2 = half(&|v| !side.contains(&v), &|a| m + a - n, &|j| m + 1 - j)?;
        Ok((g1, g2))
    }

    // -----------------------------------------------------------------------
    // moves

    pub fn apply_move(&self, mv: &SymmetricMove) -> Result<SymmetricPlabicGraph> {
        let g = &self.graph;
        let next = match mv {
            SymmetricMove::Paired { r#move } => {
                let (region, mirrored) = self.mirror_move(r#move)?;
                let h = g.apply_move(r#move)?;
                h.apply_move(&mirrored).map_err(|e| {
                    Error::Pattern(format!("the mirrored move does not apply after the first ({e}); region {region:?}"))
                })?
            }
            SymmetricMove::MidlineSquare { vertices } => {
                let set: BTreeSet<VertexId> = vertices.iter().copied().collect();
                let image: BTreeSet<VertexId> = vertices.iter().map(|v| self.mirror[v]).collect();
                if set != image {
                    return Err(Error::Pattern(format!("{vertices:?} is not a face bisected by the diameter")));
                }
                g.apply_move(&Move::Square { vertices: vertices.clone() })?
            }
            SymmetricMove::InsertCrossingPair { edge } => {
                self.crossing_edge(*edge)?;
                let (u, _) = g.ends(*edge);
                let mut h = g.clone();
                let z1 = h.subdivide(*edge, u);
                h.subdivide(*edge, z1);
                h
            }
            SymmetricMove::RemoveCrossingPair { edge } => self.remove_crossing_pair(*edge)?,
        };
        SymmetricPlabicGraph::from_graph(next)
    }

    fn crossing_edge(&self, e: EdgeId) -> Result<()> {
        if !self.graph.edges().contains_key(&e) {
            return Err(Error::Pattern(format!("no edge {e}")));
        }
        if !self.is_crossing(e) {
            return Err(Error::Pattern(format!("edge {e} does not cross the diameter")));
        }
        Ok(())
    }

    fn touches_diameter(&self, v: VertexId) -> bool {
        self.graph.rotation(v).iter().any(|&e| self.is_crossing(e))
    }

    /// The mirror of an ordinary move, after checking that the move and its
    /// mirror act on disjoint regions away from the diameter.
    fn mirror_move(&self, mv: &Move) -> Result<(Vec<VertexId>, Move)> {
        let g = &self.graph;
        let known = |v: &VertexId| {
            if g.vertices().contains_key(v) {
                Ok(())
            } else {
                Err(Error::Pattern(format!("no vertex {v}")))
            }
        };
        let (region, mirrored) = match mv {
            Move::Square { vertices } => {
                vertices.iter().try_for_each(known)?;
                let image = vertices.iter().map(|v| self.mirror[v]).collect();
                (vertices.clone(), Move::Square { vertices: image })
            }
            Move::RemoveDegreeTwo { vertex } => {
                known(vertex)?;
                (vec![*vertex], Move::RemoveDegreeTwo { vertex: self.mirror[vertex] })
            }
            Move::InsertPair { edge } => {
                let (u, v) = *g.edges().get(edge).ok_or_else(|| Error::Pattern(format!("no edge {edge}")))?;
                if self.is_crossing(*edge) {
                    return Err(Error::Pattern(format!("edge {edge} crosses the diameter; insert a crossing pair instead")));
                }
                // the region is the edge itself, not its endpoints
                return Ok((vec![u, v], Move::InsertPair { edge: self.edge_mirror[edge] }));
            }
            Move::InsertOnLeg { boundary } => {
                let b = g
                    .boundary_vertex(*boundary)
                    .ok_or_else(|| Error::Pattern(format!("no boundary vertex {boundary}")))?;
                return Ok((vec![b], Move::InsertOnLeg { boundary: g.n() + 1 - boundary }));
            }
            Move::Split { vertex, edges } => {
                known(vertex)?;
                let mut image: Vec<EdgeId> = edges.iter().map(|e| self.edge_mirror.get(e).copied().unwrap_or(*e)).collect();
                image.reverse();
                (vec![*vertex], Move::Split { vertex: self.mirror[vertex], edges: image })
            }
        };
        let image: BTreeSet<VertexId> = region.iter().map(|v| self.mirror[v]).collect();
        if region.iter().any(|v| image.contains(v)) {
            return Err(Error::Pattern("the move region meets its own mirror image".into()));
        }
        if let Some(v) = region.iter().find(|&&v| self.touches_diameter(v)) {
            return Err(Error::Pattern(format!("vertex {v} of the move region has an edge crossing the diameter")));
        }
        Ok((region, mirrored))
    }

    fn remove_crossing_pair(&self, e: EdgeId) -> Result<PlabicGraph> {
        self.crossing_edge(e)?;
        let g = &self.graph;
        let (z1, z2) = g.ends(e);
        for z in [z1, z2] {
            if g.is_boundary(z) || g.degree(z) != 2 {
                return Err(Error::Pattern(format!("vertex {z} on crossing edge {e} is not an internal degree-two vertex")));
            }
        }
        let f1 = *g.rotation(z1).iter().find(|&&f| f != e).expect("degree two");
        let f2 = *g.rotation(z2).iter().find(|&&f| f != e).expect("degree two");
        let v = g.other_end(f1, z1);
        let w = g.other_end(f2, z2);
        if v == z2 || w == z1 {
            return Err(Error::Pattern(format!("crossing edge {e} is doubled")));
        }
        if g.is_boundary(v) && g.is_boundary(w) {
            return Err(Error::Pattern("removal would join two boundary vertices".into()));
        }
        let mut h = g.clone();
        h.repoint(f1, z1, w);
        for slot in h.rotation_mut(w).iter_mut() {
            if *slot == f2 {
                *slot = f1;
            }
        }
        h.remove_edge(e);
        h.remove_edge(f2);
        // f1 now belongs to w, so z1 must not take it along
        h.rotation_mut(z1).clear();
        h.remove_vertex(z1);
        h.remove_vertex(z2);
        Ok(h)
    }

    /// Removes degree-two vertices in mirror pairs or crossing pairs until
    /// none can be removed symmetrically.
    pub fn normalize(&self) -> SymmetricPlabicGraph {
        let mut cur = self.clone();
        loop {
            let step = cur.graph.internal_vertices().into_iter().find_map(|v| {
                if cur.graph.degree(v) != 2 {
                    return None;
                }
                let r = cur.mirror[&v];
                let shared = cur.graph.rotation(v).iter().find(|&&e| cur.graph.other_end(e, v) == r).copied();
                let mv = match shared {
                    Some(e) => SymmetricMove::RemoveCrossingPair { edge: e },
                    None => SymmetricMove::Paired { r#move: Move::RemoveDegreeTwo { vertex: v } },
                };
                cur.apply_move(&mv).ok()
            });
            match step {
                Some(next) => cur = next,
                None => return cur,
            }
        }
    }

    /// Square moves available up to symmetry: midline squares and mirror
    /// pairs of squares, with higher-degree corners split and the result
    /// normalized. Each neighbor comes with a short description of the move.
    pub fn square_neighbors(&self) -> Vec<(String, SymmetricPlabicGraph)> {
        let g = &self.graph;
        let mut out = Vec::new();
        let mut done: HashSet<BTreeSet<VertexId>> = HashSet::new();
        for face in g.square_faces() {
            let corners: BTreeSet<VertexId> = face.vertices().into_iter().collect();
            if !done.insert(corners.clone()) {
                continue;
            }
            let image: BTreeSet<VertexId> = corners.iter().map(|v| self.mirror[v]).collect();
            done.insert(image.clone());
            let result = if image == corners {
                g.square_move_split(&face).ok().map(|h| (format!("midline square {:?}", face.vertices()), h))
            } else if corners.is_disjoint(&image) {
                g.square_move_split(&face).ok().and_then(|h| {
                    let f2 = h.faces().into_iter().find(|f| {
                        f.darts.len() == 4 && f.vertices().into_iter().collect::<BTreeSet<_>>() == image
                    })?;
                    h.square_move_split(&f2).ok().map(|h2| (format!("paired square {:?}", face.vertices()), h2))
                })
            } else {
                None
            };
            if let Some((label, h)) = result {
                if let Ok(s) = SymmetricPlabicGraph::from_graph(h) {
                    out.push((label, s.normalize()));
                }
            }
        }
        out
    }

    /// The mirror-invariant part of a gauge: a forest grown on the side of
    /// `1..n` without crossing edges, together with its mirror image.
    pub fn symmetric_gauge_forest(&self) -> Result<BTreeSet<EdgeId>> {
        let g = &self.graph;
        let crossing: BTreeSet<EdgeId> = self.crossing_edges().into_iter().collect();
        let roots: Vec<VertexId> = (1..=self.half()).filter_map(|a| g.boundary_vertex(a)).collect();
        let half = crate::measurement::forest_from(g, &roots, |e| !crossing.contains(&e));
        let mut forest = half.clone();
        forest.extend(half.iter().map(|e| self.edge_mirror[e]));
        let covered = 2 * half.len() + g.n();
        if covered != g.vertices().len() || forest.len() != 2 * half.len() {
            return Err(Error::Graph(
                "some vertex is cut off from the boundary on its own side; no symmetric gauge forest".into(),
            ));
        }
        Ok(forest)
    }
}

fn from_side_one(g: &PlabicGraph, e: EdgeId, from_below: VertexId) -> VertexId {
    // faces lie to the right of their darts, so the dart seen from below
    // runs toward the side of 1..n
    g.other_end(e, from_below)
}

struct ClosedDisk {
    graph: PlabicGraph,
    outer: VertexId,
    spokes: Vec<EdgeId>,
}

/// `g` with an outer vertex joined to every boundary vertex in order.
fn closed_disk(g: &PlabicGraph) -> ClosedDisk {
    let mut h = g.clone();
    let o = h.add_vertex(Color::Black, None);
    let mut spokes = Vec::new();
    for a in 1..=g.n() {
        let b = h.boundary_vertex(a).expect("labels checked");
        let e = h.add_edge_raw(o, b);
        h.rotation_mut(o).push(e);
        h.rotation_mut(b).push(e);
        spokes.push(e);
    }
    ClosedDisk { graph: h, outer: o, spokes }
}

/// Moves of a symmetric graph.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SymmetricMove {
    /// An ordinary move away from the diameter together with its mirror.
    Paired { r#move: Move },
    /// A square move at a face bisected by the diameter.
    MidlineSquare { vertices: Vec<VertexId> },
    /// Two degree-two vertices of opposite colors on a crossing edge.
    InsertCrossingPair { edge: EdgeId },
    /// Removal of two degree-two vertices joined by a crossing edge.
    RemoveCrossingPair { edge: EdgeId },
}

/// A sequence of symmetric square moves (up to symmetric degree-two moves)
/// from `g` to `h`, found by breadth-first search.
pub fn symmetric_move_path(g: &SymmetricPlabicGraph, h: &SymmetricPlabicGraph, depth: usize) -> Option<Vec<String>> {
    const STATE_LIMIT: usize = 20_000;
    let key = |s: &SymmetricPlabicGraph| format!("{:?}", s.graph.canonical_form());
    let target = key(&h.normalize());
    let start = g.normalize();
    let mut seen = HashSet::from([key(&start)]);
    let mut queue = VecDeque::from([(start, Vec::new())]);
    while let Some((cur, path)) = queue.pop_front() {
        if key(&cur) == target {
            return Some(path);
        }
        if path.len() == depth || seen.len() > STATE_LIMIT {
            continue;
        }
        for (label, next) in cur.square_neighbors() {
            if seen.insert(key(&next)) {
                let mut p = path.clone();
                p.push(label);
                queue.push_back((next, p));
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// symmetric bridge graphs

/// A symmetric bridge graph for `f`. Each type C letter outside the
/// positive distinguished subexpression gives one group of bridges sharing a
/// parameter: a single bridge `(a, a')` or a mirror pair `(a, b), (b', a')`.
/// Parameters are numbered `t1, t2, ...` in the order the groups are added.
pub fn symmetric_bridge_graph(f: &BoundedAffinePermutation) -> Result<(SymmetricPlabicGraph, Vec<BridgeGroup>)> {
    symmetric_bridge_graph_with_word(f, None)
}

/// As [`symmetric_bridge_graph`], using the given type C reduced word for
/// the second permutation of the pair of `f`.
pub fn symmetric_bridge_graph_with_word(
    f: &BoundedAffinePermutation,
    word: Option<&Word>,
) -> Result<(SymmetricPlabicGraph, Vec<BridgeGroup>)> {
    if !f.is_type_c() {
        return Err(Error::NotTypeC(format!("{:?} is not a type C bounded affine permutation", f.window())));
    }
    let big_n = f.n();
    let n = big_n / 2;
    let (u, w) = f.to_pair();
    for p in [&u, &w] {
        SignedPermutation::new(p.clone())
            .map_err(|_| Error::NotTypeC(format!("{p} is not a signed permutation")))?;
    }
    let owned;
    let word = match word {
        Some(wd) => {
            if wd.kind != WordType::C || wd.product() != w || !wd.is_reduced() {
                return Err(Error::Invalid(format!("{:?} is not a reduced type C word for {w}", wd.letters)));
            }
            wd
        }
        None => {
            owned = reduced_word(&w, WordType::C);
            &owned
        }
    };
    let mask = pds(&u, &word)?;
    let mut prefix = Permutation::identity(big_n);
    let mut groups: Vec<Vec<(usize, usize)>> = Vec::new();
    let conj = |p: &Permutation, a: usize| {
        let (x, y) = (p.at(a), p.at(a + 1));
        (x.min(y), x.max(y))
    };
    for (&i, &keep) in word.letters.iter().zip(&mask) {
        if !keep {
            if i == n {
                groups.push(vec![conj(&prefix, n)]);
            } else {
                groups.push(vec![conj(&prefix, i), conj(&prefix, big_n - i)]);
            }
        }
        if keep {
            prefix = prefix.compose(&word.generator(i));
        }
    }
    groups.reverse();
    let mut g = PlabicGraph::lollipop(&u.image(1..=n), big_n)?;
    let mut out = Vec::new();
    for (idx, pairs) in groups.into_iter().enumerate() {
        let mut edges = Vec::new();
        for &(a, b) in &pairs {
            let (next, e) = g.add_bridge(a, b)?;
            g = next;
            edges.push(e);
        }
        out.push(BridgeGroup { param: format!("t{}", idx + 1), pairs, edges });
    }
    let s = SymmetricPlabicGraph::from_graph(g)?;
    debug_assert_eq!(s.bounded_affine().ok().as_ref(), Some(f));
    Ok((s, out))
}
