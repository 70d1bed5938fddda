//! Local moves (square move, degree-two insertion and removal), the two
//! reductions, and a few rewrites used to build non-reduced test graphs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{EdgeId, Face, PlabicGraph, VertexId};
use crate::affine::Color;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// Square move at the face with these four vertices.
    Square { vertices: Vec<VertexId> },
    /// Contract a degree-two internal vertex.
    RemoveDegreeTwo { vertex: VertexId },
    /// Put two degree-two vertices on an edge.
    InsertPair { edge: EdgeId },
    /// Put one vertex on the leg at a boundary vertex and flip its color.
    InsertOnLeg { boundary: usize },
    /// Move a consecutive arc of edges at `vertex` onto a new vertex of the
    /// same color joined to it through a degree-two vertex.
    Split { vertex: VertexId, edges: Vec<EdgeId> },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "reduction", rename_all = "snake_case")]
pub enum Reduction {
    ParallelEdges { keep: EdgeId, remove: EdgeId },
    LeafRemoval { leaf: VertexId },
}

fn mismatch<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Pattern(msg.into()))
}

impl PlabicGraph {
    pub fn apply_move(&self, m: &Move) -> Result<PlabicGraph> {
        match m {
            Move::Square { vertices } => {
                let face = self.find_square(vertices)?;
                self.square_move(&face)
            }
            Move::RemoveDegreeTwo { vertex } => self.contract(*vertex),
            Move::InsertPair { edge } => {
                let (u, _) = *self.edges.get(edge).ok_or_else(|| Error::Pattern(format!("no edge {edge}")))?;
                let mut g = self.clone();
                let z1 = g.subdivide(*edge, u);
                g.subdivide(*edge, z1);
                Ok(g)
            }
            Move::InsertOnLeg { boundary } => {
                let (leg, _) = self.leg_end(*boundary)?;
                let b = self.boundary_vertex(*boundary).expect("leg found");
                let mut g = self.clone();
                g.set_color(b, self.color(b).flip());
                g.subdivide(leg, b);
                Ok(g)
            }
            Move::Split { vertex, edges } => self.split(*vertex, edges),
        }
    }

    pub fn apply_reduction(&self, r: &Reduction) -> Result<PlabicGraph> {
        match r {
            Reduction::ParallelEdges { keep, remove } => {
                let (a, b) = (self.edges.get(keep), self.edges.get(remove));
                match (a, b) {
                    (Some(&(u1, v1)), Some(&(u2, v2)))
                        if keep != remove && ((u1, v1) == (u2, v2) || (u1, v1) == (v2, u2)) =>
                    {
                        let mut g = self.clone();
                        g.remove_edge(*remove);
                        Ok(g)
                    }
                    _ => mismatch(format!("edges {keep} and {remove} are not parallel")),
                }
            }
            Reduction::LeafRemoval { leaf } => {
                let v = *leaf;
                if !self.vertices.contains_key(&v) || self.is_boundary(v) || self.degree(v) != 1 {
                    return mismatch(format!("{v} is not an interior leaf"));
                }
                let e = self.rotation(v)[0];
                let u = self.other_end(e, v);
                if self.is_boundary(u) {
                    return mismatch(format!("{v} is a lollipop, not an interior leaf"));
                }
                let leaf_color = self.color(v);
                let mut g = self.clone();
                g.remove_vertex(v);
                for f in g.rotation(u).to_vec() {
                    let x = g.other_end(f, u);
                    if g.is_boundary(x) {
                        let w = g.add_vertex(leaf_color, None);
                        g.repoint(f, u, w);
                        g.rotation_mut(w).push(f);
                        g.rotation_mut(u).retain(|&h| h != f);
                        g.set_color(x, leaf_color.flip());
                    } else {
                        g.remove_edge(f);
                    }
                }
                g.remove_vertex(u);
                Ok(g)
            }
        }
    }

    pub fn find_square(&self, vertices: &[VertexId]) -> Result<Face> {
        let want: BTreeSet<VertexId> = vertices.iter().copied().collect();
        if want.len() != 4 {
            return mismatch("a square move needs four distinct vertices");
        }
        self.faces()
            .into_iter()
            .find(|f| f.darts.len() == 4 && f.vertices().into_iter().collect::<BTreeSet<_>>() == want)
            .ok_or_else(|| Error::Pattern(format!("no square face on {vertices:?}")))
    }

    /// Faces bounded by four distinct internal vertices of alternating colors
    /// and four distinct edges.
    pub fn square_faces(&self) -> Vec<Face> {
        self.faces()
            .into_iter()
            .filter(|f| {
                let vs = f.vertices();
                let es: BTreeSet<EdgeId> = f.edges().into_iter().collect();
                f.darts.len() == 4
                    && es.len() == 4
                    && vs.iter().collect::<BTreeSet<_>>().len() == 4
                    && vs.iter().all(|&v| !self.is_boundary(v))
            })
            .collect()
    }

    /// Square move at a face whose corners all have degree three: swap the
    /// corner colors, then fix each outside edge by contracting a degree-two
    /// neighbor, recoloring a boundary neighbor, or inserting a degree-two
    /// vertex.
    pub fn square_move(&self, face: &Face) -> Result<PlabicGraph> {
        let corners = face.vertices();
        let face_edges: BTreeSet<EdgeId> = face.edges().into_iter().collect();
        if corners.len() != 4 || face_edges.len() != 4 || corners.iter().collect::<BTreeSet<_>>().len() != 4 {
            return mismatch("not a square face");
        }
        for &v in &corners {
            if self.is_boundary(v) || self.degree(v) != 3 {
                return mismatch(format!("corner {v} is not an internal trivalent vertex"));
            }
        }
        let ext: Vec<EdgeId> = corners
            .iter()
            .map(|&v| *self.rotation(v).iter().find(|e| !face_edges.contains(e)).expect("third edge"))
            .collect();
        for (&v, &e) in corners.iter().zip(&ext) {
            if corners.contains(&self.other_end(e, v)) {
                return mismatch(format!("outside edge {e} of corner {v} returns to the square"));
            }
        }
        let mut g = self.clone();
        for &v in &corners {
            g.set_color(v, self.color(v).flip());
        }
        for (&v, &e) in corners.iter().zip(&ext) {
            let x = g.other_end(e, v);
            if g.is_boundary(x) {
                g.set_color(x, g.color(v).flip());
                continue;
            }
            if g.degree(x) == 2 {
                let xy = *g.rotation(x).iter().find(|&&f| f != e).expect("degree two");
                let y = g.other_end(xy, x);
                if !corners.contains(&y) && y != v {
                    g.repoint(xy, x, v);
                    for slot in g.rotation_mut(v).iter_mut() {
                        if *slot == e {
                            *slot = xy;
                        }
                    }
                    g.rotation_mut(x).retain(|&f| f != xy);
                    g.remove_vertex(x);
                    continue;
                }
            }
            g.subdivide(e, v);
        }
        Ok(g)
    }

    /// M2 removal of the degree-two vertex `v`.
    pub fn contract(&self, v: VertexId) -> Result<PlabicGraph> {
        if !self.vertices.contains_key(&v) || self.is_boundary(v) || self.degree(v) != 2 {
            return mismatch(format!("{v} is not an internal degree-two vertex"));
        }
        let (e1, e2) = (self.rotation(v)[0], self.rotation(v)[1]);
        let (u1, u2) = (self.other_end(e1, v), self.other_end(e2, v));
        if u1 == u2 {
            return mismatch(format!("both edges at {v} go to {u1}"));
        }
        if self.is_boundary(u1) && self.is_boundary(u2) {
            // would leave an edge between two boundary vertices
            return mismatch(format!("{v} is the only internal vertex between two boundary vertices"));
        }
        let mut g = self.clone();
        let (b, be, w, we) = if g.is_boundary(u1) {
            (u1, e1, u2, e2)
        } else if g.is_boundary(u2) {
            (u2, e2, u1, e1)
        } else {
            // merge u2 into u1, splicing the rotations at the contracted edges
            let r1 = g.rotated_from(u1, Some(e1));
            let r2 = g.rotated_from(u2, Some(e2));
            let merged: Vec<EdgeId> = r1[1..].iter().chain(&r2[1..]).copied().collect();
            for &f in &r2[1..] {
                g.repoint(f, u2, u1);
            }
            g.edges.remove(&e1);
            g.edges.remove(&e2);
            g.rotation.remove(&u2);
            g.vertices.remove(&u2);
            g.rotation.remove(&v);
            g.vertices.remove(&v);
            *g.rotation_mut(u1) = merged;
            return Ok(g);
        };
        // boundary case: drop v, join b to w, flip b
        g.repoint(be, v, w);
        for slot in g.rotation_mut(w).iter_mut() {
            if *slot == we {
                *slot = be;
            }
        }
        g.edges.remove(&we);
        g.rotation.remove(&v);
        g.vertices.remove(&v);
        g.set_color(b, g.color(b).flip());
        Ok(g)
    }

    fn split(&self, v: VertexId, arc: &[EdgeId]) -> Result<PlabicGraph> {
        if !self.vertices.contains_key(&v) || self.is_boundary(v) {
            return mismatch(format!("{v} is not an internal vertex"));
        }
        let rot = self.rotation(v);
        if arc.is_empty() || arc.len() >= rot.len() {
            return mismatch("a split moves between one and degree - 1 edges");
        }
        let start = rot.iter().position(|&e| e == arc[0]).ok_or_else(|| Error::Pattern(format!("{} not at {v}", arc[0])))?;
        let d = rot.len();
        if (0..arc.len()).any(|i| rot[(start + i) % d] != arc[i]) {
            return mismatch(format!("{arc:?} is not a consecutive counterclockwise arc at {v}"));
        }
        let mut g = self.clone();
        let color = self.color(v);
        let z = g.add_vertex(color.flip(), None);
        let v2 = g.add_vertex(color, None);
        for &e in arc {
            g.repoint(e, v, v2);
        }
        let f1 = g.add_edge_raw(v, z);
        let f2 = g.add_edge_raw(z, v2);
        let rest: Vec<EdgeId> = (0..d - arc.len()).map(|i| rot[(start + arc.len() + i) % d]).collect();
        let mut new_rot = vec![f1];
        new_rot.extend(rest);
        *g.rotation_mut(v) = new_rot;
        *g.rotation_mut(z) = vec![f1, f2];
        let mut r2 = arc.to_vec();
        r2.push(f2);
        *g.rotation_mut(v2) = r2;
        Ok(g)
    }

    /// Contracts degree-two vertices until none can be contracted.
    pub fn contract_all(&self) -> PlabicGraph {
        let mut g = self.clone();
        loop {
            let next = g.internal_vertices().into_iter().find_map(|v| {
                if g.degree(v) == 2 {
                    g.contract(v).ok()
                } else {
                    None
                }
            });
            match next {
                Some(h) => g = h,
                None => return g,
            }
        }
    }

    /// Square move at a square face of any corner degrees: corners of degree
    /// above three are split first, and degree-two vertices are contracted
    /// afterwards.
    pub fn square_move_general(&self, face: &Face) -> Result<PlabicGraph> {
        Ok(self.square_move_split(face)?.contract_all())
    }

    /// Splits corners of degree above three so that the face becomes a
    /// trivalent square, then applies the square move.
    pub fn square_move_split(&self, face: &Face) -> Result<PlabicGraph> {
        let mut g = self.clone();
        let face_edges: BTreeSet<EdgeId> = face.edges().into_iter().collect();
        for v in face.vertices() {
            if g.degree(v) < 3 {
                return mismatch(format!("corner {v} has degree {}", g.degree(v)));
            }
            if g.degree(v) > 3 {
                let rot = g.rotated_from(v, None);
                let d = rot.len();
                let i = (0..d)
                    .find(|&i| face_edges.contains(&rot[i]) && face_edges.contains(&rot[(i + 1) % d]))
                    .ok_or_else(|| Error::Pattern(format!("face edges are not adjacent at {v}")))?;
                let arc: Vec<EdgeId> = (2..d).map(|j| rot[(i + j) % d]).collect();
                g = g.split(v, &arc)?;
            }
        }
        let corners = face.vertices();
        let f = g
            .square_faces()
            .into_iter()
            .find(|f| f.vertices().into_iter().collect::<BTreeSet<_>>() == corners.iter().copied().collect())
            .ok_or_else(|| Error::Pattern("square lost after splitting corners".into()))?;
        g.square_move(&f)
    }

    /// A second copy of the internal edge `e`, next to it.
    pub fn with_parallel_edge(&self, e: EdgeId) -> Result<PlabicGraph> {
        let (u, v) = *self.edges.get(&e).ok_or_else(|| Error::Pattern(format!("no edge {e}")))?;
        if self.is_boundary(u) || self.is_boundary(v) {
            return mismatch(format!("edge {e} is a leg"));
        }
        let mut g = self.clone();
        let f = g.add_edge_raw(u, v);
        insert_after(g.rotation_mut(u), e, f);
        insert_before(g.rotation_mut(v), e, f);
        Ok(g)
    }

    /// A path `w - b' - w' - b` of two new degree-two vertices alongside the
    /// internal edge `w - b`, closing a square face. Contracting it produces
    /// a parallel pair.
    pub fn with_bubble(&self, e: EdgeId) -> Result<PlabicGraph> {
        let (u, v) = *self.edges.get(&e).ok_or_else(|| Error::Pattern(format!("no edge {e}")))?;
        if self.is_boundary(u) || self.is_boundary(v) {
            return mismatch(format!("edge {e} is a leg"));
        }
        let (w, b) = if self.color(u) == Color::White { (u, v) } else { (v, u) };
        let mut g = self.clone();
        let b2 = g.add_vertex(Color::Black, None);
        let w2 = g.add_vertex(Color::White, None);
        let f1 = g.add_edge_raw(w, b2);
        let f2 = g.add_edge_raw(b2, w2);
        let f3 = g.add_edge_raw(w2, b);
        insert_after(g.rotation_mut(w), e, f1);
        insert_before(g.rotation_mut(b), e, f3);
        *g.rotation_mut(b2) = vec![f1, f2];
        *g.rotation_mut(w2) = vec![f2, f3];
        Ok(g)
    }

    /// Edges whose endpoints are both internal.
    pub fn internal_edges(&self) -> Vec<EdgeId> {
        self.edges
            .iter()
            .filter(|(_, &(u, v))| !self.is_boundary(u) && !self.is_boundary(v))
            .map(|(&e, _)| e)
            .collect()
    }

    /// The first parallel pair, if any.
    pub fn parallel_pair(&self) -> Option<(EdgeId, EdgeId)> {
        let mut seen = std::collections::BTreeMap::new();
        for (&e, &(u, v)) in &self.edges {
            let key = (u.min(v), u.max(v));
            if let Some(&f) = seen.get(&key) {
                return Some((f, e));
            }
            seen.insert(key, e);
        }
        None
    }
}

fn insert_after(rot: &mut Vec<EdgeId>, anchor: EdgeId, new: EdgeId) {
    let pos = rot.iter().position(|&x| x == anchor).expect("anchor in rotation");
    rot.insert(pos + 1, new);
}

fn insert_before(rot: &mut Vec<EdgeId>, anchor: EdgeId, new: EdgeId) {
    let pos = rot.iter().position(|&x| x == anchor).expect("anchor in rotation");
    rot.insert(pos, new);
}
