//! Boundary measurement through almost perfect matchings, gauge fixing, and
//! the square-move weight transform.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::rc::Rc;

use rand::Rng;
use serde_json::{json, Value};

use crate::affine::Color;
use crate::coxeter::k_subsets;
use crate::error::{invalid, Error, Result};
use crate::plabic::{BridgeGroup, EdgeId, Face, PlabicGraph, VertexId};
use crate::poly::{format_rational, parse_rational, rat, Field, Poly, Rational, RationalFunction, Scalar};
use crate::symmetric::SymmetricPlabicGraph;

pub type Weighting<S> = BTreeMap<EdgeId, S>;

/// Scalars that may be inverted when they are units.
pub trait Invertible: Scalar {
    fn try_inverse(&self) -> Option<Self>;
}

impl Invertible for Rational {
    fn try_inverse(&self) -> Option<Self> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Invertible for Poly {
    fn try_inverse(&self) -> Option<Self> {
        self.invert_term().ok()
    }
}

impl Invertible for RationalFunction {
    fn try_inverse(&self) -> Option<Self> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(RationalFunction { num: self.den.clone(), den: self.num.clone() })
        }
    }
}

// ---------------------------------------------------------------------------
// matchings

fn matching_rec(
    g: &PlabicGraph,
    internal: &[VertexId],
    idx: usize,
    used: &mut BTreeSet<VertexId>,
    cur: &mut Vec<EdgeId>,
    out: &mut Vec<BTreeSet<EdgeId>>,
    stop_after_first: bool,
) {
    if stop_after_first && !out.is_empty() {
        return;
    }
    let Some(pos) = (idx..internal.len()).find(|&i| !used.contains(&internal[i])) else {
        out.push(cur.iter().copied().collect());
        return;
    };
    let v = internal[pos];
    used.insert(v);
    for &e in g.rotation(v) {
        let w = g.other_end(e, v);
        if used.contains(&w) {
            continue;
        }
        used.insert(w);
        cur.push(e);
        matching_rec(g, internal, pos + 1, used, cur, out, stop_after_first);
        cur.pop();
        used.remove(&w);
    }
    used.remove(&v);
}

/// Every edge set using each internal vertex exactly once.
pub fn almost_perfect_matchings(g: &PlabicGraph) -> Vec<BTreeSet<EdgeId>> {
    let internal = g.internal_vertices();
    let mut out = Vec::new();
    matching_rec(g, &internal, 0, &mut BTreeSet::new(), &mut Vec::new(), &mut out, false);
    out
}

pub fn first_matching(g: &PlabicGraph) -> Option<BTreeSet<EdgeId>> {
    let internal = g.internal_vertices();
    let mut out = Vec::new();
    matching_rec(g, &internal, 0, &mut BTreeSet::new(), &mut Vec::new(), &mut out, true);
    out.pop()
}

/// Black boundary vertices used by `p` together with white ones it misses.
pub fn boundary_partition(g: &PlabicGraph, p: &BTreeSet<EdgeId>) -> BTreeSet<usize> {
    let used: BTreeSet<VertexId> = p
        .iter()
        .flat_map(|&e| {
            let (u, v) = g.ends(e);
            [u, v]
        })
        .collect();
    g.vertices()
        .iter()
        .filter_map(|(v, x)| {
            let a = x.boundary?;
            let hit = used.contains(v);
            match (x.color, hit) {
                (Color::Black, true) | (Color::White, false) => Some(a),
                _ => None,
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Pluecker vectors

/// Coordinates indexed by sorted `k`-subsets of `[n]`, all subsets present.
#[derive(Clone, PartialEq, Debug)]
pub struct PlueckerVector<S> {
    pub k: usize,
    pub n: usize,
    pub coords: BTreeMap<Vec<usize>, S>,
}

pub fn subset_key(s: &BTreeSet<usize>) -> Vec<usize> {
    s.iter().copied().collect()
}

impl<S: Scalar> PlueckerVector<S> {
    pub fn zero(k: usize, n: usize) -> Self {
        let coords = k_subsets(n, k).iter().map(|s| (subset_key(s), S::zero())).collect();
        PlueckerVector { k, n, coords }
    }

    pub fn get(&self, j: &[usize]) -> S {
        self.coords.get(j).cloned().unwrap_or_else(S::zero)
    }

    pub fn support(&self) -> BTreeSet<Vec<usize>> {
        self.coords.iter().filter(|(_, v)| !v.is_zero()).map(|(k, _)| k.clone()).collect()
    }

    /// Lexicographically first nonvanishing coordinate.
    pub fn lex_first(&self) -> Option<&Vec<usize>> {
        self.coords.iter().find(|(_, v)| !v.is_zero()).map(|(k, _)| k)
    }

    pub fn is_zero(&self) -> bool {
        self.lex_first().is_none()
    }

    /// Equality as points of projective space, by cross-multiplication
    /// against the first nonvanishing coordinate.
    pub fn projective_eq(&self, other: &Self) -> bool {
        if self.k != other.k || self.n != other.n {
            return false;
        }
        let (Some(i), Some(j)) = (self.lex_first(), other.lex_first()) else {
            return false;
        };
        if i != j {
            return false;
        }
        let (a0, b0) = (self.get(i), other.get(i));
        self.coords.keys().all(|key| self.get(key) * b0.clone() == other.get(key) * a0.clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> PlueckerVector<T> {
        PlueckerVector { k: self.k, n: self.n, coords: self.coords.iter().map(|(k, v)| (k.clone(), f(v))).collect() }
    }

    pub fn to_json(&self) -> Value {
        let coords: serde_json::Map<String, Value> = self
            .coords
            .iter()
            .map(|(k, v)| {
                let key = k.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                (key, Value::String(v.to_string()))
            })
            .collect();
        json!({"k": self.k, "n": self.n, "coords": coords})
    }
}

impl PlueckerVector<Rational> {
    /// Scaled so the first nonvanishing coordinate is 1.
    pub fn normalized(&self) -> Self {
        match self.lex_first() {
            None => self.clone(),
            Some(i) => {
                let c = self.get(i).recip();
                self.map(|v| v * &c)
            }
        }
    }
}

impl PlueckerVector<Poly> {
    /// Divided by the first nonvanishing coordinate when that is a single
    /// term, otherwise by its content.
    pub fn normalized(&self) -> Self {
        let Some(i) = self.lex_first() else {
            return self.clone();
        };
        let lead = self.get(i);
        let inv = lead.invert_term().unwrap_or_else(|_| Poly::constant(lead.primitive().0.recip()));
        self.map(|v| v * &inv)
    }

    pub fn evaluate(&self, values: &HashMap<String, Rational>) -> Result<PlueckerVector<Rational>> {
        let mut coords = BTreeMap::new();
        for (k, v) in &self.coords {
            coords.insert(k.clone(), v.evaluate(values)?);
        }
        Ok(PlueckerVector { k: self.k, n: self.n, coords })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Invalid("Pluecker JSON needs k, n and coords".into());
        let k = v.get("k").and_then(Value::as_u64).ok_or_else(bad)? as usize;
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(bad)? as usize;
        let coords = v.get("coords").and_then(Value::as_object).ok_or_else(bad)?;
        let mut p = PlueckerVector::zero(k, n);
        for (key, val) in coords {
            let set: Vec<usize> = key
                .split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Invalid(format!("bad subset key {key:?}"))))
                .collect::<Result<_>>()?;
            if !p.coords.contains_key(&set) {
                return invalid(format!("{key:?} is not a {k}-subset of [{n}]"));
            }
            let poly = match val {
                Value::String(s) => s.parse::<Poly>()?,
                Value::Number(x) => x.to_string().parse::<Poly>()?,
                _ => return invalid(format!("coordinate {key:?} is not a string or number")),
            };
            p.coords.insert(set, poly);
        }
        Ok(p)
    }
}

impl<S: Scalar> fmt::Display for PlueckerVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.coords {
            let key: Vec<String> = k.iter().map(|x| x.to_string()).collect();
            writeln!(f, "D{{{}}} = {v}", key.join(","))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// boundary measurement

fn weight_of<S: Scalar>(w: &Weighting<S>, e: EdgeId) -> Result<S> {
    w.get(&e).cloned().ok_or_else(|| Error::Invalid(format!("edge {e} has no weight")))
}

/// `Δ_J = Σ_{∂(P) = J} t^P` over almost perfect matchings.
pub fn boundary_measurement<S: Scalar>(g: &PlabicGraph, w: &Weighting<S>) -> Result<PlueckerVector<S>> {
    let matchings = almost_perfect_matchings(g);
    let Some(first) = matchings.first() else {
        return Err(Error::Graph("no almost perfect matching".into()));
    };
    let k = boundary_partition(g, first).len();
    let mut p = PlueckerVector::zero(k, g.n());
    for m in &matchings {
        let j = boundary_partition(g, m);
        if j.len() != k {
            return Err(Error::Graph(format!("matchings give boundary sets of sizes {k} and {}", j.len())));
        }
        let mut t = S::one();
        for &e in m {
            t = t * weight_of(w, e)?;
        }
        let slot: &mut S = p.coords.get_mut(&subset_key(&j)).expect("all subsets present");
        *slot = slot.clone() + t;
    }
    if p.is_zero() {
        return Err(Error::Arithmetic("every coordinate vanishes".into()));
    }
    Ok(p)
}

type Partial<S> = Rc<BTreeMap<Vec<usize>, S>>;

/// Same as [`boundary_measurement`], memoizing partial sums on the set of
/// vertices already matched.
pub fn boundary_measurement_memo<S: Scalar>(g: &PlabicGraph, w: &Weighting<S>) -> Result<PlueckerVector<S>> {
    let ids: Vec<VertexId> = g.vertices().keys().copied().collect();
    let index: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let internal: Vec<usize> = g.internal_vertices().iter().map(|v| index[v]).collect();
    for &e in g.edges().keys() {
        weight_of(w, e)?;
    }

    struct Ctx<'a, S> {
        g: &'a PlabicGraph,
        w: &'a Weighting<S>,
        ids: Vec<VertexId>,
        index: HashMap<VertexId, usize>,
        internal: Vec<usize>,
        memo: HashMap<Vec<bool>, Partial<S>>,
    }

    fn go<S: Scalar>(ctx: &mut Ctx<'_, S>, used: &mut Vec<bool>) -> Partial<S> {
        if let Some(hit) = ctx.memo.get(used) {
            return hit.clone();
        }
        let Some(&vi) = ctx.internal.iter().find(|&&i| !used[i]) else {
            return Rc::new(BTreeMap::from([(Vec::new(), S::one())]));
        };
        let v = ctx.ids[vi];
        let mut acc: BTreeMap<Vec<usize>, S> = BTreeMap::new();
        used[vi] = true;
        for &e in ctx.g.rotation(v).to_vec().iter() {
            let x = ctx.g.other_end(e, v);
            let xi = ctx.index[&x];
            if used[xi] {
                continue;
            }
            used[xi] = true;
            let sub = go(ctx, used);
            used[xi] = false;
            let we = ctx.w[&e].clone();
            let label = ctx.g.vertex(x).boundary;
            for (bset, val) in sub.iter() {
                let mut key = bset.clone();
                if let Some(a) = label {
                    key.push(a);
                    key.sort_unstable();
                }
                let term = we.clone() * val.clone();
                let slot = acc.entry(key).or_insert_with(S::zero);
                *slot = slot.clone() + term;
            }
        }
        used[vi] = false;
        let out = Rc::new(acc);
        ctx.memo.insert(used.clone(), out.clone());
        out
    }

    let mut ctx = Ctx { g, w, ids, index, internal, memo: HashMap::new() };
    let mut used = vec![false; ctx.ids.len()];
    let partial = go(&mut ctx, &mut used);
    if partial.is_empty() {
        return Err(Error::Graph("no almost perfect matching".into()));
    }
    let mut p: Option<PlueckerVector<S>> = None;
    for (hit, val) in partial.iter() {
        let j: BTreeSet<usize> = g
            .vertices()
            .values()
            .filter_map(|x| {
                let a = x.boundary?;
                let used = hit.contains(&a);
                match (x.color, used) {
                    (Color::Black, true) | (Color::White, false) => Some(a),
                    _ => None,
                }
            })
            .collect();
        let pv = p.get_or_insert_with(|| PlueckerVector::zero(j.len(), g.n()));
        if j.len() != pv.k {
            return Err(Error::Graph("boundary sets of different sizes".into()));
        }
        let slot = pv.coords.get_mut(&subset_key(&j)).expect("subset");
        *slot = slot.clone() + val.clone();
    }
    let p = p.expect("nonempty");
    if p.is_zero() {
        return Err(Error::Arithmetic("every coordinate vanishes".into()));
    }
    Ok(p)
}

// ---------------------------------------------------------------------------
// weightings

pub fn constant_weighting<S: Scalar>(g: &PlabicGraph, value: S) -> Weighting<S> {
    g.edges().keys().map(|&e| (e, value.clone())).collect()
}

/// One indeterminate per bridge group on its bridge edges, 1 elsewhere.
pub fn canonical_weighting(g: &PlabicGraph, groups: &[BridgeGroup]) -> Weighting<Poly> {
    let mut w = constant_weighting(g, <Poly as num_traits::One>::one());
    for grp in groups {
        for e in &grp.edges {
            w.insert(*e, Poly::var(&grp.param));
        }
    }
    w
}

/// Positive rationals with numerators up to 9 and denominators up to 5.
pub fn random_positive_weighting(g: &PlabicGraph, rng: &mut impl Rng) -> Weighting<Rational> {
    g.edges()
        .keys()
        .map(|&e| (e, crate::poly::ratio(rng.gen_range(1..=9), rng.gen_range(1..=5))))
        .collect()
}

/// Positive weights that agree on mirror-image edges.
pub fn random_symmetric_weighting(s: &SymmetricPlabicGraph, rng: &mut impl Rng) -> Weighting<Rational> {
    let mut w = BTreeMap::new();
    for &e in s.graph().edges().keys() {
        if w.contains_key(&e) {
            continue;
        }
        let value = crate::poly::ratio(rng.gen_range(1..=9), rng.gen_range(1..=5));
        w.insert(e, value.clone());
        w.insert(s.mirror_edge(e), value);
    }
    w
}

/// Weighting JSON: `{"edges": {eid: "3/4" | {"var": "t1"}}}`.
pub fn weighting_from_json(v: &Value) -> Result<Weighting<Poly>> {
    let edges = v
        .get("edges")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::Invalid("weighting JSON needs an \"edges\" object".into()))?;
    let mut w = BTreeMap::new();
    for (key, val) in edges {
        let e: EdgeId = key.parse().map_err(|_| Error::Invalid(format!("bad edge id {key:?}")))?;
        let p = match val {
            Value::String(s) => Poly::constant(parse_rational(s)?),
            Value::Number(x) => Poly::constant(parse_rational(&x.to_string())?),
            Value::Object(o) => match o.get("var").and_then(Value::as_str) {
                Some(name) => Poly::var(name),
                None => return invalid(format!("weight of edge {e} is an object without \"var\"")),
            },
            _ => return invalid(format!("weight of edge {e} is neither a rational nor a variable")),
        };
        if num_traits::Zero::is_zero(&p) {
            return invalid(format!("edge {e} has weight zero"));
        }
        w.insert(e, p);
    }
    Ok(w)
}

pub fn weighting_to_json(w: &Weighting<Poly>) -> Value {
    let edges: serde_json::Map<String, Value> = w
        .iter()
        .map(|(e, p)| {
            let v = match (p.as_constant(), p.as_term()) {
                (Some(c), _) => Value::String(format_rational(&c)),
                (None, Some((c, m))) if num_traits::One::is_one(c) && m.factors().len() == 1 && m.factors()[0].1 == 1 => {
                    json!({"var": m.factors()[0].0 .0})
                }
                _ => Value::String(p.to_string()),
            };
            (e.to_string(), v)
        })
        .collect();
    json!({"edges": edges})
}

// ---------------------------------------------------------------------------
// gauge

/// A spanning forest whose trees each hold one boundary vertex, grown by
/// breadth-first search from all boundary vertices at once.
pub fn gauge_forest(g: &PlabicGraph) -> BTreeSet<EdgeId> {
    forest_from(g, &(1..=g.n()).filter_map(|a| g.boundary_vertex(a)).collect::<Vec<_>>(), |_| true)
}

pub(crate) fn forest_from(g: &PlabicGraph, roots: &[VertexId], allowed: impl Fn(EdgeId) -> bool) -> BTreeSet<EdgeId> {
    let mut seen: BTreeSet<VertexId> = roots.iter().copied().collect();
    let mut queue: VecDeque<VertexId> = roots.iter().copied().collect();
    let mut forest = BTreeSet::new();
    while let Some(v) = queue.pop_front() {
        for &e in g.rotation(v) {
            if !allowed(e) {
                continue;
            }
            let w = g.other_end(e, v);
            if g.is_boundary(w) || !seen.insert(w) {
                continue;
            }
            forest.insert(e);
            queue.push_back(w);
        }
    }
    forest
}

/// Internal vertices in breadth-first order from the boundary along `f`,
/// each with the forest edge toward its root. Errors unless `f` is a
/// spanning forest with one boundary vertex per tree.
fn forest_order(g: &PlabicGraph, f: &BTreeSet<EdgeId>) -> Result<Vec<(VertexId, EdgeId)>> {
    let boundary: Vec<VertexId> = (1..=g.n()).filter_map(|a| g.boundary_vertex(a)).collect();
    let mut seen: BTreeSet<VertexId> = boundary.iter().copied().collect();
    let mut queue: VecDeque<VertexId> = boundary.iter().copied().collect();
    let mut order = Vec::new();
    while let Some(v) = queue.pop_front() {
        for &e in g.rotation(v) {
            if !f.contains(&e) {
                continue;
            }
            let w = g.other_end(e, v);
            if seen.contains(&w) {
                if order.iter().any(|&(x, pe)| x == v && pe == e) {
                    continue;
                }
                return invalid(format!("forest edge {e} closes a cycle or joins two boundary vertices"));
            }
            seen.insert(w);
            order.push((w, e));
            queue.push_back(w);
        }
    }
    if seen.len() != g.vertices().len() {
        return invalid("forest does not reach every vertex from the boundary");
    }
    if order.len() != f.len() {
        return invalid("forest has edges outside the trees grown from the boundary");
    }
    Ok(order)
}

/// Rescales at internal vertices so that every edge of `f` has weight 1.
pub fn gauge_fix<S: Invertible>(g: &PlabicGraph, w: &Weighting<S>, f: &BTreeSet<EdgeId>) -> Result<Weighting<S>> {
    let order = forest_order(g, f)?;
    let mut out = w.clone();
    for (v, pe) in order {
        let inv = weight_of(&out, pe)?
            .try_inverse()
            .ok_or_else(|| Error::Arithmetic(format!("weight of forest edge {pe} is not invertible")))?;
        scale_vertex(g, &mut out, v, &inv)?;
    }
    Ok(out)
}

fn scale_vertex<S: Scalar>(g: &PlabicGraph, w: &mut Weighting<S>, v: VertexId, by: &S) -> Result<()> {
    for &e in g.rotation(v) {
        let slot = w.get_mut(&e).ok_or_else(|| Error::Invalid(format!("edge {e} has no weight")))?;
        *slot = slot.clone() * by.clone();
    }
    Ok(())
}

/// Multiplies every edge at each internal vertex `v` by `mu[v]`.
pub fn gauge_action<S: Scalar>(g: &PlabicGraph, w: &Weighting<S>, mu: &BTreeMap<VertexId, S>) -> Result<Weighting<S>> {
    let mut out = w.clone();
    for (&v, m) in mu {
        if g.is_boundary(v) {
            return invalid(format!("gauge acts on internal vertices; {v} is on the boundary"));
        }
        scale_vertex(g, &mut out, v, m)?;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// square move

/// `x' = x / (ac + bd)` for each of the four weights around a square.
pub fn square_move_weights<F: Field>(a: &F, b: &F, c: &F, d: &F) -> Result<(F, F, F, F)> {
    let den = a.clone() * c.clone() + b.clone() * d.clone();
    if den.is_zero() {
        return Err(Error::Arithmetic("ac + bd vanishes".into()));
    }
    Ok((
        a.clone() / den.clone(),
        b.clone() / den.clone(),
        c.clone() / den.clone(),
        d.clone() / den,
    ))
}

/// Square move with weights: the four outside edges are gauged to 1 at the
/// corners (a degree-two neighbor that will be contracted is gauged first),
/// and each side of the square receives the transformed weight of the
/// opposite side.
pub fn square_move_weighted<F: Field + Invertible>(
    g: &PlabicGraph,
    w: &Weighting<F>,
    face: &Face,
) -> Result<(PlabicGraph, Weighting<F>)> {
    let corners = face.vertices();
    let sides = face.edges();
    let side_set: BTreeSet<EdgeId> = sides.iter().copied().collect();
    let mut gw = w.clone();
    for &v in &corners {
        let ext = *g
            .rotation(v)
            .iter()
            .find(|e| !side_set.contains(e))
            .ok_or_else(|| Error::Pattern(format!("corner {v} has no outside edge")))?;
        let x = g.other_end(ext, v);
        if !g.is_boundary(x) && g.degree(x) == 2 {
            let xy = *g.rotation(x).iter().find(|&&f| f != ext).expect("degree two");
            let y = g.other_end(xy, x);
            if !corners.contains(&y) && y != v {
                let inv = weight_of(&gw, xy)?
                    .try_inverse()
                    .ok_or_else(|| Error::Arithmetic(format!("weight of edge {xy} is not invertible")))?;
                scale_vertex(g, &mut gw, x, &inv)?;
            }
        }
        let inv = weight_of(&gw, ext)?
            .try_inverse()
            .ok_or_else(|| Error::Arithmetic(format!("weight of edge {ext} is not invertible")))?;
        scale_vertex(g, &mut gw, v, &inv)?;
    }
    let h = g.square_move(face)?;
    let vals: Vec<F> = sides.iter().map(|&e| weight_of(&gw, e)).collect::<Result<_>>()?;
    let (a2, b2, c2, d2) = square_move_weights(&vals[0], &vals[1], &vals[2], &vals[3])?;
    let new_sides = [c2, d2, a2, b2];
    let mut out = BTreeMap::new();
    for &e in h.edges().keys() {
        let value = match sides.iter().position(|&s| s == e) {
            Some(i) => new_sides[i].clone(),
            None => gw.get(&e).cloned().unwrap_or_else(F::one),
        };
        out.insert(e, value);
    }
    Ok((h, out))
}

/// Whether mirror-image edges carry equal weights.
pub fn is_symmetric_weighting<S: Scalar>(s: &SymmetricPlabicGraph, w: &Weighting<S>) -> bool {
    s.graph().edges().keys().all(|&e| w.get(&e) == w.get(&s.mirror_edge(e)))
}

/// A weighting with every value 1, handy as a placeholder.
pub fn unit_weighting(g: &PlabicGraph) -> Weighting<Rational> {
    constant_weighting(g, rat(1))
}
