//! Grassmann necklaces, positroids, and Le-diagrams of types A and B.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::affine::{BoundedAffinePermutation, DecoratedPermutation};
use crate::coxeter::{k_subsets, pds, Permutation, Word, WordType};
use crate::error::{invalid, Error, Result};
use crate::linalg::reflect_set;
use crate::measurement::PlueckerVector;
use crate::poly::Scalar;

// ---------------------------------------------------------------------------
// shifted orders

/// Position of `x` in the order `a < a+1 < ... < n < 1 < ... < a-1`.
fn shifted_rank(x: usize, a: usize, n: usize) -> usize {
    (x + n - a) % n
}

/// `I` sorted increasingly in the order `<=_a`.
pub fn sorted_from(i: &BTreeSet<usize>, a: usize, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = i.iter().copied().collect();
    v.sort_by_key(|&x| shifted_rank(x, a, n));
    v
}

/// Componentwise comparison after sorting both sets in `<=_a`.
pub fn shifted_leq(i: &BTreeSet<usize>, j: &BTreeSet<usize>, a: usize, n: usize) -> Result<bool> {
    if i.len() != j.len() {
        return invalid(format!("sets of sizes {} and {} are not comparable", i.len(), j.len()));
    }
    if a == 0 || a > n || i.iter().chain(j).any(|&x| x == 0 || x > n) {
        return invalid(format!("sets and shift must lie in [1, {n}]"));
    }
    let (si, sj) = (sorted_from(i, a, n), sorted_from(j, a, n));
    Ok(si.iter().zip(&sj).all(|(&x, &y)| shifted_rank(x, a, n) <= shifted_rank(y, a, n)))
}

// ---------------------------------------------------------------------------
// necklaces

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "NecklaceJson", into = "NecklaceJson")]
pub struct GrassmannNecklace {
    n: usize,
    k: usize,
    sets: Vec<BTreeSet<usize>>,
}

#[derive(Serialize, Deserialize)]
struct NecklaceJson {
    n: usize,
    k: usize,
    sets: Vec<Vec<usize>>,
}

impl TryFrom<NecklaceJson> for GrassmannNecklace {
    type Error = Error;
    fn try_from(j: NecklaceJson) -> Result<Self> {
        GrassmannNecklace::new(j.n, j.k, j.sets.into_iter().map(|s| s.into_iter().collect()).collect())
    }
}

impl From<GrassmannNecklace> for NecklaceJson {
    fn from(g: GrassmannNecklace) -> Self {
        NecklaceJson { n: g.n, k: g.k, sets: g.sets.into_iter().map(|s| s.into_iter().collect()).collect() }
    }
}

impl GrassmannNecklace {
    pub fn new(n: usize, k: usize, sets: Vec<BTreeSet<usize>>) -> Result<Self> {
        if sets.len() != n {
            return invalid(format!("a necklace on [{n}] has {n} sets, got {}", sets.len()));
        }
        for s in &sets {
            if s.len() != k || s.iter().any(|&x| x == 0 || x > n) {
                return invalid(format!("{s:?} is not a {k}-subset of [{n}]"));
            }
        }
        let g = GrassmannNecklace { n, k, sets };
        if let Some(i) = g.step_violation() {
            return invalid(format!("the step from I_{i} to I_{} breaks the exchange rule", i % n + 1));
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sets(&self) -> &[BTreeSet<usize>] {
        &self.sets
    }

    /// `I_a` for `a` in `[1, n]`.
    pub fn get(&self, a: usize) -> &BTreeSet<usize> {
        &self.sets[a - 1]
    }

    fn step_violation(&self) -> Option<usize> {
        (1..=self.n).find(|&i| !step_ok(self.get(i), self.get(i % self.n + 1), i))
    }

    /// The decorated permutation read off the exchanges: `I_{i+1}` is
    /// `I_i` with `i` replaced by `σ(i)`.
    pub fn to_decorated(&self) -> DecoratedPermutation {
        let n = self.n;
        let mut perm = vec![0; n];
        let mut white = BTreeSet::new();
        let mut black = BTreeSet::new();
        for i in 1..=n {
            let (cur, next) = (self.get(i), self.get(i % n + 1));
            if !cur.contains(&i) {
                perm[i - 1] = i;
                black.insert(i);
            } else {
                let j = next.difference(cur).next().copied().unwrap_or(i);
                if j == i {
                    white.insert(i);
                }
                perm[i - 1] = j;
            }
        }
        DecoratedPermutation::new(Permutation::new(perm).expect("exchange sequence is a bijection"), white, black)
            .expect("fixed points are colored")
    }
}

fn step_ok(cur: &BTreeSet<usize>, next: &BTreeSet<usize>, i: usize) -> bool {
    if cur.contains(&i) {
        let mut rest = cur.clone();
        rest.remove(&i);
        rest.is_subset(next) && next.len() == cur.len()
    } else {
        cur == next
    }
}

impl fmt::Display for GrassmannNecklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .sets
            .iter()
            .map(|s| format!("{{{}}}", s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `I_a = {i : σ^{-1}(i) >_a i, or i a white fixed point}`, the first-basis
/// rule applied after rotating `a` to the front.
pub fn necklace_from_decorated(sigma: &DecoratedPermutation) -> GrassmannNecklace {
    let n = sigma.n();
    let inv = sigma.perm.inverse();
    let sets = (1..=n)
        .map(|a| {
            (1..=n)
                .filter(|&i| sigma.white.contains(&i) || shifted_rank(inv.at(i), a, n) > shifted_rank(i, a, n))
                .collect()
        })
        .collect();
    GrassmannNecklace::new(n, sigma.k(), sets).expect("decorated permutations give necklaces")
}

pub fn necklace_from_bounded_affine(f: &BoundedAffinePermutation) -> GrassmannNecklace {
    necklace_from_decorated(&f.to_decorated())
}

/// Every necklace of type `(k, n)`, by following the exchange rule from each
/// starting set.
pub fn enumerate_necklaces(k: usize, n: usize) -> Vec<GrassmannNecklace> {
    fn extend(n: usize, k: usize, seq: &mut Vec<BTreeSet<usize>>, out: &mut Vec<GrassmannNecklace>) {
        let i = seq.len();
        let cur = seq[i - 1].clone();
        let candidates: Vec<BTreeSet<usize>> = if cur.contains(&i) {
            let mut rest = cur.clone();
            rest.remove(&i);
            (1..=n)
                .filter(|j| !rest.contains(j))
                .map(|j| {
                    let mut s = rest.clone();
                    s.insert(j);
                    s
                })
                .collect()
        } else {
            vec![cur]
        };
        for next in candidates {
            if i == n {
                if next == seq[0] {
                    out.push(GrassmannNecklace { n, k, sets: seq.clone() });
                }
            } else {
                seq.push(next);
                extend(n, k, seq, out);
                seq.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for start in k_subsets(n, k) {
        extend(n, k, &mut vec![start], &mut out);
    }
    out.sort_by(|a, b| a.sets.cmp(&b.sets));
    out
}

/// `I_i = R(I_{i'+1})` for all `i`, with `i' = 2n + 1 - i` and indices
/// taken mod `2n`.
pub fn is_type_c_necklace(nk: &GrassmannNecklace) -> Result<bool> {
    if nk.n != 2 * nk.k {
        return Err(Error::NotTypeC(format!("necklace of type ({}, {}) is not on (n, 2n)", nk.k, nk.n)));
    }
    let two_n = nk.n;
    Ok((1..=two_n).all(|i| {
        let j = (two_n + 1 - i) % two_n + 1;
        *nk.get(i) == reflect_set(nk.get(j), two_n)
    }))
}

// ---------------------------------------------------------------------------
// positroids

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Positroid {
    k: usize,
    n: usize,
    bases: BTreeSet<Vec<usize>>,
}

impl Positroid {
    /// Accepts `bases` only if they come back unchanged from their necklace.
    pub fn new(k: usize, n: usize, bases: BTreeSet<Vec<usize>>) -> Result<Self> {
        if bases.is_empty() {
            return invalid("a positroid has at least one basis");
        }
        if bases.iter().any(|b| b.len() != k || b.iter().any(|&x| x == 0 || x > n) || b.windows(2).any(|w| w[0] >= w[1])) {
            return invalid(format!("bases must be sorted {k}-subsets of [{n}]"));
        }
        let nk = necklace_of_bases(k, n, &bases)?;
        let back = positroid_from_necklace(&nk);
        if back.bases != bases {
            return Err(Error::Hypothesis("the set is not recovered from its necklace, so it is not a positroid".into()));
        }
        Ok(back)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bases(&self) -> &BTreeSet<Vec<usize>> {
        &self.bases
    }

    pub fn contains(&self, j: &BTreeSet<usize>) -> bool {
        self.bases.contains(&j.iter().copied().collect::<Vec<_>>())
    }

    pub fn necklace(&self) -> GrassmannNecklace {
        necklace_of_bases(self.k, self.n, &self.bases).expect("positroids are nonempty")
    }
}

/// All `J` with `I_a <=_a J` for every `a`.
pub fn positroid_from_necklace(nk: &GrassmannNecklace) -> Positroid {
    let bases = k_subsets(nk.n, nk.k)
        .into_iter()
        .filter(|j| (1..=nk.n).all(|a| shifted_leq(nk.get(a), j, a, nk.n).expect("same size")))
        .map(|j| j.into_iter().collect())
        .collect();
    Positroid { k: nk.k, n: nk.n, bases }
}

/// `I_a` is the `<=_a`-least basis.
pub fn necklace_from_positroid(m: &Positroid) -> GrassmannNecklace {
    m.necklace()
}

/// Necklace of an arbitrary nonempty basis set, taking the least element in
/// each shifted lexicographic order. Errors if the result is not a necklace.
pub fn necklace_of_bases(k: usize, n: usize, bases: &BTreeSet<Vec<usize>>) -> Result<GrassmannNecklace> {
    if bases.is_empty() {
        return invalid("no bases");
    }
    let sets = (1..=n)
        .map(|a| {
            bases
                .iter()
                .map(|b| b.iter().copied().collect::<BTreeSet<usize>>())
                .min_by_key(|b| sorted_from(b, a, n).iter().map(|&x| shifted_rank(x, a, n)).collect::<Vec<_>>())
                .expect("nonempty")
        })
        .collect();
    GrassmannNecklace::new(n, k, sets)
}

/// Indices of the nonvanishing coordinates.
pub fn matroid_of_point<S: Scalar>(p: &PlueckerVector<S>) -> Result<BTreeSet<Vec<usize>>> {
    let s = p.support();
    if s.is_empty() {
        return Err(Error::Arithmetic("every coordinate vanishes".into()));
    }
    Ok(s)
}

/// `I ∈ M` exactly when `R(I) ∈ M`.
pub fn is_type_c_positroid(m: &Positroid) -> Result<bool> {
    if m.n != 2 * m.k {
        return Err(Error::NotTypeC(format!("positroid of type ({}, {}) is not on (n, 2n)", m.k, m.n)));
    }
    Ok(m.bases.iter().all(|b| {
        let r: Vec<usize> = reflect_set(&b.iter().copied().collect(), m.n).into_iter().collect();
        m.bases.contains(&r)
    }))
}

// ---------------------------------------------------------------------------
// Le-diagrams

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum LeKind {
    /// Inside the `k x (n-k)` rectangle.
    A { k: usize, n: usize },
    /// Inside the staircase of size `n`.
    B { n: usize },
}

/// A filling of a Young diagram in French notation. `rows[0]` is the bottom
/// row; `true` is a `+`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LeDiagram {
    pub kind: LeKind,
    pub rows: Vec<Vec<bool>>,
}

impl LeKind {
    fn height(self) -> usize {
        match self {
            LeKind::A { k, .. } => k,
            LeKind::B { n } => n,
        }
    }

    /// Longest allowed row, counting rows from the bottom (0-based).
    fn max_len(self, row: usize) -> usize {
        match self {
            LeKind::A { k, n } => n - k,
            LeKind::B { .. } => row + 1,
        }
    }

    /// Generator labelling the box in `row` (from the bottom) and 0-based
    /// column `col`: type A rows from the top read `s_r, s_{r+1}, ...`, and
    /// type B row `i` from the top reads `s_i, ..., s_n`.
    fn label(self, row: usize, col: usize) -> usize {
        let from_top = self.height() - row;
        from_top + col
    }

    fn word_type(self) -> (WordType, usize) {
        match self {
            LeKind::A { n, .. } => (WordType::A, n),
            LeKind::B { n } => (WordType::C, n),
        }
    }

    /// Row lengths of every Young diagram of this kind, bottom row first.
    pub fn shapes(self) -> Vec<Vec<usize>> {
        let h = self.height();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(kind: LeKind, h: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let row = cur.len();
            if row == h {
                out.push(cur.clone());
                return;
            }
            let below = if row == 0 { usize::MAX } else { cur[row - 1] };
            for len in 0..=kind.max_len(row) {
                if !shape_row_ok(kind, row, len, below) {
                    continue;
                }
                cur.push(len);
                rec(kind, h, cur, out);
                cur.pop();
            }
        }
        rec(self, h, &mut cur, &mut out);
        out
    }
}

/// A box at column `c` needs the box under it whenever the row below
/// reaches that column in the ambient shape.
fn shape_row_ok(kind: LeKind, row: usize, len: usize, below: usize) -> bool {
    if len > kind.max_len(row) {
        return false;
    }
    if row == 0 {
        return true;
    }
    len.min(kind.max_len(row - 1)) <= below
}

impl LeDiagram {
    pub fn new(kind: LeKind, rows: Vec<Vec<bool>>) -> Result<Self> {
        if let LeKind::A { k, n } = kind {
            if k > n {
                return invalid(format!("k = {k} exceeds n = {n}"));
            }
        }
        if rows.len() != kind.height() {
            return invalid(format!("expected {} rows, got {}", kind.height(), rows.len()));
        }
        for (r, row) in rows.iter().enumerate() {
            let below = if r == 0 { usize::MAX } else { rows[r - 1].len() };
            if !shape_row_ok(kind, r, row.len(), below) {
                return invalid(format!("row {} (from the bottom) breaks the shape", r + 1));
            }
        }
        Ok(LeDiagram { kind, rows })
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    /// Boxes in increasing order: bottom row first, left to right.
    fn boxes(&self) -> Vec<(usize, usize)> {
        self.rows.iter().enumerate().flat_map(|(r, row)| (0..row.len()).map(move |c| (r, c))).collect()
    }

    /// The reduced word of the shape (boxes listed from right to left) and
    /// the mask of letters kept, i.e. the `0` boxes.
    pub fn word_and_mask(&self) -> (Word, Vec<bool>) {
        let mut boxes = self.boxes();
        boxes.reverse();
        let (kind, rank) = self.kind.word_type();
        let letters = boxes.iter().map(|&(r, c)| self.kind.label(r, c)).collect();
        let mask = boxes.iter().map(|&(r, c)| !self.rows[r][c]).collect();
        (Word::new(kind, rank, letters).expect("labels are in range"), mask)
    }

    /// No `0` with a `+` to its left and a `+` below; in type B also no `0`
    /// in a diagonal box with a `+` to its left.
    pub fn is_valid(&self) -> bool {
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &plus) in row.iter().enumerate() {
                if plus {
                    continue;
                }
                let left = row[..c].iter().any(|&x| x);
                let below = (0..r).any(|rr| self.rows[rr].get(c).copied().unwrap_or(false));
                if left && below {
                    return false;
                }
                if let LeKind::B { .. } = self.kind {
                    let diagonal = c + 1 == self.kind.max_len(r);
                    if diagonal && left {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `(u, w)`: `w` is the product of the shape's word and `u` keeps the
    /// `0` boxes. Type B pairs are signed permutations embedded in `S_2n`.
    pub fn to_pair(&self) -> Result<(Permutation, Permutation)> {
        if !self.is_valid() {
            return Err(Error::Pattern("filling contains a forbidden pattern".into()));
        }
        let (word, mask) = self.word_and_mask();
        Ok((word.subproduct(&mask), word.product()))
    }

    pub fn k(&self) -> usize {
        match self.kind {
            LeKind::A { k, .. } => k,
            LeKind::B { n } => n,
        }
    }

    pub fn to_bounded_affine(&self) -> Result<BoundedAffinePermutation> {
        let (u, w) = self.to_pair()?;
        BoundedAffinePermutation::from_pair(&u, &w, self.k())
    }

    /// The diagram of `(u, w)` when `w` is the permutation of some shape of
    /// this kind and `u` lies below it.
    pub fn from_pair(kind: LeKind, u: &Permutation, w: &Permutation) -> Result<Self> {
        for shape in kind.shapes() {
            let blank = LeDiagram { kind, rows: shape.iter().map(|&l| vec![false; l]).collect() };
            let (word, _) = blank.word_and_mask();
            if word.product() != *w {
                continue;
            }
            let mask = pds(u, &word)?;
            let mut boxes = blank.boxes();
            boxes.reverse();
            let mut rows = blank.rows.clone();
            for (&(r, c), &keep) in boxes.iter().zip(&mask) {
                rows[r][c] = !keep;
            }
            return Ok(LeDiagram { kind, rows });
        }
        Err(Error::Invalid(format!("{w} is not the permutation of a shape of kind {kind:?}")))
    }

    pub fn from_bounded_affine(kind: LeKind, f: &BoundedAffinePermutation) -> Result<Self> {
        let (u, w) = f.to_pair();
        Self::from_pair(kind, &u, &w)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (ty, extra) = match self.kind {
            LeKind::A { k, n } => ("A", serde_json::json!({"k": k, "n": n})),
            LeKind::B { n } => ("B", serde_json::json!({"n": n})),
        };
        let filling: Vec<Vec<&str>> =
            self.rows.iter().map(|r| r.iter().map(|&p| if p { "+" } else { "0" }).collect()).collect();
        let mut v = serde_json::json!({"type": ty, "shape": self.shape(), "filling": filling});
        for (key, val) in extra.as_object().expect("object") {
            v[key] = val.clone();
        }
        v
    }

    /// Le-diagram JSON with rows listed bottom first. Type A also needs
    /// `k` and `n`; type B needs `n`.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let get = |key: &str| v.get(key).and_then(serde_json::Value::as_u64).map(|x| x as usize);
        let kind = match v.get("type").and_then(serde_json::Value::as_str) {
            Some("A") => LeKind::A {
                k: get("k").ok_or_else(|| Error::Invalid("type A diagram needs k".into()))?,
                n: get("n").ok_or_else(|| Error::Invalid("type A diagram needs n".into()))?,
            },
            Some("B") => LeKind::B { n: get("n").ok_or_else(|| Error::Invalid("type B diagram needs n".into()))? },
            _ => return invalid("diagram type must be \"A\" or \"B\""),
        };
        let filling = v
            .get("filling")
            .and_then(serde_json::Value::as_array)
            .ok_or_else(|| Error::Invalid("diagram needs a filling".into()))?;
        let mut rows = Vec::new();
        for row in filling {
            let row = row.as_array().ok_or_else(|| Error::Invalid("filling rows are arrays".into()))?;
            let mut cells = Vec::new();
            for cell in row {
                cells.push(match cell.as_str() {
                    Some("+") => true,
                    Some("0") => false,
                    _ => return invalid("filling entries are \"+\" or \"0\""),
                });
            }
            rows.push(cells);
        }
        // missing upper rows are empty
        while rows.len() < kind.height() {
            rows.push(Vec::new());
        }
        if let Some(shape) = v.get("shape").and_then(serde_json::Value::as_array) {
            let given: Vec<usize> = shape.iter().filter_map(|x| x.as_u64().map(|x| x as usize)).collect();
            let mut want: Vec<usize> = rows.iter().map(Vec::len).collect();
            while want.last() == Some(&0) && want.len() > given.len() {
                want.pop();
            }
            if given != want {
                return invalid(format!("shape {given:?} does not match the filling {want:?}"));
            }
        }
        LeDiagram::new(kind, rows)
    }
}

impl fmt::Display for LeDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // top row first, as drawn
        for row in self.rows.iter().rev() {
            let cells: String = row.iter().map(|&p| if p { '+' } else { '0' }).collect();
            writeln!(f, "{cells}")?;
        }
        Ok(())
    }
}

/// Every valid Le-diagram of the given kind.
pub fn enumerate_le(kind: LeKind) -> Vec<LeDiagram> {
    let mut out = Vec::new();
    for shape in kind.shapes() {
        let total: usize = shape.iter().sum();
        for bits in 0u64..(1 << total) {
            let mut idx = 0;
            let rows = shape
                .iter()
                .map(|&l| {
                    (0..l)
                        .map(|_| {
                            let b = bits >> idx & 1 == 1;
                            idx += 1;
                            b
                        })
                        .collect()
                })
                .collect();
            let d = LeDiagram { kind, rows };
            if d.is_valid() {
                out.push(d);
            }
        }
    }
    out
}
