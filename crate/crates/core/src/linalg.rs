//! Exact matrices over rationals or polynomials: minors, bridge-matrix
//! parametrizations, the symplectic form and the two Lagrangian tests.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};

use crate::affine::BoundedAffinePermutation;
use crate::coxeter::{k_bruhat_leq, k_subsets, reduced_word, Permutation, Word, WordType};
use crate::error::{invalid, Error, Result};
use crate::measurement::{subset_key, PlueckerVector};
use crate::plabic::{bridge_sequence, BridgeGroup};
use crate::poly::{format_rational, parse_rational, ratio, Poly, Rational, Scalar};

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<S> {
    rows: Vec<Vec<S>>,
    cols: usize,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: Vec<Vec<S>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return invalid("rows have different lengths");
        }
        Ok(Matrix { rows, cols })
    }

    pub fn zeros(r: usize, c: usize) -> Self {
        Matrix { rows: vec![vec![S::zero(); c]; r], cols: c }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = S::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    /// Entry at 1-based row `i`, column `j`.
    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.rows[i - 1][j - 1]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.rows[i - 1][j - 1] = v;
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.cols).map(|j| self.rows.iter().map(|r| r[j].clone()).collect()).collect();
        Matrix { rows, cols: self.nrows() }
    }

    pub fn mul(&self, other: &Matrix<S>) -> Result<Self> {
        if self.cols != other.nrows() {
            return Err(Error::RankMismatch(self.cols, other.nrows()));
        }
        let mut out = Self::zeros(self.nrows(), other.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for (l, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.rows[l][j];
                    if !b.is_zero() {
                        out.rows[i][j] = out.rows[i][j].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect(), cols: self.cols }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Zero::is_zero)
    }

    /// Determinant of the square submatrix on the given 1-based columns, by
    /// cofactor expansion (no division, so it works over polynomials).
    pub fn minor(&self, cols: &[usize]) -> S {
        debug_assert_eq!(cols.len(), self.nrows());
        let cols: Vec<usize> = cols.iter().map(|c| c - 1).collect();
        self.expand(0, &cols)
    }

    fn expand(&self, row: usize, cols: &[usize]) -> S {
        if cols.is_empty() {
            return S::one();
        }
        let mut total = S::zero();
        for (idx, &c) in cols.iter().enumerate() {
            let a = &self.rows[row][c];
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().enumerate().filter(|&(i, _)| i != idx).map(|(_, &x)| x).collect();
            let term = a.clone() * self.expand(row + 1, &rest);
            total = if idx % 2 == 0 { total + term } else { total - term };
        }
        total
    }

    pub fn determinant(&self) -> Result<S> {
        if self.nrows() != self.cols {
            return Err(Error::RankMismatch(self.nrows(), self.cols));
        }
        Ok(self.minor(&(1..=self.cols).collect::<Vec<_>>()))
    }

    /// Right multiplication by the elementary matrix `x_(a,b)(t)`: column `b`
    /// gains `t` times column `a`.
    pub fn add_column_multiple(&mut self, a: usize, b: usize, t: &S) {
        for r in &mut self.rows {
            let add = r[a - 1].clone() * t.clone();
            r[b - 1] = r[b - 1].clone() + add;
        }
    }
}

impl Matrix<Rational> {
    pub fn rank(&self) -> usize {
        row_reduce(self.rows.clone()).1.len()
    }

    /// Basis of `{x : M x = 0}`.
    pub fn null_space(&self) -> Vec<Vec<Rational>> {
        let (red, pivots) = row_reduce(self.rows.clone());
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    x[p] = -red[r][f].clone();
                }
                x
            })
            .collect()
    }
}

/// Reduced row echelon form and its pivot columns.
fn row_reduce(mut rows: Vec<Vec<Rational>>) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..cols {
                    let sub = &rows[r][j] * &f;
                    rows[i][j] = &rows[i][j] - &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    (rows, pivots)
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix<Poly> {
    /// Matrix JSON: `{"rows": [["1", "2"], [{"var": "t1"}, "0"]]}`; strings
    /// may also hold polynomials such as `"t1+t3"`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let rows = v
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Invalid("matrix JSON needs a \"rows\" array".into()))?;
        let mut out = Vec::new();
        for row in rows {
            let row = row.as_array().ok_or_else(|| Error::Invalid("each row must be an array".into()))?;
            let mut cells = Vec::new();
            for cell in row {
                cells.push(match cell {
                    Value::String(s) => match parse_rational(s) {
                        Ok(r) => Poly::constant(r),
                        Err(_) => s.parse::<Poly>()?,
                    },
                    Value::Number(x) => Poly::constant(parse_rational(&x.to_string())?),
                    Value::Object(o) => match o.get("var").and_then(Value::as_str) {
                        Some(name) => Poly::var(name),
                        None => return invalid("matrix entry object without \"var\""),
                    },
                    _ => return invalid("matrix entries are strings, numbers or {\"var\": name}"),
                });
            }
            out.push(cells);
        }
        Matrix::new(out)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
        json!({ "rows": rows })
    }

    /// The rational matrix when every entry is constant.
    pub fn as_rational(&self) -> Option<Matrix<Rational>> {
        let rows: Option<Vec<Vec<Rational>>> =
            self.rows.iter().map(|r| r.iter().map(Poly::as_constant).collect()).collect();
        Some(Matrix { rows: rows?, cols: self.cols })
    }
}

impl Matrix<Rational> {
    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(format_rational).collect()).collect();
        json!({ "rows": rows })
    }
}

// ---------------------------------------------------------------------------
// minors

/// All maximal minors as a Pluecker vector. Errors when `k > n` or when every
/// minor vanishes (the rows are dependent).
pub fn minors_pluecker<S: Scalar>(m: &Matrix<S>) -> Result<PlueckerVector<S>> {
    let (k, n) = (m.nrows(), m.ncols());
    if k > n {
        return invalid(format!("{k} rows but only {n} columns"));
    }
    let mut p = PlueckerVector::zero(k, n);
    for j in k_subsets(n, k) {
        let key = subset_key(&j);
        let v = m.minor(&key);
        p.coords.insert(key, v);
    }
    if p.is_zero() {
        return Err(Error::Arithmetic("the rows are linearly dependent".into()));
    }
    Ok(p)
}

// ---------------------------------------------------------------------------
// bridge parametrizations

/// The bridge `(a, b)` carries a negative parameter when an odd number of
/// lollipops in `start` sit strictly between its legs.
pub fn bridge_sign_negative(start: &BTreeSet<usize>, a: usize, b: usize) -> bool {
    start.iter().filter(|&&x| a < x && x < b).count() % 2 == 1
}

/// Starts from the matrix with identity columns on `start` and multiplies on
/// the right by `x_(a,b)(±t)` for each bridge in turn.
pub fn matrix_from_bridges<S: Scalar>(
    start: &BTreeSet<usize>,
    n: usize,
    bridges: &[(usize, usize)],
    params: &[S],
) -> Result<Matrix<S>> {
    if bridges.len() != params.len() {
        return invalid(format!("{} bridges but {} parameters", bridges.len(), params.len()));
    }
    let mut m = Matrix::zeros(start.len(), n);
    for (r, &c) in start.iter().enumerate() {
        if c == 0 || c > n {
            return invalid(format!("column {c} is outside [1, {n}]"));
        }
        m.rows[r][c - 1] = S::one();
    }
    for (&(a, b), t) in bridges.iter().zip(params) {
        if !(1 <= a && a < b && b <= n) {
            return invalid(format!("bridge ({a}, {b}) is not an increasing pair in [1, {n}]"));
        }
        let t = if bridge_sign_negative(start, a, b) { -t.clone() } else { t.clone() };
        m.add_column_multiple(a, b, &t);
    }
    Ok(m)
}

/// Bridge matrix for `<u, w>_k`; `params` follow the order in which bridges
/// are added.
pub fn bridge_matrix_parametrization<S: Scalar>(
    u: &Permutation,
    w: &Permutation,
    k: usize,
    params: &[S],
    word: Option<&Word>,
) -> Result<Matrix<S>> {
    let bridges = pair_bridges(u, w, k, word)?;
    matrix_from_bridges(&u.image(1..=k), u.n(), &bridges, params)
}

fn pair_bridges(u: &Permutation, w: &Permutation, k: usize, word: Option<&Word>) -> Result<Vec<(usize, usize)>> {
    if !k_bruhat_leq(u, w, k)? {
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
    bridge_sequence(u, word)
}

/// Bridge matrix with the same parameter names as the bridge graph: the
/// first bridge added is `t_d`, the last `t_1`.
pub fn canonical_bridge_matrix(u: &Permutation, w: &Permutation, k: usize, word: Option<&Word>) -> Result<Matrix<Poly>> {
    let bridges = pair_bridges(u, w, k, word)?;
    let d = bridges.len();
    let params: Vec<Poly> = (0..d).map(|i| Poly::var(&format!("t{}", d - i))).collect();
    matrix_from_bridges(&u.image(1..=k), u.n(), &bridges, &params)
}

/// Bridge matrix of a type C cell: every bridge of a group shares the
/// group's parameter.
pub fn symmetric_bridge_matrix(f: &BoundedAffinePermutation, word: Option<&Word>) -> Result<(Matrix<Poly>, Vec<BridgeGroup>)> {
    let (_, groups) = crate::symmetric::symmetric_bridge_graph_with_word(f, word)?;
    let (u, _) = f.to_pair();
    let mut bridges = Vec::new();
    let mut params = Vec::new();
    for g in &groups {
        for &pair in &g.pairs {
            bridges.push(pair);
            params.push(Poly::var(&g.param));
        }
    }
    let m = matrix_from_bridges(&u.image(1..=f.k()), f.n(), &bridges, &params)?;
    Ok((m, groups))
}

// ---------------------------------------------------------------------------
// symplectic form

/// `E` with `<e_i, e_j> = (-1)^j` when `j = 2n + 1 - i`, zero otherwise.
pub fn symplectic_form_matrix<S: Scalar>(n: usize) -> Matrix<S> {
    let mut e = Matrix::zeros(2 * n, 2 * n);
    for i in 1..=2 * n {
        let j = 2 * n + 1 - i;
        e.set(i, j, if j % 2 == 0 { S::one() } else { -S::one() });
    }
    e
}

/// Whether the rows of an `n x 2n` matrix span an isotropic subspace.
pub fn is_lagrangian_matrix<S: Scalar>(m: &Matrix<S>) -> Result<bool> {
    Ok(isotropy_defect(m)?.is_none())
}

/// The first pair of rows (1-based) with nonzero pairing, if any.
pub fn isotropy_defect<S: Scalar>(m: &Matrix<S>) -> Result<Option<(usize, usize, S)>> {
    if m.ncols() != 2 * m.nrows() {
        return invalid(format!("a Lagrangian test needs an n x 2n matrix, got {} x {}", m.nrows(), m.ncols()));
    }
    let e = symplectic_form_matrix::<S>(m.nrows());
    let gram = m.mul(&e)?.mul(&m.transpose())?;
    for i in 1..=m.nrows() {
        for j in i + 1..=m.nrows() {
            if !gram.get(i, j).is_zero() {
                return Ok(Some((i, j, gram.get(i, j).clone())));
            }
        }
    }
    Ok(None)
}

/// `R(I) = [2n] \ {a' : a in I}` with `a' = 2n + 1 - a`.
pub fn reflect_set(i: &BTreeSet<usize>, two_n: usize) -> BTreeSet<usize> {
    let primed: BTreeSet<usize> = i.iter().map(|&a| two_n + 1 - a).collect();
    (1..=two_n).filter(|a| !primed.contains(a)).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LagrangianMode {
    /// `Δ_I = Δ_R(I)` for every `I`.
    Cutout,
    /// Conditions relative to the lexicographically first basis.
    Lemma,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Witness {
    /// The first basis does not pair each `i` with the absence of `i'`.
    Basis(Vec<usize>),
    /// Two coordinates that should agree but do not.
    Unequal(Vec<usize>, Vec<usize>),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let key = |s: &[usize]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Witness::Basis(i) => write!(f, "first basis {{{}}} contains a pair i, i'", key(i)),
            Witness::Unequal(a, b) => write!(f, "D{{{}}} != D{{{}}}", key(a), key(b)),
        }
    }
}

/// `Ok(None)` when the point passes, otherwise the first failing witness.
pub fn lagrangian_relations_check<S: Scalar>(p: &PlueckerVector<S>, mode: LagrangianMode) -> Result<Option<Witness>> {
    if p.n != 2 * p.k {
        return invalid(format!("expected coordinates on ({}, {}), got ({}, {})", p.k, 2 * p.k, p.k, p.n));
    }
    let two_n = p.n;
    let first = p.lex_first().ok_or_else(|| Error::Arithmetic("every coordinate vanishes".into()))?.clone();
    match mode {
        LagrangianMode::Cutout => {
            for key in p.coords.keys() {
                let r = subset_key(&reflect_set(&key.iter().copied().collect(), two_n));
                if p.get(key) != p.get(&r) {
                    return Ok(Some(Witness::Unequal(key.clone(), r)));
                }
            }
            Ok(None)
        }
        LagrangianMode::Lemma => {
            let set: BTreeSet<usize> = first.iter().copied().collect();
            if (1..=p.k).any(|i| set.contains(&i) == set.contains(&(two_n + 1 - i))) {
                return Ok(Some(Witness::Basis(first)));
            }
            let prime = |a: usize| two_n + 1 - a;
            for j in 0..p.k {
                for k in j + 1..p.k {
                    let (ij, ik) = (first[j], first[k]);
                    if ij >= prime(ik) {
                        continue;
                    }
                    let mut left = set.clone();
                    left.remove(&ij);
                    left.insert(prime(ik));
                    let mut right = set.clone();
                    right.remove(&ik);
                    right.insert(prime(ij));
                    let (l, r) = (subset_key(&left), subset_key(&right));
                    if p.get(&l) != p.get(&r) {
                        return Ok(Some(Witness::Unequal(l, r)));
                    }
                }
            }
            Ok(None)
        }
    }
}

// ---------------------------------------------------------------------------
// random matrices

fn small_rational(rng: &mut impl Rng, zero_bias: bool) -> Rational {
    if zero_bias && rng.gen_bool(0.4) {
        return Rational::zero();
    }
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

/// A random `k x n` rational matrix of full row rank. With `sparse`, about
/// two entries in five are zero, so that first bases vary.
pub fn random_full_rank_matrix(k: usize, n: usize, sparse: bool, rng: &mut impl Rng) -> Matrix<Rational> {
    loop {
        let rows = (0..k).map(|_| (0..n).map(|_| small_rational(rng, sparse)).collect()).collect();
        let m = Matrix { rows, cols: n };
        if m.rank() == k {
            return m;
        }
    }
}

/// A random Lagrangian `n x 2n` matrix, built one row at a time from the
/// symplectic complement of the rows chosen so far.
pub fn random_lagrangian_matrix(n: usize, sparse: bool, rng: &mut impl Rng) -> Matrix<Rational> {
    let e = symplectic_form_matrix::<Rational>(n);
    'retry: loop {
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for _ in 0..n {
            // x with <r, x> = 0 for each chosen row r, i.e. (r E) x = 0
            let constraints = if rows.is_empty() {
                Matrix::zeros(1, 2 * n)
            } else {
                Matrix { rows: rows.clone(), cols: 2 * n }.mul(&e).expect("shapes agree")
            };
            let basis = constraints.null_space();
            let mut x = vec![Rational::zero(); 2 * n];
            for b in &basis {
                let c = small_rational(rng, sparse);
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi = &*xi + &(&c * bi);
                }
            }
            let mut next = rows.clone();
            next.push(x);
            if (Matrix { rows: next.clone(), cols: 2 * n }).rank() != next.len() {
                continue 'retry;
            }
            rows = next;
        }
        return Matrix { rows, cols: 2 * n };
    }
}
