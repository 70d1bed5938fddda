//! Bounded affine permutations of types A and C and decorated permutations.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coxeter::{grassmannian_from_set, Permutation};
use crate::error::{invalid, Error, Result};

/// A bijection `f` of the integers with `f(i + N) = f(i) + N` and
/// `i <= f(i) <= i + N`, stored by its window `f(1..=N)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "BapJson", into = "BapJson")]
pub struct BoundedAffinePermutation {
    window: Vec<i64>,
    k: usize,
}

#[derive(Serialize, Deserialize)]
struct BapJson {
    #[serde(rename = "N")]
    n: usize,
    k: usize,
    window: Vec<i64>,
}

impl TryFrom<BapJson> for BoundedAffinePermutation {
    type Error = Error;
    fn try_from(j: BapJson) -> Result<Self> {
        let f = BoundedAffinePermutation::new(j.window)?;
        if f.n() != j.n || f.k != j.k {
            return invalid(format!("window has N={} k={}, header says N={} k={}", f.n(), f.k, j.n, j.k));
        }
        Ok(f)
    }
}

impl From<BoundedAffinePermutation> for BapJson {
    fn from(f: BoundedAffinePermutation) -> BapJson {
        BapJson { n: f.n(), k: f.k, window: f.window }
    }
}

impl fmt::Debug for BoundedAffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.window)
    }
}

impl fmt::Display for BoundedAffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl BoundedAffinePermutation {
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let n = window.len() as i64;
        if n == 0 {
            return invalid("empty window");
        }
        let mut seen = vec![false; n as usize];
        for (idx, &v) in window.iter().enumerate() {
            let i = idx as i64 + 1;
            if v < i || v > i + n {
                return invalid(format!("window {window:?} is unbounded at {i}"));
            }
            let r = v.rem_euclid(n) as usize;
            if seen[r] {
                return invalid(format!("window {window:?} repeats a residue"));
            }
            seen[r] = true;
        }
        let shift: i64 = window.iter().enumerate().map(|(idx, &v)| v - idx as i64 - 1).sum();
        Ok(BoundedAffinePermutation { k: (shift / n) as usize, window })
    }

    /// The period `N`.
    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// `f(i)` for any integer `i`.
    pub fn at(&self, i: i64) -> i64 {
        let n = self.n() as i64;
        let q = (i - 1).div_euclid(n);
        self.window[(i - 1).rem_euclid(n) as usize] + q * n
    }

    /// Raw window of `f ∘ t` for the affine transposition `t` exchanging
    /// `i + mN` and `j + mN`; the result need not be bounded.
    pub fn times_transposition(&self, i: i64, j: i64) -> Vec<i64> {
        let n = self.n() as i64;
        assert!((i - j).rem_euclid(n) != 0, "transposition of congruent positions");
        (1..=n)
            .map(|p| {
                if (p - i).rem_euclid(n) == 0 {
                    self.at(j + (p - i))
                } else if (p - j).rem_euclid(n) == 0 {
                    self.at(i + (p - j))
                } else {
                    self.at(p)
                }
            })
            .collect()
    }

    /// `f ∘ (a, b)` for `a, b` in `[1, N]`, required to stay bounded.
    pub fn swap(&self, a: usize, b: usize) -> Result<Self> {
        Self::new(self.times_transposition(a as i64, b as i64))
    }

    /// Number of type Ã inversion classes.
    pub fn length_a(&self) -> usize {
        self.inversion_reps().len()
    }

    /// Inversions `(i, j)` with `i` in `[1, N]`, `i < j`, `f(i) > f(j)`; since
    /// `f(j) >= j` and `f(i) <= i + N` only `j < i + N` can occur.
    fn inversion_reps(&self) -> Vec<(i64, i64)> {
        let n = self.n() as i64;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..i + n {
                if self.at(i) > self.at(j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Number of type C̃ inversion classes: Ã classes modulo the reflection
    /// `(i, j) -> (2n+1-j, 2n+1-i)`.
    pub fn length_c(&self) -> Result<usize> {
        if !self.is_type_c() {
            return Err(Error::NotTypeC(format!("{self}")));
        }
        let m = self.n() as i64;
        let norm = |(i, j): (i64, i64)| {
            let s = (i - 1).div_euclid(m) * m;
            (i - s, j - s)
        };
        let classes: HashSet<(i64, i64)> = self
            .inversion_reps()
            .into_iter()
            .map(|(i, j)| {
                let mirror = norm((m + 1 - j, m + 1 - i));
                norm((i, j)).min(mirror)
            })
            .collect();
        Ok(classes.len())
    }

    /// `f(2n+1-a) = 4n+1-f(a)` on a window of length `2n` and type `n`.
    pub fn is_type_c(&self) -> bool {
        let m = self.n() as i64;
        if m % 2 != 0 || self.k as i64 != m / 2 {
            return false;
        }
        (1..=m).all(|a| self.at(m + 1 - a) == 2 * m + 1 - self.at(a))
    }

    pub fn translation_element(j: &BTreeSet<usize>, n: usize) -> Result<Self> {
        if j.iter().any(|&x| x == 0 || x > n) {
            return invalid(format!("{j:?} is not a subset of [{n}]"));
        }
        Self::new((1..=n).map(|i| if j.contains(&i) { (i + n) as i64 } else { i as i64 }).collect())
    }

    /// `f_{u,w} = u t_[k] w^{-1}`.
    pub fn from_pair(u: &Permutation, w: &Permutation, k: usize) -> Result<Self> {
        if u.n() != w.n() {
            return Err(Error::RankMismatch(u.n(), w.n()));
        }
        let n = u.n();
        let w_inv = w.inverse();
        let window = (1..=n)
            .map(|i| {
                let j = w_inv.at(i);
                let lifted = if j <= k { u.at(j) + n } else { u.at(j) };
                lifted as i64
            })
            .collect();
        Self::new(window).map_err(|_| Error::NotBelow(format!("({u}, {w}) is not a {k}-Bruhat interval")))
    }

    /// The factorization `f = u t_[k] w^{-1}` with `w` Grassmannian.
    pub fn to_pair(&self) -> (Permutation, Permutation) {
        let n = self.n();
        let big: BTreeSet<usize> = (1..=n).filter(|&i| self.at(i as i64) > n as i64).collect();
        let w = grassmannian_from_set(&big, n).expect("subset of [n]");
        let u = (1..=n)
            .map(|j| {
                let v = self.at(w.at(j) as i64) as usize;
                if j <= self.k {
                    v - n
                } else {
                    v
                }
            })
            .collect();
        (Permutation::new(u).expect("bounded windows factor"), w)
    }

    pub fn to_decorated(&self) -> DecoratedPermutation {
        let n = self.n() as i64;
        let mut white = BTreeSet::new();
        let mut black = BTreeSet::new();
        let perm = (1..=n)
            .map(|i| {
                let v = self.at(i);
                if v == i {
                    black.insert(i as usize);
                } else if v == i + n {
                    white.insert(i as usize);
                }
                ((v - 1).rem_euclid(n) + 1) as usize
            })
            .collect();
        DecoratedPermutation { perm: Permutation::new(perm).expect("residues"), white, black }
    }

    pub fn from_decorated(d: &DecoratedPermutation) -> Result<Self> {
        d.check()?;
        let n = d.perm.n();
        Self::new(
            (1..=n)
                .map(|i| {
                    let s = d.perm.at(i);
                    let lifted = if s > i || d.black.contains(&i) { s } else { s + n };
                    lifted as i64
                })
                .collect(),
        )
    }

    /// Affine rank numbers `#{a <= i : f(a) >= j}` for `i` in `[1, N]` and
    /// `j` in `[i+2, i+N]`; outside that range they depend only on `(k, N)`.
    fn rank_numbers(&self) -> Vec<usize> {
        let n = self.n() as i64;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 2..=i + n {
                out.push((j - n..=i).filter(|&a| self.at(a) >= j).count());
            }
        }
        out
    }
}

/// Bruhat order on bounded affine permutations of a common type.
pub fn affine_bruhat_leq(f: &BoundedAffinePermutation, g: &BoundedAffinePermutation) -> Result<bool> {
    if f.n() != g.n() || f.k() != g.k() {
        return invalid(format!("type mismatch: ({},{}) vs ({},{})", f.k(), f.n(), g.k(), g.n()));
    }
    Ok(f.rank_numbers().iter().zip(g.rank_numbers()).all(|(a, b)| *a <= b))
}

/// `Bd(k, n)` sorted by window.
pub fn enumerate_bd(k: usize, n: usize) -> Vec<BoundedAffinePermutation> {
    fn rec(i: usize, n: usize, target: i64, used: &mut Vec<bool>, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i > n {
            if cur.iter().enumerate().map(|(idx, &v)| v - idx as i64 - 1).sum::<i64>() == target {
                out.push(cur.clone());
            }
            return;
        }
        for v in i..=i + n {
            let r = v % n;
            if used[r] {
                continue;
            }
            used[r] = true;
            cur.push(v as i64);
            rec(i + 1, n, target, used, cur, out);
            cur.pop();
            used[r] = false;
        }
    }
    if n == 0 || k > n {
        return Vec::new();
    }
    let mut raw = Vec::new();
    rec(1, n, (k * n) as i64, &mut vec![false; n], &mut Vec::new(), &mut raw);
    raw.sort();
    raw.into_iter().map(|w| BoundedAffinePermutation::new(w).unwrap()).collect()
}

/// `Bd^C(2n)`: the type C elements of `Bd(n, 2n)`.
pub fn enumerate_bdc(n: usize) -> Vec<BoundedAffinePermutation> {
    enumerate_bd(n, 2 * n).into_iter().filter(|f| f.is_type_c()).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

/// A permutation of `[N]` whose fixed points carry a color.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct DecoratedPermutation {
    pub perm: Permutation,
    #[serde(rename = "white_fixed")]
    pub white: BTreeSet<usize>,
    #[serde(rename = "black_fixed")]
    pub black: BTreeSet<usize>,
}

impl DecoratedPermutation {
    pub fn new(perm: Permutation, white: BTreeSet<usize>, black: BTreeSet<usize>) -> Result<Self> {
        let d = DecoratedPermutation { perm, white, black };
        d.check()?;
        Ok(d)
    }

    fn check(&self) -> Result<()> {
        let fixed: BTreeSet<usize> = (1..=self.perm.n()).filter(|&i| self.perm.at(i) == i).collect();
        let colored: BTreeSet<usize> = self.white.union(&self.black).copied().collect();
        if self.white.intersection(&self.black).next().is_some() || colored != fixed {
            return invalid(format!("colors {colored:?} must be exactly the fixed points {fixed:?}"));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }

    /// `#{i : σ(i) < i} + #white`.
    pub fn k(&self) -> usize {
        (1..=self.n()).filter(|&i| self.perm.at(i) < i).count() + self.white.len()
    }

    pub fn color(&self, i: usize) -> Option<Color> {
        if self.white.contains(&i) {
            Some(Color::White)
        } else if self.black.contains(&i) {
            Some(Color::Black)
        } else {
            None
        }
    }
}
