//! Finite Weyl groups of types A and C.
//!
//! Permutations are stored in one-line notation with 1-based values and act
//! on the left, so `a.compose(&b)` is the map `x -> a(b(x))`. Type C elements
//! live inside `S_{2n}` as permutations commuting with `a -> 2n+1-a`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.0
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || seen[v] {
                return invalid(format!("{one_line:?} is not a permutation of [{n}]"));
            }
            seen[v] = true;
        }
        Ok(Permutation(one_line))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// The simple transposition `s_i` swapping `i` and `i+1`.
    pub fn simple(i: usize, n: usize) -> Self {
        assert!(i >= 1 && i < n, "s_{i} out of range for S_{n}");
        Self::transposition(i, i + 1, n)
    }

    pub fn transposition(a: usize, b: usize, n: usize) -> Self {
        let mut v: Vec<usize> = (1..=n).collect();
        v.swap(a - 1, b - 1);
        Permutation(v)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `w(i)` for `i` in `1..=n`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n(), "composing permutations of different size");
        Permutation(other.0.iter().map(|&x| self.0[x - 1]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// Right multiplication by the transposition of positions `a` and `b`.
    pub fn swap_positions(&self, a: usize, b: usize) -> Permutation {
        let mut v = self.0.clone();
        v.swap(a - 1, b - 1);
        Permutation(v)
    }

    /// Left multiplication by the transposition of values `a` and `b`.
    pub fn swap_values(&self, a: usize, b: usize) -> Permutation {
        Permutation(
            self.0
                .iter()
                .map(|&v| if v == a { b } else if v == b { a } else { v })
                .collect(),
        )
    }

    pub fn inversions(&self) -> usize {
        let v = &self.0;
        let mut count = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Type A length.
    pub fn length(&self) -> usize {
        self.inversions()
    }

    pub fn image(&self, set: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        set.into_iter().map(|i| self.at(i)).collect()
    }

    /// `#{a <= i : w(a) >= j}` for all `i, j` in `1..=n`, row-major.
    fn rank_table(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut table = vec![vec![0usize; n + 2]; n + 1];
        for i in 1..=n {
            for j in 1..=n + 1 {
                table[i][j] = table[i - 1][j] + usize::from(self.at(i) >= j);
            }
        }
        table
    }

    pub fn is_symmetric(&self) -> bool {
        let m = self.n();
        (1..=m).all(|a| self.at(m + 1 - a) == m + 1 - self.at(a))
    }
}

/// Every permutation of `[n]` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Permutation(cur.clone()));
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Strong Bruhat order via the rank-matrix criterion.
pub fn bruhat_leq(u: &Permutation, w: &Permutation) -> Result<bool> {
    if u.n() != w.n() {
        return Err(Error::RankMismatch(u.n(), w.n()));
    }
    let (ru, rw) = (u.rank_table(), w.rank_table());
    let n = u.n();
    for i in 1..=n {
        for j in 1..=n {
            if ru[i][j] > rw[i][j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_grassmannian(w: &Permutation, k: usize) -> bool {
    let n = w.n();
    if k > n {
        return false;
    }
    let v = w.one_line();
    v[..k].windows(2).all(|p| p[0] < p[1]) && v[k..].windows(2).all(|p| p[0] < p[1])
}

/// Componentwise comparison valid when `w` is Grassmannian of type `(k, n)`.
pub fn grassmannian_leq(u: &Permutation, w: &Permutation, k: usize) -> Result<bool> {
    if u.n() != w.n() {
        return Err(Error::RankMismatch(u.n(), w.n()));
    }
    if !is_grassmannian(w, k) {
        return invalid(format!("{w} is not Grassmannian of type ({k},{})", w.n()));
    }
    let n = w.n();
    Ok((1..=k).all(|i| u.at(i) <= w.at(i)) && (k + 1..=n).all(|i| u.at(i) >= w.at(i)))
}

/// Grassmannian permutation of type `(k, n)` sending `[k]` onto `set`.
pub fn grassmannian_from_set(set: &BTreeSet<usize>, n: usize) -> Result<Permutation> {
    if set.iter().any(|&x| x == 0 || x > n) {
        return invalid(format!("{set:?} is not a subset of [{n}]"));
    }
    let mut v: Vec<usize> = set.iter().copied().collect();
    v.extend((1..=n).filter(|x| !set.contains(x)));
    Permutation::new(v)
}

/// `w = w_min ∘ w_par` with `w_par ∈ S_k × S_{n-k}` and `w_min` Grassmannian.
pub fn coset_factorize(w: &Permutation, k: usize) -> (Permutation, Permutation) {
    let w_min = grassmannian_from_set(&w.image(1..=k), w.n()).expect("image is a subset");
    let w_par = w_min.inverse().compose(w);
    (w_min, w_par)
}

/// `u ≤_P w` for the parabolic `S_k × S_{n-k}`: a chain of Bruhat covers, each
/// changing the coset, searched breadth-first inside `[u, w]`.
pub fn k_bruhat_leq(u: &Permutation, w: &Permutation, k: usize) -> Result<bool> {
    if u.n() != w.n() {
        return Err(Error::RankMismatch(u.n(), w.n()));
    }
    if u == w {
        return Ok(true);
    }
    if !bruhat_leq(u, w)? {
        return Ok(false);
    }
    let n = u.n();
    let target = w.length();
    let mut seen = HashSet::from([u.clone()]);
    let mut queue = VecDeque::from([u.clone()]);
    while let Some(v) = queue.pop_front() {
        let len = v.length();
        if len >= target {
            continue;
        }
        for a in 1..=k {
            for b in k + 1..=n {
                let next = v.swap_positions(a, b);
                if next.length() != len + 1 || !bruhat_leq(&next, w)? {
                    continue;
                }
                if &next == w {
                    return Ok(true);
                }
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(false)
}

/// The representative `(u', w')` of `⟨u, w⟩` with `w'` Grassmannian.
pub fn canonical_rep(u: &Permutation, w: &Permutation, k: usize) -> Result<(Permutation, Permutation)> {
    if !k_bruhat_leq(u, w, k)? {
        return Err(Error::NotBelow(format!("{u} is not below {w} in the {k}-Bruhat order")));
    }
    let (w_min, w_par) = coset_factorize(w, k);
    Ok((u.compose(&w_par.inverse()), w_min))
}

/// All canonical pairs `(u, w)` with `w` Grassmannian of type `(k, n)` and `u ≤ w`.
pub fn enumerate_q(k: usize, n: usize) -> Vec<(Permutation, Permutation)> {
    let perms = all_permutations(n);
    let mut out = Vec::new();
    for set in k_subsets(n, k) {
        let w = grassmannian_from_set(&set, n).unwrap();
        for u in &perms {
            if grassmannian_leq(u, &w, k).unwrap() {
                out.push((u.clone(), w.clone()));
            }
        }
    }
    out
}

/// All canonical pairs of type C in `S_n^C`, as embedded permutations of `[2n]`.
pub fn enumerate_qc(n: usize) -> Vec<(SignedPermutation, SignedPermutation)> {
    let group = SignedPermutation::all(n);
    let mut out = Vec::new();
    for w in group.iter().filter(|w| is_grassmannian(w.embed(), n)) {
        for u in &group {
            if grassmannian_leq(u.embed(), w.embed(), n).unwrap() {
                out.push((u.clone(), w.clone()));
            }
        }
    }
    out
}

/// k-subsets of `[n]` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<BTreeSet<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<BTreeSet<usize>>) {
        if cur.len() == k {
            out.push(cur.iter().copied().collect());
            return;
        }
        for x in start..=n {
            if n - x + 1 < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(1, n, k, &mut Vec::new(), &mut out);
    }
    out
}

// ---------------------------------------------------------------------------
// type C

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "Permutation", into = "Permutation")]
pub struct SignedPermutation(Permutation);

impl TryFrom<Permutation> for SignedPermutation {
    type Error = Error;
    fn try_from(p: Permutation) -> Result<Self> {
        SignedPermutation::new(p)
    }
}

impl From<SignedPermutation> for Permutation {
    fn from(p: SignedPermutation) -> Permutation {
        p.0
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl SignedPermutation {
    pub fn new(p: Permutation) -> Result<Self> {
        if p.n() % 2 != 0 || !p.is_symmetric() {
            return invalid(format!("{p} does not commute with a -> {}-a", p.n() + 1));
        }
        Ok(SignedPermutation(p))
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation(Permutation::identity(2 * n))
    }

    /// `s_i^C` for `i` in `1..=n`.
    pub fn generator(i: usize, n: usize) -> Self {
        assert!(i >= 1 && i <= n, "s_{i}^C out of range for rank {n}");
        let m = 2 * n;
        if i == n {
            SignedPermutation(Permutation::simple(n, m))
        } else {
            SignedPermutation(Permutation::simple(i, m).compose(&Permutation::simple(m - i, m)))
        }
    }

    pub fn rank(&self) -> usize {
        self.0.n() / 2
    }

    pub fn embed(&self) -> &Permutation {
        &self.0
    }

    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        SignedPermutation(self.0.compose(&other.0))
    }

    pub fn inverse(&self) -> SignedPermutation {
        SignedPermutation(self.0.inverse())
    }

    /// Coxeter length in `S_n^C`.
    pub fn length(&self) -> usize {
        length_c(&self.0)
    }

    /// All `2^n n!` elements, sorted.
    pub fn all(n: usize) -> Vec<SignedPermutation> {
        let m = 2 * n;
        let mut out = Vec::new();
        for base in all_permutations(n) {
            for signs in 0u32..(1 << n) {
                let mut v = vec![0; m];
                for a in 1..=n {
                    let x = base.at(a);
                    let y = if signs & (1 << (a - 1)) != 0 { m + 1 - x } else { x };
                    v[a - 1] = y;
                    v[m - a] = m + 1 - y;
                }
                out.push(SignedPermutation(Permutation(v)));
            }
        }
        out.sort();
        out
    }
}

/// Type C length of an embedded permutation of `[2n]`.
pub(crate) fn length_c(p: &Permutation) -> usize {
    let n = p.n() / 2;
    let neg = (1..=n).filter(|&i| p.at(i) > n).count();
    (p.inversions() + neg) / 2
}

pub fn embed_c_to_a(w: &SignedPermutation) -> Permutation {
    w.0.clone()
}

pub fn bruhat_leq_c(u: &SignedPermutation, w: &SignedPermutation) -> Result<bool> {
    bruhat_leq(&u.0, &w.0)
}

/// Reflections of `S_n^C` as embedded permutations.
pub fn reflections_c(n: usize) -> Vec<Permutation> {
    let m = 2 * n;
    let bar = |a: usize| m + 1 - a;
    let mut out = Vec::new();
    for a in 1..=n {
        out.push(Permutation::transposition(a, bar(a), m));
    }
    for a in 1..=m {
        for b in a + 1..=m {
            if b == bar(a) {
                continue;
            }
            let (c, d) = (bar(b), bar(a));
            if (c, d) <= (a, b) {
                continue;
            }
            out.push(Permutation::transposition(a, b, m).compose(&Permutation::transposition(c, d, m)));
        }
    }
    out
}

/// `u ≤_n w` in `S_n^C` through type C covers that change the `(S_n^C)_n` coset.
pub fn k_bruhat_leq_c(u: &SignedPermutation, w: &SignedPermutation) -> Result<bool> {
    if u.rank() != w.rank() {
        return Err(Error::RankMismatch(u.rank(), w.rank()));
    }
    if u == w {
        return Ok(true);
    }
    if !bruhat_leq_c(u, w)? {
        return Ok(false);
    }
    let n = u.rank();
    let refl = reflections_c(n);
    let target = w.length();
    let mut seen = HashSet::from([u.clone()]);
    let mut queue = VecDeque::from([u.clone()]);
    while let Some(v) = queue.pop_front() {
        let len = v.length();
        if len >= target {
            continue;
        }
        let coset = v.0.image(1..=n);
        for t in &refl {
            let next = SignedPermutation(v.0.compose(t));
            if next.length() != len + 1 || next.0.image(1..=n) == coset || !bruhat_leq_c(&next, w)? {
                continue;
            }
            if &next == w {
                return Ok(true);
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// words

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum WordType {
    A,
    C,
}

/// A word in simple generators. For type A `rank` is the `n` of `S_n`; for
/// type C it is the `n` of `S_n^C`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Word {
    #[serde(rename = "type")]
    pub kind: WordType,
    #[serde(rename = "n")]
    pub rank: usize,
    pub letters: Vec<usize>,
}

impl Word {
    pub fn new(kind: WordType, rank: usize, letters: Vec<usize>) -> Result<Self> {
        let max = match kind {
            WordType::A => rank.saturating_sub(1),
            WordType::C => rank,
        };
        if let Some(&bad) = letters.iter().find(|&&i| i == 0 || i > max) {
            return invalid(format!("generator {bad} out of range for {kind:?}{rank}"));
        }
        Ok(Word { kind, rank, letters })
    }

    /// Size of the permutations the word acts on.
    pub fn degree(&self) -> usize {
        match self.kind {
            WordType::A => self.rank,
            WordType::C => 2 * self.rank,
        }
    }

    pub fn generator(&self, i: usize) -> Permutation {
        match self.kind {
            WordType::A => Permutation::simple(i, self.rank),
            WordType::C => SignedPermutation::generator(i, self.rank).0,
        }
    }

    pub fn length_of(&self, p: &Permutation) -> usize {
        match self.kind {
            WordType::A => p.length(),
            WordType::C => length_c(p),
        }
    }

    pub fn product(&self) -> Permutation {
        self.letters
            .iter()
            .fold(Permutation::identity(self.degree()), |acc, &i| acc.compose(&self.generator(i)))
    }

    /// Product of the letters selected by `mask`.
    pub fn subproduct(&self, mask: &[bool]) -> Permutation {
        self.letters
            .iter()
            .zip(mask)
            .filter(|(_, &keep)| keep)
            .fold(Permutation::identity(self.degree()), |acc, (&i, _)| acc.compose(&self.generator(i)))
    }

    pub fn is_reduced(&self) -> bool {
        self.length_of(&self.product()) == self.letters.len()
    }
}

pub fn embed_word_c_to_a(word: &Word) -> Word {
    match word.kind {
        WordType::A => word.clone(),
        WordType::C => {
            let n = word.rank;
            let mut letters = Vec::new();
            for &i in &word.letters {
                if i == n {
                    letters.push(n);
                } else {
                    letters.push(i);
                    letters.push(2 * n - i);
                }
            }
            Word { kind: WordType::A, rank: 2 * n, letters }
        }
    }
}

/// A reduced word for `w`, peeling off the smallest right descent each step.
pub fn reduced_word(w: &Permutation, kind: WordType) -> Word {
    let rank = match kind {
        WordType::A => w.n(),
        WordType::C => w.n() / 2,
    };
    let mut word = Word { kind, rank, letters: Vec::new() };
    let max = match kind {
        WordType::A => rank.saturating_sub(1),
        WordType::C => rank,
    };
    let mut cur = w.clone();
    let mut rev = Vec::new();
    loop {
        let len = word.length_of(&cur);
        if len == 0 {
            break;
        }
        let i = (1..=max)
            .find(|&i| word.length_of(&cur.compose(&word.generator(i))) < len)
            .expect("nonidentity element has a right descent");
        cur = cur.compose(&word.generator(i));
        rev.push(i);
    }
    rev.reverse();
    word.letters = rev;
    word
}

/// Every reduced word for `w`, in lexicographic order of letters.
pub fn all_reduced_words(w: &Permutation, kind: WordType) -> Vec<Word> {
    let template = reduced_word(w, kind);
    let max = match kind {
        WordType::A => template.rank.saturating_sub(1),
        WordType::C => template.rank,
    };
    fn go(cur: &Permutation, template: &Word, max: usize, suffix: &mut Vec<usize>, out: &mut Vec<Word>) {
        let len = template.length_of(cur);
        if len == 0 {
            let mut letters = suffix.clone();
            letters.reverse();
            out.push(Word { letters, ..template.clone() });
            return;
        }
        for i in 1..=max {
            let next = cur.compose(&template.generator(i));
            if template.length_of(&next) < len {
                suffix.push(i);
                go(&next, template, max, suffix, out);
                suffix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(w, &template, max, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.letters.cmp(&b.letters));
    out
}

/// Positive distinguished subexpression for `u` in `word`.
///
/// Scans from the right keeping each letter that is a right descent of the
/// running element; the scan has to end at the identity.
pub fn pds(u: &Permutation, word: &Word) -> Result<Vec<bool>> {
    if u.n() != word.degree() {
        return Err(Error::RankMismatch(u.n(), word.degree()));
    }
    let mut v = u.clone();
    let mut mask = vec![false; word.letters.len()];
    for (j, &i) in word.letters.iter().enumerate().rev() {
        let next = v.compose(&word.generator(i));
        if word.length_of(&next) < word.length_of(&v) {
            mask[j] = true;
            v = next;
        }
    }
    if !v.is_identity() {
        return Err(Error::NotBelow(format!("{u} has no subexpression in {:?}", word.letters)));
    }
    Ok(mask)
}

/// Checks the defining conditions of a positive distinguished subexpression
/// by replaying the prefixes `u_(j)`: every letter must be an ascent of the
/// prefix before it (positivity), and then `u_(j) ≤ u_(j-1) s` holds trivially.
pub fn is_positive_distinguished(word: &Word, mask: &[bool]) -> bool {
    let mut prefix = Permutation::identity(word.degree());
    for (&i, &keep) in word.letters.iter().zip(mask) {
        let with = prefix.compose(&word.generator(i));
        if word.length_of(&with) < word.length_of(&prefix) {
            return false;
        }
        if keep {
            prefix = with;
        }
    }
    true
}
