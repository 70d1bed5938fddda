use std::collections::{HashMap, HashSet, VecDeque};

use lagplabic::coxeter::*;
use proptest::prelude::*;

fn p(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

fn c_word(n: usize, letters: &[usize]) -> SignedPermutation {
    let w = Word::new(WordType::C, n, letters.to_vec()).unwrap();
    SignedPermutation::new(w.product()).unwrap()
}

/// Word-metric distance from the identity in the Cayley graph.
fn bfs_lengths(kind: WordType, rank: usize) -> HashMap<Permutation, usize> {
    let word = Word::new(kind, rank, vec![]).unwrap();
    let gens = match kind {
        WordType::A => rank - 1,
        WordType::C => rank,
    };
    let start = Permutation::identity(word.degree());
    let mut dist = HashMap::from([(start.clone(), 0)]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        for i in 1..=gens {
            let next = v.compose(&word.generator(i));
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    dist
}

/// Subword property: everything below `w` is a subproduct of a reduced word.
fn below_by_subwords(w: &Permutation, kind: WordType) -> HashSet<Permutation> {
    let word = reduced_word(w, kind);
    let m = word.letters.len();
    (0u32..(1 << m))
        .map(|bits| {
            let mask: Vec<bool> = (0..m).map(|j| bits & (1 << j) != 0).collect();
            word.subproduct(&mask)
        })
        .collect()
}

#[test]
fn length_examples() {
    assert_eq!(Permutation::identity(4).length(), 0);
    assert_eq!(p(&[2, 1, 3]).length(), 1);
    assert_eq!(c_word(2, &[2, 1, 2]).length(), 3);
}

#[test]
fn type_c_length_matches_cayley_distance() {
    for n in 1..=3 {
        let dist = bfs_lengths(WordType::C, n);
        assert_eq!(dist.len(), SignedPermutation::all(n).len());
        for s in SignedPermutation::all(n) {
            assert_eq!(s.length(), dist[s.embed()], "{s}");
        }
    }
}

#[test]
fn type_a_length_matches_cayley_distance() {
    let dist = bfs_lengths(WordType::A, 5);
    for w in all_permutations(5) {
        assert_eq!(w.length(), dist[&w]);
    }
}

#[test]
fn bruhat_examples() {
    let w = p(&[3, 1, 4, 2]);
    assert!(bruhat_leq(&Permutation::identity(4), &w).unwrap());
    assert!(!bruhat_leq(&p(&[2, 1, 3]), &p(&[1, 3, 2])).unwrap());
    assert!(bruhat_leq_c(&SignedPermutation::generator(1, 2), &c_word(2, &[2, 1, 2])).unwrap());
    assert!(bruhat_leq(&p(&[1, 2]), &p(&[1, 2, 3])).is_err());
}

#[test]
fn bruhat_matches_subword_oracle() {
    for n in 1..=4 {
        let perms = all_permutations(n);
        for w in &perms {
            let below = below_by_subwords(w, WordType::A);
            for u in &perms {
                assert_eq!(bruhat_leq(u, w).unwrap(), below.contains(u), "{u} {w}");
            }
        }
    }
}

#[test]
fn type_c_bruhat_is_embedding() {
    for n in 1..=3 {
        let group = SignedPermutation::all(n);
        for w in &group {
            let below = below_by_subwords(w.embed(), WordType::C);
            for u in &group {
                assert_eq!(bruhat_leq_c(u, w).unwrap(), below.contains(u.embed()), "{u} {w}");
            }
        }
    }
}

#[test]
fn grassmannian_examples() {
    assert!(is_grassmannian(&Permutation::identity(4), 2));
    assert!(is_grassmannian(&p(&[2, 4, 1, 3, 5]), 2));
    assert!(!is_grassmannian(&p(&[1, 3, 2]), 1));
    assert!(grassmannian_leq(&Permutation::identity(3), &Permutation::identity(3), 1).unwrap());
    assert!(grassmannian_leq(&p(&[2, 1, 3]), &p(&[3, 1, 2]), 1).unwrap());
    assert!(!grassmannian_leq(&p(&[3, 1, 2]), &p(&[2, 1, 3]), 1).unwrap());
    assert!(grassmannian_leq(&p(&[1, 2, 3]), &p(&[1, 3, 2]), 1).is_err());
}

#[test]
fn grassmannian_leq_agrees_with_bruhat() {
    for n in 1..=5 {
        let perms = all_permutations(n);
        for k in 0..=n {
            for w in perms.iter().filter(|w| is_grassmannian(w, k)) {
                for u in &perms {
                    assert_eq!(grassmannian_leq(u, w, k).unwrap(), bruhat_leq(u, w).unwrap());
                }
            }
        }
    }
}

#[test]
fn coset_examples() {
    let id = Permutation::identity(3);
    assert_eq!(coset_factorize(&id, 1), (id.clone(), id.clone()));
    assert_eq!(coset_factorize(&p(&[2, 1, 3]), 2), (id.clone(), p(&[2, 1, 3])));
    assert_eq!(coset_factorize(&p(&[3, 1, 2]), 1), (p(&[3, 1, 2]), id.clone()));
}

#[test]
fn coset_factorization_is_length_additive() {
    for n in 1..=5 {
        for w in all_permutations(n) {
            for k in 0..=n {
                let (w_min, w_par) = coset_factorize(&w, k);
                assert_eq!(w_min.compose(&w_par), w);
                assert_eq!(w_min.length() + w_par.length(), w.length());
                assert!(is_grassmannian(&w_min, k));
                assert!(w_par.image(1..=k) == (1..=k).collect());
            }
        }
    }
}

#[test]
fn k_bruhat_examples() {
    let s1 = p(&[2, 1]);
    assert!(k_bruhat_leq(&s1, &s1, 1).unwrap());
    assert!(k_bruhat_leq(&Permutation::identity(2), &s1, 1).unwrap());
    assert!(!k_bruhat_leq(&Permutation::identity(3), &p(&[2, 1, 3]), 2).unwrap());
}

#[test]
fn canonical_rep_examples() {
    let id2 = Permutation::identity(2);
    let s1 = p(&[2, 1]);
    assert_eq!(canonical_rep(&id2, &id2, 1).unwrap(), (id2.clone(), id2.clone()));
    // for k=1 the parabolic of S_2 is trivial, so (s1, s1) is already canonical
    assert_eq!(canonical_rep(&s1, &s1, 1).unwrap(), (s1.clone(), s1.clone()));
    // for k=2 the parabolic is all of S_2 and s1 collapses to the identity
    assert_eq!(canonical_rep(&s1, &s1, 2).unwrap(), (id2.clone(), id2.clone()));
    assert_eq!(canonical_rep(&id2, &s1, 1).unwrap(), (id2.clone(), s1.clone()));
    assert!(canonical_rep(&s1, &id2, 1).is_err());
}

#[test]
fn canonical_rep_is_idempotent_and_below() {
    for n in 1..=4 {
        let perms = all_permutations(n);
        for k in 0..=n {
            for w in &perms {
                for u in &perms {
                    if !k_bruhat_leq(u, w, k).unwrap() {
                        continue;
                    }
                    let (u1, w1) = canonical_rep(u, w, k).unwrap();
                    assert!(is_grassmannian(&w1, k));
                    assert!(bruhat_leq(&u1, &w1).unwrap());
                    assert!(k_bruhat_leq(&u1, &w1, k).unwrap());
                    assert_eq!(canonical_rep(&u1, &w1, k).unwrap(), (u1.clone(), w1.clone()));
                }
            }
        }
    }
}

#[test]
fn embedding_examples() {
    assert_eq!(embed_c_to_a(&SignedPermutation::identity(2)), Permutation::identity(4));
    assert_eq!(SignedPermutation::generator(2, 2).embed(), &p(&[1, 3, 2, 4]));
    assert_eq!(SignedPermutation::generator(1, 2).embed(), &p(&[2, 1, 4, 3]));
    let w = Word::new(WordType::C, 3, vec![3, 1, 2, 3, 2]).unwrap();
    let a = embed_word_c_to_a(&w);
    assert_eq!(a.letters, vec![3, 1, 5, 2, 4, 3, 2, 4]);
    assert_eq!(a.product(), w.product());
}

#[test]
fn pds_examples() {
    let word = Word::new(WordType::A, 5, vec![2, 1, 4, 3, 2]).unwrap();
    let u = Word::new(WordType::A, 5, vec![2, 1, 3]).unwrap().product();
    assert_eq!(pds(&u, &word).unwrap(), vec![true, true, false, true, false]);
    assert_eq!(pds(&Permutation::identity(5), &word).unwrap(), vec![false; 5]);
    assert_eq!(pds(&word.product(), &word).unwrap(), vec![true; 5]);
    assert!(pds(&p(&[5, 4, 3, 2, 1]), &word).is_err());
}

#[test]
fn pds_replays_to_u_for_all_u_below_w() {
    for n in 1..=4 {
        for w in all_permutations(n) {
            let word = reduced_word(&w, WordType::A);
            assert!(word.is_reduced());
            for u in all_permutations(n) {
                let res = pds(&u, &word);
                if bruhat_leq(&u, &w).unwrap() {
                    let mask = res.unwrap();
                    assert_eq!(word.subproduct(&mask), u);
                    assert!(is_positive_distinguished(&word, &mask));
                } else {
                    assert!(res.is_err());
                }
            }
        }
    }
    for n in 1..=3 {
        for w in SignedPermutation::all(n) {
            let word = reduced_word(w.embed(), WordType::C);
            assert_eq!(word.letters.len(), w.length());
            for u in SignedPermutation::all(n) {
                if bruhat_leq_c(&u, &w).unwrap() {
                    let mask = pds(u.embed(), &word).unwrap();
                    assert_eq!(&word.subproduct(&mask), u.embed());
                    assert!(is_positive_distinguished(&word, &mask));
                }
            }
        }
    }
}

#[test]
fn pds_is_the_unique_positive_subexpression() {
    // brute force over all masks for every reduced word of one element
    let w = p(&[3, 4, 1, 2]);
    let word = reduced_word(&w, WordType::A);
    for u in all_permutations(4).into_iter().filter(|u| bruhat_leq(u, &w).unwrap()) {
        let m = word.letters.len();
        let positives: Vec<Vec<bool>> = (0u32..(1 << m))
            .map(|bits| (0..m).map(|j| bits & (1 << j) != 0).collect::<Vec<_>>())
            .filter(|mask| word.subproduct(mask) == u && is_positive_distinguished(&word, mask))
            .collect();
        assert_eq!(positives, vec![pds(&u, &word).unwrap()]);
    }
}

#[test]
fn enumerate_q_examples() {
    assert_eq!(enumerate_q(0, 3).len(), 1);
    let q = enumerate_q(1, 2);
    let id = Permutation::identity(2);
    let s1 = p(&[2, 1]);
    assert_eq!(q, vec![(id.clone(), id.clone()), (id.clone(), s1.clone()), (s1.clone(), s1.clone())]);
}

#[test]
fn enumerate_q_matches_all_interval_classes() {
    // brute force: canonicalise every k-Bruhat pair and count classes
    for n in 1..=4 {
        for k in 0..=n {
            let perms = all_permutations(n);
            let mut classes = HashSet::new();
            for w in &perms {
                for u in &perms {
                    if k_bruhat_leq(u, w, k).unwrap() {
                        classes.insert(canonical_rep(u, w, k).unwrap());
                    }
                }
            }
            let q: HashSet<_> = enumerate_q(k, n).into_iter().collect();
            assert_eq!(q, classes, "k={k} n={n}");
        }
    }
}

#[test]
fn type_c_k_bruhat_matches_embedded() {
    for n in 1..=3 {
        let group = SignedPermutation::all(n);
        for u in &group {
            for w in &group {
                assert_eq!(
                    k_bruhat_leq_c(u, w).unwrap(),
                    k_bruhat_leq(u.embed(), w.embed(), n).unwrap(),
                    "{u} {w}"
                );
            }
        }
    }
}

#[test]
fn enumerate_qc_small() {
    assert_eq!(enumerate_qc(1).len(), 3);
    for (u, w) in enumerate_qc(2) {
        assert!(is_grassmannian(w.embed(), 2));
        assert!(bruhat_leq_c(&u, &w).unwrap());
    }
}

fn perm_strategy(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #[test]
    fn inverse_and_lengths(w in perm_strategy(7)) {
        let id = Permutation::identity(w.n());
        prop_assert_eq!(w.compose(&w.inverse()), id);
        prop_assert_eq!(w.inverse().length(), w.length());
        let word = reduced_word(&w, WordType::A);
        prop_assert_eq!(word.product(), w.clone());
        prop_assert_eq!(word.letters.len(), w.length());
    }

    #[test]
    fn canonical_rep_of_random_pairs(w in perm_strategy(6), seed in 0usize..1000) {
        let n = w.n();
        let k = seed % (n + 1);
        let (w_min, w_par) = coset_factorize(&w, k);
        prop_assert_eq!(w_min.compose(&w_par), w.clone());
        // every u below the Grassmannian part survives a round trip
        let perms = all_permutations(n);
        let u = &perms[seed % perms.len()];
        if grassmannian_leq(u, &w_min, k).unwrap() {
            prop_assert_eq!(canonical_rep(u, &w_min, k).unwrap(), (u.clone(), w_min.clone()));
        }
    }

    #[test]
    fn signed_closure(n in 1usize..4, a in 0usize..10_000, b in 0usize..10_000) {
        let g = SignedPermutation::all(n);
        let (x, y) = (&g[a % g.len()], &g[b % g.len()]);
        prop_assert!(x.compose(y).embed().is_symmetric());
        prop_assert!(x.inverse().embed().is_symmetric());
        prop_assert_eq!(x.compose(y).length() <= x.length() + y.length(), true);
    }
}
