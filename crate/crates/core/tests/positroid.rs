use std::collections::BTreeSet;

use lagplabic::affine::*;
use lagplabic::coxeter::*;
use lagplabic::linalg::*;
use lagplabic::measurement::*;
use lagplabic::plabic::*;
use lagplabic::poly::*;
use lagplabic::positroid::*;
use lagplabic::symmetric::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn set(v: &[usize]) -> BTreeSet<usize> {
    v.iter().copied().collect()
}

fn bases(v: &[&[usize]]) -> BTreeSet<Vec<usize>> {
    v.iter().map(|b| b.to_vec()).collect()
}

fn bap(w: &[i64]) -> BoundedAffinePermutation {
    BoundedAffinePermutation::new(w.to_vec()).unwrap()
}

fn bd_all(max_n: usize) -> Vec<BoundedAffinePermutation> {
    (1..=max_n).flat_map(|n| (0..=n).flat_map(move |k| enumerate_bd(k, n))).collect()
}

#[test]
fn shifted_order_examples() {
    assert!(shifted_leq(&set(&[1, 3]), &set(&[1, 3]), 2, 4).unwrap());
    assert!(shifted_leq(&set(&[2]), &set(&[1]), 2, 2).unwrap());
    assert!(!shifted_leq(&set(&[1]), &set(&[2]), 2, 2).unwrap());
    assert!(shifted_leq(&set(&[1, 3]), &set(&[2, 3]), 1, 4).unwrap());
    assert!(shifted_leq(&set(&[1]), &set(&[1, 2]), 1, 4).is_err());
    // in <=_3 on [4] the order is 3 < 4 < 1 < 2
    assert_eq!(sorted_from(&set(&[1, 2, 4]), 3, 4), vec![4, 1, 2]);
}

#[test]
fn necklace_examples() {
    let lolli = bap(&[1, 6, 7, 4]).to_decorated();
    let nk = necklace_from_decorated(&lolli);
    assert!(nk.sets().iter().all(|s| *s == set(&[2, 3])));

    let nk = necklace_from_decorated(&bap(&[2, 3]).to_decorated());
    assert_eq!(nk.sets(), &[set(&[1]), set(&[2])]);

    // top cell of Gr(1, 3): the cycle 1 -> 2 -> 3 -> 1
    let nk = necklace_from_decorated(&bap(&[2, 3, 4]).to_decorated());
    assert_eq!(nk.sets(), &[set(&[1]), set(&[2]), set(&[3])]);

    assert!(GrassmannNecklace::new(2, 1, vec![set(&[1]), set(&[1])]).is_ok());
    assert!(GrassmannNecklace::new(3, 1, vec![set(&[1]), set(&[3]), set(&[2])]).is_err());
    assert!(GrassmannNecklace::new(2, 1, vec![set(&[1])]).is_err());
}

#[test]
fn necklaces_and_decorated_permutations_are_in_bijection() {
    for f in bd_all(4) {
        let d = f.to_decorated();
        let nk = necklace_from_decorated(&d);
        assert_eq!(nk.k(), f.k());
        assert_eq!(nk.to_decorated(), d, "{f:?}");
    }
}

#[test]
fn positroid_round_trips() {
    assert_eq!(positroid_from_necklace(&GrassmannNecklace::new(2, 1, vec![set(&[1]), set(&[2])]).unwrap()).bases(), &bases(&[&[1], &[2]]));
    let constant = GrassmannNecklace::new(4, 2, vec![set(&[1, 3]); 4]).unwrap();
    assert_eq!(positroid_from_necklace(&constant).bases(), &bases(&[&[1, 3]]));
    for n in 1..=4 {
        for k in 0..=n {
            for nk in enumerate_necklaces(k, n) {
                let m = positroid_from_necklace(&nk);
                assert_eq!(necklace_from_positroid(&m), nk);
                assert_eq!(Positroid::new(k, n, m.bases().clone()).unwrap(), m);
            }
        }
    }
    // a matroid that is not a positroid: {1,3},{2,4} alone on [4]
    assert!(Positroid::new(2, 4, bases(&[&[1, 3], &[2, 4]])).is_err());
    assert!(Positroid::new(1, 2, BTreeSet::new()).is_err());
}

#[test]
fn counts_agree_across_the_bijections() {
    for n in 1..=4 {
        for k in 0..=n {
            let bd = enumerate_bd(k, n).len();
            assert_eq!(enumerate_q(k, n).len(), bd, "Q({k},{n})");
            assert_eq!(enumerate_necklaces(k, n).len(), bd, "necklaces ({k},{n})");
            assert_eq!(enumerate_le(LeKind::A { k, n }).len(), bd, "Le A ({k},{n})");
        }
    }
    for n in 1..=3 {
        let bdc = enumerate_bdc(n).len();
        assert_eq!(enumerate_qc(n).len(), bdc);
        let typec = enumerate_necklaces(n, 2 * n).into_iter().filter(|nk| is_type_c_necklace(nk).unwrap()).count();
        assert_eq!(typec, bdc);
        assert_eq!(enumerate_le(LeKind::B { n }).len(), bdc);
    }
    assert_eq!(enumerate_le(LeKind::A { k: 1, n: 2 }).len(), 3);
    assert_eq!(enumerate_le(LeKind::B { n: 1 }).len(), 3);
    assert_eq!(enumerate_bdc(1).len(), 3);
}

#[test]
fn matroids_of_points() {
    let id = Matrix::new(vec![vec![rat(0), rat(1), rat(0)], vec![rat(0), rat(0), rat(1)]]).unwrap();
    assert_eq!(matroid_of_point(&minors_pluecker(&id).unwrap()).unwrap(), bases(&[&[2, 3]]));
    let row = Matrix::new(vec![vec![rat(1), rat(1)]]).unwrap();
    assert_eq!(matroid_of_point(&minors_pluecker(&row).unwrap()).unwrap(), bases(&[&[1], &[2]]));
    let w = Word::new(WordType::A, 4, vec![2, 1, 3, 2]).unwrap();
    let params: Vec<Poly> = ["t1", "t2", "t2", "t3"].iter().map(|s| Poly::var(s)).collect();
    let m = bridge_matrix_parametrization(&Permutation::identity(4), &w.product(), 2, &params, Some(&w)).unwrap();
    assert_eq!(matroid_of_point(&minors_pluecker(&m).unwrap()).unwrap().len(), 6);
    assert!(matroid_of_point(&PlueckerVector::<Rational>::zero(1, 2)).is_err());
}

#[test]
fn type_c_conditions() {
    let nk = GrassmannNecklace::new(2, 1, vec![set(&[1]), set(&[2])]).unwrap();
    assert!(is_type_c_necklace(&nk).unwrap());
    let m = positroid_from_necklace(&nk);
    assert!(is_type_c_positroid(&m).unwrap());
    // {2,3} without {1,4}
    let lopsided = Positroid::new(2, 4, bases(&[&[2, 3]])).unwrap();
    assert!(!is_type_c_positroid(&lopsided).unwrap());
    assert!(!is_type_c_necklace(&lopsided.necklace()).unwrap());
    let wrong = GrassmannNecklace::new(3, 1, vec![set(&[1]); 3]).unwrap();
    assert!(is_type_c_necklace(&wrong).is_err());

    for n in 1..=3 {
        for f in enumerate_bd(n, 2 * n) {
            let nk = necklace_from_bounded_affine(&f);
            let m = positroid_from_necklace(&nk);
            assert_eq!(is_type_c_necklace(&nk).unwrap(), f.is_type_c(), "{f:?}");
            assert_eq!(is_type_c_positroid(&m).unwrap(), f.is_type_c(), "{f:?}");
        }
    }
}

#[test]
fn le_figure_example() {
    let kind = LeKind::A { k: 2, n: 5 };
    let d = LeDiagram::new(kind, vec![vec![true, false, true], vec![false, false]]).unwrap();
    assert!(d.is_valid());
    let (word, mask) = d.word_and_mask();
    assert_eq!(word.letters, vec![2, 1, 4, 3, 2]);
    assert_eq!(mask, vec![true, true, false, true, false]);
    let (u, w) = d.to_pair().unwrap();
    let s = |i| Permutation::simple(i, 5);
    assert_eq!(u, s(2).compose(&s(1)).compose(&s(3)));
    assert_eq!(w, s(2).compose(&s(1)).compose(&s(4)).compose(&s(3)).compose(&s(2)));
    assert!(is_grassmannian(&w, 2));
    // the full rectangle labels, bottom row s2 s3 s4 and top row s1 s2 s3
    let full = LeDiagram::new(kind, vec![vec![false; 3], vec![false; 3]]).unwrap();
    assert_eq!(full.word_and_mask().0.letters, vec![3, 2, 1, 4, 3, 2]);
    assert_eq!(LeDiagram::from_pair(kind, &u, &w).unwrap(), d);
    // a 0 with + to its left and + below
    let bad = LeDiagram::new(kind, vec![vec![true, true, false], vec![true, false]]).unwrap();
    assert!(!bad.is_valid());
    assert!(bad.to_pair().is_err());
    // not a Young diagram: the top row is longer
    assert!(LeDiagram::new(kind, vec![vec![false], vec![false, false]]).is_err());
}

#[test]
fn staircase_figure_labels() {
    let full = LeDiagram::new(LeKind::B { n: 3 }, vec![vec![false], vec![false; 2], vec![false; 3]]).unwrap();
    let (word, _) = full.word_and_mask();
    assert_eq!(word.letters, vec![3, 2, 1, 3, 2, 3]);
    assert!(word.is_reduced());
    assert_eq!(word.length_of(&word.product()), 6);
    // eight shapes, one per minimal coset representative
    assert_eq!(LeKind::B { n: 3 }.shapes().len(), 8);
    // a diagonal 0 with a + to its left
    let d = LeDiagram::new(LeKind::B { n: 2 }, vec![vec![false], vec![true, false]]).unwrap();
    assert!(!d.is_valid());
    let d = LeDiagram::new(LeKind::B { n: 2 }, vec![vec![false], vec![false, true]]).unwrap();
    assert!(d.is_valid());
}

/// Every filling of every shape, valid or not.
fn all_fillings(kind: LeKind) -> Vec<LeDiagram> {
    let mut out = Vec::new();
    for shape in kind.shapes() {
        let total: usize = shape.iter().sum();
        for bits in 0u32..(1 << total) {
            let mut idx = 0;
            let rows = shape
                .iter()
                .map(|&l| {
                    (0..l)
                        .map(|_| {
                            idx += 1;
                            bits >> (idx - 1) & 1 == 1
                        })
                        .collect()
                })
                .collect();
            out.push(LeDiagram::new(kind, rows).unwrap());
        }
    }
    out
}

#[test]
fn pattern_rule_matches_positive_distinguished_subexpressions() {
    let mut kinds: Vec<LeKind> = (1..=5).flat_map(|n| (0..=n).map(move |k| LeKind::A { k, n })).collect();
    kinds.extend((1..=3).map(|n| LeKind::B { n }));
    for kind in kinds {
        for d in all_fillings(kind) {
            let (word, mask) = d.word_and_mask();
            let u = word.subproduct(&mask);
            let is_pds = pds(&u, &word).map(|m| m == mask).unwrap_or(false);
            assert_eq!(d.is_valid(), is_pds, "{kind:?}\n{d}");
        }
    }
}

#[test]
fn le_diagrams_hit_each_cell_once() {
    for n in 1..=4 {
        for k in 0..=n {
            let kind = LeKind::A { k, n };
            let got: Vec<BoundedAffinePermutation> = enumerate_le(kind).iter().map(|d| d.to_bounded_affine().unwrap()).collect();
            let distinct: BTreeSet<Vec<i64>> = got.iter().map(|f| f.window().to_vec()).collect();
            assert_eq!(distinct.len(), got.len());
            let want: BTreeSet<Vec<i64>> = enumerate_bd(k, n).iter().map(|f| f.window().to_vec()).collect();
            assert_eq!(distinct, want);
            for f in enumerate_bd(k, n) {
                assert_eq!(LeDiagram::from_bounded_affine(kind, &f).unwrap().to_bounded_affine().unwrap(), f);
            }
        }
    }
    for n in 1..=3 {
        let kind = LeKind::B { n };
        let got: BTreeSet<Vec<i64>> = enumerate_le(kind).iter().map(|d| d.to_bounded_affine().unwrap().window().to_vec()).collect();
        let want: BTreeSet<Vec<i64>> = enumerate_bdc(n).iter().map(|f| f.window().to_vec()).collect();
        assert_eq!(got, want);
        for f in enumerate_bdc(n) {
            assert_eq!(LeDiagram::from_bounded_affine(kind, &f).unwrap().to_bounded_affine().unwrap(), f);
        }
    }
}

#[test]
fn le_json_round_trip() {
    let v = serde_json::json!({"type": "A", "k": 2, "n": 5, "shape": [3, 2], "filling": [["+", "0", "+"], ["0", "0"]]});
    let d = LeDiagram::from_json(&v).unwrap();
    assert!(d.is_valid());
    assert_eq!(LeDiagram::from_json(&d.to_json()).unwrap(), d);
    let bad = serde_json::json!({"type": "A", "k": 2, "n": 5, "shape": [3, 1], "filling": [["+", "0", "+"], ["0", "0"]]});
    assert!(LeDiagram::from_json(&bad).is_err());
    let b = serde_json::json!({"type": "B", "n": 1, "filling": [["+"]]});
    assert_eq!(LeDiagram::from_json(&b).unwrap().to_bounded_affine().unwrap().n(), 2);
    let nk = necklace_from_bounded_affine(&bap(&[2, 3, 4]));
    let text = serde_json::to_string(&nk).unwrap();
    assert_eq!(text, r#"{"n":3,"k":1,"sets":[[1],[2],[3]]}"#);
    assert_eq!(serde_json::from_str::<GrassmannNecklace>(&text).unwrap(), nk);
    assert!(serde_json::from_str::<GrassmannNecklace>(r#"{"n":3,"k":1,"sets":[[1],[3],[2]]}"#).is_err());
}

#[test]
fn positive_weights_give_the_positroid() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for n in 1..=3 {
        for k in 0..=n {
            for (u, w) in enumerate_q(k, n) {
                let (g, _) = bridge_graph(&u, &w, k, None).unwrap();
                let f = g.bounded_affine().unwrap();
                let want = positroid_from_necklace(&necklace_from_bounded_affine(&f));
                for _ in 0..5 {
                    let p = boundary_measurement(&g, &random_positive_weighting(&g, &mut rng)).unwrap();
                    assert!(p.coords.values().all(|v| *v >= rat(0)));
                    let m = matroid_of_point(&p).unwrap();
                    assert_eq!(&m, want.bases(), "{f:?}");
                    // the necklace is already visible in the matroid of the point
                    assert_eq!(necklace_of_bases(k, n, &m).unwrap(), necklace_from_bounded_affine(&f));
                }
            }
        }
    }
    for n in 1..=3 {
        for f in enumerate_bdc(n) {
            let (s, _) = symmetric_bridge_graph(&f).unwrap();
            let want = positroid_from_necklace(&necklace_from_bounded_affine(&f));
            let p = boundary_measurement(s.graph(), &random_symmetric_weighting(&s, &mut rng)).unwrap();
            assert_eq!(&matroid_of_point(&p).unwrap(), want.bases());
            assert!(is_type_c_positroid(&want).unwrap());
        }
    }
}

proptest! {
    #[test]
    fn shifted_order_is_reflexive_and_transitive(seed in 0u64..2000, a in 1usize..6) {
        use rand::seq::SliceRandom;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 5;
        let all = k_subsets(n, 2);
        let pick: Vec<&BTreeSet<usize>> = all.choose_multiple(&mut rng, 3).collect();
        let (x, y, z) = (pick[0], pick[1], pick[2]);
        prop_assert!(shifted_leq(x, x, a, n).unwrap());
        if shifted_leq(x, y, a, n).unwrap() && shifted_leq(y, z, a, n).unwrap() {
            prop_assert!(shifted_leq(x, z, a, n).unwrap());
        }
        if shifted_leq(x, y, a, n).unwrap() && shifted_leq(y, x, a, n).unwrap() {
            prop_assert_eq!(x, y);
        }
    }
}
