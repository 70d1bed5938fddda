//! One line per acceptance criterion. Every check is exact arithmetic; the
//! only tolerance is a wall-clock budget per criterion.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

mod common;

use lagplabic::affine::*;
use lagplabic::coxeter::*;
use lagplabic::linalg::*;
use lagplabic::measurement::*;
use lagplabic::plabic::*;
use lagplabic::poly::*;
use lagplabic::positroid::*;
use lagplabic::symmetric::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Comparisons are equalities of exact rationals or polynomials.
const TOLERANCE: &str = "exact";

const BUDGETS: [Duration; 8] = [
    Duration::from_secs(300),
    Duration::from_secs(300),
    Duration::from_secs(60),
    Duration::from_secs(300),
    Duration::from_secs(120),
    Duration::from_secs(120),
    Duration::from_secs(120),
    Duration::from_secs(180),
];

const SEED: u64 = 20240611;
const CUTOUT_SAMPLES: usize = 100;
const SQUARE_MOVE_SAMPLES: usize = 50;
const POSITIVE_SAMPLES: usize = 20;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bridge_pairs(max_n: usize) -> Vec<(Permutation, Permutation, usize)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for k in 0..=n {
            out.extend(enumerate_q(k, n).into_iter().map(|(u, w)| (u, w, k)));
        }
    }
    out
}

fn type_c_cells(max_n: usize) -> Vec<BoundedAffinePermutation> {
    (1..=max_n).flat_map(enumerate_bdc).collect()
}

fn pipeline_identity() -> Check {
    let pairs = bridge_pairs(4);
    for (u, w, k) in &pairs {
        let (g, groups) = bridge_graph(u, w, *k, None).map_err(|e| e.to_string())?;
        let graph_side = boundary_measurement(&g, &canonical_weighting(&g, &groups)).map_err(|e| e.to_string())?;
        let matrix = canonical_bridge_matrix(u, w, *k, None).map_err(|e| e.to_string())?;
        let matrix_side = minors_pluecker(&matrix).map_err(|e| e.to_string())?;
        ensure(graph_side.normalized() == matrix_side.normalized(), || format!("u={u} w={w} k={k}"))?;
    }
    Ok(format!("{} canonical pairs, n <= 4", pairs.len()))
}

fn lagrangian_landing() -> Check {
    let cells = type_c_cells(3);
    for f in &cells {
        let (m, _) = symmetric_bridge_matrix(f, None).map_err(|e| e.to_string())?;
        let e: Matrix<Poly> = symplectic_form_matrix(m.nrows());
        let form = m.mul(&e).and_then(|x| x.mul(&m.transpose())).map_err(|e| e.to_string())?;
        ensure(form.is_zero(), || format!("{f}: M E M^T = {form}"))?;
        let p = minors_pluecker(&m).map_err(|e| e.to_string())?;
        for (i, v) in &p.coords {
            let r: Vec<usize> = reflect_set(&i.iter().copied().collect(), p.n).into_iter().collect();
            ensure(*v == p.get(&r), || format!("{f}: D{i:?} = {v} but D{r:?} = {}", p.get(&r)))?;
        }
    }
    Ok(format!("{} type C cells, n <= 3", cells.len()))
}

fn q(rows: &[&[i64]]) -> Matrix<Rational> {
    Matrix::new(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()).unwrap()
}

fn cutout_theorem() -> Check {
    let good = q(&[&[1, 2, 0, 5], &[0, 0, 1, 2]]);
    let bad = q(&[&[1, 2, 0, 5], &[0, 0, 1, 3]]);
    for (m, want) in [(&good, true), (&bad, false)] {
        let iso = is_lagrangian_matrix(m).map_err(|e| e.to_string())?;
        let rel = lagrangian_relations_check(&minors_pluecker(m).unwrap(), LagrangianMode::Cutout).unwrap();
        ensure(iso == want && rel.is_none() == want, || format!("witness matrix {m}: isotropic {iso}, relations {rel:?}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut lagrangian = 0;
    for n in 1..=3 {
        for s in 0..CUTOUT_SAMPLES {
            let sparse = s % 4 >= 2;
            let m = if s % 2 == 0 {
                random_lagrangian_matrix(n, sparse, &mut rng)
            } else {
                random_full_rank_matrix(n, 2 * n, sparse, &mut rng)
            };
            ensure(m.rank() == n, || format!("sample {s} is not full rank"))?;
            let iso = is_lagrangian_matrix(&m).unwrap();
            lagrangian += usize::from(iso);
            let p = minors_pluecker(&m).unwrap();
            for mode in [LagrangianMode::Cutout, LagrangianMode::Lemma] {
                let rel = lagrangian_relations_check(&p, mode).unwrap();
                ensure(iso == rel.is_none(), || format!("n={n} sample {s} {mode:?}: isotropic {iso}, relations {rel:?}\n{m}"))?;
            }
        }
    }
    ensure(lagrangian > 0 && lagrangian < 3 * CUTOUT_SAMPLES, || "samples did not cover both sides".into())?;
    Ok(format!("{} seeded matrices ({lagrangian} Lagrangian) plus both witnesses", 3 * CUTOUT_SAMPLES))
}

fn posets_and_gradings() -> Check {
    for n in 1..=4 {
        for k in 0..=n {
            let counts = [
                enumerate_q(k, n).len(),
                enumerate_bd(k, n).len(),
                enumerate_necklaces(k, n).len(),
                enumerate_le(LeKind::A { k, n }).len(),
            ];
            ensure(counts.iter().all(|&c| c == counts[0]), || format!("(k,n)=({k},{n}): Q, Bd, necklaces, Le = {counts:?}"))?;
            for (u, w) in enumerate_q(k, n) {
                let f = BoundedAffinePermutation::from_pair(&u, &w, k).unwrap();
                ensure(f.length_a() + w.length() == k * (n - k) + u.length(), || format!("grading fails at {f}"))?;
            }
        }
    }
    for n in 1..=3 {
        let typec_necklaces =
            enumerate_necklaces(n, 2 * n).into_iter().filter(|nk| is_type_c_necklace(nk).unwrap()).count();
        let counts = [enumerate_qc(n).len(), enumerate_bdc(n).len(), typec_necklaces, enumerate_le(LeKind::B { n }).len()];
        ensure(counts.iter().all(|&c| c == counts[0]), || format!("n={n}: Q^C, Bd^C, necklaces, Le B = {counts:?}"))?;
        for (u, w) in enumerate_qc(n) {
            let f = BoundedAffinePermutation::from_pair(u.embed(), w.embed(), n).unwrap();
            ensure(f.length_c().unwrap() + w.length() == n * (n + 1) / 2 + u.length(), || format!("type C grading fails at {f}"))?;
        }
    }
    ensure(enumerate_bdc(1).len() == 3, || "|Bd^C(2)| != 3".into())?;
    let mut relations = 0;
    for n in 1..=3 {
        for k in 0..=n {
            let classes = common::interval_classes(k, n);
            let qs = enumerate_q(k, n);
            for a in &qs {
                let fa = BoundedAffinePermutation::from_pair(&a.0, &a.1, k).unwrap();
                for b in &qs {
                    let fb = BoundedAffinePermutation::from_pair(&b.0, &b.1, k).unwrap();
                    ensure(common::q_leq(&classes, a, b) == affine_bruhat_leq(&fa, &fb).unwrap(), || format!("order differs at {a:?} {b:?}"))?;
                    relations += 1;
                }
            }
        }
    }
    Ok(format!("counts n <= 4 and type C n <= 3, {relations} order comparisons"))
}

fn move_invariance() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    // square moves on trivalent square faces of contracted bridge graphs
    let mut sites = Vec::new();
    for (u, w, k) in bridge_pairs(4) {
        let g = bridge_graph(&u, &w, k, None).unwrap().0.contract_all();
        for face in g.square_faces() {
            if face.vertices().iter().all(|&v| g.degree(v) == 3) {
                sites.push((g.clone(), face));
            }
        }
    }
    ensure(!sites.is_empty(), || "no square faces".into())?;
    for i in 0..SQUARE_MOVE_SAMPLES {
        let (g, face) = &sites[rng.gen_range(0..sites.len())];
        let w = random_positive_weighting(g, &mut rng);
        let (h, w2) = square_move_weighted(g, &w, face).map_err(|e| e.to_string())?;
        let p = boundary_measurement(g, &w).unwrap();
        let p2 = boundary_measurement(&h, &w2).unwrap();
        ensure(p.projective_eq(&p2) && h.bounded_affine().unwrap() == g.bounded_affine().unwrap(), || format!("square move sample {i}"))?;
    }
    // the scale factor of a square move is exactly ac + bd
    let fig = common::figure_graph();
    let face = fig.find_square(&[1, 2, 3, 4]).unwrap();
    let mut ws: Weighting<RationalFunction> = fig.edges().keys().map(|&e| (e, RationalFunction::from(Poly::int(1)))).collect();
    for (e, name) in face.edges().iter().zip(["a", "b", "c", "d"]) {
        ws.insert(*e, RationalFunction::from(Poly::var(name)));
    }
    let (h, ws2) = square_move_weighted(&fig, &ws, &face).unwrap();
    let factor = RationalFunction::from("a*c+b*d".parse::<Poly>().unwrap());
    let after = boundary_measurement(&h, &ws2).unwrap().map(|v| v.clone() * factor.clone());
    ensure(boundary_measurement(&fig, &ws).unwrap() == after, || "symbolic square move".into())?;
    // the weight transform is an involution
    let v = |s: &str| RationalFunction::from(Poly::var(s));
    let once = square_move_weights(&v("a"), &v("b"), &v("c"), &v("d")).unwrap();
    let twice = square_move_weights(&once.0, &once.1, &once.2, &once.3).unwrap();
    ensure(twice == (v("a"), v("b"), v("c"), v("d")), || "weight transform is not an involution".into())?;
    for _ in 0..SQUARE_MOVE_SAMPLES {
        let x: Vec<Rational> = (0..4).map(|_| ratio(rng.gen_range(1..40), rng.gen_range(1..9))).collect();
        let once = square_move_weights(&x[0], &x[1], &x[2], &x[3]).unwrap();
        let twice = square_move_weights(&once.0, &once.1, &once.2, &once.3).unwrap();
        ensure(twice == (x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone()), || format!("involution fails at {x:?}"))?;
    }
    // degree-two insert and remove
    let mut degree_two = 0;
    for (u, w, k) in bridge_pairs(4) {
        let (g, groups) = bridge_graph(&u, &w, k, None).unwrap();
        let wt = canonical_weighting(&g, &groups);
        let p = boundary_measurement(&g, &wt).unwrap();
        for e in g.internal_edges() {
            let h = g.apply_move(&Move::InsertPair { edge: e }).unwrap();
            let mut w2 = wt.clone();
            for &f in h.edges().keys() {
                w2.entry(f).or_insert_with(|| Poly::int(1));
            }
            w2.retain(|f, _| h.edges().contains_key(f));
            ensure(boundary_measurement(&h, &w2).unwrap() == p, || format!("insert on edge {e} of u={u} w={w}"))?;
            // contracting one new vertex merges its two neighbors, which
            // absorbs the other new vertex as well
            let fresh: Vec<VertexId> = h.vertices().keys().filter(|v| !g.vertices().contains_key(v)).copied().collect();
            let back = h.apply_move(&Move::RemoveDegreeTwo { vertex: fresh[0] }).map_err(|e| e.to_string())?;
            ensure(back.same_up_to_ids(&g), || format!("remove after insert on edge {e}"))?;
            degree_two += 1;
        }
    }
    // symmetric moves
    let mut symmetric = 0;
    for f in type_c_cells(3) {
        let (s, groups) = symmetric_bridge_graph(&f).unwrap();
        let wt = canonical_weighting(s.graph(), &groups);
        let p = boundary_measurement(s.graph(), &wt).unwrap();
        for e in s.graph().internal_edges() {
            let mv = if s.is_crossing(e) {
                SymmetricMove::InsertCrossingPair { edge: e }
            } else {
                SymmetricMove::Paired { r#move: Move::InsertPair { edge: e } }
            };
            let Ok(t) = s.apply_move(&mv) else { continue };
            let mut w2 = wt.clone();
            for &x in t.graph().edges().keys() {
                w2.entry(x).or_insert_with(|| Poly::int(1));
            }
            w2.retain(|x, _| t.graph().edges().contains_key(x));
            let q = if s.is_crossing(e) {
                // both halves of the old crossing edge keep its weight t and
                // the new middle edge takes t too, so the point scales by t
                let tg = t.graph();
                for v in tg.vertices().keys().filter(|v| !s.graph().vertices().contains_key(v)) {
                    for &c in tg.rotation(*v) {
                        w2.insert(c, wt[&e].clone());
                    }
                }
                let q = boundary_measurement(t.graph(), &w2).unwrap();
                ensure(q == p.map(|v| v * &wt[&e]), || format!("{f}: {mv:?} scales by more than the crossing weight"))?;
                q
            } else {
                // copy the weights along the new chain through e onto its mirror
                let tg = t.graph();
                let fresh = |v: VertexId| !s.graph().vertices().contains_key(&v);
                let (a, b) = tg.ends(e);
                let x = if fresh(a) { a } else { b };
                let xy = *tg.rotation(x).iter().find(|&&c| c != e).unwrap();
                let y = tg.other_end(xy, x);
                let chain: BTreeSet<EdgeId> = tg.rotation(x).iter().chain(tg.rotation(y)).copied().collect();
                for c in chain {
                    w2.insert(t.mirror_edge(c), w2[&c].clone());
                }
                boundary_measurement(tg, &w2).unwrap()
            };
            ensure(is_symmetric_weighting(&t, &w2), || format!("{f}: weights lose symmetry under {mv:?}"))?;
            ensure(q.normalized() == p.normalized(), || format!("{f}: {mv:?}"))?;
            if !s.is_crossing(e) {
                ensure(q == p, || format!("{f}: {mv:?} changes the measurement"))?;
            }
            symmetric += 1;
        }
    }
    let s = SymmetricPlabicGraph::from_graph(fig.clone()).unwrap();
    for _ in 0..10 {
        let w = random_symmetric_weighting(&s, &mut rng);
        let (h, w2) = square_move_weighted(&fig, &w, &face).unwrap();
        let t = SymmetricPlabicGraph::from_graph(h.clone()).map_err(|e| e.to_string())?;
        ensure(is_symmetric_weighting(&t, &w2), || "midline square move breaks weight symmetry".into())?;
        ensure(boundary_measurement(&fig, &w).unwrap().projective_eq(&boundary_measurement(&h, &w2).unwrap()), || "midline square move".into())?;
        symmetric += 1;
    }
    ensure(symmetric > 0 && degree_two > 0, || "no moves applied".into())?;
    Ok(format!(
        "{SQUARE_MOVE_SAMPLES} square moves over {} sites (projective, factor ac+bd), {degree_two} degree-two round trips, {symmetric} symmetric moves",
        sites.len()
    ))
}

fn reducedness() -> Check {
    let mut graphs = 0;
    let mut injected = 0;
    for (u, w, k) in bridge_pairs(3) {
        let (g, _) = bridge_graph(&u, &w, k, None).unwrap();
        ensure(g.is_reduced().unwrap() && !reducible_within(&g, 6), || format!("bridge graph u={u} w={w} k={k}"))?;
        graphs += 1;
        for e in g.internal_edges() {
            for h in [g.with_parallel_edge(e).unwrap(), g.with_bubble(e).unwrap()] {
                ensure(!h.is_reduced().unwrap(), || format!("defect on edge {e} of u={u} w={w} missed"))?;
                injected += 1;
            }
        }
    }
    for f in type_c_cells(3) {
        let (s, _) = symmetric_bridge_graph(&f).unwrap();
        let g = s.graph();
        ensure(s.is_reduced().unwrap() && g.is_reduced().unwrap() && !reducible_within(g, 4), || format!("symmetric bridge graph {f}"))?;
        graphs += 1;
        for e in g.internal_edges() {
            let m = s.mirror_edge(e);
            if m < e {
                continue;
            }
            // inject the defect together with its mirror image
            for bubble in [false, true] {
                let add = |h: &PlabicGraph, x| if bubble { h.with_bubble(x) } else { h.with_parallel_edge(x) };
                let mut h = add(g, e).unwrap();
                if m != e {
                    h = add(&h, m).unwrap();
                }
                let t = SymmetricPlabicGraph::from_graph(h.clone()).map_err(|err| format!("{f} edge {e}: {err}"))?;
                ensure(!t.is_reduced().unwrap() && t.is_reduced().unwrap() == h.is_reduced().unwrap(), || format!("{f} edge {e}"))?;
                injected += 1;
            }
        }
    }
    Ok(format!("{graphs} graphs reduced, {injected} injected defects detected"))
}

fn type_c_trips() -> Check {
    let mut graphs = 0;
    for f in type_c_cells(3) {
        let (s, _) = symmetric_bridge_graph(&f).unwrap();
        ensure(s.bounded_affine().unwrap() == f, || format!("bridge graph of {f} gives {}", s.bounded_affine().unwrap()))?;
        let mut generated = vec![s.clone()];
        for e in s.graph().internal_edges() {
            let mv = if s.is_crossing(e) {
                SymmetricMove::InsertCrossingPair { edge: e }
            } else {
                SymmetricMove::Paired { r#move: Move::InsertPair { edge: e } }
            };
            generated.extend(s.apply_move(&mv));
        }
        generated.extend(s.square_neighbors().into_iter().map(|(_, t)| t));
        for t in &generated {
            let g = t.bounded_affine().unwrap();
            ensure(g.is_type_c() && g == f, || format!("{f}: generated graph gives {g}"))?;
        }
        graphs += generated.len();
    }
    let fig = SymmetricPlabicGraph::from_graph(common::figure_graph()).unwrap();
    ensure(fig.bounded_affine().unwrap().is_type_c(), || "figure graph".into())?;
    Ok(format!("{} type C cells reproduced, {} generated graphs type C", type_c_cells(3).len(), graphs + 1))
}

/// Row-reduced matrix with the point's Pluecker coordinates, pivots at the
/// lex-first basis.
fn matrix_of_point(p: &PlueckerVector<Rational>) -> Matrix<Rational> {
    let first = p.lex_first().unwrap().clone();
    let d = p.get(&first);
    let mut m = Matrix::zeros(p.k, p.n);
    for (r, &i) in first.iter().enumerate() {
        for j in 1..=p.n {
            if first.contains(&j) {
                if j == i {
                    m.set(r + 1, j, rat(1));
                }
                continue;
            }
            let mut s: Vec<usize> = first.iter().map(|&x| if x == i { j } else { x }).collect();
            let between = first.iter().filter(|&&x| (i < x && x < j) || (j < x && x < i)).count();
            s.sort_unstable();
            let sign = if between % 2 == 0 { rat(1) } else { rat(-1) };
            m.set(r + 1, j, sign * p.get(&s) / &d);
        }
    }
    m
}

fn positivity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut points = 0;
    let mut graphs: Vec<(PlabicGraph, Option<SymmetricPlabicGraph>)> =
        bridge_pairs(3).into_iter().map(|(u, w, k)| (bridge_graph(&u, &w, k, None).unwrap().0, None)).collect();
    for f in type_c_cells(3) {
        let (s, _) = symmetric_bridge_graph(&f).unwrap();
        graphs.push((s.graph().clone(), Some(s)));
    }
    for (g, sym) in &graphs {
        ensure(g.is_reduced().unwrap(), || "corpus graph not reduced".into())?;
        let f = g.bounded_affine().unwrap();
        let want = positroid_from_necklace(&necklace_from_bounded_affine(&f));
        for i in 0..POSITIVE_SAMPLES {
            let w = match sym {
                Some(s) => random_symmetric_weighting(s, &mut rng),
                None => random_positive_weighting(g, &mut rng),
            };
            let p = boundary_measurement(g, &w).unwrap();
            ensure(p.coords.values().all(|x| *x >= rat(0)), || format!("{f} sample {i}: negative coordinate"))?;
            ensure(&matroid_of_point(&p).unwrap() == want.bases(), || format!("{f} sample {i}: support differs"))?;
            if sym.is_some() {
                let m = matrix_of_point(&p);
                ensure(minors_pluecker(&m).unwrap().projective_eq(&p), || format!("{f}: matrix reconstruction"))?;
                ensure(is_lagrangian_matrix(&m).unwrap(), || format!("{f} sample {i}: not isotropic"))?;
                for mode in [LagrangianMode::Cutout, LagrangianMode::Lemma] {
                    let r = lagrangian_relations_check(&p, mode).unwrap();
                    ensure(r.is_none(), || format!("{f} sample {i}: {mode:?} witness {}", r.unwrap()))?;
                }
            }
            points += 1;
        }
    }
    Ok(format!("{} graphs, {points} positive points", graphs.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("pipeline identity", pipeline_identity),
        ("Lagrangian landing", lagrangian_landing),
        ("cut-out theorem both directions", cutout_theorem),
        ("poset isomorphisms and grading", posets_and_gradings),
        ("move invariance", move_invariance),
        ("reducedness", reducedness),
        ("type C symmetry of trips", type_c_trips),
        ("positivity and matroid cells", positivity),
    ];
    let mut failures = Vec::new();
    let mut times = HashMap::new();
    for (idx, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        times.insert(idx, took);
        let over = took > BUDGETS[idx];
        let (status, detail) = match (&result, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        println!(
            "{status} {}. {name}: {detail} [tolerance {TOLERANCE}, {:.1}s of {}s]",
            idx + 1,
            took.as_secs_f64(),
            BUDGETS[idx].as_secs()
        );
        if status == "FAIL" {
            failures.push(name.to_string());
        }
    }
    let seen: BTreeSet<usize> = times.keys().copied().collect();
    assert_eq!(seen.len(), 8);
    assert!(failures.is_empty(), "failed: {failures:?}");
}
