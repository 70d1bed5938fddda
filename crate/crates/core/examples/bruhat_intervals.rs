//! Bruhat order, Grassmannian permutations and the canonical pairs indexing
//! positroid cells.

use lagplabic::coxeter::*;

fn main() {
    let (k, n) = (2, 4);
    let w = Permutation::new(vec![3, 4, 1, 2]).unwrap();
    println!("w = {w}, length {}, Grassmannian for k={k}: {}", w.length(), is_grassmannian(&w, k));
    let word = reduced_word(&w, WordType::A);
    println!("a reduced word: {:?}", word.letters);

    let u = Permutation::simple(2, n);
    let mask = pds(&u, &word).unwrap();
    println!("positive distinguished subexpression for u = s2: {mask:?}");

    let q = enumerate_q(k, n);
    println!("|Q({k},{n})| = {}", q.len());
    for (u, w) in q.iter().take(5) {
        println!("  <{u}, {w}>");
    }

    for n in 1..=3 {
        println!("|Q^C(2*{n})| = {}", enumerate_qc(n).len());
    }
}
