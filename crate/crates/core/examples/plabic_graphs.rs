//! Bridge graphs, trips, reducedness and moves.

use lagplabic::coxeter::*;
use lagplabic::plabic::*;

fn main() {
    let u = Permutation::identity(4);
    let w = Permutation::new(vec![3, 4, 1, 2]).unwrap();
    let (g, groups) = bridge_graph(&u, &w, 2, None).unwrap();
    println!("bridge graph: {} vertices, {} edges, {} bridges", g.vertices().len(), g.edges().len(), groups.len());
    println!("trip permutation {}", g.bounded_affine().unwrap());
    println!("reduced: {}", g.is_reduced().unwrap());

    let h = g.contract_all();
    let faces = h.square_faces();
    println!("after contraction: {} vertices, {} square faces", h.vertices().len(), faces.len());
    if let Some(face) = faces.first() {
        let moved = h.square_move(face).unwrap();
        println!("square move keeps the trips: {}", moved.bounded_affine().unwrap() == h.bounded_affine().unwrap());
    }

    let e = g.internal_edges()[0];
    let bad = g.with_parallel_edge(e).unwrap();
    println!("with a parallel edge: reduced = {}, witness {:?}", bad.is_reduced().unwrap(), bad.reducedness_witness().unwrap());

    println!("{}", h.to_dot(None));
}
