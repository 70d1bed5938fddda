//! Symmetric plabic graphs for type C cells and their moves.

use lagplabic::affine::*;
use lagplabic::symmetric::*;

fn main() {
    for f in enumerate_bdc(2) {
        let (s, groups) = symmetric_bridge_graph(&f).unwrap();
        println!(
            "{f}: {} vertices, {} crossing edges, {} bridge groups, reproduces f: {}",
            s.graph().vertices().len(),
            s.crossing_edges().len(),
            groups.len(),
            s.bounded_affine().unwrap() == f
        );
    }

    let top = BoundedAffinePermutation::new(vec![3, 4, 5, 6]).unwrap();
    let (s, _) = symmetric_bridge_graph(&top).unwrap();
    let (left, right) = s.split_halves().unwrap();
    println!("halves have {} and {} boundary vertices", left.n(), right.n());
    for (name, t) in s.square_neighbors() {
        println!("neighbor by {name}: same cell {}", t.bounded_affine().unwrap() == top);
    }
    println!("{}", s.to_dot());
}
