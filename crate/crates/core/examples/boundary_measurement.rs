//! Symbolic and numeric boundary measurement, gauge fixing and the square
//! move weight transform.

use lagplabic::affine::*;
use lagplabic::measurement::*;
use lagplabic::poly::*;
use lagplabic::symmetric::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let top = BoundedAffinePermutation::new(vec![3, 4, 5, 6]).unwrap();
    let (s, groups) = symmetric_bridge_graph(&top).unwrap();
    let g = s.graph();
    let p = boundary_measurement(g, &canonical_weighting(g, &groups)).unwrap();
    println!("symbolic point of the top cell of the Lagrangian Grassmannian:\n{p}");

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let w = random_symmetric_weighting(&s, &mut rng);
    let x = boundary_measurement(g, &w).unwrap();
    println!("a positive point:\n{}", x.normalized());

    let forest = gauge_forest(g);
    let fixed = gauge_fix(g, &w, &forest).unwrap();
    let y = boundary_measurement(g, &fixed).unwrap();
    println!("gauge fixing {} edges keeps the point: {}", forest.len(), x.projective_eq(&y));

    let (a, b, c, d) = (rat(2), rat(3), rat(5), rat(7));
    let once = square_move_weights(&a, &b, &c, &d).unwrap();
    let twice = square_move_weights(&once.0, &once.1, &once.2, &once.3).unwrap();
    let show = |w: &(Rational, Rational, Rational, Rational)| {
        [&w.0, &w.1, &w.2, &w.3].map(format_rational).join(", ")
    };
    let start = (a, b, c, d);
    println!("square move weights ({}) -> ({}), back to start: {}", show(&start), show(&once), twice == start);
}
