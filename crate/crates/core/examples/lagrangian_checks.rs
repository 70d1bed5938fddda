//! Bridge matrices, the isotropy test and the Pluecker relations that cut out
//! the Lagrangian Grassmannian.

use lagplabic::affine::*;
use lagplabic::linalg::*;
use lagplabic::poly::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let m = |rows: [[i64; 4]; 2]| Matrix::new(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()).unwrap();
    for a in [m([[1, 2, 0, 5], [0, 0, 1, 2]]), m([[1, 2, 0, 5], [0, 0, 1, 3]])] {
        let p = minors_pluecker(&a).unwrap();
        let witness = lagrangian_relations_check(&p, LagrangianMode::Cutout).unwrap();
        println!("{a}isotropic: {}, relation witness: {:?}\n", is_lagrangian_matrix(&a).unwrap(), witness.map(|w| w.to_string()));
    }

    let top = BoundedAffinePermutation::new(vec![3, 4, 5, 6]).unwrap();
    let (b, groups) = symmetric_bridge_matrix(&top, None).unwrap();
    println!("symmetric bridge matrix with {} shared parameters:\n{b}", groups.len());
    println!("isotropic as polynomials: {}", is_lagrangian_matrix(&b).unwrap());

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut agree = 0;
    for i in 0..100 {
        let a = if i % 2 == 0 { random_lagrangian_matrix(3, false, &mut rng) } else { random_full_rank_matrix(3, 6, false, &mut rng) };
        let p = minors_pluecker(&a).unwrap();
        agree += usize::from(is_lagrangian_matrix(&a).unwrap() == lagrangian_relations_check(&p, LagrangianMode::Lemma).unwrap().is_none());
    }
    println!("the two tests agree on {agree} of 100 random 3x6 matrices");
}
