//! Bounded affine permutations, their decorated permutations, lengths and
//! the type C subposet.

use lagplabic::affine::*;
use lagplabic::coxeter::*;

fn main() {
    let u = Permutation::identity(4);
    let w = Permutation::new(vec![3, 4, 1, 2]).unwrap();
    let f = BoundedAffinePermutation::from_pair(&u, &w, 2).unwrap();
    println!("f_(u,w) = {f}, length {}, type C: {}", f.length_a(), f.is_type_c());
    let d = f.to_decorated();
    println!("decorated: {}", serde_json::to_string(&d).unwrap());
    assert_eq!(BoundedAffinePermutation::from_decorated(&d).unwrap(), f);

    for k in 0..=4 {
        println!("|Bd({k},4)| = {}", enumerate_bd(k, 4).len());
    }
    let bdc = enumerate_bdc(2);
    println!("Bd^C(4) has {} elements:", bdc.len());
    for g in &bdc {
        println!("  {g}  length_C = {}", g.length_c().unwrap());
    }
    let top = &bdc.iter().find(|g| g.length_c().unwrap() == 0).unwrap();
    println!("top cell {top} is below everything: {}", bdc.iter().all(|g| affine_bruhat_leq(top, g).unwrap()));
}
