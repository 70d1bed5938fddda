//! Grassmann necklaces, positroids and Le-diagrams of types A and B. Diagrams
//! print in French notation, longest row at the bottom.

use lagplabic::affine::*;
use lagplabic::positroid::*;

fn main() {
    let f = BoundedAffinePermutation::new(vec![3, 4, 5, 6]).unwrap();
    let nk = necklace_from_bounded_affine(&f);
    println!("necklace of {f}: {nk}, type C: {}", is_type_c_necklace(&nk).unwrap());
    let m = positroid_from_necklace(&nk);
    println!("positroid with {} bases: {:?}", m.bases().len(), m.bases());

    let kind = LeKind::A { k: 2, n: 5 };
    let d = LeDiagram::new(kind, vec![vec![true, false, true], vec![false, false]]).unwrap();
    let (u, w) = d.to_pair().unwrap();
    println!("Le-diagram\n{d}gives u = {u}, w = {w}");
    assert_eq!(LeDiagram::from_pair(kind, &u, &w).unwrap(), d);

    for n in 1..=3 {
        println!("type B Le-diagrams of rank {n}: {}, |Bd^C({})| = {}", enumerate_le(LeKind::B { n }).len(), 2 * n, enumerate_bdc(n).len());
    }
    println!("{}", serde_json::to_string_pretty(&d.to_json()).unwrap());
}
