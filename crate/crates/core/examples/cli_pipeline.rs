//! Drives the command line in-process: build a symmetric graph, measure it
//! with canonical weights, and verify the result lands in the Lagrangian
//! Grassmannian.

use lagplabic::cli::run_with;

fn call(args: &[&str], stdin: &str) -> (u8, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["lagplabic"];
    full.extend_from_slice(args);
    let code = run_with(full, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
}

fn main() {
    let (_, graph) = call(&["convert", "--from", "bounded-affine", "--to", "symmetric-graph"], r#"{"N":4,"k":2,"window":[3,4,5,6]}"#);
    let (_, point) = call(&["measure", "--canonical"], &graph);
    println!("$ lagplabic measure --canonical\n{point}");
    let (code, report) = call(&["verify", "lagrangian-pluecker"], &point);
    println!("$ lagplabic verify lagrangian-pluecker  (exit {code})\n{report}");
    let (code, report) = call(&["verify", "lagrangian-matrix"], r#"{"rows":[["1","2","0","5"],["0","0","1","3"]]}"#);
    println!("$ lagplabic verify lagrangian-matrix  (exit {code})\n{report}");
    let (_, covers) = call(&["poset", "bdc", "--n", "1"], "");
    println!("$ lagplabic poset bdc --n 1\n{covers}");
}
