//! Walk the six-variable example through variable elimination: the
//! ordering y, b, b', b*, c, z shrinks the formula 13 → 10 → 4 → 2 → 0,
//! while starting with z reaches a formula with no admissible variable.

use bacsat::dp::{dp_eliminate, is_dp_simplicial};
use bacsat::generators::fixture_example;
use bacsat::structure::weakly_simplicial_variables;

fn main() {
    let f = fixture_example();
    println!("F ({} clauses): {f}", f.len());
    println!(
        "weakly simplicial variables: {:?} (so F is not β-acyclic)",
        weakly_simplicial_variables(&f)
    );

    let mut current = f.clone();
    for name in ["y", "b", "b'", "b*", "c", "z"] {
        let x = f.var_by_name(name).unwrap();
        assert!(is_dp_simplicial(&current, x), "{name} admissible at its turn");
        current = dp_eliminate(&current, x);
        println!("after eliminating {name}: {} clauses", current.len());
    }
    assert!(current.is_empty());

    let z = f.var_by_name("z").unwrap();
    let dead_end = dp_eliminate(&f, z);
    println!("\nstarting with z instead: {} clauses", dead_end.len());
    for x in dead_end.variables() {
        println!(
            "  {} DP-simplicial: {}",
            f.var_name(x).unwrap(),
            is_dp_simplicial(&dead_end, x)
        );
    }
}
