//! Parse a DIMACS formula, check it is β-acyclic, and solve it by
//! ordered variable elimination, printing the model or a checked
//! resolution refutation.

use bacsat::dp::{solve_bac, Status};
use bacsat::io::{parse_formula, Format};
use bacsat::structure::beta_elimination_ordering;

fn main() {
    let sat_input = "p cnf 4 2\n1 2 0\n2 3 4 0\n";
    let unsat_input = "p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n";

    for (label, text) in [("two overlapping clauses", sat_input), ("all clauses on 2 vars", unsat_input)] {
        let f = parse_formula(text, Format::Dimacs).unwrap();
        println!("{label}: {f}");

        let order = beta_elimination_ordering(&f).expect("input is β-acyclic");
        println!("  elimination ordering: {order:?}");

        let outcome = solve_bac(&f, true).unwrap();
        match outcome.verdict.status {
            Status::Sat => {
                let model = outcome.verdict.model.unwrap();
                assert!(f.is_satisfied_by(&model));
                println!("  SAT, model: {model:?}");
            }
            Status::Unsat => {
                let refutation = outcome.verdict.refutation.unwrap();
                assert!(refutation.validate(&f));
                println!("  UNSAT, refutation with {} steps validates", refutation.steps.len());
            }
        }
    }
}
