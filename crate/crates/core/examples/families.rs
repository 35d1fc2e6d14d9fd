//! Generate the four comparison families and report where each sits:
//! β-acyclic, eliminable under some ordering, or stuck.

use bacsat::dp::is_dp_simplicial;
use bacsat::generators::gen_family;
use bacsat::oracle::{oracle_dps, DpsStatus};
use bacsat::structure::beta_elimination_ordering;

fn main() {
    for (family, n) in [("fa", 3), ("fs", 4), ("fc", 3), ("fac", 3)] {
        let f = gen_family(family, n).unwrap();
        let beta = beta_elimination_ordering(&f).is_some();
        let dp_simplicial = f
            .variables()
            .into_iter()
            .filter(|&x| is_dp_simplicial(&f, x))
            .count();
        let membership = match oracle_dps(&f, 100_000).status {
            DpsStatus::Member(_) => "eliminable",
            DpsStatus::NonMember => "stuck",
            DpsStatus::Unknown => "unknown (budget)",
        };
        println!(
            "{family}({n}): {} clauses, β-acyclic: {beta}, DP-simplicial vars: {dp_simplicial}, search: {membership}",
            f.len()
        );
    }
}
