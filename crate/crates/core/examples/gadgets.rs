//! The three hardness gadgets in action, each cross-checked against a
//! brute-force oracle:
//! - elimination-ordering membership search on the formula gadget,
//! - minimum hitting set vs minimum strong backdoor on the set-family
//!   gadget,
//! - partitioned-clique existence vs satisfiability on the graph
//!   gadget.

use std::collections::BTreeSet;

use bacsat::dp::Status;
use bacsat::formula::{Clause, Formula, Literal};
use bacsat::generators::{gen_backdoor_gadget, gen_clique_gadget, gen_dps_gadget, KPartiteGraph};
use bacsat::oracle::{
    oracle_dps, oracle_min_hitting_set, oracle_min_strong_backdoor, oracle_sat, DpsStatus,
    SetFamily,
};

fn main() {
    // membership gadget: (x1 ∨ x2) ∧ (¬x1 ∨ x2) is satisfiable, so its
    // gadget admits an elimination ordering
    let mut f = Formula::new();
    let vs = f.add_anonymous_vars(2);
    f.insert_clause(Clause::new([Literal::positive(vs[0]), Literal::positive(vs[1])]).unwrap());
    f.insert_clause(Clause::new([Literal::negative(vs[0]), Literal::positive(vs[1])]).unwrap());
    let gadget = gen_dps_gadget(&f).unwrap();
    let membership = oracle_dps(&gadget, 1_000_000);
    println!(
        "formula gadget: {} vars, {} clauses, membership: {}",
        gadget.table_len(),
        gadget.len(),
        match membership.status {
            DpsStatus::Member(_) => "member",
            DpsStatus::NonMember => "non-member",
            DpsStatus::Unknown => "unknown",
        }
    );

    // set-family gadget: {{1,2},{2,3}} has the size-1 hitting set {2}
    let family = SetFamily::new(
        BTreeSet::new(),
        vec![[1, 2].into_iter().collect(), [2, 3].into_iter().collect()],
    );
    let (hs_size, hs) = oracle_min_hitting_set(&family).unwrap();
    let hs_gadget = gen_backdoor_gadget(&family).unwrap();
    let backdoor = oracle_min_strong_backdoor(&hs_gadget, 3).unwrap().unwrap();
    println!(
        "set-family gadget: min hitting set {hs:?} (size {hs_size}), min strong backdoor size {}",
        backdoor.len()
    );
    assert_eq!(hs_size, backdoor.len());

    // graph gadget: a 3-partite graph with and without a transversal
    // triangle
    let mut g = KPartiteGraph::new(3, 2).unwrap();
    for (u, v) in [((1, 1), (2, 1)), ((2, 1), (3, 1)), ((1, 1), (3, 1))] {
        g.add_edge(u, v).unwrap();
    }
    let clique_gadget = gen_clique_gadget(&g).unwrap();
    let status = oracle_sat(&clique_gadget).unwrap().status;
    println!(
        "graph gadget: clique exists: {}, gadget satisfiable: {}",
        g.has_partitioned_clique(),
        status == Status::Sat
    );
    assert_eq!(g.has_partitioned_clique(), status == Status::Sat);
}
