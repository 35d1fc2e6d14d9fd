//! Strong versus deletion backdoors on the three-clause family where
//! the gap between the two is arbitrarily large, then solving through
//! the strong backdoor.

use bacsat::backdoor::{find_deletion_backdoor, find_strong_backdoor, solve_via_backdoor};
use bacsat::generators::fixture_backdoor_gap;

fn main() {
    for p in 1..=3 {
        let f = fixture_backdoor_gap(p).unwrap();
        let strong = find_strong_backdoor(&f, p).unwrap().unwrap();
        let deletion = find_deletion_backdoor(&f, p).unwrap().unwrap();
        let names = |b: &std::collections::BTreeSet<bacsat::Variable>| {
            b.iter()
                .map(|&v| f.var_name(v).unwrap().to_owned())
                .collect::<Vec<_>>()
                .join(",")
        };
        println!(
            "p={p}: strong backdoor {{{}}} (size {}), deletion backdoor {{{}}} (size {})",
            names(&strong),
            strong.len(),
            names(&deletion),
            deletion.len()
        );

        let verdict = solve_via_backdoor(&f, &strong).unwrap();
        println!("  solved through the strong backdoor: {:?}", verdict.status);
    }
}
