//! Independent brute-force ground truth: truth-table satisfiability,
//! bounded exhaustive DP-simplicial membership search, minimum hitting
//! sets and minimum strong backdoors.
//!
//! Everything here is exponential by design and guarded accordingly; the
//! polynomial solvers never call into this module.

use std::collections::{BTreeSet, HashSet};

use crate::backdoor::is_strong_backdoor;
use crate::dp::{dp_eliminate, is_dp_simplicial, Status, Verdict};
use crate::error::Error;
use crate::formula::{Assignment, Formula, Variable};
use crate::structure::EliminationOrdering;
use crate::Result;

/// Default variable-count guard for truth-table enumeration.
pub const ORACLE_SAT_MAX_VARS: usize = 24;

/// Exact satisfiability by truth-table enumeration over var(F).
///
/// Assignments are visited in Gray-code order with incremental
/// per-clause counters of true literals, starting from all-zero.
pub fn oracle_sat(f: &Formula) -> Result<Verdict> {
    oracle_sat_guarded(f, ORACLE_SAT_MAX_VARS)
}

pub fn oracle_sat_guarded(f: &Formula, max_vars: usize) -> Result<Verdict> {
    let vars: Vec<Variable> = f.variables().into_iter().collect();
    let n = vars.len();
    if n > max_vars {
        return Err(Error::TooLarge(format!(
            "oracle_sat guard: {n} variables exceeds limit {max_vars}"
        )));
    }
    let clauses: Vec<_> = f.clauses().collect();
    let m = clauses.len();

    // occurrences[i] lists (clause index, negated) pairs for vars[i].
    let mut occurrences: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    let mut true_count: Vec<usize> = Vec::with_capacity(m);
    for (ci, clause) in clauses.iter().enumerate() {
        let mut count = 0;
        for lit in clause.literals() {
            let vi = vars.binary_search(&lit.var).expect("literal var in var(F)");
            occurrences[vi].push((ci, lit.negated));
            if lit.negated {
                count += 1; // all variables start at 0, negative literals are true
            }
        }
        true_count.push(count);
    }
    let mut unsatisfied = true_count.iter().filter(|c| **c == 0).count();
    let mut values = vec![false; n];

    let total: u64 = 1u64 << n;
    for step in 0..total {
        if unsatisfied == 0 {
            let model = Assignment::from_pairs(
                vars.iter().copied().zip(values.iter().copied()),
            );
            debug_assert!(f.is_satisfied_by(&model));
            return Ok(Verdict {
                status: Status::Sat,
                model: Some(model),
                refutation: None,
            });
        }
        if step + 1 == total {
            break;
        }
        // Gray code: flip the variable at the index of the lowest set
        // bit of step+1.
        let flip = (step + 1).trailing_zeros() as usize;
        values[flip] = !values[flip];
        for &(ci, negated) in &occurrences[flip] {
            let lit_true = values[flip] != negated;
            if lit_true {
                if true_count[ci] == 0 {
                    unsatisfied -= 1;
                }
                true_count[ci] += 1;
            } else {
                true_count[ci] -= 1;
                if true_count[ci] == 0 {
                    unsatisfied += 1;
                }
            }
        }
    }
    Ok(Verdict {
        status: Status::Unsat,
        model: None,
        refutation: None,
    })
}

/// Outcome of the bounded exhaustive DP-simplicial membership search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DpsStatus {
    Member(EliminationOrdering),
    NonMember,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpsMembership {
    pub status: DpsStatus,
    pub nodes_explored: u64,
}

/// Exhaustive search over DP-simplicial elimination choices, memoized on
/// canonical formula encodings. Membership testing is NP-complete, so
/// the search is budgeted and `Unknown` is a first-class outcome.
pub fn oracle_dps(f: &Formula, node_budget: u64) -> DpsMembership {
    oracle_dps_with_options(f, node_budget, true)
}

/// As [`oracle_dps`], with memoization optionally disabled (slow path
/// for cross-checking the memoized search at tiny sizes).
pub fn oracle_dps_with_options(f: &Formula, node_budget: u64, memoize: bool) -> DpsMembership {
    struct Search {
        budget: u64,
        nodes: u64,
        memoize: bool,
        dead: HashSet<Vec<Vec<i64>>>,
    }

    enum Dfs {
        Member(Vec<Variable>),
        NonMember,
        Unknown,
    }

    fn encode(f: &Formula) -> Vec<Vec<i64>> {
        f.clauses()
            .map(|c| {
                c.literals()
                    .iter()
                    .map(|l| {
                        let id = l.var.0 as i64 + 1;
                        if l.negated {
                            -id
                        } else {
                            id
                        }
                    })
                    .collect()
            })
            .collect()
    }

    fn dfs(f: &Formula, search: &mut Search) -> Dfs {
        if f.variables().is_empty() {
            return Dfs::Member(Vec::new());
        }
        let key = encode(f);
        if search.memoize && search.dead.contains(&key) {
            return Dfs::NonMember;
        }
        if search.nodes >= search.budget {
            return Dfs::Unknown;
        }
        search.nodes += 1;

        let mut saw_unknown = false;
        for x in f.variables() {
            if !is_dp_simplicial(f, x) {
                continue;
            }
            match dfs(&dp_eliminate(f, x), search) {
                Dfs::Member(mut tail) => {
                    tail.insert(0, x);
                    return Dfs::Member(tail);
                }
                Dfs::NonMember => {}
                Dfs::Unknown => saw_unknown = true,
            }
        }
        if saw_unknown {
            Dfs::Unknown
        } else {
            if search.memoize {
                search.dead.insert(key);
            }
            Dfs::NonMember
        }
    }

    let mut search = Search {
        budget: node_budget,
        nodes: 0,
        memoize,
        dead: HashSet::new(),
    };
    let status = match dfs(f, &mut search) {
        Dfs::Member(mut order) => {
            // Variables that vanished mid-search still belong to the
            // witness so it replays as a full elimination ordering.
            for x in f.variables() {
                if !order.contains(&x) {
                    order.push(x);
                }
            }
            DpsStatus::Member(order)
        }
        Dfs::NonMember => DpsStatus::NonMember,
        Dfs::Unknown => DpsStatus::Unknown,
    };
    DpsMembership {
        status,
        nodes_explored: search.nodes,
    }
}

/// A family of finite sets over a ground set of element ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    pub universe: BTreeSet<u32>,
    pub sets: Vec<BTreeSet<u32>>,
}

impl SetFamily {
    /// Builds a family; the universe is widened to cover all members.
    pub fn new(universe: BTreeSet<u32>, sets: Vec<BTreeSet<u32>>) -> Self {
        let mut universe = universe;
        for s in &sets {
            universe.extend(s.iter().copied());
        }
        SetFamily { universe, sets }
    }
}

/// Default universe guard for hitting-set enumeration.
pub const HITTING_SET_MAX_UNIVERSE: usize = 20;

/// Minimum hitting set by subset enumeration in increasing size, then
/// lexicographic order, so the witness is the lexicographically smallest
/// among the smallest.
pub fn oracle_min_hitting_set(family: &SetFamily) -> Result<(usize, BTreeSet<u32>)> {
    if family.sets.iter().any(|s| s.is_empty()) {
        return Err(Error::NoHittingSet);
    }
    let universe: Vec<u32> = family.universe.iter().copied().collect();
    if universe.len() > HITTING_SET_MAX_UNIVERSE {
        return Err(Error::TooLarge(format!(
            "hitting-set guard: universe of {} exceeds limit {}",
            universe.len(),
            HITTING_SET_MAX_UNIVERSE
        )));
    }
    for k in 0..=universe.len() {
        let mut found: Option<BTreeSet<u32>> = None;
        for_each_subset(&universe, k, &mut |subset| {
            if found.is_some() {
                return;
            }
            let hits = family
                .sets
                .iter()
                .all(|s| s.iter().any(|e| subset.contains(e)));
            if hits {
                found = Some(subset.iter().copied().collect());
            }
        });
        if let Some(witness) = found {
            return Ok((k, witness));
        }
    }
    unreachable!("the full universe hits every non-empty set")
}

/// Visits the size-`k` subsets of `items` in lexicographic order of
/// index sequences.
pub fn for_each_subset<T: Copy>(items: &[T], k: usize, visit: &mut impl FnMut(&[T])) {
    fn rec<T: Copy>(items: &[T], k: usize, start: usize, acc: &mut Vec<T>, visit: &mut impl FnMut(&[T])) {
        if acc.len() == k {
            visit(acc);
            return;
        }
        let needed = k - acc.len();
        for i in start..=items.len().saturating_sub(needed) {
            acc.push(items[i]);
            rec(items, k, i + 1, acc, visit);
            acc.pop();
        }
    }
    if k > items.len() {
        return;
    }
    rec(items, k, 0, &mut Vec::with_capacity(k), visit);
}

/// Default variable guard for the strong-backdoor oracle.
pub const BACKDOOR_ORACLE_MAX_VARS: usize = 18;

/// A smallest strong backdoor to β-acyclicity of size at most `max_k`,
/// by subset enumeration with each candidate verified via the full
/// 2^|B| reduct check. `None` when no such set of size <= max_k exists.
pub fn oracle_min_strong_backdoor(f: &Formula, max_k: usize) -> Result<Option<BTreeSet<Variable>>> {
    let vars: Vec<Variable> = f.variables().into_iter().collect();
    if vars.len() > BACKDOOR_ORACLE_MAX_VARS {
        return Err(Error::TooLarge(format!(
            "backdoor oracle guard: {} variables exceeds limit {}",
            vars.len(),
            BACKDOOR_ORACLE_MAX_VARS
        )));
    }
    for k in 0..=max_k.min(vars.len()) {
        let mut found: Option<BTreeSet<Variable>> = None;
        for_each_subset(&vars, k, &mut |subset| {
            if found.is_some() {
                return;
            }
            let b: BTreeSet<Variable> = subset.iter().copied().collect();
            if is_strong_backdoor(f, &b) {
                found = Some(b);
            }
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}
