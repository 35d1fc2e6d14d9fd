//! Strong and deletion backdoors into the β-acyclic class, bounded
//! brute-force search for smallest ones, and backdoor-driven solving.
//!
//! The search is deliberately plain subset enumeration: increasing
//! size, then lexicographic, behind explicit size guards. The subset
//! space can be sharded over threads; the smallest-witness guarantee is
//! preserved by merging shard results in enumeration order.

use std::collections::BTreeSet;

use crate::dp::{solve_bac, Status, Verdict};
use crate::error::Error;
use crate::formula::{Assignment, Formula, Variable};
use crate::oracle::for_each_subset;
use crate::structure::is_beta_acyclic;
use crate::Result;

/// What a verification run established about a candidate set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackdoorKind {
    Strong,
    Deletion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BackdoorReport {
    pub kind: BackdoorKind,
    pub variables: BTreeSet<Variable>,
    pub verified: bool,
    /// Number of reducts that passed the recognizer before the first
    /// failure (equals 2^|B| when verified, strong kind only).
    pub reducts_checked: usize,
}

/// All 2^|B| assignments over B in counting order, the first (smallest
/// id) variable acting as the most significant bit.
pub fn assignments_over(b: &BTreeSet<Variable>) -> impl Iterator<Item = Assignment> + '_ {
    let vars: Vec<Variable> = b.iter().copied().collect();
    let total: u64 = 1 << vars.len();
    (0..total).map(move |bits| {
        Assignment::from_pairs(
            vars.iter()
                .enumerate()
                .map(|(i, &v)| (v, bits >> (vars.len() - 1 - i) & 1 == 1)),
        )
    })
}

/// True iff every reduct F[τ] over B is β-acyclic.
pub fn is_strong_backdoor(f: &Formula, b: &BTreeSet<Variable>) -> bool {
    verify_strong_backdoor(f, b).verified
}

pub fn verify_strong_backdoor(f: &Formula, b: &BTreeSet<Variable>) -> BackdoorReport {
    let mut checked = 0;
    let mut verified = true;
    for tau in assignments_over(b) {
        if is_beta_acyclic(&f.apply_assignment(&tau)) {
            checked += 1;
        } else {
            verified = false;
            break;
        }
    }
    BackdoorReport {
        kind: BackdoorKind::Strong,
        variables: b.clone(),
        verified,
        reducts_checked: checked,
    }
}

/// True iff F−B is β-acyclic.
pub fn is_deletion_backdoor(f: &Formula, b: &BTreeSet<Variable>) -> bool {
    is_beta_acyclic(&f.remove_variables(b))
}

pub fn verify_deletion_backdoor(f: &Formula, b: &BTreeSet<Variable>) -> BackdoorReport {
    let verified = is_deletion_backdoor(f, b);
    BackdoorReport {
        kind: BackdoorKind::Deletion,
        variables: b.clone(),
        verified,
        reducts_checked: 0,
    }
}

/// Guard on the variable count for the exhaustive backdoor searches.
pub const BACKDOOR_SEARCH_MAX_VARS: usize = 24;

/// A smallest strong backdoor of size at most `max_k`, lexicographically
/// smallest among those of minimum size, or `None`.
pub fn find_strong_backdoor(
    f: &Formula,
    max_k: usize,
) -> Result<Option<BTreeSet<Variable>>> {
    find_backdoor(f, max_k, 1, BackdoorKind::Strong)
}

/// A smallest deletion backdoor of size at most `max_k`, or `None`.
pub fn find_deletion_backdoor(
    f: &Formula,
    max_k: usize,
) -> Result<Option<BTreeSet<Variable>>> {
    find_backdoor(f, max_k, 1, BackdoorKind::Deletion)
}

/// The sharded entry point behind the CLI's `--jobs` flag: subset
/// enumeration for each size is split into `jobs` contiguous lex ranges
/// searched in parallel, and the earliest range with a witness holds
/// the lexicographically smallest one.
pub fn find_backdoor(
    f: &Formula,
    max_k: usize,
    jobs: usize,
    kind: BackdoorKind,
) -> Result<Option<BTreeSet<Variable>>> {
    let vars: Vec<Variable> = f.variables().into_iter().collect();
    if vars.len() > BACKDOOR_SEARCH_MAX_VARS {
        return Err(Error::TooLarge(format!(
            "backdoor search guard: {} variables exceeds limit {}",
            vars.len(),
            BACKDOOR_SEARCH_MAX_VARS
        )));
    }
    let jobs = jobs.max(1);
    let accepts = |b: &BTreeSet<Variable>| match kind {
        BackdoorKind::Strong => is_strong_backdoor(f, b),
        BackdoorKind::Deletion => is_deletion_backdoor(f, b),
    };
    for k in 0..=max_k.min(vars.len()) {
        let mut subsets: Vec<BTreeSet<Variable>> = Vec::new();
        for_each_subset(&vars, k, &mut |subset| {
            subsets.push(subset.iter().copied().collect());
        });
        let found = if jobs == 1 {
            subsets.into_iter().find(|b| accepts(b))
        } else {
            let chunk = subsets.len().div_ceil(jobs);
            let accepts = &accepts;
            std::thread::scope(|scope| {
                let handles: Vec<_> = subsets
                    .chunks(chunk.max(1))
                    .map(|shard| scope.spawn(move || shard.iter().find(|b| accepts(b)).cloned()))
                    .collect();
                handles.into_iter().find_map(|h| h.join().expect("shard panicked"))
            })
        };
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Solves F by trying all 2^|B| reducts: every reduct is first verified
/// β-acyclic (a wrong B yields `NotABackdoor`, never a wrong verdict),
/// then the reducts are solved in counting order until one is SAT.
///
/// A SAT model combines τ with the reduct's model; variables of F that
/// vanish from the chosen reduct are padded to false.
pub fn solve_via_backdoor(f: &Formula, b: &BTreeSet<Variable>) -> Result<Verdict> {
    let taus: Vec<Assignment> = assignments_over(b).collect();
    let reducts: Vec<Formula> = taus.iter().map(|tau| f.apply_assignment(tau)).collect();
    if !reducts.iter().all(is_beta_acyclic) {
        return Err(Error::NotABackdoor);
    }
    for (tau, reduct) in taus.iter().zip(&reducts) {
        let outcome = solve_bac(reduct, false)?;
        if outcome.verdict.status == Status::Sat {
            let mut model = outcome.verdict.model.expect("SAT verdict carries a model");
            for (v, value) in tau.iter() {
                model.set(v, value);
            }
            for v in f.variables() {
                if model.get(v).is_none() {
                    model.set(v, false);
                }
            }
            return Ok(Verdict {
                status: Status::Sat,
                model: Some(model),
                refutation: None,
            });
        }
    }
    Ok(Verdict {
        status: Status::Unsat,
        model: None,
        refutation: None,
    })
}
