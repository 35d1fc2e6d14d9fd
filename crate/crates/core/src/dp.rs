//! Resolution primitives and Davis-Putnam variable elimination: the
//! β-acyclic solver, ordered-elimination solving with the DP-simplicial
//! condition (*), the precedence-greedy recognizer, and certificate
//! extraction (models and resolution refutations) from elimination traces.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::formula::{Assignment, Clause, Formula, Literal, Variable};
use crate::structure::{beta_elimination_ordering, EliminationOrdering};
use crate::Result;

/// The x-resolvent of two clauses, if they have one.
///
/// Defined exactly when `C ∩ complement(D)` is a single literal; the
/// result is then `(C ∪ D) \ {x, !x}` and can never be tautological.
pub fn resolve(c: &Clause, d: &Clause) -> Option<Clause> {
    let mut clash: Option<Variable> = None;
    for lit in c.literals() {
        if d.contains(lit.complement()) {
            if clash.is_some() {
                return None; // two clashing variables: no resolvent
            }
            clash = Some(lit.var);
        }
    }
    let x = clash?;
    let lits = c
        .literals()
        .iter()
        .chain(d.literals())
        .copied()
        .filter(|l| l.var != x);
    let resolvent = Clause::new(lits).expect("a unique clash cannot produce a tautology");
    Some(resolvent)
}

/// DP_x(F): add all x-resolvents, remove all clauses in which x occurs.
///
/// Eliminating a variable absent from F returns F unchanged, so callers
/// need not special-case vanished variables.
pub fn dp_eliminate(f: &Formula, x: Variable) -> Formula {
    let (with_x, without_x): (Vec<&Clause>, Vec<&Clause>) =
        f.clauses().partition(|c| c.contains_var(x));
    let mut out = f.same_table();
    for c in without_x {
        out.insert_clause(c.clone());
    }
    let pos: Vec<&&Clause> = with_x
        .iter()
        .filter(|c| c.contains(Literal::positive(x)))
        .collect();
    let neg: Vec<&&Clause> = with_x
        .iter()
        .filter(|c| c.contains(Literal::negative(x)))
        .collect();
    for c in &pos {
        for d in &neg {
            if let Some(r) = resolve(c, d) {
                out.insert_clause(r);
            }
        }
    }
    out
}

/// Condition (*): x is DP-simplicial in F iff every x-resolvent of two
/// clauses of F is a subset of one of its parents (equivalently, equals
/// that parent minus its x-literal).
///
/// A variable with no occurrences satisfies (*) vacuously.
pub fn is_dp_simplicial(f: &Formula, x: Variable) -> bool {
    let pos: Vec<&Clause> = f
        .clauses()
        .filter(|c| c.contains(Literal::positive(x)))
        .collect();
    let neg: Vec<&Clause> = f
        .clauses()
        .filter(|c| c.contains(Literal::negative(x)))
        .collect();
    for c in &pos {
        for d in &neg {
            if let Some(r) = resolve(c, d) {
                let sub_c = r.literals().iter().all(|l| c.contains(*l));
                let sub_d = r.literals().iter().all(|l| d.contains(*l));
                if !sub_c && !sub_d {
                    return false;
                }
            }
        }
    }
    true
}

/// One elimination step: the variable, the clauses removed (those where
/// it occurs), and each added resolvent with its two parent clauses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub var: Variable,
    pub removed: Vec<Clause>,
    /// (resolvent, parent with the positive literal, parent with the
    /// negative literal). Only resolvents new to the formula are listed.
    pub added: Vec<(Clause, Clause, Clause)>,
}

/// A full record of a DP elimination run. Replaying the steps from the
/// initial formula reproduces the final formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationTrace {
    pub initial: Formula,
    pub steps: Vec<TraceStep>,
    pub final_formula: Formula,
}

impl EliminationTrace {
    pub fn eliminated(&self) -> Vec<Variable> {
        self.steps.iter().map(|s| s.var).collect()
    }
}

/// Performs one traced elimination step.
fn eliminate_step(f: &Formula, x: Variable) -> (Formula, TraceStep) {
    let removed: Vec<Clause> = f.clauses().filter(|c| c.contains_var(x)).cloned().collect();
    let mut out = f.same_table();
    for c in f.clauses() {
        if !c.contains_var(x) {
            out.insert_clause(c.clone());
        }
    }
    let mut added = Vec::new();
    for c in removed.iter().filter(|c| c.contains(Literal::positive(x))) {
        for d in removed.iter().filter(|d| d.contains(Literal::negative(x))) {
            if let Some(r) = resolve(c, d) {
                if !out.contains_clause(&r) {
                    added.push((r.clone(), c.clone(), d.clone()));
                    out.insert_clause(r);
                }
            }
        }
    }
    (out, TraceStep { var: x, removed, added })
}

/// SAT or UNSAT.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Sat,
    Unsat,
}

/// One entry of a resolution derivation: an input clause of F or the
/// resolvent of two earlier entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivationSource {
    Input,
    Resolved(usize, usize),
}

/// A resolution derivation; when the last clause is empty it is a
/// refutation. Minimality is not required.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionDerivation {
    pub steps: Vec<(Clause, DerivationSource)>,
}

impl ResolutionDerivation {
    /// Checks every step: inputs must be clauses of F, resolved entries
    /// must be the resolvent of two earlier entries, and the last clause
    /// must be empty.
    pub fn validate(&self, f: &Formula) -> bool {
        for (i, (clause, source)) in self.steps.iter().enumerate() {
            match source {
                DerivationSource::Input => {
                    if !f.contains_clause(clause) {
                        return false;
                    }
                }
                DerivationSource::Resolved(a, b) => {
                    if *a >= i || *b >= i {
                        return false;
                    }
                    match resolve(&self.steps[*a].0, &self.steps[*b].0) {
                        Some(r) if r == *clause => {}
                        _ => return false,
                    }
                }
            }
        }
        matches!(self.steps.last(), Some((c, _)) if c.is_empty())
    }
}

/// The solver output contract: a model when SAT (total over var(F)), an
/// optional resolution refutation when UNSAT.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub model: Option<Assignment>,
    pub refutation: Option<ResolutionDerivation>,
}

/// A verdict plus the trace and ordering that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub verdict: Verdict,
    pub ordering: EliminationOrdering,
    pub trace: EliminationTrace,
}

/// Runs the DP procedure along `order`, checking each step with `check`
/// before eliminating. Stops early once the empty clause appears.
fn run_dp<C>(f: &Formula, order: &[Variable], want_refutation: bool, mut check: C) -> Result<SolveOutcome>
where
    C: FnMut(&Formula, usize, Variable) -> Result<()>,
{
    let mut current = f.clone();
    let mut steps = Vec::new();
    let mut unsat = current.has_empty_clause();

    for (i, &x) in order.iter().enumerate() {
        if unsat {
            break;
        }
        check(&current, i, x)?;
        let before = current.len();
        let (next, step) = eliminate_step(&current, x);
        // |DP_x(F)| <= |F| whenever the step variable satisfies (*);
        // every ordering accepted here does.
        assert!(
            next.len() <= before,
            "clause count increased while eliminating {x}"
        );
        current = next;
        steps.push(step);
        if current.has_empty_clause() {
            unsat = true;
        }
    }

    let trace = EliminationTrace {
        initial: f.clone(),
        steps,
        final_formula: current.clone(),
    };

    let verdict = if unsat {
        Verdict {
            status: Status::Unsat,
            model: None,
            refutation: if want_refutation {
                Some(extract_refutation(f, &trace)?)
            } else {
                None
            },
        }
    } else {
        debug_assert!(current.is_empty());
        Verdict {
            status: Status::Sat,
            model: Some(extract_model(f, &trace)?),
            refutation: None,
        }
    };
    Ok(SolveOutcome {
        verdict,
        ordering: order.to_vec(),
        trace,
    })
}

/// The β-acyclic solver: computes a weakly simplicial elimination
/// ordering, then runs the DP procedure along it. The final formula is
/// empty (SAT) or contains the empty clause (UNSAT).
pub fn solve_bac(f: &Formula, want_refutation: bool) -> Result<SolveOutcome> {
    let order = beta_elimination_ordering(f).ok_or(Error::NotBetaAcyclic)?;
    run_dp(f, &order, want_refutation, |_, _, _| Ok(()))
}

/// Eliminates in the given order, verifying condition (*) before each
/// step. `order` must cover var(F) without repeats.
pub fn solve_with_ordering(
    f: &Formula,
    order: &[Variable],
    want_refutation: bool,
) -> Result<SolveOutcome> {
    let vars = f.variables();
    let mut seen = std::collections::BTreeSet::new();
    for &x in order {
        if !seen.insert(x) {
            return Err(Error::InvalidInput(format!("repeated variable {x} in ordering")));
        }
    }
    if !vars.iter().all(|v| seen.contains(v)) {
        return Err(Error::InvalidInput("ordering does not cover var(F)".into()));
    }
    run_dp(f, order, want_refutation, |current, i, x| {
        if is_dp_simplicial(current, x) {
            Ok(())
        } else {
            Err(Error::NotDpSimplicialAt { step: i, var: x })
        }
    })
}

/// The precedence-greedy recognizer: repeatedly eliminates the first
/// DP-simplicial variable of the current formula under `precedence`.
/// Returns the realized elimination ordering when the variables empty
/// out, `None` otherwise.
///
/// Variables that vanish without being eliminated (all their clauses
/// removed by other steps) are appended at the end in precedence order,
/// so the result always covers var(F).
pub fn recognize_dps_under(f: &Formula, precedence: &[Variable]) -> Option<EliminationOrdering> {
    let original_vars = f.variables();
    debug_assert!(original_vars.iter().all(|v| precedence.contains(v)));
    let mut current = f.clone();
    let mut order = Vec::new();

    loop {
        let vars = current.variables();
        if vars.is_empty() {
            break;
        }
        let pick = precedence
            .iter()
            .copied()
            .filter(|x| vars.contains(x))
            .find(|&x| is_dp_simplicial(&current, x))?;
        let before = current.len();
        current = dp_eliminate(&current, pick);
        assert!(current.len() <= before);
        order.push(pick);
    }
    for &x in precedence {
        if original_vars.contains(&x) && !order.contains(&x) {
            order.push(x);
        }
    }
    Some(order)
}

/// Walks a SAT trace backwards, picking a value for each eliminated
/// variable that satisfies all clauses its step removed. When both
/// values work, 0 is chosen.
pub fn extract_model(f: &Formula, trace: &EliminationTrace) -> Result<Assignment> {
    if !trace.final_formula.is_empty() {
        return Err(Error::InvalidTrace(
            "model extraction requires a trace ending at the empty formula".into(),
        ));
    }
    let mut tau = Assignment::new();
    for step in trace.steps.iter().rev() {
        let works = |value: bool| {
            let mut probe = tau.clone();
            probe.set(step.var, value);
            step.removed.iter().all(|c| c.is_satisfied_by(&probe))
        };
        let value = if works(false) {
            false
        } else {
            debug_assert!(works(true), "DP model extension must succeed");
            true
        };
        tau.set(step.var, value);
    }
    debug_assert!(f.is_satisfied_by(&tau));
    Ok(tau)
}

/// Unwinds parent references from the empty clause back to input
/// clauses, producing a valid (not necessarily minimal) refutation.
pub fn extract_refutation(f: &Formula, trace: &EliminationTrace) -> Result<ResolutionDerivation> {
    if f.has_empty_clause() {
        return Ok(ResolutionDerivation {
            steps: vec![(Clause::empty(), DerivationSource::Input)],
        });
    }
    if !trace.final_formula.has_empty_clause() {
        return Err(Error::InvalidTrace(
            "refutation extraction requires the empty clause in the final formula".into(),
        ));
    }

    // First introduction of each resolvent; inputs take priority.
    let mut parents: BTreeMap<Clause, (Clause, Clause)> = BTreeMap::new();
    for step in &trace.steps {
        for (r, p1, p2) in &step.added {
            if !f.contains_clause(r) && !parents.contains_key(r) {
                parents.insert(r.clone(), (p1.clone(), p2.clone()));
            }
        }
    }

    let mut steps: Vec<(Clause, DerivationSource)> = Vec::new();
    let mut index: BTreeMap<Clause, usize> = BTreeMap::new();

    // Iterative postorder emission from the empty clause.
    fn emit(
        clause: &Clause,
        f: &Formula,
        parents: &BTreeMap<Clause, (Clause, Clause)>,
        steps: &mut Vec<(Clause, DerivationSource)>,
        index: &mut BTreeMap<Clause, usize>,
    ) -> Result<usize> {
        if let Some(i) = index.get(clause) {
            return Ok(*i);
        }
        let source = if f.contains_clause(clause) {
            DerivationSource::Input
        } else {
            let (p1, p2) = parents.get(clause).ok_or_else(|| {
                Error::InvalidTrace("resolvent with no recorded parents".into())
            })?;
            let a = emit(p1, f, parents, steps, index)?;
            let b = emit(p2, f, parents, steps, index)?;
            DerivationSource::Resolved(a, b)
        };
        steps.push((clause.clone(), source));
        let i = steps.len() - 1;
        index.insert(clause.clone(), i);
        Ok(i)
    }

    emit(&Clause::empty(), f, &parents, &mut steps, &mut index)?;
    Ok(ResolutionDerivation { steps })
}
