//! Variables, literals, clauses and formulas with set semantics, plus
//! partial assignments and the two formula reductions `F[tau]` and `F - X`.
//!
//! Clauses are canonically ordered literal sets; formulas are deduplicated
//! clause sets. All values are immutable after construction: reductions
//! return fresh formulas and never mutate their inputs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::Error;
use crate::Result;

/// A propositional variable, identified by a dense non-negative id.
///
/// Names live in the owning formula's variable table, not here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(pub u32);

impl Variable {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// A variable or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: Variable,
    pub negated: bool,
}

impl Literal {
    pub fn positive(var: Variable) -> Self {
        Literal { var, negated: false }
    }

    pub fn negative(var: Variable) -> Self {
        Literal { var, negated: true }
    }

    pub fn complement(self) -> Self {
        Literal {
            var: self.var,
            negated: !self.negated,
        }
    }
}

/// A non-tautological, duplicate-free set of literals in canonical order
/// (sorted by variable id, a positive literal before a negative one).
///
/// The empty clause is a valid value; it is the unsatisfiable terminal
/// state of the Davis-Putnam procedure.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    /// Builds a canonical clause, collapsing duplicate literals.
    ///
    /// Fails with [`Error::Tautological`] if some variable appears with
    /// both polarities.
    pub fn new<I: IntoIterator<Item = Literal>>(literals: I) -> Result<Self> {
        let set: BTreeSet<Literal> = literals.into_iter().collect();
        let mut vars = BTreeSet::new();
        for lit in &set {
            if !vars.insert(lit.var) {
                return Err(Error::Tautological);
            }
        }
        Ok(Clause {
            literals: set.into_iter().collect(),
        })
    }

    pub fn empty() -> Self {
        Clause { literals: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.literals.binary_search(&lit).is_ok()
    }

    pub fn contains_var(&self, var: Variable) -> bool {
        self.literals.iter().any(|l| l.var == var)
    }

    /// var(C): the set of variables occurring in the clause.
    pub fn variables(&self) -> BTreeSet<Variable> {
        self.literals.iter().map(|l| l.var).collect()
    }

    /// The clause with all literals over `var` deleted. Always canonical.
    pub fn without_var(&self, var: Variable) -> Clause {
        Clause {
            literals: self
                .literals
                .iter()
                .copied()
                .filter(|l| l.var != var)
                .collect(),
        }
    }

    /// True if some literal of the clause is assigned 1 by `tau`.
    pub fn is_satisfied_by(&self, tau: &Assignment) -> bool {
        self.literals
            .iter()
            .any(|l| tau.value(*l) == Some(true))
    }
}

/// A partial truth assignment: a map from variables to {0, 1}.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    map: BTreeMap<Variable, bool>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (Variable, bool)>>(pairs: I) -> Self {
        Assignment {
            map: pairs.into_iter().collect(),
        }
    }

    pub fn set(&mut self, var: Variable, value: bool) {
        self.map.insert(var, value);
    }

    pub fn get(&self, var: Variable) -> Option<bool> {
        self.map.get(&var).copied()
    }

    /// Evaluates a literal; `None` if its variable is outside the domain.
    pub fn value(&self, lit: Literal) -> Option<bool> {
        self.map.get(&lit.var).map(|v| *v != lit.negated)
    }

    /// var(tau): the domain of the assignment.
    pub fn domain(&self) -> BTreeSet<Variable> {
        self.map.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Variable, bool)> + '_ {
        self.map.iter().map(|(v, b)| (*v, *b))
    }

    /// Variables assigned 0.
    pub fn falsified(&self) -> BTreeSet<Variable> {
        self.map
            .iter()
            .filter(|(_, b)| !**b)
            .map(|(v, _)| *v)
            .collect()
    }
}

/// A CNF formula: a deduplicated set of clauses over an interned
/// variable table.
///
/// The table maps dense ids to optional human-readable names; gadget
/// constructions address variables like `h1^1` or `b*` by name, DIMACS
/// interop only needs the ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    names: Vec<Option<String>>,
    clauses: BTreeSet<Clause>,
}

impl Default for Formula {
    fn default() -> Self {
        Formula::new()
    }
}

impl Formula {
    pub fn new() -> Self {
        Formula {
            names: Vec::new(),
            clauses: BTreeSet::new(),
        }
    }

    /// Interns a fresh variable, optionally named. Names must be unique
    /// within the table.
    pub fn add_var(&mut self, name: Option<&str>) -> Result<Variable> {
        if let Some(n) = name {
            if self.names.iter().flatten().any(|existing| existing == n) {
                return Err(Error::InvalidInput(format!(
                    "duplicate variable name {n:?}"
                )));
            }
        }
        let var = Variable(self.names.len() as u32);
        self.names.push(name.map(str::to_owned));
        Ok(var)
    }

    /// Interns `count` anonymous variables and returns them.
    pub fn add_anonymous_vars(&mut self, count: usize) -> Vec<Variable> {
        (0..count)
            .map(|_| self.add_var(None).expect("anonymous names cannot clash"))
            .collect()
    }

    pub fn var_name(&self, var: Variable) -> Option<&str> {
        self.names.get(var.index()).and_then(|n| n.as_deref())
    }

    pub fn var_by_name(&self, name: &str) -> Option<Variable> {
        self.names
            .iter()
            .position(|n| n.as_deref() == Some(name))
            .map(|i| Variable(i as u32))
    }

    /// Number of interned variables (eliminated variables included).
    pub fn table_len(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[Option<String>] {
        &self.names
    }

    /// Adds a clause; inserting an already-present clause is a no-op.
    ///
    /// Panics if the clause references a variable outside the table.
    pub fn insert_clause(&mut self, clause: Clause) {
        for lit in clause.literals() {
            assert!(
                lit.var.index() < self.names.len(),
                "clause references uninterned variable {}",
                lit.var
            );
        }
        self.clauses.insert(clause);
    }

    pub fn contains_clause(&self, clause: &Clause) -> bool {
        self.clauses.contains(clause)
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.contains(&Clause::empty())
    }

    /// Clause count; duplicates never count.
    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn clauses(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter()
    }

    pub fn clause_set(&self) -> &BTreeSet<Clause> {
        &self.clauses
    }

    /// var(F): the variables occurring in some clause.
    pub fn variables(&self) -> BTreeSet<Variable> {
        self.clauses
            .iter()
            .flat_map(|c| c.literals().iter().map(|l| l.var))
            .collect()
    }

    /// A fresh formula with the same variable table and no clauses.
    pub fn same_table(&self) -> Formula {
        Formula {
            names: self.names.clone(),
            clauses: BTreeSet::new(),
        }
    }

    /// F[tau]: drop clauses satisfied by `tau`, delete falsified literals.
    /// Variables outside var(F) in `tau` are ignored.
    pub fn apply_assignment(&self, tau: &Assignment) -> Formula {
        let mut out = self.same_table();
        'clauses: for clause in &self.clauses {
            let mut kept = Vec::new();
            for lit in clause.literals() {
                match tau.value(*lit) {
                    Some(true) => continue 'clauses,
                    Some(false) => {}
                    None => kept.push(*lit),
                }
            }
            out.clauses
                .insert(Clause::new(kept).expect("subset of a clause is a clause"));
        }
        out
    }

    /// F - X: delete every literal over a variable of `X` from every
    /// clause. Duplicate results collapse.
    pub fn remove_variables(&self, xs: &BTreeSet<Variable>) -> Formula {
        let mut out = self.same_table();
        for clause in &self.clauses {
            let kept: Vec<Literal> = clause
                .literals()
                .iter()
                .copied()
                .filter(|l| !xs.contains(&l.var))
                .collect();
            out.clauses
                .insert(Clause::new(kept).expect("subset of a clause is a clause"));
        }
        out
    }

    /// True if `tau` satisfies every clause.
    pub fn is_satisfied_by(&self, tau: &Assignment) -> bool {
        self.clauses.iter().all(|c| c.is_satisfied_by(tau))
    }

    /// Renders a literal using the table name when present, else a
    /// 1-based DIMACS-style id.
    pub fn literal_string(&self, lit: Literal) -> String {
        let name = match self.var_name(lit.var) {
            Some(n) => n.to_owned(),
            None => format!("{}", lit.var.0 + 1),
        };
        if lit.negated {
            format!("-{name}")
        } else {
            name
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, clause) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{{")?;
            for (j, lit) in clause.literals().iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.literal_string(*lit))?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}
