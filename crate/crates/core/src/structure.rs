//! Structural views of formulas: hypergraphs and incidence graphs,
//! GYO reduction for α-acyclicity, weakly simplicial vertices, chordal
//! bipartite recognition, and weakly simplicial elimination orderings
//! (which exist exactly for the β-acyclic formulas).

use std::collections::{BTreeMap, BTreeSet};

use crate::formula::{Formula, Variable};

/// A hypergraph: a vertex set and a deduplicated set of hyperedges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    pub vertices: BTreeSet<Variable>,
    pub edges: BTreeSet<BTreeSet<Variable>>,
}

impl Hypergraph {
    pub fn new(vertices: BTreeSet<Variable>, edges: BTreeSet<BTreeSet<Variable>>) -> Self {
        for e in &edges {
            assert!(e.is_subset(&vertices), "hyperedge not within vertex set");
        }
        Hypergraph { vertices, edges }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }
}

/// H(F): vertices are var(F), hyperedges are the clause variable sets.
/// Clauses with equal variable sets map to a single hyperedge.
pub fn build_hypergraph(f: &Formula) -> Hypergraph {
    let edges: BTreeSet<BTreeSet<Variable>> = f.clauses().map(|c| c.variables()).collect();
    Hypergraph {
        vertices: f.variables(),
        edges,
    }
}

/// GYO reduction: true iff repeatedly removing hyperedges that are empty
/// or contained in other hyperedges (rule 1) and vertices in at most one
/// hyperedge (rule 2) empties the hypergraph.
pub fn is_alpha_acyclic(h: &Hypergraph) -> bool {
    let mut vertices = h.vertices.clone();
    let mut edges = h.edges.clone();
    loop {
        let mut changed = false;

        // Rule 1. Set semantics already collapsed equal edges, so
        // containment here is proper.
        let removable: Vec<BTreeSet<Variable>> = edges
            .iter()
            .filter(|e| {
                e.is_empty() || edges.iter().any(|other| *e != other && e.is_subset(other))
            })
            .cloned()
            .collect();
        for e in removable {
            edges.remove(&e);
            changed = true;
        }

        // Rule 2.
        let rare: Vec<Variable> = vertices
            .iter()
            .copied()
            .filter(|v| edges.iter().filter(|e| e.contains(v)).count() <= 1)
            .collect();
        if !rare.is_empty() {
            let rare_set: BTreeSet<Variable> = rare.iter().copied().collect();
            for v in &rare {
                vertices.remove(v);
            }
            edges = edges
                .into_iter()
                .map(|e| e.difference(&rare_set).copied().collect())
                .collect();
            changed = true;
        }

        if vertices.is_empty() && edges.is_empty() {
            return true;
        }
        if !changed {
            return false;
        }
    }
}

/// The bipartite incidence graph I(F): variable vertices on one side,
/// clause vertices on the other, adjacent iff the variable occurs in
/// the clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceGraph {
    left: Vec<Variable>,
    /// Each right vertex as its set of left-neighbor indices.
    right: Vec<BTreeSet<usize>>,
}

impl IncidenceGraph {
    /// Builds a bipartite graph directly from its right-side adjacency.
    pub fn from_parts(left_count: usize, right: Vec<BTreeSet<usize>>) -> Self {
        for adj in &right {
            for &l in adj {
                assert!(l < left_count, "adjacency out of range");
            }
        }
        IncidenceGraph {
            left: (0..left_count).map(|i| Variable(i as u32)).collect(),
            right,
        }
    }

    pub fn left_count(&self) -> usize {
        self.left.len()
    }

    pub fn right_count(&self) -> usize {
        self.right.len()
    }

    pub fn left_vertices(&self) -> &[Variable] {
        &self.left
    }

    pub fn right_neighbors(&self, i: usize) -> &BTreeSet<usize> {
        &self.right[i]
    }

    pub fn degree_of_left(&self, i: usize) -> usize {
        self.right.iter().filter(|adj| adj.contains(&i)).count()
    }
}

/// I(F): one clause-side vertex per clause (duplicates already collapsed
/// in the formula), one variable-side vertex per occurring variable.
pub fn build_incidence(f: &Formula) -> IncidenceGraph {
    let vars: Vec<Variable> = f.variables().into_iter().collect();
    let index: BTreeMap<Variable, usize> = vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let right: Vec<BTreeSet<usize>> = f
        .clauses()
        .map(|c| c.variables().iter().map(|v| index[v]).collect())
        .collect();
    IncidenceGraph { left: vars, right }
}

/// I(H): same construction from hyperedges instead of clauses.
pub fn incidence_of_hypergraph(h: &Hypergraph) -> IncidenceGraph {
    let vars: Vec<Variable> = h.vertices.iter().copied().collect();
    let index: BTreeMap<Variable, usize> = vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let right: Vec<BTreeSet<usize>> = h
        .edges
        .iter()
        .map(|e| e.iter().map(|v| index[v]).collect())
        .collect();
    IncidenceGraph { left: vars, right }
}

/// A sequence of distinct variables, paired with a formula by context.
pub type EliminationOrdering = Vec<Variable>;

fn is_chain(sets: &[&BTreeSet<Variable>]) -> bool {
    for i in 0..sets.len() {
        for j in (i + 1)..sets.len() {
            if !sets[i].is_subset(sets[j]) && !sets[j].is_subset(sets[i]) {
                return false;
            }
        }
    }
    true
}

/// The weakly simplicial variables of F: those whose incident clause
/// variable sets form a chain under inclusion. Condition (i) of weak
/// simpliciality (independent neighborhood) holds automatically in a
/// bipartite incidence graph.
pub fn weakly_simplicial_variables(f: &Formula) -> BTreeSet<Variable> {
    let varsets: Vec<BTreeSet<Variable>> = f.clauses().map(|c| c.variables()).collect();
    f.variables()
        .into_iter()
        .filter(|x| {
            let incident: Vec<&BTreeSet<Variable>> =
                varsets.iter().filter(|s| s.contains(x)).collect();
            is_chain(&incident)
        })
        .collect()
}

/// Greedy weakly simplicial elimination on the hyperedge view of F.
///
/// Returns an ordering of all of var(F) with each variable weakly
/// simplicial at its deletion point, or `None` when the formula is not
/// β-acyclic. Ties break toward the smallest variable id; variables
/// occurring in no clause are vacuously weakly simplicial and come out
/// first. After a deletion, emptied hyperedges are dropped and newly
/// duplicate hyperedges merge, mirroring the formula's set semantics.
pub fn beta_elimination_ordering(f: &Formula) -> Option<EliminationOrdering> {
    let mut vars: BTreeSet<Variable> = f.variables();
    let mut edges: BTreeSet<BTreeSet<Variable>> = f.clauses().map(|c| c.variables()).collect();
    edges.remove(&BTreeSet::new());
    let mut order = Vec::with_capacity(vars.len());

    while !vars.is_empty() {
        let pick = vars.iter().copied().find(|x| {
            let incident: Vec<&BTreeSet<Variable>> =
                edges.iter().filter(|e| e.contains(x)).collect();
            is_chain(&incident)
        })?;
        vars.remove(&pick);
        order.push(pick);
        edges = edges
            .into_iter()
            .map(|mut e| {
                e.remove(&pick);
                e
            })
            .filter(|e| !e.is_empty())
            .collect();
    }
    Some(order)
}

/// True iff F is β-acyclic, i.e. admits a weakly simplicial elimination
/// ordering.
pub fn is_beta_acyclic(f: &Formula) -> bool {
    beta_elimination_ordering(f).is_some()
}

/// Greedy weakly simplicial vertex elimination on a bipartite graph.
///
/// Sound and complete for chordal bipartite recognition: every induced
/// subgraph of a chordal bipartite graph has a weakly simplicial vertex,
/// and no vertex of an induced cycle on 6 or more vertices can be weakly
/// simplicial, so the greedy reduction empties the graph exactly when no
/// such cycle exists.
pub fn is_chordal_bipartite(g: &IncidenceGraph) -> bool {
    // Mutable adjacency over the surviving vertices of both sides.
    let mut left_alive: BTreeSet<usize> = (0..g.left_count()).collect();
    let mut right_alive: BTreeSet<usize> = (0..g.right_count()).collect();
    let mut right_adj: Vec<BTreeSet<usize>> = g.right.clone();

    let left_adj = |li: usize, right_alive: &BTreeSet<usize>, right_adj: &[BTreeSet<usize>]| {
        right_alive
            .iter()
            .copied()
            .filter(|ri| right_adj[*ri].contains(&li))
            .collect::<BTreeSet<usize>>()
    };

    while !left_alive.is_empty() || !right_alive.is_empty() {
        let mut removed = false;

        // Variables before clause vertices, smallest index first.
        let left_pick = left_alive.iter().copied().find(|&li| {
            let nbrs = left_adj(li, &right_alive, &right_adj);
            let sets: Vec<BTreeSet<usize>> = nbrs
                .iter()
                .map(|&ri| {
                    right_adj[ri]
                        .intersection(&left_alive)
                        .copied()
                        .collect::<BTreeSet<usize>>()
                })
                .collect();
            chain_of_usize_sets(&sets)
        });
        if let Some(li) = left_pick {
            left_alive.remove(&li);
            for ri in &right_alive {
                right_adj[*ri].remove(&li);
            }
            removed = true;
        } else {
            let right_pick = right_alive.iter().copied().find(|&ri| {
                let nbrs: BTreeSet<usize> = right_adj[ri]
                    .intersection(&left_alive)
                    .copied()
                    .collect();
                let sets: Vec<BTreeSet<usize>> = nbrs
                    .iter()
                    .map(|&li| {
                        left_adj(li, &right_alive, &right_adj)
                            .into_iter()
                            .filter(|r| *r != ri)
                            .collect::<BTreeSet<usize>>()
                    })
                    .collect();
                // Neighborhoods are compared within the remaining graph;
                // excluding ri itself uniformly does not affect chains.
                chain_of_usize_sets(&sets)
            });
            if let Some(ri) = right_pick {
                right_alive.remove(&ri);
                removed = true;
            }
        }

        if !removed {
            return false;
        }
    }
    true
}

fn chain_of_usize_sets(sets: &[BTreeSet<usize>]) -> bool {
    for i in 0..sets.len() {
        for j in (i + 1)..sets.len() {
            if !sets[i].is_subset(&sets[j]) && !sets[j].is_subset(&sets[i]) {
                return false;
            }
        }
    }
    true
}
