//! Deterministic constructors for the formula families, the worked
//! six-variable example, and the reduction gadgets (DPS membership
//! hardness, strong-backdoor hardness via hitting sets, and the
//! partitioned-clique gadget), plus a seeded random-formula generator
//! for corpus construction.
//!
//! Variable naming is fixed so tests can address gadget variables
//! symbolically: `y3`, `z3`, `c2`, `b`, `b'`, `b*`, `h2^1`, `v2^3`,
//! `z1^3`.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::formula::{Clause, Formula, Literal, Variable};
use crate::oracle::SetFamily;
use crate::Result;

/// Upper bound on `n` for the families with 2^n clauses.
const EXP_FAMILY_MAX_N: usize = 12;

/// The four comparison families: `fa` (all clauses on n variables),
/// `fs` (two overlapping positive clauses), `fc` (an implication cycle),
/// `fac` (y-cycle literals combined with every clause on n variables).
pub fn gen_family(name: &str, n: usize) -> Result<Formula> {
    match name {
        "fa" => gen_fa(n),
        "fs" => gen_fs(n),
        "fc" => gen_fc(n),
        "fac" => gen_fac(n),
        other => Err(Error::InvalidInput(format!("unknown family {other:?}"))),
    }
}

fn x_vars(f: &mut Formula, n: usize) -> Vec<Variable> {
    (1..=n)
        .map(|i| f.add_var(Some(&format!("x{i}"))).expect("fresh names"))
        .collect()
}

/// All 2^n clauses on x_1..x_n, enumerated by binary counting over
/// polarities with x_1 as the least significant bit.
fn all_clauses(xs: &[Variable]) -> Vec<Clause> {
    let n = xs.len();
    (0..(1u32 << n))
        .map(|pattern| {
            Clause::new(xs.iter().enumerate().map(|(i, &v)| Literal {
                var: v,
                negated: pattern >> i & 1 == 1,
            }))
            .expect("distinct variables cannot clash")
        })
        .collect()
}

fn gen_fa(n: usize) -> Result<Formula> {
    if n < 1 || n > EXP_FAMILY_MAX_N {
        return Err(Error::OutOfRange(format!(
            "fa requires 1 <= n <= {EXP_FAMILY_MAX_N}, got {n}"
        )));
    }
    let mut f = Formula::new();
    let xs = x_vars(&mut f, n);
    for c in all_clauses(&xs) {
        f.insert_clause(c);
    }
    Ok(f)
}

fn gen_fs(n: usize) -> Result<Formula> {
    if n < 1 {
        return Err(Error::OutOfRange(format!("fs requires n >= 1, got {n}")));
    }
    let mut f = Formula::new();
    let xs = x_vars(&mut f, n);
    let mid = n.div_ceil(2);
    f.insert_clause(Clause::new(xs[..mid].iter().map(|&v| Literal::positive(v))).unwrap());
    f.insert_clause(Clause::new(xs[mid - 1..].iter().map(|&v| Literal::positive(v))).unwrap());
    Ok(f)
}

fn gen_fc(n: usize) -> Result<Formula> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("fc requires n >= 3, got {n}")));
    }
    let mut f = Formula::new();
    let xs = x_vars(&mut f, n);
    for i in 0..n {
        f.insert_clause(
            Clause::new([Literal::positive(xs[i]), Literal::negative(xs[(i + 1) % n])]).unwrap(),
        );
    }
    Ok(f)
}

fn gen_fac(n: usize) -> Result<Formula> {
    if n < 3 || n > EXP_FAMILY_MAX_N {
        return Err(Error::OutOfRange(format!(
            "fac requires 3 <= n <= {EXP_FAMILY_MAX_N}, got {n}"
        )));
    }
    let mut f = Formula::new();
    let xs = x_vars(&mut f, n);
    let m = 1usize << n;
    let ys: Vec<Variable> = (1..=m)
        .map(|j| f.add_var(Some(&format!("y{j}"))).expect("fresh names"))
        .collect();
    let cs = all_clauses(&xs);
    // {y_{j-1}, !y_j} + C_j around the cycle, and {y_j, y_{j+1}} + C_j
    // around the cycle (1-based j, wrapping).
    for j in 0..m {
        let prev = (j + m - 1) % m;
        let mut lits: Vec<Literal> =
            vec![Literal::positive(ys[prev]), Literal::negative(ys[j])];
        lits.extend(cs[j].literals());
        f.insert_clause(Clause::new(lits).unwrap());

        let next = (j + 1) % m;
        let mut lits: Vec<Literal> = vec![Literal::positive(ys[j]), Literal::positive(ys[next])];
        lits.extend(cs[j].literals());
        f.insert_clause(Clause::new(lits).unwrap());
    }
    Ok(f)
}

/// The 13-clause example formula over y, z, b, b', b*, c that admits a
/// DP-simplicial elimination ordering but is not β-acyclic.
pub fn fixture_example() -> Formula {
    let mut f = Formula::new();
    let y = f.add_var(Some("y")).unwrap();
    let b = f.add_var(Some("b")).unwrap();
    let bp = f.add_var(Some("b'")).unwrap();
    let bs = f.add_var(Some("b*")).unwrap();
    let c = f.add_var(Some("c")).unwrap();
    let z = f.add_var(Some("z")).unwrap();
    let p = Literal::positive;
    let n = Literal::negative;
    let clauses: Vec<Vec<Literal>> = vec![
        vec![p(y), p(b), p(bs), p(c)],
        vec![p(y), n(b)],
        vec![p(y), n(b), p(bp), p(z)],
        vec![n(y), p(b), p(bp), n(c)],
        vec![n(y), n(b)],
        vec![n(y), n(b), p(bs), n(z)],
        vec![n(b), p(bp)],
        vec![n(b), p(z)],
        vec![n(b), n(z)],
        vec![p(bp), p(bs), p(c)],
        vec![p(bp), p(bs), n(c)],
        vec![p(bp), n(bs)],
        vec![n(bp), p(bs)],
    ];
    for lits in clauses {
        f.insert_clause(Clause::new(lits).unwrap());
    }
    debug_assert_eq!(f.len(), 13);
    f
}

/// The three-clause family showing the strong/deletion backdoor gap:
/// a smallest strong backdoor has size 1 for every p, while a smallest
/// deletion backdoor needs at least p variables.
pub fn fixture_backdoor_gap(p: usize) -> Result<Formula> {
    if p < 1 {
        return Err(Error::OutOfRange(format!("p must be >= 1, got {p}")));
    }
    let mut f = Formula::new();
    let xs: Vec<Variable> = (1..=p)
        .map(|i| f.add_var(Some(&format!("x{i}"))).unwrap())
        .collect();
    let ys: Vec<Variable> = (1..=p)
        .map(|i| f.add_var(Some(&format!("y{i}"))).unwrap())
        .collect();
    let zs: Vec<Variable> = (1..=p)
        .map(|i| f.add_var(Some(&format!("z{i}"))).unwrap())
        .collect();
    let p1 = Literal::positive;
    let n1 = Literal::negative;
    f.insert_clause(
        Clause::new(xs.iter().map(|&v| p1(v)).chain(ys.iter().map(|&v| p1(v)))).unwrap(),
    );
    f.insert_clause(
        Clause::new(ys.iter().map(|&v| n1(v)).chain(zs.iter().map(|&v| p1(v)))).unwrap(),
    );
    f.insert_clause(
        Clause::new(xs.iter().map(|&v| p1(v)).chain(zs.iter().map(|&v| p1(v)))).unwrap(),
    );
    Ok(f)
}

/// The DPS-membership hardness gadget: builds from F (with n variables
/// and m clauses) a formula F' with 2n+m+3 variables and 6n+4m+3 clauses
/// such that F is satisfiable iff F' admits a DP-simplicial elimination
/// ordering — provided every clause of F has at least two literals. A
/// unit clause C_j makes its two wide clauses resolve on the lone
/// mapped variable into a clause covered by neither parent, which pins
/// F' outside the class regardless of satisfiability.
pub fn gen_dps_gadget(f: &Formula) -> Result<Formula> {
    if f.is_empty() {
        return Err(Error::InvalidInput("gadget input must be nonempty".into()));
    }
    if f.has_empty_clause() {
        return Err(Error::InvalidInput(
            "gadget input must not contain the empty clause".into(),
        ));
    }
    let xs: Vec<Variable> = f.variables().into_iter().collect();
    let clauses: Vec<&Clause> = f.clauses().collect();
    let n = xs.len();
    let m = clauses.len();

    let mut g = Formula::new();
    let ys: Vec<Variable> = (1..=n)
        .map(|i| g.add_var(Some(&format!("y{i}"))).unwrap())
        .collect();
    let zs: Vec<Variable> = (1..=n)
        .map(|i| g.add_var(Some(&format!("z{i}"))).unwrap())
        .collect();
    let cs: Vec<Variable> = (1..=m)
        .map(|j| g.add_var(Some(&format!("c{j}"))).unwrap())
        .collect();
    let b = g.add_var(Some("b")).unwrap();
    let bp = g.add_var(Some("b'")).unwrap();
    let bs = g.add_var(Some("b*")).unwrap();

    let p = Literal::positive;
    let neg = Literal::negative;
    let x_index = |v: Variable| xs.binary_search(&v).expect("var of F");

    // D_j: positive x_i becomes y_i, negative x_i becomes z_i.
    let d_clause = |c: &Clause| -> Vec<Literal> {
        c.literals()
            .iter()
            .map(|l| {
                let i = x_index(l.var);
                if l.negated {
                    p(zs[i])
                } else {
                    p(ys[i])
                }
            })
            .collect()
    };

    for i in 0..n {
        // by- and bz-clauses
        g.insert_clause(Clause::new([p(ys[i]), neg(b)]).unwrap());
        g.insert_clause(Clause::new([neg(ys[i]), neg(b)]).unwrap());
        g.insert_clause(Clause::new([p(zs[i]), neg(b)]).unwrap());
        g.insert_clause(Clause::new([neg(zs[i]), neg(b)]).unwrap());
        // byz-clauses
        g.insert_clause(Clause::new([p(ys[i]), p(zs[i]), neg(b), p(bp)]).unwrap());
        g.insert_clause(Clause::new([neg(ys[i]), neg(zs[i]), neg(b), p(bs)]).unwrap());
    }
    for j in 0..m {
        // bc-clauses
        g.insert_clause(Clause::new([p(cs[j]), p(bp), p(bs)]).unwrap());
        g.insert_clause(Clause::new([neg(cs[j]), p(bp), p(bs)]).unwrap());
        // bcD-clause pair
        let others: Vec<Literal> = (0..m).filter(|k| *k != j).map(|k| neg(cs[k])).collect();
        let d = d_clause(clauses[j]);
        let mut e1: Vec<Literal> = d.clone();
        e1.extend([p(b), p(bs), p(cs[j])]);
        e1.extend(others.iter().copied());
        g.insert_clause(Clause::new(e1).unwrap());
        let mut e2: Vec<Literal> = d.iter().map(|l| l.complement()).collect();
        e2.extend([p(b), p(bp), p(cs[j])]);
        e2.extend(others);
        g.insert_clause(Clause::new(e2).unwrap());
    }
    // b-clauses
    g.insert_clause(Clause::new([neg(b), p(bp)]).unwrap());
    g.insert_clause(Clause::new([neg(bp), p(bs)]).unwrap());
    g.insert_clause(Clause::new([p(bp), neg(bs)]).unwrap());

    debug_assert_eq!(g.len(), 6 * n + 4 * m + 3);
    Ok(g)
}

/// The constructive DP-simplicial elimination ordering for the gadget of
/// a satisfiable F: f(x_1)..f(x_n), b, c_1..c_m, b', b*, g(x_1)..g(x_n),
/// where f maps x_i to y_i when the model sets it to 1 and to z_i
/// otherwise, and g is the opposite.
pub fn dps_gadget_witness(
    f: &Formula,
    gadget: &Formula,
    model: &crate::formula::Assignment,
) -> Vec<Variable> {
    let xs: Vec<Variable> = f.variables().into_iter().collect();
    let m = f.len();
    let mut order = Vec::new();
    let by_name = |name: &str| gadget.var_by_name(name).expect("gadget variable");
    for (i, x) in xs.iter().enumerate() {
        let value = model.get(*x).unwrap_or(false);
        order.push(by_name(&format!("{}{}", if value { "y" } else { "z" }, i + 1)));
    }
    order.push(by_name("b"));
    for j in 1..=m {
        order.push(by_name(&format!("c{j}")));
    }
    order.push(by_name("b'"));
    order.push(by_name("b*"));
    for (i, x) in xs.iter().enumerate() {
        let value = model.get(*x).unwrap_or(false);
        order.push(by_name(&format!("{}{}", if value { "z" } else { "y" }, i + 1)));
    }
    order
}

/// The hitting-set-to-strong-backdoor gadget: for each member set S_i,
/// three clauses C_i = {h_i^1, h_i^2}, C_i^1 = {h_i^1} + positives over
/// S_i + negatives over the rest of the universe, and C_i^2 = {h_i^2} +
/// negatives over the whole universe.
pub fn gen_backdoor_gadget(family: &SetFamily) -> Result<Formula> {
    if family.sets.iter().any(|s| s.is_empty()) {
        return Err(Error::InvalidInput("family members must be non-empty".into()));
    }
    let mut f = Formula::new();
    let universe: Vec<u32> = family.universe.iter().copied().collect();
    let xs: Vec<Variable> = universe
        .iter()
        .map(|s| f.add_var(Some(&format!("x{s}"))).unwrap())
        .collect();
    let p = Literal::positive;
    let n = Literal::negative;
    for (i, set) in family.sets.iter().enumerate() {
        let h1 = f.add_var(Some(&format!("h{}^1", i + 1))).unwrap();
        let h2 = f.add_var(Some(&format!("h{}^2", i + 1))).unwrap();
        f.insert_clause(Clause::new([p(h1), p(h2)]).unwrap());
        let c1 = std::iter::once(p(h1)).chain(universe.iter().zip(&xs).map(|(s, &x)| {
            if set.contains(s) {
                p(x)
            } else {
                n(x)
            }
        }));
        f.insert_clause(Clause::new(c1).unwrap());
        let c2 = std::iter::once(p(h2)).chain(xs.iter().map(|&x| n(x)));
        f.insert_clause(Clause::new(c2).unwrap());
    }
    Ok(f)
}

/// A balanced k-partite graph: classes 1..k each of size n, edges only
/// between distinct classes. Vertices are addressed as (class, index),
/// both 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KPartiteGraph {
    pub k: usize,
    pub n: usize,
    edges: BTreeSet<((usize, usize), (usize, usize))>,
}

impl KPartiteGraph {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::BadK);
        }
        if n < 1 {
            return Err(Error::NotBalanced);
        }
        Ok(KPartiteGraph {
            k,
            n,
            edges: BTreeSet::new(),
        })
    }

    fn check_vertex(&self, (class, idx): (usize, usize)) -> Result<()> {
        if class < 1 || class > self.k || idx < 1 || idx > self.n {
            return Err(Error::InvalidInput(format!(
                "vertex ({class},{idx}) out of range for k={}, n={}",
                self.k, self.n
            )));
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: (usize, usize), v: (usize, usize)) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u.0 == v.0 {
            return Err(Error::InvalidInput("no intra-class edges".into()));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn has_edge(&self, u: (usize, usize), v: (usize, usize)) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn edges(&self) -> impl Iterator<Item = &((usize, usize), (usize, usize))> {
        self.edges.iter()
    }

    /// Brute-force partitioned-clique existence over the n^k choices of
    /// one vertex per class. Exponential; test oracle only.
    pub fn has_partitioned_clique(&self) -> bool {
        let mut choice = vec![1usize; self.k];
        loop {
            let ok = (1..=self.k).all(|i| {
                ((i + 1)..=self.k).all(|j| self.has_edge((i, choice[i - 1]), (j, choice[j - 1])))
            });
            if ok {
                return true;
            }
            // odometer increment
            let mut pos = 0;
            loop {
                if pos == self.k {
                    return false;
                }
                if choice[pos] < self.n {
                    choice[pos] += 1;
                    break;
                }
                choice[pos] = 1;
                pos += 1;
            }
        }
    }
}

/// The five-clause block with exactly the three models 000, 101, 110
/// over (z, x1, x2): z is true exactly when one of x1, x2 is.
fn selection_block(f: &mut Formula, z: Variable, x1: Variable, x2: Variable) {
    let p = Literal::positive;
    let n = Literal::negative;
    f.insert_clause(Clause::new([p(z), p(x1), n(x2)]).unwrap());
    f.insert_clause(Clause::new([p(z), n(x1), p(x2)]).unwrap());
    f.insert_clause(Clause::new([p(z), n(x1), n(x2)]).unwrap());
    f.insert_clause(Clause::new([n(z), p(x1), p(x2)]).unwrap());
    f.insert_clause(Clause::new([n(z), n(x1), n(x2)]).unwrap());
}

/// The standalone selection block, exposed for its model-counting tests.
pub fn selection_block_formula() -> Formula {
    let mut f = Formula::new();
    let z = f.add_var(Some("z")).unwrap();
    let x1 = f.add_var(Some("x1")).unwrap();
    let x2 = f.add_var(Some("x2")).unwrap();
    selection_block(&mut f, z, x1, x2);
    f
}

/// F^=1(x_1..x_m; z_1..z_{m-1}): chained selection blocks plus the final
/// unit clause, whose models set exactly one x variable to true. The
/// degenerate m=1 case is the single unit clause {x_1}.
fn exactly_one(f: &mut Formula, xs: &[Variable], zs: &[Variable]) {
    let m = xs.len();
    assert_eq!(zs.len(), m.saturating_sub(1));
    if m == 1 {
        f.insert_clause(Clause::new([Literal::positive(xs[0])]).unwrap());
        return;
    }
    selection_block(f, zs[0], xs[0], xs[1]);
    for i in 2..m {
        selection_block(f, zs[i - 1], zs[i - 2], xs[i]);
    }
    f.insert_clause(Clause::new([Literal::positive(zs[m - 2])]).unwrap());
}

/// The partitioned-clique gadget: one clause per cross-class non-edge
/// forbidding the pair (given everyone else in those classes false),
/// plus a selection gadget per class forcing exactly one chosen vertex.
pub fn gen_clique_gadget(g: &KPartiteGraph) -> Result<Formula> {
    if g.k < 2 {
        return Err(Error::BadK);
    }
    let mut f = Formula::new();
    let vertex: Vec<Vec<Variable>> = (1..=g.k)
        .map(|i| {
            (1..=g.n)
                .map(|j| f.add_var(Some(&format!("v{j}^{i}"))).unwrap())
                .collect()
        })
        .collect();
    let selector: Vec<Vec<Variable>> = (1..=g.k)
        .map(|i| {
            (1..g.n)
                .map(|j| f.add_var(Some(&format!("z{j}^{i}"))).unwrap())
                .collect()
        })
        .collect();

    // F_0: clauses over non-adjacent cross-class pairs.
    for i in 1..=g.k {
        for ip in (i + 1)..=g.k {
            for j in 1..=g.n {
                for jp in 1..=g.n {
                    if g.has_edge((i, j), (ip, jp)) {
                        continue;
                    }
                    let mut lits = vec![
                        Literal::negative(vertex[i - 1][j - 1]),
                        Literal::negative(vertex[ip - 1][jp - 1]),
                    ];
                    for (cls, idx) in [(i, j), (ip, jp)] {
                        for other in 1..=g.n {
                            if other != idx {
                                lits.push(Literal::positive(vertex[cls - 1][other - 1]));
                            }
                        }
                    }
                    f.insert_clause(Clause::new(lits).unwrap());
                }
            }
        }
    }
    // F_1..F_k: one selection gadget per class.
    for i in 0..g.k {
        exactly_one(&mut f, &vertex[i], &selector[i]);
    }
    Ok(f)
}

/// Parameters for the seeded random formula generator.
#[derive(Debug, Clone, Copy)]
pub struct RandomProfile {
    pub vars: usize,
    pub clauses: usize,
    pub width: usize,
    pub seed: u64,
}

/// Reproducible pseudo-random formulas, tautology-free by construction.
/// Clause count may come out below `clauses` because duplicates collapse.
pub fn gen_random(profile: &RandomProfile) -> Formula {
    let mut f = Formula::new();
    if profile.vars == 0 {
        return f;
    }
    let vars = f.add_anonymous_vars(profile.vars);
    let mut rng = ChaCha8Rng::seed_from_u64(profile.seed);
    let width = profile.width.clamp(1, profile.vars);
    for _ in 0..profile.clauses {
        let size = rng.gen_range(1..=width);
        let chosen: Vec<Variable> = vars
            .choose_multiple(&mut rng, size)
            .copied()
            .collect();
        let clause = Clause::new(chosen.into_iter().map(|v| Literal {
            var: v,
            negated: rng.gen_bool(0.5),
        }))
        .expect("distinct variables cannot clash");
        f.insert_clause(clause);
    }
    f
}
