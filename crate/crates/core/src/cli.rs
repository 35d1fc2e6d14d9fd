//! Command-line front end: solving, recognition, generation, and
//! backdoor search over DIMACS or named-json inputs.
//!
//! Every invocation that produces a report writes a single JSON object
//! to stdout; diagnostics go to stderr. Exit codes follow the SAT-solver
//! convention: 10 SAT, 20 UNSAT, 0 other success, 1 usage error, 2
//! parse error, 3 class violation, 4 resource guard tripped.
//!
//! `generate` without `--output` writes the raw formula text to stdout
//! instead of a report, so it composes with the other subcommands.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::backdoor::{find_backdoor, solve_via_backdoor, BackdoorKind};
use crate::dp::{
    recognize_dps_under, solve_bac, solve_with_ordering, DerivationSource, SolveOutcome, Status,
    Verdict,
};
use crate::error::Error;
use crate::formula::{Assignment, Formula, Variable};
use crate::generators::{
    fixture_example, gen_backdoor_gadget, gen_clique_gadget, gen_dps_gadget, gen_family,
    gen_random, KPartiteGraph, RandomProfile,
};
use crate::io::{parse_formula_with, write_formula, Format, TautologyPolicy};
use crate::oracle::{oracle_sat, SetFamily};
use crate::structure::{beta_elimination_ordering, build_hypergraph, is_alpha_acyclic};
use crate::Result;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CLASS: i32 = 3;
pub const EXIT_GUARD: i32 = 4;
pub const EXIT_SAT: i32 = 10;
pub const EXIT_UNSAT: i32 = 20;

#[derive(Parser)]
#[command(name = "bacsat", about = "SAT solving for acyclic and almost acyclic CNF formulas")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide satisfiability of a CNF file.
    Solve {
        input: PathBuf,
        /// bac | order:<file> | dps-prec:<file> | backdoor:<vars> | oracle
        #[arg(long, default_value = "bac")]
        method: String,
        /// Emit a model (SAT) or a checked resolution refutation (UNSAT).
        #[arg(long)]
        certify: bool,
        /// Drop tautological input clauses instead of rejecting them.
        #[arg(long)]
        drop_tautologies: bool,
        /// dimacs | named-json (default: inferred from the extension)
        #[arg(long)]
        format: Option<String>,
    },
    /// Test class membership of a CNF file.
    Recognize {
        input: PathBuf,
        /// alpha | bac | dps-prec
        #[arg(long)]
        class: String,
        /// Precedence file for --class dps-prec (one variable per token).
        #[arg(long)]
        precedence: Option<PathBuf>,
        #[arg(long)]
        drop_tautologies: bool,
        #[arg(long)]
        format: Option<String>,
    },
    /// Emit a formula from one of the built-in constructions.
    Generate {
        /// fa | fs | fc | fac | fixture | dps-gadget | backdoor-gadget |
        /// clique-gadget | random
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: Option<usize>,
        /// Instance file for the gadget families.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        vars: Option<usize>,
        #[arg(long)]
        clauses: Option<usize>,
        #[arg(long)]
        width: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "dimacs")]
        format: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Search for a smallest backdoor into the β-acyclic class.
    Backdoor {
        input: PathBuf,
        /// strong | deletion
        #[arg(long, default_value = "strong")]
        kind: String,
        #[arg(long)]
        max_k: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        drop_tautologies: bool,
        #[arg(long)]
        format: Option<String>,
    },
}

#[derive(Default)]
struct Timings {
    parse: u128,
    recognize: u128,
    eliminate: u128,
    certify: u128,
}

impl Timings {
    fn to_json(&self) -> Value {
        json!({
            "parse": self.parse,
            "recognize": self.recognize,
            "eliminate": self.eliminate,
            "certify": self.certify,
        })
    }
}

fn emit_report(argv: &[String], status: &str, timings: &Timings, result: Value) {
    let report = json!({
        "command": argv,
        "status": status,
        "timings_ms": timings.to_json(),
        "result": result,
    });
    println!("{report}");
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::Tautological => EXIT_PARSE,
        Error::NotBetaAcyclic | Error::NotDpSimplicialAt { .. } | Error::NotABackdoor => EXIT_CLASS,
        Error::TooLarge(_) => EXIT_GUARD,
        _ => EXIT_USAGE,
    }
}

pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders --help/--version as "errors" with exit 0.
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            eprint!("{e}");
            return code;
        }
    };
    let mut timings = Timings::default();
    match dispatch(cli.cmd, &mut timings) {
        Ok((status, result, code)) => {
            if let Some(result) = result {
                emit_report(&argv, &status, &timings, result);
            }
            code
        }
        Err(e) => {
            let code = exit_code_for(&e);
            eprintln!("error: {e}");
            emit_report(&argv, "error", &timings, json!({"error": e.to_string()}));
            code
        }
    }
}

fn dispatch(cmd: Cmd, timings: &mut Timings) -> Result<(String, Option<Value>, i32)> {
    match cmd {
        Cmd::Solve {
            input,
            method,
            certify,
            drop_tautologies,
            format,
        } => {
            let f = load_formula(&input, format.as_deref(), drop_tautologies, timings)?;
            cmd_solve(&f, &method, certify, timings)
        }
        Cmd::Recognize {
            input,
            class,
            precedence,
            drop_tautologies,
            format,
        } => {
            let f = load_formula(&input, format.as_deref(), drop_tautologies, timings)?;
            cmd_recognize(&f, &class, precedence.as_deref(), timings)
        }
        Cmd::Generate {
            family,
            n,
            input,
            vars,
            clauses,
            width,
            seed,
            format,
            output,
        } => cmd_generate(
            &family,
            n,
            input.as_deref(),
            vars,
            clauses,
            width,
            seed,
            &format,
            output.as_deref(),
        ),
        Cmd::Backdoor {
            input,
            kind,
            max_k,
            jobs,
            drop_tautologies,
            format,
        } => {
            let f = load_formula(&input, format.as_deref(), drop_tautologies, timings)?;
            cmd_backdoor(&f, &kind, max_k, jobs, timings)
        }
    }
}

fn parse_format(name: &str) -> Result<Format> {
    match name {
        "dimacs" => Ok(Format::Dimacs),
        "named-json" => Ok(Format::NamedJson),
        other => Err(Error::Usage(format!("unknown format {other:?}"))),
    }
}

fn infer_format(path: &Path) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => Format::NamedJson,
        _ => Format::Dimacs,
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_formula(
    path: &Path,
    format: Option<&str>,
    drop_tautologies: bool,
    timings: &mut Timings,
) -> Result<Formula> {
    let format = match format {
        Some(name) => parse_format(name)?,
        None => infer_format(path),
    };
    let policy = if drop_tautologies {
        TautologyPolicy::Drop
    } else {
        TautologyPolicy::Reject
    };
    let text = read_file(path)?;
    let start = Instant::now();
    let f = parse_formula_with(&text, format, policy)?;
    timings.parse = start.elapsed().as_millis();
    Ok(f)
}

/// A display name for every variable, including anonymous DIMACS ones.
fn display_name(f: &Formula, v: Variable) -> String {
    match f.var_name(v) {
        Some(n) => n.to_owned(),
        None => format!("x{}", v.0 + 1),
    }
}

/// Resolves a user-supplied variable token: a name from the table, or a
/// 1-based variable number.
fn resolve_var(f: &Formula, token: &str) -> Result<Variable> {
    if let Some(v) = f.var_by_name(token) {
        return Ok(v);
    }
    if let Ok(id) = token.parse::<usize>() {
        if id >= 1 && id <= f.table_len() {
            return Ok(Variable((id - 1) as u32));
        }
    }
    Err(Error::Usage(format!("unknown variable {token:?}")))
}

fn read_var_list(f: &Formula, path: &Path) -> Result<Vec<Variable>> {
    read_file(path)?
        .split_whitespace()
        .map(|tok| resolve_var(f, tok))
        .collect()
}

fn model_json(f: &Formula, model: &Assignment) -> Value {
    let mut map = Map::new();
    for (v, value) in model.iter() {
        map.insert(display_name(f, v), Value::Bool(value));
    }
    Value::Object(map)
}

fn verdict_json(f: &Formula, verdict: &Verdict) -> Value {
    let mut result = Map::new();
    result.insert(
        "status".into(),
        Value::String(
            match verdict.status {
                Status::Sat => "sat",
                Status::Unsat => "unsat",
            }
            .into(),
        ),
    );
    if let Some(model) = &verdict.model {
        result.insert("model".into(), model_json(f, model));
    }
    if let Some(refutation) = &verdict.refutation {
        let steps: Vec<Value> = refutation
            .steps
            .iter()
            .map(|(clause, source)| {
                let lits: Vec<Value> = clause
                    .literals()
                    .iter()
                    .map(|l| json!({"var": l.var.0, "neg": l.negated}))
                    .collect();
                let source = match source {
                    DerivationSource::Input => json!("input"),
                    DerivationSource::Resolved(i, j) => json!([i, j]),
                };
                json!({"clause": lits, "source": source})
            })
            .collect();
        result.insert("refutation".into(), Value::Array(steps));
    }
    Value::Object(result)
}

fn ordering_json(f: &Formula, order: &[Variable]) -> Value {
    Value::Array(
        order
            .iter()
            .map(|&v| Value::String(display_name(f, v)))
            .collect(),
    )
}

fn finish_solve(f: &Formula, outcome: SolveOutcome) -> Result<(String, Option<Value>, i32)> {
    let mut result = verdict_json(f, &outcome.verdict);
    result
        .as_object_mut()
        .unwrap()
        .insert("ordering".into(), ordering_json(f, &outcome.ordering));
    let (status, code) = match outcome.verdict.status {
        Status::Sat => ("sat", EXIT_SAT),
        Status::Unsat => ("unsat", EXIT_UNSAT),
    };
    Ok((status.into(), Some(result), code))
}

fn cmd_solve(
    f: &Formula,
    method: &str,
    certify: bool,
    timings: &mut Timings,
) -> Result<(String, Option<Value>, i32)> {
    if let Some(path) = method.strip_prefix("order:") {
        let order = read_var_list(f, Path::new(path))?;
        let start = Instant::now();
        let outcome = solve_with_ordering(f, &order, certify)?;
        timings.eliminate = start.elapsed().as_millis();
        return finish_solve(f, outcome);
    }
    if let Some(path) = method.strip_prefix("dps-prec:") {
        let precedence = read_var_list(f, Path::new(path))?;
        let start = Instant::now();
        let order = recognize_dps_under(f, &precedence).ok_or(Error::NotDpSimplicialAt {
            step: 0,
            var: *precedence.first().unwrap_or(&Variable(0)),
        })?;
        timings.recognize = start.elapsed().as_millis();
        let start = Instant::now();
        let outcome = solve_with_ordering(f, &order, certify)?;
        timings.eliminate = start.elapsed().as_millis();
        return finish_solve(f, outcome);
    }
    if let Some(tokens) = method.strip_prefix("backdoor:") {
        let b: BTreeSet<Variable> = tokens
            .split(',')
            .filter(|t| !t.is_empty())
            .map(|t| resolve_var(f, t))
            .collect::<Result<_>>()?;
        let start = Instant::now();
        let verdict = solve_via_backdoor(f, &b)?;
        timings.eliminate = start.elapsed().as_millis();
        let (status, code) = match verdict.status {
            Status::Sat => ("sat", EXIT_SAT),
            Status::Unsat => ("unsat", EXIT_UNSAT),
        };
        return Ok((status.into(), Some(verdict_json(f, &verdict)), code));
    }
    match method {
        "bac" => {
            let start = Instant::now();
            let outcome = solve_bac(f, certify)?;
            timings.eliminate = start.elapsed().as_millis();
            finish_solve(f, outcome)
        }
        "oracle" => {
            let start = Instant::now();
            let verdict = oracle_sat(f)?;
            timings.eliminate = start.elapsed().as_millis();
            let (status, code) = match verdict.status {
                Status::Sat => ("sat", EXIT_SAT),
                Status::Unsat => ("unsat", EXIT_UNSAT),
            };
            Ok((status.into(), Some(verdict_json(f, &verdict)), code))
        }
        other => Err(Error::Usage(format!("unknown method {other:?}"))),
    }
}

fn cmd_recognize(
    f: &Formula,
    class: &str,
    precedence: Option<&Path>,
    timings: &mut Timings,
) -> Result<(String, Option<Value>, i32)> {
    let start = Instant::now();
    let (member, witness) = match class {
        "alpha" => (is_alpha_acyclic(&build_hypergraph(f)), None),
        "bac" => match beta_elimination_ordering(f) {
            Some(order) => (true, Some(ordering_json(f, &order))),
            None => (false, None),
        },
        "dps-prec" => {
            let path = precedence
                .ok_or_else(|| Error::Usage("--class dps-prec requires --precedence".into()))?;
            let prec = read_var_list(f, path)?;
            match recognize_dps_under(f, &prec) {
                Some(order) => (true, Some(ordering_json(f, &order))),
                None => (false, None),
            }
        }
        other => return Err(Error::Usage(format!("unknown class {other:?}"))),
    };
    timings.recognize = start.elapsed().as_millis();
    let mut result = Map::new();
    result.insert("member".into(), Value::Bool(member));
    if let Some(witness) = witness {
        result.insert("ordering".into(), witness);
    }
    let status = if member { "member" } else { "non-member" };
    Ok((status.into(), Some(Value::Object(result)), EXIT_OK))
}

/// SetFamily instance files: {"universe":[ids],"sets":[[ids]]}.
pub fn parse_set_family(text: &str) -> Result<SetFamily> {
    let bad = |msg: &str| Error::Parse {
        line: 0,
        msg: msg.into(),
    };
    let value: Value =
        serde_json::from_str(text).map_err(|e| bad(&format!("invalid JSON: {e}")))?;
    let ids = |v: &Value, what: &str| -> Result<BTreeSet<u32>> {
        v.as_array()
            .ok_or_else(|| bad(&format!("{what} must be an array")))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .and_then(|n| u32::try_from(n).ok())
                    .ok_or_else(|| bad(&format!("{what} must contain integer ids")))
            })
            .collect()
    };
    let universe = match value.get("universe") {
        Some(v) => ids(v, "universe")?,
        None => BTreeSet::new(),
    };
    let sets = value
        .get("sets")
        .ok_or_else(|| bad("missing `sets`"))?
        .as_array()
        .ok_or_else(|| bad("`sets` must be an array"))?
        .iter()
        .map(|s| ids(s, "set"))
        .collect::<Result<Vec<_>>>()?;
    Ok(SetFamily::new(universe, sets))
}

/// KPartiteGraph instance files:
/// {"k":int,"n":int,"edges":[[classA,indexA,classB,indexB]]}.
pub fn parse_kpartite(text: &str) -> Result<KPartiteGraph> {
    let bad = |msg: &str| Error::Parse {
        line: 0,
        msg: msg.into(),
    };
    let value: Value =
        serde_json::from_str(text).map_err(|e| bad(&format!("invalid JSON: {e}")))?;
    let field = |name: &str| -> Result<usize> {
        value
            .get(name)
            .and_then(Value::as_u64)
            .map(|n| n as usize)
            .ok_or_else(|| bad(&format!("missing integer `{name}`")))
    };
    let mut g = KPartiteGraph::new(field("k")?, field("n")?)?;
    let edges = value
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing `edges` array"))?;
    for (i, e) in edges.iter().enumerate() {
        let nums: Vec<usize> = e
            .as_array()
            .ok_or_else(|| bad(&format!("edge {i} must be an array")))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|n| n as usize)
                    .ok_or_else(|| bad(&format!("edge {i} must contain integers")))
            })
            .collect::<Result<_>>()?;
        if nums.len() != 4 {
            return Err(bad(&format!("edge {i} must have 4 entries")));
        }
        g.add_edge((nums[0], nums[1]), (nums[2], nums[3]))?;
    }
    Ok(g)
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    family: &str,
    n: Option<usize>,
    input: Option<&Path>,
    vars: Option<usize>,
    clauses: Option<usize>,
    width: Option<usize>,
    seed: Option<u64>,
    format: &str,
    output: Option<&Path>,
) -> Result<(String, Option<Value>, i32)> {
    let need_n = || n.ok_or_else(|| Error::Usage(format!("--family {family} requires --n")));
    let need_input = |what: &str| -> Result<String> {
        let path =
            input.ok_or_else(|| Error::Usage(format!("--family {family} requires --input ({what})")))?;
        read_file(path)
    };
    let f = match family {
        "fa" | "fs" | "fc" | "fac" => gen_family(family, need_n()?)?,
        "fixture" => fixture_example(),
        "dps-gadget" => {
            let text = need_input("a formula file")?;
            let path = input.unwrap();
            let inner = parse_formula_with(&text, infer_format(path), TautologyPolicy::Reject)?;
            gen_dps_gadget(&inner)?
        }
        "backdoor-gadget" => gen_backdoor_gadget(&parse_set_family(&need_input("a set family")?)?)?,
        "clique-gadget" => gen_clique_gadget(&parse_kpartite(&need_input("a k-partite graph")?)?)?,
        "random" => {
            let profile = RandomProfile {
                vars: vars.ok_or_else(|| Error::Usage("--family random requires --vars".into()))?,
                clauses: clauses
                    .ok_or_else(|| Error::Usage("--family random requires --clauses".into()))?,
                width: width.ok_or_else(|| Error::Usage("--family random requires --width".into()))?,
                seed: seed.ok_or_else(|| Error::Usage("--family random requires --seed".into()))?,
            };
            gen_random(&profile)
        }
        other => return Err(Error::Usage(format!("unknown family {other:?}"))),
    };
    let text = write_formula(&f, parse_format(format)?);
    match output {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))?;
            let result = json!({
                "path": path.display().to_string(),
                "variables": f.table_len(),
                "clauses": f.len(),
            });
            Ok(("generated".into(), Some(result), EXIT_OK))
        }
        None => {
            print!("{text}");
            Ok(("generated".into(), None, EXIT_OK))
        }
    }
}

fn cmd_backdoor(
    f: &Formula,
    kind: &str,
    max_k: usize,
    jobs: usize,
    timings: &mut Timings,
) -> Result<(String, Option<Value>, i32)> {
    let kind = match kind {
        "strong" => BackdoorKind::Strong,
        "deletion" => BackdoorKind::Deletion,
        other => return Err(Error::Usage(format!("unknown kind {other:?}"))),
    };
    let start = Instant::now();
    let found = find_backdoor(f, max_k, jobs, kind)?;
    timings.recognize = start.elapsed().as_millis();
    let result = match &found {
        Some(b) => json!({
            "found": true,
            "size": b.len(),
            "variables": b.iter().map(|&v| display_name(f, v)).collect::<Vec<_>>(),
        }),
        None => json!({"found": false}),
    };
    let status = if found.is_some() { "found" } else { "not-found" };
    Ok((status.into(), Some(result), EXIT_OK))
}
