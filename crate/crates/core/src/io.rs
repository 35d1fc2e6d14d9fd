//! DIMACS CNF and named-json serialization.
//!
//! DIMACS carries dense 1-based ids only; named-json additionally carries
//! the variable names that the gadget fixtures depend on, so it is the
//! canonical fixture format.

use serde_json::{json, Value};

use crate::error::Error;
use crate::formula::{Clause, Formula, Literal, Variable};
use crate::Result;

/// Supported on-disk formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Dimacs,
    NamedJson,
}

/// What to do with a tautological clause line in the input.
///
/// Every definition in this problem domain excludes tautological clauses,
/// so rejecting them is the default; dropping is offered for interop with
/// external CNF files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TautologyPolicy {
    #[default]
    Reject,
    Drop,
}

pub fn parse_formula(text: &str, format: Format) -> Result<Formula> {
    parse_formula_with(text, format, TautologyPolicy::Reject)
}

pub fn parse_formula_with(
    text: &str,
    format: Format,
    taut: TautologyPolicy,
) -> Result<Formula> {
    match format {
        Format::Dimacs => parse_dimacs(text, taut),
        Format::NamedJson => parse_named_json(text, taut),
    }
}

pub fn write_formula(f: &Formula, format: Format) -> String {
    match format {
        Format::Dimacs => write_dimacs(f),
        Format::NamedJson => write_named_json(f),
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_dimacs(text: &str, taut: TautologyPolicy) -> Result<Formula> {
    let mut formula = Formula::new();
    let mut declared_vars: Option<usize> = None;
    let mut current: Vec<Literal> = Vec::new();
    let mut clause_start_line = 0;

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            if declared_vars.is_some() {
                return Err(parse_err(lineno, "duplicate problem line"));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 || fields[1] != "cnf" {
                return Err(parse_err(lineno, "expected `p cnf <nvars> <nclauses>`"));
            }
            let nvars: usize = fields[2]
                .parse()
                .map_err(|_| parse_err(lineno, "bad variable count"))?;
            let _nclauses: usize = fields[3]
                .parse()
                .map_err(|_| parse_err(lineno, "bad clause count"))?;
            formula.add_anonymous_vars(nvars);
            declared_vars = Some(nvars);
            continue;
        }
        let nvars =
            declared_vars.ok_or_else(|| parse_err(lineno, "clause before problem line"))?;
        for tok in line.split_whitespace() {
            let val: i64 = tok
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad literal {tok:?}")))?;
            if val == 0 {
                match Clause::new(current.drain(..)) {
                    Ok(c) => formula.insert_clause(c),
                    Err(Error::Tautological) => match taut {
                        TautologyPolicy::Reject => return Err(Error::Tautological),
                        TautologyPolicy::Drop => current.clear(),
                    },
                    Err(e) => return Err(e),
                }
                clause_start_line = 0;
            } else {
                let idx = val.unsigned_abs() as usize;
                if idx > nvars {
                    return Err(parse_err(
                        lineno,
                        format!("literal {val} exceeds declared variable count {nvars}"),
                    ));
                }
                if clause_start_line == 0 {
                    clause_start_line = lineno;
                }
                let var = Variable((idx - 1) as u32);
                current.push(if val < 0 {
                    Literal::negative(var)
                } else {
                    Literal::positive(var)
                });
            }
        }
    }
    if !current.is_empty() {
        return Err(parse_err(
            clause_start_line,
            "unterminated clause (missing trailing 0)",
        ));
    }
    Ok(formula)
}

fn write_dimacs(f: &Formula) -> String {
    let nvars = f.table_len();
    let mut out = format!("p cnf {} {}\n", nvars, f.len());
    for clause in f.clauses() {
        for lit in clause.literals() {
            let id = lit.var.0 as i64 + 1;
            let signed = if lit.negated { -id } else { id };
            out.push_str(&signed.to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

fn parse_named_json(text: &str, taut: TautologyPolicy) -> Result<Formula> {
    let value: Value = serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| parse_err(0, "top level must be an object"))?;
    let vars = obj
        .get("variables")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err(0, "missing `variables` array"))?;
    let mut formula = Formula::new();
    for (i, name) in vars.iter().enumerate() {
        let name = name
            .as_str()
            .ok_or_else(|| parse_err(0, format!("variable {i} is not a string")))?;
        formula
            .add_var(Some(name))
            .map_err(|e| parse_err(0, e.to_string()))?;
    }
    let clauses = obj
        .get("clauses")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err(0, "missing `clauses` array"))?;
    for (ci, clause) in clauses.iter().enumerate() {
        let lits = clause
            .as_array()
            .ok_or_else(|| parse_err(0, format!("clause {ci} is not an array")))?;
        let mut parsed = Vec::with_capacity(lits.len());
        for lit in lits {
            let var = lit
                .get("var")
                .and_then(Value::as_u64)
                .ok_or_else(|| parse_err(0, format!("clause {ci}: missing `var`")))?;
            let negated = lit
                .get("neg")
                .and_then(Value::as_bool)
                .ok_or_else(|| parse_err(0, format!("clause {ci}: missing `neg`")))?;
            if var as usize >= formula.table_len() {
                return Err(parse_err(0, format!("clause {ci}: variable id {var} out of range")));
            }
            parsed.push(Literal {
                var: Variable(var as u32),
                negated,
            });
        }
        match Clause::new(parsed) {
            Ok(c) => formula.insert_clause(c),
            Err(Error::Tautological) => match taut {
                TautologyPolicy::Reject => return Err(Error::Tautological),
                TautologyPolicy::Drop => {}
            },
            Err(e) => return Err(e),
        }
    }
    Ok(formula)
}

fn write_named_json(f: &Formula) -> String {
    let variables: Vec<String> = (0..f.table_len())
        .map(|i| match f.var_name(Variable(i as u32)) {
            Some(n) => n.to_owned(),
            // DIMACS-born variables have no names; synthesize stable ones.
            None => format!("x{}", i + 1),
        })
        .collect();
    let clauses: Vec<Value> = f
        .clauses()
        .map(|c| {
            Value::Array(
                c.literals()
                    .iter()
                    .map(|l| json!({"var": l.var.0, "neg": l.negated}))
                    .collect(),
            )
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&json!({
        "variables": variables,
        "clauses": clauses,
    }))
    .expect("formula json is always serializable");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_basic_dimacs() {
        let f = parse_formula("p cnf 3 2\n1 -2 0\n2 -3 0\n", Format::Dimacs).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.table_len(), 3);
    }

    #[test]
    fn duplicate_clause_lines_collapse() {
        let f = parse_formula("p cnf 1 2\n1 0\n1 0\n", Format::Dimacs).unwrap();
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn tautological_line_is_an_error() {
        let err = parse_formula("p cnf 1 1\n1 -1 0\n", Format::Dimacs).unwrap_err();
        assert_eq!(err, Error::Tautological);
    }

    #[test]
    fn tautological_line_dropped_on_request() {
        let f = parse_formula_with(
            "p cnf 2 2\n1 -1 0\n2 0\n",
            Format::Dimacs,
            TautologyPolicy::Drop,
        )
        .unwrap();
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn empty_formula_dimacs() {
        assert_eq!(write_dimacs(&Formula::new()), "p cnf 0 0\n");
        let f = parse_formula("p cnf 0 0\n", Format::Dimacs).unwrap();
        assert!(f.is_empty());
    }

    #[test]
    fn unit_formula_dimacs() {
        let f = parse_formula("p cnf 1 1\n1 0\n", Format::Dimacs).unwrap();
        assert_eq!(write_dimacs(&f), "p cnf 1 1\n1 0\n");
    }

    #[test]
    fn comments_and_multiline_clauses() {
        let f = parse_formula("c a comment\np cnf 3 1\n1\n-2 3 0\n", Format::Dimacs).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.clauses().next().unwrap().len(), 3);
    }

    #[test]
    fn unterminated_clause_is_an_error() {
        assert!(matches!(
            parse_formula("p cnf 2 1\n1 2\n", Format::Dimacs),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn literal_out_of_range_is_an_error() {
        assert!(matches!(
            parse_formula("p cnf 1 1\n2 0\n", Format::Dimacs),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn named_json_round_trip_preserves_names() {
        let mut f = Formula::new();
        let y = f.add_var(Some("y")).unwrap();
        let bstar = f.add_var(Some("b*")).unwrap();
        f.insert_clause(
            Clause::new([Literal::positive(y), Literal::negative(bstar)]).unwrap(),
        );
        let text = write_formula(&f, Format::NamedJson);
        let g = parse_formula(&text, Format::NamedJson).unwrap();
        assert_eq!(f, g);
        assert_eq!(g.var_name(y), Some("y"));
        assert_eq!(g.var_name(bstar), Some("b*"));
    }

    #[test]
    fn dimacs_round_trip_is_identity() {
        let text = "p cnf 4 3\n1 -2 0\n2 3 -4 0\n-1 0\n";
        let f = parse_formula(text, Format::Dimacs).unwrap();
        let g = parse_formula(&write_formula(&f, Format::Dimacs), Format::Dimacs).unwrap();
        assert_eq!(f, g);
    }
}
