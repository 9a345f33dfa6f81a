//! The aspif intermediate format, restricted to normal programs.
//!
//! Supported statements:
//!
//! * `1 0 n [h] 0 k l1 .. lk` rule with `n ∈ {0,1}` head atoms and a normal
//!   body; negative integers are default-negated atoms. The variant that
//!   spells an empty head as `0 0 0` is accepted as well.
//! * `4 m name c l` symbol table entry naming atom `l` (`c = 1`), or a
//!   shown fact without an atom (`c = 0`).
//! * `5 i 2` external statement; read as the fact for atom `i`, which is
//!   how externally grounded facts are kept from being simplified away.
//! * `0` terminator, which must be the last statement.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::AspifError;
use crate::program::{Atom, AtomTable, GroundProgram, Rule};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AspifWarning {
    /// A body literal refers to an atom that has neither a symbol nor a rule.
    UndefinedAtom { line: usize, id: u32 },
}

impl std::fmt::Display for AspifWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AspifWarning::UndefinedAtom { line, id } => {
                write!(f, "line {line}: atom {id} is never defined or derived; named `_x{id}`")
            }
        }
    }
}

enum Stmt {
    Rule { line: usize, head: Option<u32>, body: Vec<i64> },
    Fact { atom: u32 },
    ShownFact { name: String },
}

fn ints(line: usize, fields: &[&str]) -> Result<Vec<i64>, AspifError> {
    fields
        .iter()
        .map(|f| {
            f.parse::<i64>()
                .map_err(|_| AspifError::Malformed { line, message: format!("`{f}` is not an integer") })
        })
        .collect()
}

fn atom_id(line: usize, v: i64) -> Result<u32, AspifError> {
    if v <= 0 || v > u32::MAX as i64 {
        return Err(AspifError::Malformed { line, message: format!("invalid atom identifier {v}") });
    }
    Ok(v as u32)
}

/// Splits `1 H B` into head and body, accepting both empty-head spellings.
fn rule_parts(line: usize, v: &[i64]) -> Result<(Option<u32>, Vec<i64>), AspifError> {
    let bad = |m: &str| AspifError::Malformed { line, message: m.to_string() };
    if v.len() < 3 {
        return Err(bad("truncated rule"));
    }
    if v[1] != 0 {
        return Err(bad("only disjunctive (type 0) heads are supported"));
    }
    let (head, rest) = match v[2] {
        1 => {
            let h = *v.get(3).ok_or_else(|| bad("truncated head"))?;
            (Some(atom_id(line, h)?), &v[4..])
        }
        0 => {
            // `0 0 <body>` or `0 0 0 <body>`
            let plain = &v[3..];
            if plain.len() >= 2 && plain.len() as i64 == 2 + plain[1] {
                (None, plain)
            } else if plain.len() >= 3 && plain[0] == 0 && plain.len() as i64 == 3 + plain[2] {
                (None, &plain[1..])
            } else {
                return Err(bad("malformed constraint"));
            }
        }
        n => return Err(bad(&format!("{n} head atoms; only 0 or 1 are supported"))),
    };
    if rest.len() < 2 {
        return Err(bad("truncated body"));
    }
    if rest[0] != 0 {
        return Err(bad("only normal (type 0) bodies are supported"));
    }
    let k = rest[1];
    if k < 0 || rest.len() as i64 != 2 + k {
        return Err(bad("body length does not match its literal count"));
    }
    let body = rest[2..].to_vec();
    for l in &body {
        atom_id(line, l.abs())?;
    }
    Ok((head, body))
}

/// Parses aspif text, returning the program and non-fatal diagnostics.
pub fn parse_aspif_with_warnings(text: &str) -> Result<(GroundProgram, Vec<AspifWarning>), AspifError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, l)) if l.split_whitespace().collect::<Vec<_>>() == ["asp", "1", "0", "0"] => {}
        Some((line, _)) => return Err(AspifError::MalformedHeader { line }),
        None => return Err(AspifError::MalformedHeader { line: 1 }),
    }

    let mut stmts = Vec::new();
    let mut symbols: HashMap<u32, String> = HashMap::new();
    let mut terminated = false;
    for (line, l) in lines {
        if terminated {
            return Err(AspifError::DanglingTerminator { line });
        }
        let fields: Vec<&str> = l.split_whitespace().collect();
        let kind = fields[0]
            .parse::<i64>()
            .map_err(|_| AspifError::Malformed { line, message: format!("`{}` is not a statement type", fields[0]) })?;
        match kind {
            0 => {
                if fields.len() != 1 {
                    return Err(AspifError::Malformed { line, message: "terminator takes no arguments".into() });
                }
                terminated = true;
            }
            1 => {
                let v = ints(line, &fields)?;
                let (head, body) = rule_parts(line, &v)?;
                stmts.push(Stmt::Rule { line, head, body });
            }
            4 => {
                // `4 m name c l..`; the name is exactly m bytes long
                let bad = |m: &str| AspifError::Malformed { line, message: m.to_string() };
                let rest = l[1..].trim_start();
                let (len, rest) = rest.split_once(' ').ok_or_else(|| bad("truncated symbol"))?;
                let len: usize = len.parse().map_err(|_| bad("invalid symbol length"))?;
                let name = rest.get(..len).ok_or_else(|| bad("symbol shorter than its length"))?;
                if name.is_empty() || name.chars().any(char::is_whitespace) || name.starts_with('~') {
                    return Err(bad(&format!("unusable symbol `{name}`")));
                }
                let cond = ints(line, &rest[len..].split_whitespace().collect::<Vec<_>>())?;
                match cond.as_slice() {
                    [0] => stmts.push(Stmt::ShownFact { name: name.to_string() }),
                    [1, l] if *l > 0 => {
                        symbols.insert(atom_id(line, *l)?, name.to_string());
                    }
                    _ => return Err(bad("only single positive literal conditions are supported")),
                }
            }
            5 => {
                let v = ints(line, &fields)?;
                if v.len() != 3 {
                    return Err(AspifError::Malformed { line, message: "external takes two arguments".into() });
                }
                if v[2] != 2 {
                    return Err(AspifError::ExternalValue { line, code: v[2] });
                }
                stmts.push(Stmt::Fact { atom: atom_id(line, v[1])? });
            }
            other => return Err(AspifError::UnknownStatement { line, kind: other }),
        }
    }
    if !terminated {
        return Err(AspifError::MissingTerminator);
    }

    let defined: BTreeSet<u32> = stmts
        .iter()
        .filter_map(|s| match s {
            Stmt::Rule { head: Some(h), .. } => Some(*h),
            Stmt::Fact { atom } => Some(*atom),
            _ => None,
        })
        .collect();

    let mut warnings = Vec::new();
    let mut warned = BTreeSet::new();
    let mut table = AtomTable::new();
    let mut rules = Vec::new();
    let intern = |id: u32, table: &mut AtomTable| -> Atom {
        match symbols.get(&id) {
            Some(name) => table.intern(name),
            None => table.intern(&format!("_x{id}")),
        }
    };
    for s in &stmts {
        let index = rules.len();
        match s {
            Stmt::Rule { line, head, body } => {
                let h = head.map(|h| intern(h, &mut table));
                let (mut pos, mut neg) = (Vec::new(), Vec::new());
                for &l in body {
                    let id = l.unsigned_abs() as u32;
                    if !symbols.contains_key(&id) && !defined.contains(&id) && warned.insert(id) {
                        warnings.push(AspifWarning::UndefinedAtom { line: *line, id });
                    }
                    let a = intern(id, &mut table);
                    if l > 0 {
                        pos.push(a);
                    } else {
                        neg.push(a);
                    }
                }
                rules.push(Rule::new(h, pos, neg, index));
            }
            Stmt::Fact { atom } => rules.push(Rule::new(Some(intern(*atom, &mut table)), [], [], index)),
            Stmt::ShownFact { name } => rules.push(Rule::new(Some(table.intern(name)), [], [], index)),
        }
    }
    Ok((GroundProgram::new(table, rules), warnings))
}

pub fn parse_aspif(text: &str) -> Result<GroundProgram, AspifError> {
    parse_aspif_with_warnings(text).map(|(p, _)| p)
}

/// Writes `p` as aspif: facts become `5 i 2`, identifiers are atom ids
/// plus one, and the symbol table follows the rules.
pub fn emit_aspif(p: &GroundProgram) -> String {
    let id = |a: &Atom| a.0 as i64 + 1;
    let mut out = String::from("asp 1 0 0\n");
    for r in p.rules() {
        if r.is_fact() {
            let _ = writeln!(out, "5 {} 2", id(&r.head.unwrap()));
            continue;
        }
        let head = match r.head {
            Some(h) => format!("0 1 {}", id(&h)),
            None => "0 0".to_string(),
        };
        let lits: Vec<String> =
            r.pos.iter().map(|a| id(a).to_string()).chain(r.neg.iter().map(|a| (-id(a)).to_string())).collect();
        let mut line = format!("1 {head} 0 {}", lits.len());
        for l in lits {
            line.push(' ');
            line.push_str(&l);
        }
        out.push_str(&line);
        out.push('\n');
    }
    let symbols: BTreeMap<i64, &str> = p.atoms().iter().map(|(a, n)| (id(&a), n)).collect();
    for (i, name) in symbols {
        let _ = writeln!(out, "4 {} {} 1 {}", name.len(), name, i);
    }
    out.push_str("0\n");
    out
}
