//! Supported sets of every literal w.r.t. an answer set.
//!
//! A true atom `a` is supported by each rule `a :- B` whose body holds:
//! the support is the body as literals, or `T` for a fact. A false atom
//! `~a` is supported by one falsifying body literal per rule with head `a`;
//! the table stores every union of such choices, or `F` if `a` heads no rule.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::ExplainError;
use crate::program::{Atom, GroundProgram, Interpretation, Literal, Rule};
use crate::solver::is_answer_set;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SupportSet {
    Literals(BTreeSet<Literal>),
    /// `T`: the atom is a fact.
    Fact,
    /// `F`: no rule has the atom as head.
    NoRule,
    /// The atom is assumed false.
    Assume,
}

impl SupportSet {
    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        let lits = match self {
            SupportSet::Literals(l) => Some(l.iter().copied()),
            _ => None,
        };
        lits.into_iter().flatten()
    }

    pub fn is_marker(&self) -> bool {
        !matches!(self, SupportSet::Literals(_))
    }

    pub fn render(&self, p: &GroundProgram) -> String {
        match self {
            SupportSet::Literals(l) => {
                let parts: Vec<String> = l.iter().map(|x| p.literal_str(*x)).collect();
                format!("{{{}}}", parts.join(", "))
            }
            SupportSet::Fact => "{T}".into(),
            SupportSet::NoRule => "{F}".into(),
            SupportSet::Assume => "{assume}".into(),
        }
    }
}

/// Support of a true atom through rule `r`, if its body holds in `ans`.
pub fn support_true(a: Atom, r: &Rule, ans: &Interpretation, facts: &BTreeSet<Atom>) -> Option<SupportSet> {
    debug_assert_eq!(r.head, Some(a));
    if !r.body_holds(ans) {
        return None;
    }
    if facts.contains(&a) && r.pos.is_empty() && r.neg.is_empty() {
        return Some(SupportSet::Fact);
    }
    let lits = r.pos.iter().map(|p| Literal::pos(*p)).chain(r.neg.iter().map(|n| Literal::neg(*n))).collect();
    Some(SupportSet::Literals(lits))
}

/// Single-literal falsifiers of rule `r` for a false head: `{n}` for each
/// negated atom in `ans`, `{~p}` for each positive atom outside it.
pub fn support_false_choices(a: Atom, r: &Rule, ans: &Interpretation) -> Vec<Literal> {
    debug_assert_eq!(r.head, Some(a));
    let mut out: Vec<Literal> = r
        .neg
        .iter()
        .filter(|n| ans.contains(**n))
        .map(|n| Literal::pos(*n))
        .chain(r.pos.iter().filter(|p| !ans.contains(**p)).map(|p| Literal::neg(*p)))
        .collect();
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportTable {
    entries: BTreeMap<Literal, Vec<SupportSet>>,
    answer_set: Interpretation,
}

impl SupportTable {
    pub fn get(&self, key: Literal) -> Option<&[SupportSet]> {
        self.entries.get(&key).map(Vec::as_slice)
    }

    pub fn entries(&self) -> &BTreeMap<Literal, Vec<SupportSet>> {
        &self.entries
    }

    pub fn answer_set(&self) -> &Interpretation {
        &self.answer_set
    }

    /// The key of `atom` in this table: `a` if true, `~a` if false.
    pub fn key_of(&self, atom: Atom) -> Literal {
        if self.answer_set.contains(atom) {
            Literal::pos(atom)
        } else {
            Literal::neg(atom)
        }
    }

    /// Replaces the supports of `key`.
    pub(crate) fn set(&mut self, key: Literal, supports: Vec<SupportSet>) {
        self.entries.insert(key, supports);
    }

    /// One `key : [set, ...]` line per entry, in atom order.
    pub fn render(&self, p: &GroundProgram) -> String {
        let mut out = String::new();
        for (k, sets) in &self.entries {
            let sets: Vec<String> = sets.iter().map(|s| s.render(p)).collect();
            let _ = writeln!(out, "{} : [{}]", p.literal_str(*k), sets.join(", "));
        }
        out
    }
}

/// Builds the table for answer set `ans`.
pub fn build_support_table(p: &GroundProgram, ans: &Interpretation) -> Result<SupportTable, ExplainError> {
    if !is_answer_set(p, ans) {
        return Err(ExplainError::NotAnAnswerSet);
    }
    let mut entries = BTreeMap::new();
    for atom in p.herbrand() {
        if ans.contains(atom) {
            let mut sets: Vec<SupportSet> = Vec::new();
            for r in p.rules_for(atom) {
                if let Some(s) = support_true(atom, r, ans, p.facts()) {
                    if !sets.contains(&s) {
                        sets.push(s);
                    }
                }
            }
            entries.insert(Literal::pos(atom), sets);
        } else if !p.has_rules_for(atom) {
            entries.insert(Literal::neg(atom), vec![SupportSet::NoRule]);
        } else {
            let mut combos: BTreeSet<BTreeSet<Literal>> = BTreeSet::from([BTreeSet::new()]);
            for r in p.rules_for(atom) {
                let choices = support_false_choices(atom, r, ans);
                assert!(!choices.is_empty(), "rule {} for a false head has a true body", r.index);
                combos = combos
                    .iter()
                    .flat_map(|c| {
                        choices.iter().map(move |l| {
                            let mut next = c.clone();
                            next.insert(*l);
                            next
                        })
                    })
                    .collect();
            }
            let mut sets: Vec<Vec<Literal>> = combos.into_iter().map(|c| c.into_iter().collect()).collect();
            sets.sort();
            entries.insert(Literal::neg(atom), sets.into_iter().map(|s| SupportSet::Literals(s.into_iter().collect())).collect());
        }
    }
    Ok(SupportTable { entries, answer_set: ans.clone() })
}
