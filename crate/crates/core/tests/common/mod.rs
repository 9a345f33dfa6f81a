#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use proptest::prelude::*;
use xasp_core::{
    analyze_assumptions, build_support_table, cautious_consequences, enumerate_answer_sets, explanation_graphs, Atom,
    AssumptionSet, ExplanationGraph, GroundProgram, Interpretation, SolveOptions, SupportTable, DEFAULT_BRANCHING_CAP,
    DEFAULT_SELECTION_CAP,
};

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../programs").join(name)
}

pub fn load(name: &str) -> GroundProgram {
    let text = std::fs::read_to_string(corpus_path(name)).unwrap();
    xasp_core::parse_program(&text).unwrap()
}

pub const CORPUS: [&str; 4] = ["p1.lp", "bob.lp", "ophthalmologist.lp", "coloring.lp"];

#[derive(Debug, Clone)]
pub struct RawRule {
    pub head: Option<usize>,
    pub pos: Vec<usize>,
    pub neg: Vec<usize>,
}

pub fn render(rules: &[RawRule]) -> String {
    let mut out = String::new();
    for r in rules {
        let body: Vec<String> = r
            .pos
            .iter()
            .map(|a| format!("a{a}"))
            .chain(r.neg.iter().map(|a| format!("not a{a}")))
            .collect();
        let head = r.head.map(|h| format!("a{h}")).unwrap_or_default();
        if body.is_empty() {
            out.push_str(&format!("{head}.\n"));
        } else {
            out.push_str(&format!("{head} :- {}.\n", body.join(", ")));
        }
    }
    out
}

/// Random normal programs over at most `atoms` atoms.
pub fn programs(atoms: usize, max_rules: usize) -> impl Strategy<Value = GroundProgram> {
    let rule = (
        prop::option::weighted(0.9, 0..atoms),
        prop::collection::vec(0..atoms, 0..3),
        prop::collection::vec(0..atoms, 0..3),
    )
        .prop_map(|(head, pos, neg)| RawRule { head, pos, neg })
        .prop_filter("empty constraint", |r| r.head.is_some() || !r.pos.is_empty() || !r.neg.is_empty());
    prop::collection::vec(rule, 1..=max_rules)
        .prop_map(|rules| xasp_core::parse_program(&render(&rules)).unwrap())
}

pub fn mask_set(mask: u32, n: usize) -> BTreeSet<Atom> {
    (0..n).filter(|i| mask & (1 << i) != 0).map(|i| Atom(i as u32)).collect()
}

/// Least model of the reduct of `p` w.r.t. `i`, by naive iteration.
pub fn oracle_reduct_model(p: &GroundProgram, i: &BTreeSet<Atom>) -> BTreeSet<Atom> {
    let mut m = BTreeSet::new();
    loop {
        let mut grew = false;
        for r in p.rules() {
            let Some(h) = r.head else { continue };
            if r.neg.iter().any(|a| i.contains(a)) || m.contains(&h) {
                continue;
            }
            if r.pos.iter().all(|a| m.contains(a)) {
                m.insert(h);
                grew = true;
            }
        }
        if !grew {
            return m;
        }
    }
}

pub fn oracle_is_answer_set(p: &GroundProgram, i: &BTreeSet<Atom>) -> bool {
    let constraints_ok = p
        .rules()
        .iter()
        .filter(|r| r.head.is_none())
        .all(|r| !(r.pos.iter().all(|a| i.contains(a)) && r.neg.iter().all(|a| !i.contains(a))));
    constraints_ok && oracle_reduct_model(p, i) == *i
}

/// Every answer set by exhaustive search, in ascending bit-vector order.
pub fn oracle_answer_sets(p: &GroundProgram) -> Vec<BTreeSet<Atom>> {
    let n = p.atom_count();
    assert!(n <= 16);
    let mut out: Vec<BTreeSet<Atom>> = (0u32..1 << n).map(|m| mask_set(m, n)).filter(|s| oracle_is_answer_set(p, s)).collect();
    out.sort_by_key(|s| Interpretation::from(s.clone()));
    out
}

pub struct Explained {
    pub ans: Interpretation,
    pub table: SupportTable,
    pub u: AssumptionSet,
    pub atom: Atom,
    pub graphs: Vec<ExplanationGraph>,
}

/// Runs the pipeline for every answer set, assumption set and atom.
pub fn explain_all(p: &GroundProgram) -> Vec<Explained> {
    let answer_sets = enumerate_answer_sets(p, &SolveOptions::default()).unwrap();
    let c = cautious_consequences(p, DEFAULT_BRANCHING_CAP).unwrap();
    let mut out = Vec::new();
    for ans in answer_sets {
        let table = build_support_table(p, &ans).unwrap();
        let a = analyze_assumptions(p, &ans, &c, &table, DEFAULT_SELECTION_CAP).unwrap();
        for u in a.assumption_sets {
            for atom in p.herbrand() {
                let graphs = explanation_graphs(atom, &table, &u).unwrap();
                out.push(Explained { ans: ans.clone(), table: table.clone(), u: u.clone(), atom, graphs });
            }
        }
    }
    out
}
