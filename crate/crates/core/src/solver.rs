//! Answer sets of ground normal programs.
//!
//! The enumerator branches only on atoms that occur under `not`: once those
//! are fixed the reduct is fixed, and the candidate model is its least
//! model. Partial assignments are pruned with two bounds, the least model of
//! the rules that survive every completion (lower) and of the rules that
//! survive some completion (upper).

use serde::{Deserialize, Serialize};

use crate::error::ResourceError;
use crate::program::{Atom, AtomSet, GroundProgram, Interpretation, Rule};

pub const DEFAULT_BRANCHING_CAP: usize = 30;

/// The reduct of `p` w.r.t. `i`: rules with a negative body atom in `i` are
/// dropped, the remaining rules lose their negative bodies.
pub fn reduct(p: &GroundProgram, i: &Interpretation) -> GroundProgram {
    let rules = p
        .rules()
        .iter()
        .filter(|r| !r.neg.iter().any(|a| i.contains(*a)))
        .map(|r| Rule { head: r.head, pos: r.pos.clone(), neg: Vec::new(), index: r.index })
        .collect();
    p.with_rules(rules)
}

/// One application of the immediate consequence operator of a positive
/// program. Negative bodies and constraints are ignored.
pub fn consequence(p: &GroundProgram, i: &Interpretation) -> Interpretation {
    p.rules()
        .iter()
        .filter(|r| r.pos.iter().all(|a| i.contains(*a)))
        .filter_map(|r| r.head)
        .collect()
}

/// Least fixpoint of the positive rules selected by `keep`, by counting
/// unsatisfied positive body atoms per rule.
fn least_fixpoint(p: &GroundProgram, keep: impl Fn(&Rule) -> bool) -> Vec<bool> {
    let n = p.atom_count();
    let rules = p.rules();
    let mut model = vec![false; n];
    let mut missing = vec![0usize; rules.len()];
    let mut watch: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut queue = Vec::new();
    for (ri, r) in rules.iter().enumerate() {
        let Some(h) = r.head else { continue };
        if !keep(r) {
            continue;
        }
        missing[ri] = r.pos.len();
        for a in &r.pos {
            watch[a.index()].push(ri);
        }
        if r.pos.is_empty() && !model[h.index()] {
            model[h.index()] = true;
            queue.push(h);
        }
    }
    while let Some(a) = queue.pop() {
        for &ri in &watch[a.index()] {
            missing[ri] -= 1;
            if missing[ri] == 0 {
                let h = rules[ri].head.expect("watched rules have heads");
                if !model[h.index()] {
                    model[h.index()] = true;
                    queue.push(h);
                }
            }
        }
    }
    model
}

/// The ⊆-least model of a positive program. Negative body literals and
/// constraints are ignored, so callers pass a reduct.
pub fn least_model(p: &GroundProgram) -> Interpretation {
    debug_assert!(p.nant().is_empty(), "least_model expects a positive program");
    Interpretation::from_mask(&least_fixpoint(p, |_| true))
}

/// Least model of the reduct of `p` w.r.t. `i`, without materializing it.
pub(crate) fn reduct_least_model(p: &GroundProgram, i: &Interpretation) -> Interpretation {
    Interpretation::from_mask(&least_fixpoint(p, |r| !r.neg.iter().any(|a| i.contains(*a))))
}

pub fn violates_constraints(p: &GroundProgram, i: &Interpretation) -> bool {
    p.constraints().any(|c| c.body_holds(i))
}

pub fn is_answer_set(p: &GroundProgram, i: &Interpretation) -> bool {
    i.iter().all(|a| a.index() < p.atom_count()) && reduct_least_model(p, i) == *i && !violates_constraints(p, i)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Maximum number of negated atoms the search may branch on.
    pub branching_cap: usize,
    /// Keep only the first `limit` answer sets of the sorted enumeration.
    pub limit: Option<usize>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { branching_cap: DEFAULT_BRANCHING_CAP, limit: None }
    }
}

struct Search<'p> {
    p: &'p GroundProgram,
    nant: Vec<Atom>,
    slot: Vec<Option<usize>>,
    found: Vec<Interpretation>,
}

impl Search<'_> {
    fn assigned(&self, assign: &[Option<bool>], a: Atom) -> Option<bool> {
        self.slot[a.index()].and_then(|s| assign[s])
    }

    /// Tightens `assign` until fixpoint; returns the lower bound, or `None`
    /// on conflict.
    fn propagate(&self, assign: &mut [Option<bool>]) -> Option<Vec<bool>> {
        loop {
            let lower = least_fixpoint(self.p, |r| r.neg.iter().all(|a| self.assigned(assign, *a) == Some(false)));
            let upper = least_fixpoint(self.p, |r| !r.neg.iter().any(|a| self.assigned(assign, *a) == Some(true)));
            let mut changed = false;
            for (s, a) in self.nant.iter().enumerate() {
                match assign[s] {
                    Some(true) if !upper[a.index()] => return None,
                    Some(false) if lower[a.index()] => return None,
                    None if lower[a.index()] => {
                        assign[s] = Some(true);
                        changed = true;
                    }
                    None if !upper[a.index()] => {
                        assign[s] = Some(false);
                        changed = true;
                    }
                    _ => {}
                }
            }
            let violated = self.p.constraints().any(|c| {
                c.pos.iter().all(|a| lower[a.index()])
                    && c.neg.iter().all(|a| self.assigned(assign, *a) == Some(false))
            });
            if violated {
                return None;
            }
            if !changed {
                return Some(lower);
            }
        }
    }

    fn run(&mut self, mut assign: Vec<Option<bool>>) {
        let Some(lower) = self.propagate(&mut assign) else { return };
        match assign.iter().position(Option::is_none) {
            Some(s) => {
                for v in [false, true] {
                    let mut next = assign.clone();
                    next[s] = Some(v);
                    self.run(next);
                }
            }
            None => {
                let candidate = Interpretation::from_mask(&lower);
                if is_answer_set(self.p, &candidate) {
                    self.found.push(candidate);
                }
            }
        }
    }
}

/// All answer sets in ascending bit-vector order, truncated to `opts.limit`.
pub fn enumerate_answer_sets(p: &GroundProgram, opts: &SolveOptions) -> Result<Vec<Interpretation>, ResourceError> {
    let nant: Vec<Atom> = p.nant().iter().copied().collect();
    if nant.len() > opts.branching_cap {
        return Err(ResourceError { nant: nant.len(), cap: opts.branching_cap });
    }
    let mut slot = vec![None; p.atom_count()];
    for (s, a) in nant.iter().enumerate() {
        slot[a.index()] = Some(s);
    }
    let mut search = Search { p, slot, found: Vec::new(), nant };
    search.run(vec![None; search.nant.len()]);
    let mut found = search.found;
    found.sort();
    found.dedup();
    if let Some(limit) = opts.limit {
        found.truncate(limit);
    }
    Ok(found)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CautiousConsequences {
    /// Atoms in every answer set.
    pub c_plus: AtomSet,
    /// Atoms in no answer set.
    pub c_minus: AtomSet,
    /// No answer set exists; both sets are then the whole Herbrand base.
    pub inconsistent: bool,
}

impl CautiousConsequences {
    pub fn combined(&self) -> AtomSet {
        self.c_plus.union(&self.c_minus).copied().collect()
    }

    pub fn from_answer_sets(p: &GroundProgram, answer_sets: &[Interpretation]) -> Self {
        let herbrand = p.herbrand();
        let Some((first, rest)) = answer_sets.split_first() else {
            return CautiousConsequences { c_plus: herbrand.clone(), c_minus: herbrand, inconsistent: true };
        };
        let mut c_plus = first.as_set().clone();
        let mut union = first.as_set().clone();
        for a in rest {
            c_plus.retain(|x| a.contains(*x));
            union.extend(a.iter());
        }
        let c_minus = herbrand.difference(&union).copied().collect();
        CautiousConsequences { c_plus, c_minus, inconsistent: false }
    }
}

pub fn cautious_consequences(p: &GroundProgram, branching_cap: usize) -> Result<CautiousConsequences, ResourceError> {
    let all = enumerate_answer_sets(p, &SolveOptions { branching_cap, limit: None })?;
    Ok(CautiousConsequences::from_answer_sets(p, &all))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WellFoundedModel {
    pub wf_true: AtomSet,
    pub wf_false: AtomSet,
    pub unknown: AtomSet,
}

impl WellFoundedModel {
    pub fn is_total(&self) -> bool {
        self.unknown.is_empty()
    }
}

/// Alternating fixpoint: the true atoms grow from below, the possibly-true
/// atoms shrink from the Herbrand base, until both are stable.
pub fn well_founded_model(p: &GroundProgram) -> WellFoundedModel {
    let herbrand = p.herbrand();
    let mut upper = Interpretation::from(herbrand.clone());
    let mut lower;
    loop {
        lower = reduct_least_model(p, &upper);
        let next = reduct_least_model(p, &lower);
        if next == upper {
            break;
        }
        upper = next;
    }
    let wf_false: AtomSet = herbrand.difference(upper.as_set()).copied().collect();
    let unknown = upper.as_set().difference(lower.as_set()).copied().collect();
    WellFoundedModel { wf_true: lower.into_set(), wf_false, unknown }
}
