//! Minimal assumption sets.
//!
//! Tentative assumptions are the negated atoms that are false in the answer
//! set and not decided by the cautious consequences. Each tentative atom is
//! either given an acceptable derivation path (possibly ending in other
//! tentative atoms it then depends on) or must be assumed. Cycles in the
//! resulting dependency graph are broken by every minimum-cardinality set
//! that hits all of them.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{ExplainError, ResourceError};
use crate::graph::{positive_on_cycle, search_selections, Lookup, Node, Outcome, Walker};
use crate::program::{Atom, AtomSet, GroundProgram, Interpretation, Literal};
use crate::solver::{cautious_consequences, well_founded_model, CautiousConsequences};
use crate::support::{SupportSet, SupportTable};

pub use crate::graph::{cycle_identification, DerivationCheckState};

pub const DEFAULT_SELECTION_CAP: usize = 10_000;

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AssumptionSet {
    pub atoms: AtomSet,
}

impl AssumptionSet {
    pub fn contains(&self, atom: Atom) -> bool {
        self.atoms.contains(&atom)
    }
}

impl FromIterator<Atom> for AssumptionSet {
    fn from_iter<T: IntoIterator<Item = Atom>>(iter: T) -> Self {
        AssumptionSet { atoms: iter.into_iter().collect() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TentativeAssumptions {
    pub atoms: AtomSet,
    /// Tentative atoms without an acceptable derivation path.
    pub must_assume: AtomSet,
    /// For every other tentative atom, the tentative atoms its path ends in.
    pub dependencies: BTreeMap<Atom, AtomSet>,
    /// Atoms whose selection search hit the cap; they count as must-assume.
    pub truncated: AtomSet,
}

/// `NANT(P) ∖ (A ∪ C(P))`.
pub fn tentative_assumptions(p: &GroundProgram, ans: &Interpretation, c: &CautiousConsequences) -> AtomSet {
    let decided = c.combined();
    p.nant().iter().filter(|a| !ans.contains(**a) && !decided.contains(a)).copied().collect()
}

/// Transitively copies into `local` the table entries of every literal
/// reachable from `seed`, skipping keys already present. `skip` literals
/// are neither copied nor followed.
pub fn get_connection(
    seed: &SupportSet,
    table: &SupportTable,
    local: &mut BTreeMap<Literal, Vec<SupportSet>>,
) -> Result<(), Literal> {
    connect(seed, table, local, &|_| false)
}

pub(crate) fn connect(
    seed: &SupportSet,
    table: &SupportTable,
    local: &mut BTreeMap<Literal, Vec<SupportSet>>,
    skip: &dyn Fn(Literal) -> bool,
) -> Result<(), Literal> {
    let mut todo: Vec<Literal> = seed.literals().collect();
    while let Some(l) = todo.pop() {
        if skip(l) || local.contains_key(&l) {
            continue;
        }
        let sets = table.get(l).ok_or(l)?;
        local.insert(l, sets.to_vec());
        for s in sets {
            todo.extend(s.literals());
        }
    }
    Ok(())
}

/// Checks one selection: walks from `start` through the selected supports,
/// recording instead of expanding negative literals of atoms in `others`.
/// Unsafe if the walk closes a cycle through a positive node. Keys missing
/// from `selection` have no children.
pub fn check_derivation_path(
    start: Node,
    selection: &BTreeMap<Literal, SupportSet>,
    others: &AtomSet,
    state: DerivationCheckState,
) -> (bool, DerivationCheckState) {
    let lookup = |l: Literal| match selection.get(&l) {
        Some(s) => Lookup::Children(s),
        None => Lookup::Leaf,
    };
    let mut w = Walker::with_state(lookup, Some(others), state);
    let safe = match w.walk(start) {
        Outcome::Safe => !positive_on_cycle(&w.edges),
        _ => false,
    };
    (safe, w.state)
}

/// Splits `ta` into atoms with an acceptable derivation path (and their
/// dependencies) and atoms that must be assumed. The first safe selection,
/// in support-table order, decides an atom's dependencies.
pub fn derivation_paths(ta: &AtomSet, table: &SupportTable, selection_cap: usize) -> Result<TentativeAssumptions, ExplainError> {
    let mut dependencies = BTreeMap::new();
    let mut truncated = AtomSet::new();
    for &a in ta {
        let others: AtomSet = ta.iter().filter(|x| **x != a).copied().collect();
        let key = Literal::neg(a);
        let supports = table.get(key).ok_or_else(|| ExplainError::MissingEntry(format!("~#{}", a.0)))?;
        let skip = |l: Literal| !l.positive && others.contains(&l.atom);
        'supports: for s in supports {
            let mut local = BTreeMap::from([(key, vec![s.clone()])]);
            connect(s, table, &mut local, &skip).map_err(|l| ExplainError::MissingEntry(format!("#{}", l.atom.0)))?;
            let mut found = None;
            let hit_cap = search_selections(key, s, &local, Some(&others), selection_cap, |state, edges| {
                if positive_on_cycle(edges) {
                    return true;
                }
                found = Some(state.deps.clone());
                false
            });
            if let Some(deps) = found {
                dependencies.insert(a, deps);
                truncated.remove(&a);
                break 'supports;
            }
            if hit_cap {
                truncated.insert(a);
            }
        }
    }
    let must_assume = ta.iter().filter(|a| !dependencies.contains_key(a)).copied().collect();
    Ok(TentativeAssumptions { atoms: ta.clone(), must_assume, dependencies, truncated })
}

/// Elementary cycles of the digraph `u -> v` for `v ∈ deps[u]`, restricted
/// to vertices that are keys. Each cycle starts at its smallest vertex.
pub fn elementary_cycles(deps: &BTreeMap<Atom, AtomSet>) -> Vec<Vec<Atom>> {
    fn extend(
        start: Atom,
        path: &mut Vec<Atom>,
        on_path: &mut AtomSet,
        deps: &BTreeMap<Atom, AtomSet>,
        out: &mut Vec<Vec<Atom>>,
    ) {
        let last = *path.last().unwrap();
        for &next in &deps[&last] {
            if next == start {
                out.push(path.clone());
            } else if next > start && deps.contains_key(&next) && !on_path.contains(&next) {
                path.push(next);
                on_path.insert(next);
                extend(start, path, on_path, deps, out);
                on_path.remove(&next);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for &start in deps.keys() {
        let mut path = vec![start];
        let mut on_path = AtomSet::from([start]);
        extend(start, &mut path, &mut on_path, deps, &mut out);
    }
    out
}

/// All minimum-cardinality sets hitting every member of `family`, sorted.
pub fn minimum_hitting_sets(family: &[AtomSet]) -> Vec<AtomSet> {
    if family.is_empty() {
        return vec![AtomSet::new()];
    }
    let universe: Vec<Atom> = family.iter().flatten().copied().collect::<AtomSet>().into_iter().collect();
    for size in 1..=universe.len() {
        let mut found = Vec::new();
        let mut pick = Vec::with_capacity(size);
        subsets(&universe, size, 0, &mut pick, &mut |s| {
            if family.iter().all(|f| s.iter().any(|a| f.contains(a))) {
                found.push(s.iter().copied().collect::<AtomSet>());
            }
        });
        if !found.is_empty() {
            found.sort_by(|a, b| a.iter().cmp(b.iter()));
            return found;
        }
    }
    unreachable!("the universe hits every member")
}

fn subsets(items: &[Atom], size: usize, from: usize, pick: &mut Vec<Atom>, f: &mut impl FnMut(&[Atom])) {
    if pick.len() == size {
        f(pick);
        return;
    }
    for i in from..items.len() {
        if items.len() - i < size - pick.len() {
            break;
        }
        pick.push(items[i]);
        subsets(items, size, i + 1, pick, f);
        pick.pop();
    }
}

/// Everything computed on the way to the minimal assumption sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionAnalysis {
    pub tentative: TentativeAssumptions,
    pub cycles: Vec<Vec<Atom>>,
    pub assumption_sets: Vec<AssumptionSet>,
}

pub fn analyze_assumptions(
    p: &GroundProgram,
    ans: &Interpretation,
    c: &CautiousConsequences,
    table: &SupportTable,
    selection_cap: usize,
) -> Result<AssumptionAnalysis, ExplainError> {
    if c.inconsistent {
        return Err(ExplainError::Inconsistent);
    }
    if table.answer_set() != ans {
        return Err(ExplainError::NotAnAnswerSet);
    }
    let ta = tentative_assumptions(p, ans, c);
    let tentative = derivation_paths(&ta, table, selection_cap)?;
    let cycles = elementary_cycles(&tentative.dependencies);
    let family: Vec<AtomSet> = cycles.iter().map(|c| c.iter().copied().collect()).collect::<BTreeSet<_>>().into_iter().collect();
    let mut assumption_sets: Vec<AssumptionSet> = minimum_hitting_sets(&family)
        .into_iter()
        .map(|m| m.union(&tentative.must_assume).copied().collect())
        .collect();
    assumption_sets.sort_by(|a, b| a.atoms.len().cmp(&b.atoms.len()).then_with(|| a.atoms.iter().cmp(b.atoms.iter())));
    assumption_sets.dedup();
    Ok(AssumptionAnalysis { tentative, cycles, assumption_sets })
}

/// Minimal assumption sets of `ans`, sorted by size then atom ids.
pub fn minimal_assumption_sets(
    p: &GroundProgram,
    ans: &Interpretation,
    c: &CautiousConsequences,
    table: &SupportTable,
) -> Result<Vec<AssumptionSet>, ExplainError> {
    Ok(analyze_assumptions(p, ans, c, table, DEFAULT_SELECTION_CAP)?.assumption_sets)
}

/// Two readings of "U is an assumption set for A", checked on the program
/// without the rules for atoms in U.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionDiagnostic {
    /// `A` equals the cautious consequences `C⁺ ∪ C⁻` of the reduced program.
    pub cautious_equals_answer_set: bool,
    /// The reduced program's well-founded model is total with true part `A`.
    pub well_founded_equals_answer_set: bool,
}

pub fn assumption_diagnostic(
    p: &GroundProgram,
    ans: &Interpretation,
    u: &AssumptionSet,
    branching_cap: usize,
) -> Result<AssumptionDiagnostic, ResourceError> {
    let rules = p.rules().iter().filter(|r| !r.head.is_some_and(|h| u.contains(h))).cloned().collect();
    let reduced = p.with_rules(rules);
    let c = cautious_consequences(&reduced, branching_cap)?;
    let wf = well_founded_model(&reduced);
    Ok(AssumptionDiagnostic {
        cautious_equals_answer_set: c.combined() == *ans.as_set(),
        well_founded_equals_answer_set: wf.is_total() && wf.wf_true == *ans.as_set(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_program;
    use crate::solver::{cautious_consequences, DEFAULT_BRANCHING_CAP};
    use crate::support::build_support_table;

    const P1: &str = "a :- k, not b.\nk :- e, not b.\nc :- a, b.\nb :- not a.\nc :- k.\nf :- e, not k, not c.\ne.\n";

    struct Fixture {
        p: GroundProgram,
        ans: Interpretation,
        c: CautiousConsequences,
        table: SupportTable,
    }

    fn fixture(text: &str, ans: &[&str]) -> Fixture {
        let p = parse_program(text).unwrap();
        let ans = p.interpretation_from_names(ans.iter().copied()).unwrap();
        let c = cautious_consequences(&p, DEFAULT_BRANCHING_CAP).unwrap();
        let table = build_support_table(&p, &ans).unwrap();
        Fixture { p, ans, c, table }
    }

    fn set(p: &GroundProgram, names: &[&str]) -> AtomSet {
        names.iter().map(|n| p.atom(n).unwrap()).collect()
    }

    fn lit(p: &GroundProgram, s: &str) -> Literal {
        p.parse_literal(s).unwrap()
    }

    fn sel(p: &GroundProgram, entries: &[(&str, &[&str])]) -> BTreeMap<Literal, SupportSet> {
        entries
            .iter()
            .map(|(k, v)| (lit(p, k), SupportSet::Literals(v.iter().map(|x| lit(p, x)).collect())))
            .collect()
    }

    #[test]
    fn tentative_of_p1() {
        let f = fixture(P1, &["b", "e", "f"]);
        assert_eq!(tentative_assumptions(&f.p, &f.ans, &f.c), set(&f.p, &["a", "c", "k"]));
        let g = fixture("a :- b. b.", &["a", "b"]);
        assert!(tentative_assumptions(&g.p, &g.ans, &g.c).is_empty());
        let h = fixture("p :- not q.", &["p"]);
        assert!(tentative_assumptions(&h.p, &h.ans, &h.c).is_empty());
    }

    #[test]
    fn derivation_check_cases() {
        let f = fixture(P1, &["b", "e", "f"]);
        let p = &f.p;
        let start = Node::Lit(lit(p, "~a"));
        let s = sel(p, &[("~a", &["~k"]), ("~k", &["b"]), ("b", &["~a"])]);
        let (safe, _) = check_derivation_path(start, &s, &AtomSet::new(), DerivationCheckState::default());
        assert!(!safe);

        let s = sel(p, &[("~a", &["b"]), ("b", &["~a"])]);
        let (safe, _) = check_derivation_path(start, &s, &AtomSet::new(), DerivationCheckState::default());
        assert!(!safe);

        let s = sel(p, &[("~a", &["~k"])]);
        let (safe, state) = check_derivation_path(start, &s, &set(p, &["c", "k"]), DerivationCheckState::default());
        assert!(safe);
        assert_eq!(state.deps, set(p, &["k"]));
        assert!(state.stack.is_empty() && state.active_edge.is_empty());

        let (safe, state) = check_derivation_path(start, &BTreeMap::new(), &AtomSet::new(), DerivationCheckState::default());
        assert!(safe && state.deps.is_empty());
    }

    #[test]
    fn derivation_paths_of_p1() {
        let f = fixture(P1, &["b", "e", "f"]);
        let ta = set(&f.p, &["a", "c", "k"]);
        let t = derivation_paths(&ta, &f.table, DEFAULT_SELECTION_CAP).unwrap();
        assert!(t.must_assume.is_empty());
        let a = f.p.atom("a").unwrap();
        let c = f.p.atom("c").unwrap();
        let k = f.p.atom("k").unwrap();
        assert_eq!(t.dependencies[&c], set(&f.p, &["a", "k"]));
        assert_eq!(t.dependencies[&a], set(&f.p, &["k"]));
        assert_eq!(t.dependencies[&k], set(&f.p, &["a"]));

        let empty = derivation_paths(&AtomSet::new(), &f.table, DEFAULT_SELECTION_CAP).unwrap();
        assert!(empty.must_assume.is_empty() && empty.dependencies.is_empty());
    }

    #[test]
    fn headless_tentative_atom_is_safe() {
        // q heads no rule, so ~q reaches F directly
        let f = fixture("p :- not q.", &["p"]);
        let q = f.p.atom("q").unwrap();
        let t = derivation_paths(&AtomSet::from([q]), &f.table, DEFAULT_SELECTION_CAP).unwrap();
        assert!(t.must_assume.is_empty());
        assert_eq!(t.dependencies[&q], AtomSet::new());
    }

    #[test]
    fn assumption_sets_of_p1() {
        let f = fixture(P1, &["b", "e", "f"]);
        let u = minimal_assumption_sets(&f.p, &f.ans, &f.c, &f.table).unwrap();
        assert_eq!(
            u,
            vec![AssumptionSet { atoms: set(&f.p, &["a"]) }, AssumptionSet { atoms: set(&f.p, &["k"]) }]
        );
    }

    #[test]
    fn stratified_program_needs_nothing() {
        let f = fixture("a :- not b. c :- a. d :- not c.", &["a", "c"]);
        let u = minimal_assumption_sets(&f.p, &f.ans, &f.c, &f.table).unwrap();
        assert_eq!(u, vec![AssumptionSet::default()]);
    }

    #[test]
    fn cycles_and_hitting_sets() {
        let deps: BTreeMap<Atom, AtomSet> = [
            (Atom(0), AtomSet::from([Atom(1)])),
            (Atom(1), AtomSet::from([Atom(0)])),
            (Atom(2), AtomSet::from([Atom(3)])),
            (Atom(3), AtomSet::from([Atom(2)])),
        ]
        .into();
        let cycles = elementary_cycles(&deps);
        assert_eq!(cycles, vec![vec![Atom(0), Atom(1)], vec![Atom(2), Atom(3)]]);
        let family: Vec<AtomSet> = cycles.iter().map(|c| c.iter().copied().collect()).collect();
        let hs = minimum_hitting_sets(&family);
        let want: Vec<AtomSet> = [[0, 2], [0, 3], [1, 2], [1, 3]]
            .iter()
            .map(|p| p.iter().map(|i| Atom(*i)).collect())
            .collect();
        assert_eq!(hs, want);
        assert_eq!(minimum_hitting_sets(&[]), vec![AtomSet::new()]);
    }

    #[test]
    fn cycles_ignore_non_keys() {
        let deps: BTreeMap<Atom, AtomSet> =
            [(Atom(0), AtomSet::from([Atom(1), Atom(5)])), (Atom(1), AtomSet::from([Atom(0)]))].into();
        assert_eq!(elementary_cycles(&deps), vec![vec![Atom(0), Atom(1)]]);
    }

    #[test]
    fn get_connection_closure() {
        let f = fixture(P1, &["b", "e", "f"]);
        let p = &f.p;
        let seed = f.table.get(lit(p, "f")).unwrap()[0].clone();
        let mut local = BTreeMap::from([(lit(p, "f"), vec![seed.clone()])]);
        get_connection(&seed, &f.table, &mut local).unwrap();
        let keys: BTreeSet<String> = local.keys().map(|k| p.literal_str(*k)).collect();
        let want: BTreeSet<String> = ["f", "~k", "~c", "e", "b", "~a"].iter().map(|s| s.to_string()).collect();
        assert_eq!(keys, want);
        for (k, v) in &local {
            assert_eq!(f.table.get(*k).unwrap(), v.as_slice());
        }
        let before = local.clone();
        get_connection(&seed, &f.table, &mut local).unwrap();
        assert_eq!(local, before);

        let mut empty = BTreeMap::new();
        get_connection(&SupportSet::Fact, &f.table, &mut empty).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn diagnostic_on_p1() {
        let f = fixture(P1, &["b", "e", "f"]);
        let u = AssumptionSet { atoms: set(&f.p, &["a"]) };
        let d = assumption_diagnostic(&f.p, &f.ans, &u, DEFAULT_BRANCHING_CAP).unwrap();
        assert!(d.well_founded_equals_answer_set);
    }
}
