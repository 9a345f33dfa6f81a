//! Ground normal logic programs.
//!
//! A [`GroundProgram`] owns an interned atom table and an ordered list of
//! rules `h :- p1, ..., pm, not n1, ..., not nk.`. Atom ids are dense and
//! assigned in first-occurrence order, so every set-valued result iterates
//! in a deterministic order.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Interned ground atom. The id indexes the owning program's atom table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Atom(pub u32);

impl Atom {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub type AtomSet = BTreeSet<Atom>;

/// An atom together with a polarity; `~a` is the negative literal of `a`.
///
/// Literals order by atom id first, so sets of literals iterate in atom order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal { atom, positive: true }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal { atom, positive: false }
    }

    pub fn negate(self) -> Self {
        Literal { atom: self.atom, positive: !self.positive }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    /// `None` for a constraint.
    pub head: Option<Atom>,
    /// Positive body, ascending ids, no duplicates.
    pub pos: Vec<Atom>,
    /// Atoms under default negation, ascending ids, no duplicates.
    pub neg: Vec<Atom>,
    /// Ordinal in source order.
    pub index: usize,
}

impl Rule {
    pub fn new(head: Option<Atom>, pos: impl IntoIterator<Item = Atom>, neg: impl IntoIterator<Item = Atom>, index: usize) -> Self {
        let pos: AtomSet = pos.into_iter().collect();
        let neg: AtomSet = neg.into_iter().collect();
        Rule { head, pos: pos.into_iter().collect(), neg: neg.into_iter().collect(), index }
    }

    pub fn is_fact(&self) -> bool {
        self.head.is_some() && self.pos.is_empty() && self.neg.is_empty()
    }

    pub fn is_constraint(&self) -> bool {
        self.head.is_none()
    }

    /// Body satisfied by `i`: `pos ⊆ i` and `neg ∩ i = ∅`.
    pub fn body_holds(&self, i: &Interpretation) -> bool {
        self.pos.iter().all(|a| i.contains(*a)) && !self.neg.iter().any(|a| i.contains(*a))
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        self.head.iter().copied().chain(self.pos.iter().copied()).chain(self.neg.iter().copied())
    }
}

/// A set of atoms, typically an answer set or a fixpoint iterate.
///
/// The `Ord` instance compares membership bit-vectors over ascending atom
/// ids with absent < present, which is the order answer sets are listed in.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interpretation {
    atoms: AtomSet,
}

impl Interpretation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, atom: Atom) -> bool {
        self.atoms.contains(&atom)
    }

    pub fn insert(&mut self, atom: Atom) -> bool {
        self.atoms.insert(atom)
    }

    pub fn remove(&mut self, atom: Atom) -> bool {
        self.atoms.remove(&atom)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Atom> + '_ {
        self.atoms.iter().copied()
    }

    pub fn as_set(&self) -> &AtomSet {
        &self.atoms
    }

    pub fn into_set(self) -> AtomSet {
        self.atoms
    }

    pub fn is_subset(&self, other: &Interpretation) -> bool {
        self.atoms.is_subset(&other.atoms)
    }

    pub(crate) fn from_mask(mask: &[bool]) -> Self {
        mask.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| Atom(i as u32)).collect()
    }
}

impl FromIterator<Atom> for Interpretation {
    fn from_iter<T: IntoIterator<Item = Atom>>(iter: T) -> Self {
        Interpretation { atoms: iter.into_iter().collect() }
    }
}

impl From<AtomSet> for Interpretation {
    fn from(atoms: AtomSet) -> Self {
        Interpretation { atoms }
    }
}

impl Ord for Interpretation {
    fn cmp(&self, other: &Self) -> Ordering {
        // first atom where the bit-vectors differ decides
        let first = self.atoms.symmetric_difference(&other.atoms).next();
        match first {
            None => Ordering::Equal,
            Some(a) if self.atoms.contains(a) => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }
}

impl PartialOrd for Interpretation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AtomTable {
    names: Vec<String>,
    ids: HashMap<String, Atom>,
}

impl AtomTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, name: &str) -> Atom {
        if let Some(a) = self.ids.get(name) {
            return *a;
        }
        let a = Atom(self.names.len() as u32);
        self.names.push(name.to_string());
        self.ids.insert(name.to_string(), a);
        a
    }

    pub fn get(&self, name: &str) -> Option<Atom> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, atom: Atom) -> &str {
        &self.names[atom.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Atom, &str)> {
        self.names.iter().enumerate().map(|(i, n)| (Atom(i as u32), n.as_str()))
    }
}

/// Immutable ground normal program with cached derived sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundProgram {
    atoms: AtomTable,
    rules: Vec<Rule>,
    facts: AtomSet,
    nant: AtomSet,
    by_head: Vec<Vec<usize>>,
}

impl GroundProgram {
    /// Builds a program. Every atom of the table must occur in some rule.
    pub fn new(atoms: AtomTable, rules: Vec<Rule>) -> Self {
        let n = atoms.len();
        let mut by_head = vec![Vec::new(); n];
        let mut facts = AtomSet::new();
        let mut nant = AtomSet::new();
        for (i, r) in rules.iter().enumerate() {
            if let Some(h) = r.head {
                by_head[h.index()].push(i);
                if r.is_fact() {
                    facts.insert(h);
                }
            }
            nant.extend(r.neg.iter().copied());
        }
        debug_assert!({
            let mut seen = vec![false; n];
            rules.iter().flat_map(|r| r.atoms()).for_each(|a| seen[a.index()] = true);
            seen.into_iter().all(|s| s)
        });
        GroundProgram { atoms, rules, facts, nant, by_head }
    }

    pub fn empty() -> Self {
        Self::new(AtomTable::new(), Vec::new())
    }

    pub fn atoms(&self) -> &AtomTable {
        &self.atoms
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn name(&self, atom: Atom) -> &str {
        self.atoms.name(atom)
    }

    pub fn atom(&self, name: &str) -> Option<Atom> {
        self.atoms.get(name)
    }

    /// The Herbrand base: every atom occurring in the program.
    pub fn herbrand(&self) -> AtomSet {
        (0..self.atoms.len() as u32).map(Atom).collect()
    }

    pub fn facts(&self) -> &AtomSet {
        &self.facts
    }

    pub fn is_fact(&self, atom: Atom) -> bool {
        self.facts.contains(&atom)
    }

    /// Atoms occurring under default negation in some rule body.
    pub fn nant(&self) -> &AtomSet {
        &self.nant
    }

    /// Rules with head `atom`, in source order.
    pub fn rules_for(&self, atom: Atom) -> impl Iterator<Item = &Rule> + '_ {
        self.by_head[atom.index()].iter().map(move |i| &self.rules[*i])
    }

    pub fn has_rules_for(&self, atom: Atom) -> bool {
        !self.by_head[atom.index()].is_empty()
    }

    pub fn constraints(&self) -> impl Iterator<Item = &Rule> + '_ {
        self.rules.iter().filter(|r| r.is_constraint())
    }

    /// A program over the same atom table with different rules.
    pub(crate) fn with_rules(&self, rules: Vec<Rule>) -> GroundProgram {
        let n = self.atoms.len();
        let mut by_head = vec![Vec::new(); n];
        let mut facts = AtomSet::new();
        let mut nant = AtomSet::new();
        for (i, r) in rules.iter().enumerate() {
            if let Some(h) = r.head {
                by_head[h.index()].push(i);
                if r.is_fact() {
                    facts.insert(h);
                }
            }
            nant.extend(r.neg.iter().copied());
        }
        GroundProgram { atoms: self.atoms.clone(), rules, facts, nant, by_head }
    }

    /// Renders a literal as `a` or `~a`.
    pub fn literal_str(&self, lit: Literal) -> String {
        if lit.positive {
            self.name(lit.atom).to_string()
        } else {
            format!("~{}", self.name(lit.atom))
        }
    }

    /// Inverse of [`GroundProgram::literal_str`].
    pub fn parse_literal(&self, s: &str) -> Option<Literal> {
        match s.strip_prefix('~') {
            Some(name) => self.atom(name).map(Literal::neg),
            None => self.atom(s).map(Literal::pos),
        }
    }

    pub fn interpretation_from_names<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<Interpretation, String> {
        names
            .into_iter()
            .map(|n| self.atom(n).ok_or_else(|| n.to_string()))
            .collect()
    }

    /// `{a,b,c}` with atoms sorted by name.
    pub fn set_str<'a>(&self, atoms: impl IntoIterator<Item = &'a Atom>) -> String {
        let mut names: Vec<&str> = atoms.into_iter().map(|a| self.name(*a)).collect();
        names.sort_unstable();
        format!("{{{}}}", names.join(","))
    }

    /// Like [`GroundProgram::rule_str`] but with body atoms sorted by name,
    /// so rules from programs with different atom numbering compare equal.
    pub fn normalized_rule_str(&self, r: &Rule) -> String {
        let mut pos: Vec<&str> = r.pos.iter().map(|a| self.name(*a)).collect();
        let mut neg: Vec<&str> = r.neg.iter().map(|a| self.name(*a)).collect();
        pos.sort_unstable();
        neg.sort_unstable();
        let body: Vec<String> =
            pos.into_iter().map(str::to_string).chain(neg.into_iter().map(|n| format!("not {n}"))).collect();
        match (r.head, body.is_empty()) {
            (Some(h), true) => format!("{}.", self.name(h)),
            (Some(h), false) => format!("{} :- {}.", self.name(h), body.join(", ")),
            (None, _) => format!(":- {}.", body.join(", ")),
        }
    }

    pub fn rule_str(&self, r: &Rule) -> String {
        let mut body: Vec<String> = r.pos.iter().map(|a| self.name(*a).to_string()).collect();
        body.extend(r.neg.iter().map(|a| format!("not {}", self.name(*a))));
        match (r.head, body.is_empty()) {
            (Some(h), true) => format!("{}.", self.name(h)),
            (Some(h), false) => format!("{} :- {}.", self.name(h), body.join(", ")),
            (None, _) => format!(":- {}.", body.join(", ")),
        }
    }
}

/// Native text, one rule per line; parses back to the same rules.
impl fmt::Display for GroundProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{}", self.rule_str(r))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[u32]) -> Interpretation {
        ids.iter().map(|i| Atom(*i)).collect()
    }

    #[test]
    fn bitset_order() {
        // a0 k1 b2 e3 c4 f5: {b,e,f} sorts before {a,k,e,c}
        assert!(set(&[2, 3, 5]) < set(&[0, 1, 3, 4]));
        assert!(set(&[]) < set(&[7]));
        assert!(set(&[1]) < set(&[0]));
        assert_eq!(set(&[1, 2]).cmp(&set(&[1, 2])), Ordering::Equal);
        assert!(set(&[1]) < set(&[1, 2]));
    }

    #[test]
    fn rule_sets_are_normalized() {
        let r = Rule::new(Some(Atom(0)), [Atom(3), Atom(1), Atom(3)], [Atom(2)], 0);
        assert_eq!(r.pos, vec![Atom(1), Atom(3)]);
        assert!(!r.is_fact());
        assert!(Rule::new(Some(Atom(0)), [], [], 1).is_fact());
        assert!(Rule::new(None, [Atom(0)], [], 2).is_constraint());
    }
}
