//! Checks a graph against the definition of an explanation graph, without
//! consulting the support table or the generator.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::assumption::AssumptionSet;
use crate::explanation::ExplanationGraph;
use crate::graph::{Edge, Label, Node};
use crate::program::{GroundProgram, Interpretation, Literal, Rule};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub node: Option<Node>,
    pub edge: Option<Edge>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Violation {}

fn node_str(p: &GroundProgram, n: Node) -> String {
    match n {
        Node::Lit(l) => p.literal_str(l),
        Node::Top => "T".into(),
        Node::Bot => "F".into(),
        Node::Assume => "assume".into(),
    }
}

struct Check<'a> {
    g: &'a ExplanationGraph,
    p: &'a GroundProgram,
    ans: &'a Interpretation,
    u: &'a AssumptionSet,
    out: BTreeMap<Node, Vec<&'a Edge>>,
}

impl<'a> Check<'a> {
    fn fail<T>(&self, node: Option<Node>, edge: Option<Edge>, message: String) -> Result<T, Violation> {
        Err(Violation { node, edge, message })
    }

    fn name(&self, n: Node) -> String {
        node_str(self.p, n)
    }

    fn holds(&self, l: Literal) -> bool {
        self.ans.contains(l.atom) == l.positive
    }

    fn nodes(&self) -> Result<(), Violation> {
        if !self.g.nodes.contains(&self.g.root) {
            return self.fail(Some(self.g.root), None, "root is not a node".into());
        }
        if self.g.root.is_sink() {
            return self.fail(Some(self.g.root), None, "root is not a literal".into());
        }
        for &n in &self.g.nodes {
            if let Node::Lit(l) = n {
                if l.atom.index() >= self.p.atom_count() {
                    return self.fail(Some(n), None, format!("node #{} is not an atom of the program", l.atom.0));
                }
                if !self.holds(l) {
                    return self.fail(Some(n), None, format!("{} does not hold in the answer set", self.name(n)));
                }
            }
        }
        for e in &self.g.edges {
            if !self.g.nodes.contains(&e.from) || !self.g.nodes.contains(&e.to) {
                return self.fail(None, Some(*e), "edge endpoint is not a node".into());
            }
        }
        Ok(())
    }

    fn reachability(&self) -> Result<(), Violation> {
        let mut seen = BTreeSet::from([self.g.root]);
        let mut queue = VecDeque::from([self.g.root]);
        while let Some(n) = queue.pop_front() {
            for e in self.out.get(&n).into_iter().flatten() {
                if seen.insert(e.to) {
                    queue.push_back(e.to);
                }
            }
        }
        match self.g.nodes.iter().find(|n| !seen.contains(n)) {
            Some(&n) => self.fail(Some(n), None, format!("{} is not reachable from the root", self.name(n))),
            None => Ok(()),
        }
    }

    fn labels(&self) -> Result<(), Violation> {
        for e in &self.g.edges {
            let want = match (e.from, e.to) {
                (Node::Lit(l), Node::Top) if l.positive => Label::Plus,
                (Node::Lit(l), Node::Bot | Node::Assume) if !l.positive => {
                    if e.to == Node::Bot { Label::Plus } else { Label::Assume }
                }
                (Node::Lit(a), Node::Lit(b)) => {
                    if a.positive == b.positive { Label::Plus } else { Label::Minus }
                }
                _ => return self.fail(Some(e.from), Some(*e), format!("{} cannot point to {}", self.name(e.from), self.name(e.to))),
            };
            if e.label != want {
                return self.fail(Some(e.from), Some(*e), format!("edge {} -> {} has the wrong label", self.name(e.from), self.name(e.to)));
            }
        }
        Ok(())
    }

    fn supports(&self) -> Result<(), Violation> {
        for &n in &self.g.nodes {
            let kids: BTreeSet<Node> = self.out.get(&n).into_iter().flatten().map(|e| e.to).collect();
            let Node::Lit(l) = n else {
                if !kids.is_empty() {
                    return self.fail(Some(n), None, format!("edge leaves {}", self.name(n)));
                }
                continue;
            };
            if l.positive {
                self.positive(n, l, &kids)?;
            } else {
                self.negative(n, l, &kids)?;
            }
        }
        Ok(())
    }

    fn positive(&self, n: Node, l: Literal, kids: &BTreeSet<Node>) -> Result<(), Violation> {
        if kids.contains(&Node::Top) {
            if kids.len() == 1 && self.p.is_fact(l.atom) {
                return Ok(());
            }
            return self.fail(Some(n), None, format!("{} points to T but is not a fact with no other support", self.name(n)));
        }
        let encodes = |r: &Rule| {
            let body: BTreeSet<Node> = r
                .pos
                .iter()
                .map(|a| Node::Lit(Literal::pos(*a)))
                .chain(r.neg.iter().map(|a| Node::Lit(Literal::neg(*a))))
                .collect();
            !body.is_empty() && body == *kids && r.body_holds(self.ans)
        };
        if self.p.rules_for(l.atom).any(encodes) {
            Ok(())
        } else {
            self.fail(Some(n), None, format!("out-neighbors encode no rule for {}", self.name(n)))
        }
    }

    fn negative(&self, n: Node, l: Literal, kids: &BTreeSet<Node>) -> Result<(), Violation> {
        if self.u.contains(l.atom) {
            if kids.len() == 1 && kids.contains(&Node::Assume) {
                return Ok(());
            }
            return self.fail(Some(n), None, format!("assumed {} must point to assume only", self.name(n)));
        }
        if kids.contains(&Node::Assume) {
            return self.fail(Some(n), None, format!("{} points to assume but is not assumed", self.name(n)));
        }
        if kids.contains(&Node::Bot) {
            if kids.len() == 1 && !self.p.has_rules_for(l.atom) {
                return Ok(());
            }
            return self.fail(Some(n), None, format!("{} points to F but its atom heads a rule", self.name(n)));
        }
        let rules: Vec<&Rule> = self.p.rules_for(l.atom).collect();
        if rules.is_empty() {
            return self.fail(Some(n), None, format!("{} heads no rule and must point to F", self.name(n)));
        }
        let falsifiers = |r: &Rule| -> BTreeSet<Node> {
            r.neg
                .iter()
                .map(|a| Literal::pos(*a))
                .chain(r.pos.iter().map(|a| Literal::neg(*a)))
                .filter(|x| self.holds(*x))
                .map(Node::Lit)
                .filter(|x| kids.contains(x))
                .collect()
        };
        let per_rule: Vec<BTreeSet<Node>> = rules.iter().map(|r| falsifiers(r)).collect();
        if let Some(i) = per_rule.iter().position(|f| f.is_empty()) {
            let r = self.p.rule_str(rules[i]);
            return self.fail(Some(n), None, format!("out-neighbors of {} falsify no literal of `{}`", self.name(n), r));
        }
        // each out-neighbor must be the falsifier chosen for some distinct rule
        if !covers(kids, &per_rule) {
            return self.fail(Some(n), None, format!("out-neighbors of {} are not one falsifier per rule", self.name(n)));
        }
        Ok(())
    }

    fn acyclic_positive(&self) -> Result<(), Violation> {
        for &n in self.g.nodes.iter().filter(|n| n.is_positive()) {
            let mut seen = BTreeSet::new();
            let mut queue: VecDeque<Node> = self.out.get(&n).into_iter().flatten().map(|e| e.to).collect();
            while let Some(m) = queue.pop_front() {
                if m == n {
                    return self.fail(Some(n), None, format!("positive node {} lies on a cycle", self.name(n)));
                }
                if seen.insert(m) {
                    queue.extend(self.out.get(&m).into_iter().flatten().map(|e| e.to));
                }
            }
        }
        Ok(())
    }
}

/// True if every kid can be matched to a distinct rule that it falsifies.
fn covers(kids: &BTreeSet<Node>, per_rule: &[BTreeSet<Node>]) -> bool {
    fn augment(k: Node, per_rule: &[BTreeSet<Node>], owner: &mut Vec<Option<Node>>, tried: &mut Vec<bool>) -> bool {
        for (r, f) in per_rule.iter().enumerate() {
            if f.contains(&k) && !tried[r] {
                tried[r] = true;
                if owner[r].is_none_or(|o| augment(o, per_rule, owner, tried)) {
                    owner[r] = Some(k);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; per_rule.len()];
    kids.iter().all(|&k| augment(k, per_rule, &mut owner, &mut vec![false; per_rule.len()]))
}

/// Checks `g` against program `p`, answer set `ans` and assumptions `u`.
/// Returns the first violation found.
pub fn validate_explanation_graph(
    g: &ExplanationGraph,
    p: &GroundProgram,
    ans: &Interpretation,
    u: &AssumptionSet,
) -> Result<(), Violation> {
    let mut out: BTreeMap<Node, Vec<&Edge>> = BTreeMap::new();
    for e in &g.edges {
        out.entry(e.from).or_default().push(e);
    }
    let c = Check { g, p, ans, u, out };
    c.nodes()?;
    c.reachability()?;
    c.labels()?;
    c.supports()?;
    c.acyclic_positive()
}
