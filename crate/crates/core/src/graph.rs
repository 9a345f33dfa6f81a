//! Nodes, labeled edges and the depth-first walk shared by the derivation
//! path check and explanation graph construction.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::algo::tarjan_scc;
use petgraph::graphmap::DiGraphMap;
use serde::{Deserialize, Serialize};

use crate::program::{AtomSet, Literal};
use crate::support::SupportSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Node {
    Lit(Literal),
    Top,
    Bot,
    Assume,
}

impl Node {
    pub fn is_negative(self) -> bool {
        matches!(self, Node::Lit(l) if !l.positive)
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Node::Lit(l) if l.positive)
    }

    pub fn is_sink(self) -> bool {
        !matches!(self, Node::Lit(_))
    }

    pub fn literal(self) -> Option<Literal> {
        match self {
            Node::Lit(l) => Some(l),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "o")]
    Assume,
}

impl Label {
    /// Label of an edge, fixed by the polarities of its endpoints.
    pub fn between(from: Node, to: Node) -> Label {
        match (from.is_positive(), to) {
            (_, Node::Assume) => Label::Assume,
            (_, Node::Top | Node::Bot) => Label::Plus,
            (true, Node::Lit(l)) if l.positive => Label::Plus,
            (true, _) => Label::Minus,
            (false, Node::Lit(l)) if l.positive => Label::Minus,
            (false, _) => Label::Plus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Label::Plus => "+",
            Label::Minus => "-",
            Label::Assume => "o",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub from: Node,
    pub to: Node,
    pub label: Label,
}

pub(crate) fn children(s: &SupportSet) -> Vec<Node> {
    match s {
        SupportSet::Literals(l) => l.iter().map(|x| Node::Lit(*x)).collect(),
        SupportSet::Fact => vec![Node::Top],
        SupportSet::NoRule => vec![Node::Bot],
        SupportSet::Assume => vec![Node::Assume],
    }
}

/// Walk bookkeeping: visited nodes, the current path, the edge each path
/// node is expanding, and dependencies on other tentative atoms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DerivationCheckState {
    pub visited: BTreeSet<Node>,
    pub stack: Vec<Node>,
    pub active_edge: BTreeMap<Node, Node>,
    pub deps: AtomSet,
}

/// Follows `active_edge` from `s`; true iff it returns to `e` through
/// negative nodes only.
pub fn cycle_identification(active_edge: &BTreeMap<Node, Node>, s: Node, e: Node) -> bool {
    let mut s = s;
    for _ in 0..=active_edge.len() {
        let Some(&v) = active_edge.get(&s) else { return false };
        if !(s.is_negative() && v.is_negative()) {
            return false;
        }
        if v == e {
            return true;
        }
        s = v;
    }
    false
}

/// True if some positive node lies on a directed cycle.
pub(crate) fn positive_on_cycle(edges: &[(Node, Node)]) -> bool {
    let mut g: DiGraphMap<Node, ()> = DiGraphMap::new();
    for (a, b) in edges {
        if a == b && a.is_positive() {
            return true;
        }
        g.add_edge(*a, *b, ());
    }
    tarjan_scc(&g).iter().any(|scc| scc.len() > 1 && scc.iter().any(|n| n.is_positive()))
}

pub(crate) enum Lookup<'a> {
    Children(&'a SupportSet),
    /// No entry: the node has no children.
    Leaf,
    /// The node has supports but none has been chosen yet.
    Pending,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Outcome {
    Safe,
    Unsafe,
    Pending(Literal),
}

pub(crate) struct Walker<'a, F> {
    lookup: F,
    /// Tentative atoms whose negative literal is recorded, not expanded.
    others: Option<&'a AtomSet>,
    pub state: DerivationCheckState,
    pub edges: Vec<(Node, Node)>,
}

impl<'a, 's, F> Walker<'a, F>
where
    F: FnMut(Literal) -> Lookup<'s>,
{
    pub fn new(lookup: F, others: Option<&'a AtomSet>) -> Self {
        Walker { lookup, others, state: DerivationCheckState::default(), edges: Vec::new() }
    }

    pub fn with_state(lookup: F, others: Option<&'a AtomSet>, state: DerivationCheckState) -> Self {
        Walker { lookup, others, state, edges: Vec::new() }
    }

    /// Depth-first expansion of `k`. A back edge to a positive node, or to a
    /// negative node whose closing cycle is not all-negative, is unsafe.
    pub fn walk(&mut self, k: Node) -> Outcome {
        let kids = match k {
            Node::Lit(l) => match (self.lookup)(l) {
                Lookup::Children(s) => children(s),
                Lookup::Leaf => Vec::new(),
                Lookup::Pending => return Outcome::Pending(l),
            },
            _ => Vec::new(),
        };
        self.state.visited.insert(k);
        self.state.stack.push(k);
        for i in kids {
            self.state.active_edge.insert(k, i);
            if let (Some(others), Node::Lit(l)) = (self.others, i) {
                if !l.positive && others.contains(&l.atom) {
                    self.state.deps.insert(l.atom);
                    continue;
                }
            }
            self.edges.push((k, i));
            if !self.state.visited.contains(&i) {
                match self.walk(i) {
                    Outcome::Safe => {}
                    other => return other,
                }
            } else if self.state.stack.contains(&i)
                && (!i.is_negative() || !cycle_identification(&self.state.active_edge, i, i))
            {
                return Outcome::Unsafe;
            }
        }
        self.state.stack.pop();
        self.state.active_edge.remove(&k);
        Outcome::Safe
    }
}

/// Enumerates selections lazily: a walk that reaches a key with no chosen
/// support is restarted once per support of that key. Keys are thus
/// decided in the order the walk first reaches them, and only reachable
/// keys are ever branched on. `visit` receives each completed safe walk and
/// returns false to stop. Returns whether the `cap` on walks was hit.
pub(crate) fn search_selections(
    root: Literal,
    seed: &SupportSet,
    local: &BTreeMap<Literal, Vec<SupportSet>>,
    others: Option<&AtomSet>,
    cap: usize,
    mut visit: impl FnMut(&DerivationCheckState, &[(Node, Node)]) -> bool,
) -> bool {
    let mut pending: Vec<BTreeMap<Literal, usize>> = vec![BTreeMap::new()];
    let mut walks = 0usize;
    while let Some(chosen) = pending.pop() {
        if walks >= cap {
            return true;
        }
        walks += 1;
        let lookup = |l: Literal| {
            if l == root {
                return Lookup::Children(seed);
            }
            match (chosen.get(&l), local.get(&l)) {
                (Some(i), Some(sets)) => Lookup::Children(&sets[*i]),
                (None, Some(sets)) if !sets.is_empty() => Lookup::Pending,
                _ => Lookup::Leaf,
            }
        };
        let mut w = Walker::new(lookup, others);
        match w.walk(Node::Lit(root)) {
            Outcome::Pending(l) => {
                let n = local[&l].len();
                for i in (0..n).rev() {
                    let mut next = chosen.clone();
                    next.insert(l, i);
                    pending.push(next);
                }
            }
            Outcome::Safe => {
                if !visit(&w.state, &w.edges) {
                    return false;
                }
            }
            Outcome::Unsafe => {}
        }
    }
    false
}
