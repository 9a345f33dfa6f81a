//! Explanation graphs of an atom under an assumption set.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::assumption::{AssumptionSet, DEFAULT_SELECTION_CAP};
use crate::error::ExplainError;
use crate::graph::{positive_on_cycle, search_selections, Edge, Label, Node};
use crate::program::{Atom, Literal};
use crate::support::{SupportSet, SupportTable};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExplanationGraph {
    pub root: Node,
    pub nodes: BTreeSet<Node>,
    pub edges: BTreeSet<Edge>,
}

impl ExplanationGraph {
    /// Builds a graph from unlabeled edges, labeling each by polarity.
    pub fn from_edges(root: Node, edges: impl IntoIterator<Item = (Node, Node)>) -> Self {
        let mut nodes = BTreeSet::from([root]);
        let edges = edges
            .into_iter()
            .map(|(from, to)| {
                nodes.insert(from);
                nodes.insert(to);
                Edge { from, to, label: Label::between(from, to) }
            })
            .collect();
        ExplanationGraph { root, nodes, edges }
    }

    pub fn out_edges(&self, n: Node) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| e.from == n)
    }

    pub fn has_edge(&self, from: Node, to: Node, label: Label) -> bool {
        self.edges.contains(&Edge { from, to, label })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Explanations {
    pub graphs: Vec<ExplanationGraph>,
    /// Some root support hit the selection cap; the list may be incomplete.
    pub truncated: bool,
}

/// The table with every `~u` entry replaced by the single support `assume`.
pub fn assume_table(table: &SupportTable, u: &AssumptionSet) -> Result<SupportTable, ExplainError> {
    let mut t = table.clone();
    for &a in &u.atoms {
        if table.answer_set().contains(a) {
            return Err(ExplainError::AssumptionMismatch(format!("#{}", a.0)));
        }
        t.set(Literal::neg(a), vec![SupportSet::Assume]);
    }
    Ok(t)
}

pub fn explanation_graphs(atom: Atom, table: &SupportTable, u: &AssumptionSet) -> Result<Vec<ExplanationGraph>, ExplainError> {
    Ok(explanation_graphs_capped(atom, table, u, DEFAULT_SELECTION_CAP)?.graphs)
}

/// All explanation graphs of `atom`, ordered by root support then selection,
/// with duplicates removed. `cap` bounds the walks tried per root support.
pub fn explanation_graphs_capped(
    atom: Atom,
    table: &SupportTable,
    u: &AssumptionSet,
    cap: usize,
) -> Result<Explanations, ExplainError> {
    let root = table.key_of(atom);
    let table = assume_table(table, u)?;
    let local: &BTreeMap<Literal, Vec<SupportSet>> = table.entries();
    let supports = local.get(&root).ok_or_else(|| ExplainError::UnknownAtom(format!("#{}", atom.0)))?;
    let mut out = Explanations::default();
    let mut seen = BTreeSet::new();
    for s in supports {
        out.truncated |= search_selections(root, s, local, None, cap, |_, edges| {
            if !positive_on_cycle(edges) {
                let g = ExplanationGraph::from_edges(Node::Lit(root), edges.iter().copied());
                if seen.insert((g.nodes.clone(), g.edges.clone())) {
                    out.graphs.push(g);
                }
            }
            true
        });
    }
    Ok(out)
}
