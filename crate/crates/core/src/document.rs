//! Serializable form of an explanation graph, plus DOT and text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::assumption::AssumptionSet;
use crate::explanation::ExplanationGraph;
use crate::graph::{Label, Node};
use crate::program::{GroundProgram, Interpretation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Pos,
    Neg,
    Top,
    Bot,
    Assume,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocNode {
    pub id: usize,
    pub kind: NodeKind,
    /// Atom name for literal nodes, `T`, `F` or `assume` otherwise.
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocEdge {
    pub from: usize,
    pub to: usize,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub program_digest: String,
    pub answer_set: Vec<String>,
    pub assumption_set: Vec<String>,
    pub root: usize,
    pub nodes: Vec<DocNode>,
    pub edges: Vec<DocEdge>,
}

/// Hex SHA-256 of the program's canonical rule listing.
pub fn program_digest(p: &GroundProgram) -> String {
    let hash = Sha256::digest(p.to_string().as_bytes());
    hash.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn sorted_names<'a>(p: &GroundProgram, atoms: impl IntoIterator<Item = &'a crate::program::Atom>) -> Vec<String> {
    let mut v: Vec<String> = atoms.into_iter().map(|a| p.name(*a).to_string()).collect();
    v.sort();
    v
}

impl GraphDocument {
    /// Node ids are dense: the root is 0, the rest follow in node order.
    pub fn new(g: &ExplanationGraph, p: &GroundProgram, ans: &Interpretation, u: &AssumptionSet) -> Self {
        let order: Vec<Node> = std::iter::once(g.root).chain(g.nodes.iter().copied().filter(|n| *n != g.root)).collect();
        let ids: BTreeMap<Node, usize> = order.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        let nodes = order
            .iter()
            .enumerate()
            .map(|(id, n)| {
                let (kind, name) = match n {
                    Node::Lit(l) if l.positive => (NodeKind::Pos, p.name(l.atom).to_string()),
                    Node::Lit(l) => (NodeKind::Neg, p.name(l.atom).to_string()),
                    Node::Top => (NodeKind::Top, "T".into()),
                    Node::Bot => (NodeKind::Bot, "F".into()),
                    Node::Assume => (NodeKind::Assume, "assume".into()),
                };
                DocNode { id, kind, name }
            })
            .collect();
        let mut edges: Vec<DocEdge> =
            g.edges.iter().map(|e| DocEdge { from: ids[&e.from], to: ids[&e.to], label: e.label }).collect();
        edges.sort_by_key(|e| (e.from, e.to));
        GraphDocument {
            program_digest: program_digest(p),
            answer_set: sorted_names(p, ans.as_set()),
            assumption_set: sorted_names(p, &u.atoms),
            root: 0,
            nodes,
            edges,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn display_name(&self, id: usize) -> String {
        let n = &self.nodes[id];
        match n.kind {
            NodeKind::Neg => format!("~{}", n.name),
            _ => n.name.clone(),
        }
    }

    pub fn has_edge(&self, from: &str, to: &str, label: Label) -> bool {
        self.edges
            .iter()
            .any(|e| e.label == label && self.display_name(e.from) == from && self.display_name(e.to) == to)
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub fn emit_dot(doc: &GraphDocument) -> String {
    let mut out = String::from("digraph explanation {\n");
    for n in &doc.nodes {
        let style = match n.kind {
            NodeKind::Pos => "shape=ellipse",
            NodeKind::Neg => "shape=ellipse, style=dashed",
            _ => "shape=box",
        };
        let _ = writeln!(out, "  n{} [label={}, {}];", n.id, quote(&doc.display_name(n.id)), style);
    }
    for e in &doc.edges {
        let _ = writeln!(out, "  n{} -> n{} [label={}];", e.from, e.to, quote(e.label.symbol()));
    }
    out.push_str("}\n");
    out
}

/// One `from -> to (label)` line per edge.
pub fn emit_text(doc: &GraphDocument) -> String {
    let mut out = format!("root {}\n", doc.display_name(doc.root));
    for e in &doc.edges {
        let _ = writeln!(out, "{} -> {} ({})", doc.display_name(e.from), doc.display_name(e.to), e.label.symbol());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explanation::explanation_graphs;
    use crate::format::parse_program;
    use crate::support::build_support_table;

    const P1: &str = "a :- k, not b.\nk :- e, not b.\nc :- a, b.\nb :- not a.\nc :- k.\nf :- e, not k, not c.\ne.\n";

    fn doc(atom: &str, u: &str) -> GraphDocument {
        let p = parse_program(P1).unwrap();
        let ans = p.interpretation_from_names(["b", "e", "f"]).unwrap();
        let t = build_support_table(&p, &ans).unwrap();
        let u: AssumptionSet = [p.atom(u).unwrap()].into_iter().collect();
        let g = explanation_graphs(p.atom(atom).unwrap(), &t, &u).unwrap().remove(0);
        GraphDocument::new(&g, &p, &ans, &u)
    }

    #[test]
    fn fact_document() {
        let d = doc("e", "a");
        assert_eq!(d.nodes.len(), 2);
        assert_eq!(
            emit_dot(&d),
            "digraph explanation {\n  n0 [label=\"e\", shape=ellipse];\n  n1 [label=\"T\", shape=box];\n  n0 -> n1 [label=\"+\"];\n}\n"
        );
        assert_eq!(emit_text(&d), "root e\ne -> T (+)\n");
    }

    #[test]
    fn second_graph_document() {
        let d = doc("f", "k");
        assert_eq!(d.nodes.len(), 7);
        assert_eq!(d.assumption_set, vec!["k"]);
        assert_eq!(d.answer_set, vec!["b", "e", "f"]);
        assert!(d.has_edge("~k", "assume", Label::Assume));
        let dot = emit_dot(&d);
        assert!(dot.contains("[label=\"assume\", shape=box]"));
        assert!(!dot.contains("label=\"b\""));
        assert_eq!(dot.matches(" -> ").count(), d.edges.len());
    }

    #[test]
    fn json_round_trip() {
        let d = doc("f", "a");
        let text = d.to_json();
        assert!(text.contains("\"label\": \"o\""));
        assert_eq!(GraphDocument::from_json(&text).unwrap(), d);
        assert_eq!(d.program_digest.len(), 64);
    }

    #[test]
    fn single_node_dot() {
        let d = GraphDocument {
            program_digest: String::new(),
            answer_set: vec![],
            assumption_set: vec![],
            root: 0,
            nodes: vec![DocNode { id: 0, kind: NodeKind::Neg, name: "say(\"x\")".into() }],
            edges: vec![],
        };
        assert_eq!(emit_dot(&d), "digraph explanation {\n  n0 [label=\"~say(\\\"x\\\")\", shape=ellipse, style=dashed];\n}\n");
    }
}
