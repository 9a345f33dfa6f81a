//! Answer sets, supported sets, minimal assumption sets and explanation
//! graphs for ground normal logic programs.
//!
//! ```
//! use xasp_core::*;
//!
//! let p = parse_program("a :- not b. b :- not a. c :- a.").unwrap();
//! let opts = SolveOptions::default();
//! let ans = enumerate_answer_sets(&p, &opts).unwrap().remove(0);
//! let c = cautious_consequences(&p, opts.branching_cap).unwrap();
//! let table = build_support_table(&p, &ans).unwrap();
//! let analysis = analyze_assumptions(&p, &ans, &c, &table, DEFAULT_SELECTION_CAP).unwrap();
//! for u in &analysis.assumption_sets {
//!     for g in explanation_graphs(p.atom("b").unwrap(), &table, u).unwrap() {
//!         print!("{}", emit_dot(&GraphDocument::new(&g, &p, &ans, u)));
//!     }
//! }
//! ```

pub mod assumption;
pub mod document;
pub mod error;
pub mod explanation;
pub mod format;
pub mod graph;
pub mod program;
pub mod solver;
pub mod support;
pub mod validate;

pub use assumption::{
    analyze_assumptions, assumption_diagnostic, minimal_assumption_sets, tentative_assumptions, AssumptionAnalysis,
    AssumptionDiagnostic, AssumptionSet, TentativeAssumptions, DEFAULT_SELECTION_CAP,
};
pub use document::{emit_dot, emit_text, GraphDocument};
pub use error::{AspifError, ExplainError, ParseError, ResourceError};
pub use explanation::{explanation_graphs, explanation_graphs_capped, ExplanationGraph, Explanations};
pub use format::{emit_aspif, externalize_facts, parse_aspif, parse_program};
pub use graph::{Edge, Label, Node};
pub use program::{Atom, AtomSet, GroundProgram, Interpretation, Literal, Rule};
pub use solver::{
    cautious_consequences, enumerate_answer_sets, is_answer_set, least_model, reduct, well_founded_model,
    CautiousConsequences, SolveOptions, WellFoundedModel, DEFAULT_BRANCHING_CAP,
};
pub use support::{build_support_table, SupportSet, SupportTable};
pub use validate::{validate_explanation_graph, Violation};
