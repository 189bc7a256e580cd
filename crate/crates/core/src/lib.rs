//! Proof-graphs for classical propositional logic: soundness by switchings,
//! empires, splitting, and sequentialization into LK.

pub mod dot;
pub mod empire;
pub mod fixtures;
pub mod formula;
pub mod generate;
pub mod graph;
pub mod io;
pub mod lk;
pub mod nodeset;
pub mod schema;
pub mod sequentialize;
pub mod split;
pub mod switching;

pub use formula::{parse_formula, Formula, ParseError, Sequent};
pub use graph::{
    ArityClass, Edge, EdgeKind, GraphBuilder, GraphError, Link, LinkId, LinkKind, Node, NodeId,
    Polarity, ProofGraph, RawGraph, StructuralViolation,
};
pub use nodeset::NodeSet;
