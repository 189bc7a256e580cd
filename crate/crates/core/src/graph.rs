//! Proof-graphs: formula occurrences joined by typed links.
//!
//! A [`RawGraph`] is whatever a caller or a file hands us. [`RawGraph::validate`]
//! lists every structural problem; only a violation-free raw graph becomes a
//! [`ProofGraph`], and every downstream algorithm takes the validated form.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{Formula, Sequent};
use crate::nodeset::NodeSet;
use crate::schema;

/// Index of a node within its graph. Ordering follows insertion order, which
/// is also the order nodes are written to files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

impl NodeId {
    pub fn new(index: usize) -> NodeId {
        NodeId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkId(u32);

impl LinkId {
    pub fn new(index: usize) -> LinkId {
        LinkId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub name: String,
    pub label: Formula,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LinkKind {
    AndEL,
    AndER,
    OrIL,
    OrIR,
    TopSW,
    BotSW,
    AndI,
    BotLink,
    ImpE,
    TopFW,
    Contraction,
    OrE,
    TopLink,
    ImpI,
    BotDW,
    Expansion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArityClass {
    /// one premise, one conclusion
    Simple,
    /// two premises, one conclusion
    Focussing,
    /// one premise, two conclusions (for `ImpI`: main conclusion and hypothesis)
    Defocussing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polarity {
    Conjunctive,
    Disjunctive,
}

impl LinkKind {
    pub const ALL: [LinkKind; 16] = [
        LinkKind::AndEL,
        LinkKind::AndER,
        LinkKind::OrIL,
        LinkKind::OrIR,
        LinkKind::TopSW,
        LinkKind::BotSW,
        LinkKind::AndI,
        LinkKind::BotLink,
        LinkKind::ImpE,
        LinkKind::TopFW,
        LinkKind::Contraction,
        LinkKind::OrE,
        LinkKind::TopLink,
        LinkKind::ImpI,
        LinkKind::BotDW,
        LinkKind::Expansion,
    ];

    pub fn arity_class(self) -> ArityClass {
        use LinkKind::*;
        match self {
            AndEL | AndER | OrIL | OrIR | TopSW | BotSW => ArityClass::Simple,
            AndI | BotLink | ImpE | TopFW | Contraction => ArityClass::Focussing,
            OrE | TopLink | ImpI | BotDW | Expansion => ArityClass::Defocussing,
        }
    }

    /// Semantic classification of the two-sided links; simple links have none.
    pub fn polarity(self) -> Option<Polarity> {
        use LinkKind::*;
        match self {
            AndI | BotLink | ImpE | TopFW | Expansion => Some(Polarity::Conjunctive),
            OrE | TopLink | ImpI | BotDW | Contraction => Some(Polarity::Disjunctive),
            AndEL | AndER | OrIL | OrIR | TopSW | BotSW => None,
        }
    }

    pub fn is_switchable(self) -> bool {
        matches!(self, LinkKind::Contraction | LinkKind::Expansion | LinkKind::ImpI)
    }

    pub fn premise_count(self) -> usize {
        match self.arity_class() {
            ArityClass::Focussing => 2,
            _ => 1,
        }
    }

    /// Length of the `conclusions` list. `ImpI` keeps its hypothesis apart.
    pub fn conclusion_count(self) -> usize {
        match self {
            LinkKind::ImpI => 1,
            _ if self.arity_class() == ArityClass::Defocussing => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        use LinkKind::*;
        match self {
            AndEL => "AndEL",
            AndER => "AndER",
            OrIL => "OrIL",
            OrIR => "OrIR",
            TopSW => "TopSW",
            BotSW => "BotSW",
            AndI => "AndI",
            BotLink => "BotLink",
            ImpE => "ImpE",
            TopFW => "TopFW",
            Contraction => "Contraction",
            OrE => "OrE",
            TopLink => "TopLink",
            ImpI => "ImpI",
            BotDW => "BotDW",
            Expansion => "Expansion",
        }
    }
}

impl fmt::Display for LinkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    pub kind: LinkKind,
    pub premises: Vec<NodeId>,
    pub conclusions: Vec<NodeId>,
    /// The discharged occurrence; present exactly for `ImpI`.
    pub hypothesis: Option<NodeId>,
}

impl Link {
    pub fn new(kind: LinkKind, premises: Vec<NodeId>, conclusions: Vec<NodeId>) -> Link {
        Link { kind, premises, conclusions, hypothesis: None }
    }

    pub fn imp_intro(premise: NodeId, main: NodeId, hypothesis: NodeId) -> Link {
        Link {
            kind: LinkKind::ImpI,
            premises: vec![premise],
            conclusions: vec![main],
            hypothesis: Some(hypothesis),
        }
    }

    /// Conclusions followed by the hypothesis, if any.
    pub fn lower_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.conclusions.iter().copied().chain(self.hypothesis)
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.premises.iter().copied().chain(self.lower_nodes())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Solid,
    Meta,
}

/// A directed edge of the proof-graph, from a premise to a conclusion (solid)
/// or from an `ImpI` premise to its hypothesis (meta).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: NodeId,
    pub to: NodeId,
    pub link: LinkId,
    pub kind: EdgeKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StructuralViolation {
    #[error("link {link} refers to node index {node}, which does not exist")]
    UnknownNode { link: usize, node: usize },
    #[error("link {link} ({kind}) has {premises} premise(s) and {conclusions} conclusion(s)")]
    ArityMismatch { link: usize, kind: LinkKind, premises: usize, conclusions: usize },
    #[error("link {link} ({kind}) {}", if *.present { "has a hypothesis but is not ImpI" } else { "is missing its hypothesis" })]
    HypothesisMismatch { link: usize, kind: LinkKind, present: bool },
    #[error("link {link} ({kind}) labels do not fit the link schema")]
    SchemaMismatch { link: usize, kind: LinkKind },
    #[error("link {link} uses node {node} in two positions")]
    RepeatedNode { link: usize, node: String },
    #[error("node {node} is the premise of more than one link")]
    DoubleUse { node: String },
    #[error("node {node} is the conclusion of more than one link")]
    DoubleConclusion { node: String },
    #[error("node name {name} is used twice")]
    DuplicateName { name: String },
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("structurally invalid proof-graph: {}", join_violations(.0))]
    Invalid(Vec<StructuralViolation>),
    #[error("malformed proof-graph file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("node {node}: invalid formula")]
    Formula { node: String, source: crate::formula::ParseError },
    #[error("link {link} refers to unknown node {node}")]
    UnknownNode { link: usize, node: String },
}

fn join_violations(vs: &[StructuralViolation]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// An unchecked proof-graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawGraph {
    pub nodes: Vec<Node>,
    pub links: Vec<Link>,
}

impl RawGraph {
    /// Lists every structural problem; an empty list means the graph is a
    /// proof-graph.
    pub fn validate(&self) -> Vec<StructuralViolation> {
        let mut out = Vec::new();
        let n = self.nodes.len();
        let mut names: HashMap<&str, usize> = HashMap::new();
        for node in &self.nodes {
            let seen = names.entry(&node.name).or_default();
            *seen += 1;
            if *seen == 2 {
                out.push(StructuralViolation::DuplicateName { name: node.name.clone() });
            }
        }
        let mut below = vec![0usize; n];
        let mut above = vec![0usize; n];
        for (li, link) in self.links.iter().enumerate() {
            let kind = link.kind;
            if let Some(bad) = link.nodes().find(|id| id.index() >= n) {
                out.push(StructuralViolation::UnknownNode { link: li, node: bad.index() });
                continue;
            }
            if link.premises.len() != kind.premise_count()
                || link.conclusions.len() != kind.conclusion_count()
            {
                out.push(StructuralViolation::ArityMismatch {
                    link: li,
                    kind,
                    premises: link.premises.len(),
                    conclusions: link.conclusions.len(),
                });
                continue;
            }
            if link.hypothesis.is_some() != (kind == LinkKind::ImpI) {
                out.push(StructuralViolation::HypothesisMismatch {
                    link: li,
                    kind,
                    present: link.hypothesis.is_some(),
                });
                continue;
            }
            // an ImpI may discharge its own premise (the identity A -> A)
            let mut seen: Vec<NodeId> = link.premises.clone();
            let mut repeated = None;
            for id in link.lower_nodes() {
                let self_discharge = kind == LinkKind::ImpI
                    && Some(id) == link.hypothesis
                    && link.premises[0] == id
                    && link.conclusions[0] != id;
                if seen.contains(&id) && !self_discharge {
                    repeated = Some(id);
                }
                seen.push(id);
            }
            if link.premises.len() == 2 && link.premises[0] == link.premises[1] {
                repeated = Some(link.premises[0]);
            }
            if let Some(id) = repeated {
                out.push(StructuralViolation::RepeatedNode {
                    link: li,
                    node: self.nodes[id.index()].name.clone(),
                });
                continue;
            }
            let label = |id: &NodeId| &self.nodes[id.index()].label;
            let premises: Vec<_> = link.premises.iter().map(label).collect();
            let conclusions: Vec<_> = link.lower_nodes().map(|id| label(&id)).collect();
            if !schema::matches(kind, &premises, &conclusions) {
                out.push(StructuralViolation::SchemaMismatch { link: li, kind });
            }
            for p in &link.premises {
                below[p.index()] += 1;
            }
            for c in link.lower_nodes() {
                above[c.index()] += 1;
            }
        }
        for (i, node) in self.nodes.iter().enumerate() {
            if below[i] > 1 {
                out.push(StructuralViolation::DoubleUse { node: node.name.clone() });
            }
            if above[i] > 1 {
                out.push(StructuralViolation::DoubleConclusion { node: node.name.clone() });
            }
        }
        out
    }

    pub fn into_graph(self) -> Result<ProofGraph, GraphError> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(GraphError::Invalid(violations));
        }
        Ok(ProofGraph::from_valid(self))
    }
}

/// A structurally valid proof-graph. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofGraph {
    nodes: Vec<Node>,
    links: Vec<Link>,
    /// link each node is a premise of
    below: Vec<Option<LinkId>>,
    /// link each node is a conclusion or hypothesis of
    above: Vec<Option<LinkId>>,
}

impl ProofGraph {
    fn from_valid(raw: RawGraph) -> ProofGraph {
        let n = raw.nodes.len();
        let mut below = vec![None; n];
        let mut above = vec![None; n];
        for (li, link) in raw.links.iter().enumerate() {
            for p in &link.premises {
                below[p.index()] = Some(LinkId::new(li));
            }
            for c in link.lower_nodes() {
                above[c.index()] = Some(LinkId::new(li));
            }
        }
        ProofGraph { nodes: raw.nodes, links: raw.links, below, above }
    }

    /// The graph with one node and no links: the axiom `A ⊢ A`.
    pub fn single(name: impl Into<String>, label: Formula) -> ProofGraph {
        ProofGraph::from_valid(RawGraph {
            nodes: vec![Node { name: name.into(), label }],
            links: vec![],
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        (0..self.nodes.len()).map(NodeId::new)
    }

    pub fn link_ids(&self) -> impl Iterator<Item = LinkId> {
        (0..self.links.len()).map(LinkId::new)
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    pub fn label(&self, id: NodeId) -> &Formula {
        &self.nodes[id.index()].label
    }

    pub fn name(&self, id: NodeId) -> &str {
        &self.nodes[id.index()].name
    }

    pub fn link(&self, id: LinkId) -> &Link {
        &self.links[id.index()]
    }

    pub fn find(&self, name: &str) -> Option<NodeId> {
        self.nodes.iter().position(|n| n.name == name).map(NodeId::new)
    }

    /// The link this node is a premise of.
    pub fn link_below(&self, id: NodeId) -> Option<LinkId> {
        self.below[id.index()]
    }

    /// The link this node is a conclusion (or discharged hypothesis) of.
    pub fn link_above(&self, id: NodeId) -> Option<LinkId> {
        self.above[id.index()]
    }

    pub fn switchable_links(&self) -> Vec<LinkId> {
        self.link_ids().filter(|&l| self.link(l).kind.is_switchable()).collect()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for (li, link) in self.links.iter().enumerate() {
            let link_id = LinkId::new(li);
            for &from in &link.premises {
                for &to in &link.conclusions {
                    out.push(Edge { from, to, link: link_id, kind: EdgeKind::Solid });
                }
                if let Some(to) = link.hypothesis {
                    out.push(Edge { from, to, link: link_id, kind: EdgeKind::Meta });
                }
            }
        }
        out
    }

    /// Nodes with no incoming edge, solid or meta.
    pub fn is_premise(&self, id: NodeId) -> bool {
        self.above[id.index()].is_none()
    }

    /// Nodes with no outgoing edge.
    pub fn is_conclusion(&self, id: NodeId) -> bool {
        self.below[id.index()].is_none()
    }

    /// Nodes with no solid and exactly one meta incoming edge.
    pub fn is_hypothesis(&self, id: NodeId) -> bool {
        self.above[id.index()].is_some_and(|l| self.link(l).hypothesis == Some(id))
    }

    pub fn premises(&self) -> Vec<NodeId> {
        self.node_ids().filter(|&n| self.is_premise(n)).collect()
    }

    pub fn conclusions(&self) -> Vec<NodeId> {
        self.node_ids().filter(|&n| self.is_conclusion(n)).collect()
    }

    pub fn hypotheses(&self) -> Vec<NodeId> {
        self.node_ids().filter(|&n| self.is_hypothesis(n)).collect()
    }

    /// `PREMIS ⊢ CONC`, read off the node labels.
    pub fn end_sequent(&self) -> Sequent {
        Sequent::new(
            self.premises().into_iter().map(|n| self.label(n).clone()),
            self.conclusions().into_iter().map(|n| self.label(n).clone()),
        )
    }

    pub fn all_nodes(&self) -> NodeSet {
        NodeSet::full(self.node_count())
    }

    /// Links all of whose nodes lie in `members`.
    pub fn links_within(&self, members: &NodeSet) -> Vec<LinkId> {
        self.link_ids()
            .filter(|&l| self.link(l).nodes().all(|n| members.contains(n)))
            .collect()
    }

    /// The subgraph on `members` containing the given links, renumbered in the
    /// original node order. Every link must lie inside `members`.
    pub fn subgraph(&self, members: &NodeSet, links: &[LinkId]) -> ProofGraph {
        let mut renumber = vec![None; self.node_count()];
        let mut nodes = Vec::with_capacity(members.len());
        for id in members.iter() {
            renumber[id.index()] = Some(NodeId::new(nodes.len()));
            nodes.push(self.node(id).clone());
        }
        let map = |id: NodeId| renumber[id.index()].expect("subgraph link leaves the member set");
        let links = links
            .iter()
            .map(|&l| {
                let link = self.link(l);
                Link {
                    kind: link.kind,
                    premises: link.premises.iter().map(|&n| map(n)).collect(),
                    conclusions: link.conclusions.iter().map(|&n| map(n)).collect(),
                    hypothesis: link.hypothesis.map(map),
                }
            })
            .collect();
        ProofGraph::from_valid(RawGraph { nodes, links })
    }

    /// The subgraph on `members` with every link lying inside it.
    pub fn induced(&self, members: &NodeSet) -> ProofGraph {
        self.subgraph(members, &self.links_within(members))
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph { nodes: self.nodes.clone(), links: self.links.clone() }
    }
}

/// Incremental construction of graphs by node name, mostly for fixtures.
#[derive(Default)]
pub struct GraphBuilder {
    raw: RawGraph,
}

impl GraphBuilder {
    pub fn new() -> GraphBuilder {
        GraphBuilder::default()
    }

    /// Adds a node; panics if `formula` does not parse.
    pub fn node(&mut self, name: &str, formula: &str) -> NodeId {
        let label = crate::formula::parse_formula(formula)
            .unwrap_or_else(|e| panic!("bad fixture formula {formula:?}: {e}"));
        self.raw.nodes.push(Node { name: name.to_string(), label });
        NodeId::new(self.raw.nodes.len() - 1)
    }

    pub fn link(&mut self, kind: LinkKind, premises: &[NodeId], conclusions: &[NodeId]) -> LinkId {
        self.raw.links.push(Link::new(kind, premises.to_vec(), conclusions.to_vec()));
        LinkId::new(self.raw.links.len() - 1)
    }

    pub fn imp_intro(&mut self, premise: NodeId, main: NodeId, hypothesis: NodeId) -> LinkId {
        self.raw.links.push(Link::imp_intro(premise, main, hypothesis));
        LinkId::new(self.raw.links.len() - 1)
    }

    pub fn raw(self) -> RawGraph {
        self.raw
    }

    pub fn build(self) -> Result<ProofGraph, GraphError> {
        self.raw.into_graph()
    }
}
