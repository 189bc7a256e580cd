//! The order on occurrences by whole empires, and split nodes.
//!
//! `a ≪ b` holds when the whole empire of `a` is strictly contained in that
//! of `b`. The order is only defined on nodes that are neither premises nor
//! conclusions of the graph. A split node is a maximal node whose whole
//! empire is the entire graph; its north and south empires cut the graph in
//! two along that node.

use thiserror::Error;

use crate::empire::{north_empire, south_empire, whole_empire, Empire};
use crate::graph::{LinkId, LinkKind, NodeId, ProofGraph};
use crate::nodeset::NodeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// an expansion whose premise is a premise of the graph
    InitialExpansion,
    /// a contraction whose conclusion is a conclusion of the graph
    FinalContraction,
    /// an `ImpI` whose main conclusion is a conclusion of the graph
    FinalImpIntro,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("node {node} is a premise or conclusion of the graph")]
    OutOfDomain { node: String },
    #[error("graph has {links} link(s); splitting needs at least two")]
    TooSmall { links: usize },
    #[error("link {} must be removed first ({reduction:?})", link.index())]
    PreconditionViolated { reduction: Reduction, link: LinkId },
    #[error("no split node: {0}")]
    NoSplit(String),
}

/// Nodes on which the order is defined.
pub fn in_domain(g: &ProofGraph, a: NodeId) -> bool {
    !g.is_premise(a) && !g.is_conclusion(a)
}

pub fn domain(g: &ProofGraph) -> Vec<NodeId> {
    g.node_ids().filter(|&a| in_domain(g, a)).collect()
}

pub fn order_lt(g: &ProofGraph, a: NodeId, b: NodeId) -> Result<bool, SplitError> {
    for n in [a, b] {
        if !in_domain(g, n) {
            return Err(SplitError::OutOfDomain { node: g.name(n).to_string() });
        }
    }
    Ok(whole_empire(g, a).members.is_proper_subset(&whole_empire(g, b).members))
}

/// Whole empires of the whole domain, for repeated order queries.
pub struct OccurrenceOrder {
    domain: Vec<NodeId>,
    whole: Vec<Option<NodeSet>>,
}

impl OccurrenceOrder {
    pub fn new(g: &ProofGraph) -> OccurrenceOrder {
        let domain = domain(g);
        let mut whole = vec![None; g.node_count()];
        for &a in &domain {
            whole[a.index()] = Some(whole_empire(g, a).members);
        }
        OccurrenceOrder { domain, whole }
    }

    pub fn domain(&self) -> &[NodeId] {
        &self.domain
    }

    pub fn whole_empire(&self, a: NodeId) -> Option<&NodeSet> {
        self.whole[a.index()].as_ref()
    }

    /// `None` when either node is outside the domain.
    pub fn lt(&self, a: NodeId, b: NodeId) -> Option<bool> {
        Some(self.whole_empire(a)?.is_proper_subset(self.whole_empire(b)?))
    }

    /// Domain nodes with nothing strictly above them, in node order.
    pub fn maximal(&self) -> Vec<NodeId> {
        self.domain
            .iter()
            .copied()
            .filter(|&a| !self.domain.iter().any(|&b| self.lt(a, b) == Some(true)))
            .collect()
    }
}

/// The first link that sequentialization removes before splitting: initial
/// expansions, then final contractions, then final `ImpI` links, each time
/// the one whose graph-facing node has the smallest id.
pub fn reducible_link(g: &ProofGraph) -> Option<(Reduction, LinkId)> {
    let candidates = [
        (Reduction::InitialExpansion, LinkKind::Expansion),
        (Reduction::FinalContraction, LinkKind::Contraction),
        (Reduction::FinalImpIntro, LinkKind::ImpI),
    ];
    for (reduction, kind) in candidates {
        let found = g
            .link_ids()
            .filter(|&l| g.link(l).kind == kind)
            .filter_map(|l| {
                let link = g.link(l);
                let node = match reduction {
                    Reduction::InitialExpansion => link.premises[0],
                    _ => link.conclusions[0],
                };
                let exposed = match reduction {
                    Reduction::InitialExpansion => g.is_premise(node),
                    _ => g.is_conclusion(node),
                };
                exposed.then_some((node, l))
            })
            .min();
        if let Some((_, l)) = found {
            return Some((reduction, l));
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub node: NodeId,
    pub north: Empire,
    pub south: Empire,
}

impl Split {
    pub fn north_graph(&self, g: &ProofGraph) -> ProofGraph {
        self.north.subgraph(g)
    }

    pub fn south_graph(&self, g: &ProofGraph) -> ProofGraph {
        self.south.subgraph(g)
    }
}

/// Picks a split node of a sound graph with no reducible link.
///
/// Among the maximal nodes the smallest id is taken, skipping discharged
/// hypotheses (their north empire is the node alone, so cutting there would
/// not shrink anything). The result is checked rather than trusted: the
/// node's whole empire must be the graph, and its two empires must share only
/// the node, divide the links between them, and each hold fewer links than
/// the graph.
pub fn find_split(g: &ProofGraph) -> Result<Split, SplitError> {
    if g.link_count() < 2 {
        return Err(SplitError::TooSmall { links: g.link_count() });
    }
    if let Some((reduction, link)) = reducible_link(g) {
        return Err(SplitError::PreconditionViolated { reduction, link });
    }
    let order = OccurrenceOrder::new(g);
    let maximal = order.maximal();
    let node = maximal
        .iter()
        .copied()
        .find(|&a| !g.is_hypothesis(a))
        .ok_or_else(|| SplitError::NoSplit(format!("{} maximal node(s), all hypotheses", maximal.len())))?;
    let name = g.name(node);
    if !order.whole_empire(node).is_some_and(NodeSet::is_full) {
        return Err(SplitError::NoSplit(format!("whole empire of maximal node {name} is not the graph")));
    }
    let north = north_empire(g, node);
    let south = south_empire(g, node);
    let shared = north.members.intersection(&south.members);
    if shared != NodeSet::from_nodes(g.node_count(), [node]) {
        return Err(SplitError::NoSplit(format!("empires of {name} overlap beyond the node")));
    }
    let north_links = north.links(g);
    let south_links = south.links(g);
    if north_links.len() + south_links.len() != g.link_count()
        || north_links.iter().any(|l| south_links.contains(l))
    {
        return Err(SplitError::NoSplit(format!("empires of {name} do not divide the links")));
    }
    if north_links.is_empty() || south_links.is_empty() {
        return Err(SplitError::NoSplit(format!("one empire of {name} has no links")));
    }
    Ok(Split { node, north, south })
}
