//! Meta-switchings and the soundness criterion.
//!
//! A meta-switching picks one edge for every contraction and expansion link
//! and, for every `ImpI` link, either its solid edge or the virtual edge from
//! the hypothesis to the main conclusion. A proof-graph is sound when every
//! resulting undirected graph is a tree on all of its nodes.
//!
//! Switchings are enumerated in counting order: switching number `k` takes
//! bit `j` of `k` as the choice for the `j`-th switchable link in link order,
//! with 0 meaning `Left`/`Direct`.

use std::fmt;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{LinkId, LinkKind, NodeId, ProofGraph};

pub const DEFAULT_MAX_SWITCHABLES: usize = 20;

/// Below this many switchings the check runs on the calling thread.
const PARALLEL_THRESHOLD: u64 = 1 << 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Choice {
    /// contraction keeps its first premise, expansion its first conclusion
    Left,
    Right,
    /// `ImpI` keeps the solid edge from premise to main conclusion
    Direct,
    /// `ImpI` keeps the virtual edge from hypothesis to main conclusion
    Virtual,
}

impl Choice {
    fn from_bit(kind: LinkKind, bit: bool) -> Choice {
        match (kind, bit) {
            (LinkKind::ImpI, false) => Choice::Direct,
            (LinkKind::ImpI, true) => Choice::Virtual,
            (_, false) => Choice::Left,
            (_, true) => Choice::Right,
        }
    }

    fn bit(self) -> bool {
        matches!(self, Choice::Right | Choice::Virtual)
    }

    /// The default choice for a switchable link of this kind.
    pub fn first(kind: LinkKind) -> Choice {
        Choice::from_bit(kind, false)
    }
}

impl fmt::Display for Choice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ResourceError {
    #[error("{count} switchable links exceed the limit of {limit}")]
    TooManySwitchables { count: usize, limit: usize },
}

/// One choice per switchable link of a particular graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MetaSwitching {
    /// indexed by link; `None` exactly for non-switchable links
    choices: Vec<Option<Choice>>,
}

impl MetaSwitching {
    /// The switching where every link takes `Left` or `Direct`.
    pub fn first(g: &ProofGraph) -> MetaSwitching {
        MetaSwitching::nth(g, 0)
    }

    /// Switching number `index` in counting order.
    pub fn nth(g: &ProofGraph, index: u64) -> MetaSwitching {
        let mut choices = vec![None; g.link_count()];
        for (j, l) in g.switchable_links().into_iter().enumerate() {
            choices[l.index()] = Some(Choice::from_bit(g.link(l).kind, index >> j & 1 == 1));
        }
        MetaSwitching { choices }
    }

    /// Position of this switching in counting order.
    pub fn index(&self) -> u64 {
        self.choices
            .iter()
            .flatten()
            .enumerate()
            .fold(0, |acc, (j, c)| acc | (c.bit() as u64) << j)
    }

    pub fn choice(&self, link: LinkId) -> Option<Choice> {
        self.choices[link.index()]
    }

    /// Overrides the choice at a switchable link; panics if the choice does
    /// not fit the link.
    pub fn set(&mut self, g: &ProofGraph, link: LinkId, choice: Choice) {
        let kind = g.link(link).kind;
        assert!(kind.is_switchable(), "link {} ({kind}) has no switch", link.index());
        assert_eq!(
            kind == LinkKind::ImpI,
            matches!(choice, Choice::Direct | Choice::Virtual),
            "choice {choice} does not fit a {kind} link"
        );
        self.choices[link.index()] = Some(choice);
    }

    pub fn iter(&self) -> impl Iterator<Item = (LinkId, Choice)> + '_ {
        self.choices.iter().enumerate().filter_map(|(i, c)| c.map(|c| (LinkId::new(i), c)))
    }

    /// Human-readable listing of the choices, naming links by their nodes.
    pub fn describe(&self, g: &ProofGraph) -> String {
        if self.iter().next().is_none() {
            return "(no switchable links)".to_string();
        }
        self.iter()
            .map(|(l, c)| {
                let link = g.link(l);
                let nodes: Vec<&str> = link.nodes().map(|n| g.name(n)).collect();
                format!("link {} {}({}): {c}", l.index(), link.kind, nodes.join(", "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwitchEdgeKind {
    Solid,
    /// from an `ImpI` hypothesis to the link's main conclusion
    Virtual,
}

/// An undirected edge of a switching graph. `upper` is the premise side and
/// `lower` the conclusion side; a virtual edge counts the hypothesis as upper.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SwitchEdge {
    pub upper: NodeId,
    pub lower: NodeId,
    pub link: LinkId,
    pub kind: SwitchEdgeKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchingGraph {
    pub node_count: usize,
    pub edges: Vec<SwitchEdge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Defect {
    Cyclic,
    Disconnected,
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Defect::Cyclic => "cyclic",
            Defect::Disconnected => "disconnected",
        })
    }
}

impl SwitchingGraph {
    /// `None` when the graph is a tree on all of its nodes. A cycle is
    /// reported in preference to disconnection.
    pub fn defect(&self) -> Option<Defect> {
        let mut uf = UnionFind::<usize>::new(self.node_count);
        for e in &self.edges {
            if !uf.union(e.upper.index(), e.lower.index()) {
                return Some(Defect::Cyclic);
            }
        }
        (self.edges.len() + 1 != self.node_count).then_some(Defect::Disconnected)
    }

    pub fn is_tree(&self) -> bool {
        self.defect().is_none()
    }
}

pub fn switching_graph(g: &ProofGraph, s: &MetaSwitching) -> SwitchingGraph {
    let mut edges = Vec::with_capacity(g.node_count());
    for (li, link) in g.links().iter().enumerate() {
        let link_id = LinkId::new(li);
        let solid = |upper, lower| SwitchEdge { upper, lower, link: link_id, kind: SwitchEdgeKind::Solid };
        match (link.kind, s.choice(link_id)) {
            (LinkKind::Contraction, Some(c)) => {
                edges.push(solid(link.premises[c.bit() as usize], link.conclusions[0]))
            }
            (LinkKind::Expansion, Some(c)) => {
                edges.push(solid(link.premises[0], link.conclusions[c.bit() as usize]))
            }
            (LinkKind::ImpI, Some(Choice::Direct)) => {
                edges.push(solid(link.premises[0], link.conclusions[0]))
            }
            (LinkKind::ImpI, Some(_)) => edges.push(SwitchEdge {
                upper: link.hypothesis.expect("ImpI without hypothesis"),
                lower: link.conclusions[0],
                link: link_id,
                kind: SwitchEdgeKind::Virtual,
            }),
            (kind, None) if !kind.is_switchable() => {
                for &p in &link.premises {
                    for &c in &link.conclusions {
                        edges.push(solid(p, c));
                    }
                }
            }
            (kind, choice) => panic!("switching does not fit link {li} ({kind}): {choice:?}"),
        }
    }
    SwitchingGraph { node_count: g.node_count(), edges }
}

/// Number of meta-switchings, after checking the resource bound.
pub fn switching_count(g: &ProofGraph, max_switchables: usize) -> Result<u64, ResourceError> {
    let count = g.switchable_links().len();
    if count > max_switchables || count >= 63 {
        return Err(ResourceError::TooManySwitchables { count, limit: max_switchables });
    }
    Ok(1u64 << count)
}

/// All meta-switchings of `g`, in counting order.
pub fn enumerate_meta_switchings(
    g: &ProofGraph,
    max_switchables: usize,
) -> Result<impl Iterator<Item = MetaSwitching> + '_, ResourceError> {
    let total = switching_count(g, max_switchables)?;
    Ok((0..total).map(move |k| MetaSwitching::nth(g, k)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Sound,
    Unsound { witness: MetaSwitching, defect: Defect },
}

impl Verdict {
    pub fn is_sound(&self) -> bool {
        matches!(self, Verdict::Sound)
    }
}

/// Decides soundness by checking every meta-switching. The witness of an
/// unsound graph is the first failing switching in counting order.
pub fn is_ngraph(g: &ProofGraph, max_switchables: usize) -> Result<Verdict, ResourceError> {
    let total = switching_count(g, max_switchables)?;
    let check = |k: u64| {
        let s = MetaSwitching::nth(g, k);
        switching_graph(g, &s).defect().map(|defect| (s, defect))
    };
    let failure = if total < PARALLEL_THRESHOLD {
        (0..total).find_map(check)
    } else {
        (0..total).into_par_iter().map(check).find_first(Option::is_some).flatten()
    };
    Ok(match failure {
        None => Verdict::Sound,
        Some((witness, defect)) => Verdict::Unsound { witness, defect },
    })
}
