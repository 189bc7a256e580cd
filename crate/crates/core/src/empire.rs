//! North, south and whole empires.
//!
//! [`empire_closure`] is the production algorithm: a worklist fixpoint over
//! the links. [`empire_by_intersection`] and [`IntersectionOracle`] compute
//! the same sets as intersections of switching components; they are
//! exponential and exist to cross-check the closure.

use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;

use crate::graph::{LinkId, LinkKind, NodeId, ProofGraph};
use crate::nodeset::NodeSet;
use crate::switching::{
    switching_count, switching_graph, Choice, MetaSwitching, ResourceError, SwitchingGraph,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    North,
    South,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EmpireSide {
    North,
    South,
    Whole,
}

impl From<Side> for EmpireSide {
    fn from(side: Side) -> EmpireSide {
        match side {
            Side::North => EmpireSide::North,
            Side::South => EmpireSide::South,
        }
    }
}

impl fmt::Display for EmpireSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EmpireSide::North => "north",
            EmpireSide::South => "south",
            EmpireSide::Whole => "whole",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Empire {
    pub root: NodeId,
    pub side: EmpireSide,
    pub members: NodeSet,
}

impl Empire {
    /// The sub-graph made of the members and every link lying inside them.
    pub fn subgraph(&self, g: &ProofGraph) -> ProofGraph {
        g.induced(&self.members)
    }

    pub fn links(&self, g: &ProofGraph) -> Vec<LinkId> {
        g.links_within(&self.members)
    }
}

/// The component of `a` in the switching graph of `s` after deleting the kept
/// edges below `a` (north) or above `a` (south).
pub fn s_component(g: &ProofGraph, s: &MetaSwitching, a: NodeId, side: Side) -> NodeSet {
    component_without(&switching_graph(g, s), a, side)
}

fn component_without(sg: &SwitchingGraph, a: NodeId, side: Side) -> NodeSet {
    let mut adjacency = vec![Vec::new(); sg.node_count];
    for e in &sg.edges {
        let cut = match side {
            Side::North => e.upper == a,
            Side::South => e.lower == a,
        };
        if !cut {
            adjacency[e.upper.index()].push(e.lower);
            adjacency[e.lower.index()].push(e.upper);
        }
    }
    let mut seen = NodeSet::empty(sg.node_count);
    seen.insert(a);
    let mut queue = VecDeque::from([a]);
    while let Some(n) = queue.pop_front() {
        for &m in &adjacency[n.index()] {
            if seen.insert(m) {
                queue.push_back(m);
            }
        }
    }
    seen
}

/// A link split into the nodes above it (premises and, for `ImpI`, the
/// hypothesis) and the nodes below it, with the quantifier each closure
/// direction uses.
struct Sides {
    upper: Vec<NodeId>,
    lower: Vec<NodeId>,
    /// moving up needs every lower node, not just one
    up_needs_all: bool,
    /// moving down needs every upper node, not just one
    down_needs_all: bool,
}

fn sides(g: &ProofGraph, l: LinkId) -> Sides {
    let link = g.link(l);
    let kind = link.kind;
    let mut upper = link.premises.clone();
    upper.extend(link.hypothesis);
    Sides {
        upper,
        lower: link.conclusions.clone(),
        up_needs_all: kind == LinkKind::Expansion,
        down_needs_all: matches!(kind, LinkKind::Contraction | LinkKind::ImpI),
    }
}

/// The smallest node set containing `a` and closed under the empire rules.
///
/// Panics if `a` is not a node of `g`.
pub fn empire_closure(g: &ProofGraph, a: NodeId, side: Side) -> Empire {
    assert!(a.index() < g.node_count(), "node {} is not in the graph", a.index());
    let link_sides: Vec<Sides> = g.link_ids().map(|l| sides(g, l)).collect();
    let mut members = NodeSet::empty(g.node_count());
    let mut pending: VecDeque<LinkId> = VecDeque::new();
    let add = |n: NodeId, members: &mut NodeSet, pending: &mut VecDeque<LinkId>| {
        if members.insert(n) {
            pending.extend(g.link_above(n));
            pending.extend(g.link_below(n));
        }
    };
    add(a, &mut members, &mut pending);
    while let Some(l) = pending.pop_front() {
        let s = &link_sides[l.index()];
        let quantify = |nodes: &[NodeId], all: bool, members: &NodeSet| {
            if all {
                nodes.iter().all(|&n| members.contains(n))
            } else {
                nodes.iter().any(|&n| members.contains(n))
            }
        };
        let up_guard = side == Side::North || s.lower.iter().all(|&n| n != a);
        if up_guard && quantify(&s.lower, s.up_needs_all, &members) {
            for &n in &s.upper {
                add(n, &mut members, &mut pending);
            }
        }
        let down_guard = side == Side::South || s.upper.iter().all(|&n| n != a);
        if down_guard && quantify(&s.upper, s.down_needs_all, &members) {
            for &n in &s.lower {
                add(n, &mut members, &mut pending);
            }
        }
    }
    Empire { root: a, side: side.into(), members }
}

pub fn north_empire(g: &ProofGraph, a: NodeId) -> Empire {
    empire_closure(g, a, Side::North)
}

pub fn south_empire(g: &ProofGraph, a: NodeId) -> Empire {
    empire_closure(g, a, Side::South)
}

pub fn whole_empire(g: &ProofGraph, a: NodeId) -> Empire {
    let mut members = north_empire(g, a).members;
    members.union_with(&south_empire(g, a).members);
    Empire { root: a, side: EmpireSide::Whole, members }
}

/// The intersection of the switching components of `a` over every
/// meta-switching. Exponential in the number of switchable links.
pub fn empire_by_intersection(
    g: &ProofGraph,
    a: NodeId,
    side: Side,
    max_switchables: usize,
) -> Result<NodeSet, ResourceError> {
    let total = switching_count(g, max_switchables)?;
    let mut out = g.all_nodes();
    for k in 0..total {
        out.intersect_with(&s_component(g, &MetaSwitching::nth(g, k), a, side));
    }
    Ok(out)
}

/// Every node's north and south empire by intersection, computed in one
/// pass over the switchings. Each switching graph of a sound graph is a tree,
/// so a component after deleting edges at `a` is an intersection of the
/// sides of those edges, read off precomputed subtree sets.
pub struct IntersectionOracle {
    north: Vec<NodeSet>,
    south: Vec<NodeSet>,
}

impl IntersectionOracle {
    /// Panics if some switching graph is not a tree.
    pub fn new(g: &ProofGraph, max_switchables: usize) -> Result<IntersectionOracle, ResourceError> {
        let total = switching_count(g, max_switchables)?;
        let n = g.node_count();
        let start = || (vec![NodeSet::full(n); n], vec![NodeSet::full(n); n]);
        let (north, south) = (0..total)
            .into_par_iter()
            .fold(start, |(mut north, mut south), k| {
                let sg = switching_graph(g, &MetaSwitching::nth(g, k));
                let tree = RootedTree::new(&sg);
                for a in g.node_ids() {
                    north[a.index()].intersect_with(&tree.component(&sg, a, Side::North));
                    south[a.index()].intersect_with(&tree.component(&sg, a, Side::South));
                }
                (north, south)
            })
            .reduce(start, |(mut n1, mut s1), (n2, s2)| {
                for (x, y) in n1.iter_mut().zip(&n2) {
                    x.intersect_with(y);
                }
                for (x, y) in s1.iter_mut().zip(&s2) {
                    x.intersect_with(y);
                }
                (n1, s1)
            });
        Ok(IntersectionOracle { north, south })
    }

    pub fn empire(&self, a: NodeId, side: Side) -> &NodeSet {
        match side {
            Side::North => &self.north[a.index()],
            Side::South => &self.south[a.index()],
        }
    }
}

struct RootedTree {
    /// index of the edge to the parent, `None` at the root
    parent_edge: Vec<Option<usize>>,
    subtree: Vec<NodeSet>,
}

impl RootedTree {
    fn new(sg: &SwitchingGraph) -> RootedTree {
        let n = sg.node_count;
        let mut adjacency: Vec<Vec<(NodeId, usize)>> = vec![Vec::new(); n];
        for (i, e) in sg.edges.iter().enumerate() {
            adjacency[e.upper.index()].push((e.lower, i));
            adjacency[e.lower.index()].push((e.upper, i));
        }
        let mut parent_edge = vec![None; n];
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        if n > 0 {
            seen[0] = true;
            order.push(NodeId::new(0));
        }
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &(w, e) in &adjacency[v.index()] {
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    parent_edge[w.index()] = Some(e);
                    order.push(w);
                }
            }
        }
        assert_eq!(order.len(), n, "switching graph is not connected");
        assert_eq!(sg.edges.len() + 1, n, "switching graph is not a tree");
        let mut subtree: Vec<NodeSet> = (0..n).map(|i| NodeSet::from_nodes(n, [NodeId::new(i)])).collect();
        for &v in order.iter().rev() {
            if let Some(e) = parent_edge[v.index()] {
                let edge = &sg.edges[e];
                let parent = if edge.upper == v { edge.lower } else { edge.upper };
                let child = subtree[v.index()].clone();
                subtree[parent.index()].union_with(&child);
            }
        }
        RootedTree { parent_edge, subtree }
    }

    fn component(&self, sg: &SwitchingGraph, a: NodeId, side: Side) -> NodeSet {
        let n = sg.node_count;
        let mut out = NodeSet::full(n);
        for (i, e) in sg.edges.iter().enumerate() {
            let cut = match side {
                Side::North => e.upper == a,
                Side::South => e.lower == a,
            };
            if !cut {
                continue;
            }
            let other = if e.upper == a { e.lower } else { e.upper };
            if self.parent_edge[other.index()] == Some(i) {
                // `other` hangs below `a`: drop its subtree
                let mut keep = NodeSet::full(n);
                for m in self.subtree[other.index()].iter() {
                    keep.remove(m);
                }
                out.intersect_with(&keep);
            } else {
                out.intersect_with(&self.subtree[a.index()]);
            }
        }
        out
    }
}

/// A meta-switching whose component at `a` is exactly the empire of `a`.
///
/// A link whose switch edge at `a` is removed when cutting at `a` keeps that
/// edge: on the north side contraction premises and `ImpI` premise or
/// hypothesis, on the south side expansion conclusions. Otherwise, a
/// contraction or expansion with exactly one of its two duplicated nodes in
/// the empire keeps the edge to the node outside it, and an `ImpI` with
/// exactly one of premise and hypothesis inside keeps the edge to the one
/// outside. Remaining links take the default.
pub fn principal_switching(g: &ProofGraph, a: NodeId, side: Side) -> MetaSwitching {
    let empire = empire_closure(g, a, side).members;
    let inside = |n: NodeId| empire.contains(n);
    // `first`/`second`: the choices keeping the edge at each node of the pair
    let pick = |pair: [NodeId; 2], cut_here: bool, first: Choice, second: Choice| {
        if cut_here && pair[0] == a {
            Some(first)
        } else if cut_here && pair[1] == a {
            Some(second)
        } else {
            match (inside(pair[0]), inside(pair[1])) {
                (true, false) => Some(second),
                (false, true) => Some(first),
                _ => None,
            }
        }
    };
    let north = side == Side::North;
    let mut s = MetaSwitching::first(g);
    for l in g.switchable_links() {
        let link = g.link(l);
        let choice = match link.kind {
            LinkKind::Contraction => {
                pick([link.premises[0], link.premises[1]], north, Choice::Left, Choice::Right)
            }
            LinkKind::Expansion => {
                pick([link.conclusions[0], link.conclusions[1]], !north, Choice::Left, Choice::Right)
            }
            LinkKind::ImpI => {
                let hypothesis = link.hypothesis.expect("ImpI without hypothesis");
                pick([link.premises[0], hypothesis], north, Choice::Direct, Choice::Virtual)
            }
            _ => unreachable!("only switchable links are visited"),
        };
        if let Some(choice) = choice {
            s.set(g, l, choice);
        }
    }
    s
}
