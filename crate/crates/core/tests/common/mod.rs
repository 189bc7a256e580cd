//! Helpers shared by the integration tests. Nothing here calls into the
//! library's switching code, so it can serve as a check on it.

#![allow(dead_code)]

use std::collections::VecDeque;

use ngraph_core::generate::{generate_sound, GeneratorSpec};
use ngraph_core::switching::{Choice, MetaSwitching};
use ngraph_core::{LinkId, LinkKind, NodeId, ProofGraph};

pub const MAX_CORPUS_SWITCHABLES: usize = 12;

/// Undirected edges of the switching graph of `s`, rebuilt from the links.
pub fn edges_of(g: &ProofGraph, s: &MetaSwitching) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, link) in g.links().iter().enumerate() {
        let id = LinkId::new(i);
        let p = |k: usize| link.premises[k].index();
        let c = |k: usize| link.conclusions[k].index();
        match (link.kind, s.choice(id)) {
            (LinkKind::Contraction, Some(Choice::Left)) => out.push((p(0), c(0))),
            (LinkKind::Contraction, Some(Choice::Right)) => out.push((p(1), c(0))),
            (LinkKind::Expansion, Some(Choice::Left)) => out.push((p(0), c(0))),
            (LinkKind::Expansion, Some(Choice::Right)) => out.push((p(0), c(1))),
            (LinkKind::ImpI, Some(Choice::Direct)) => out.push((p(0), c(0))),
            (LinkKind::ImpI, Some(Choice::Virtual)) => {
                out.push((link.hypothesis.expect("ImpI has a hypothesis").index(), c(0)))
            }
            (kind, None) if !kind.is_switchable() => {
                for &x in &link.premises {
                    for &y in &link.conclusions {
                        out.push((x.index(), y.index()));
                    }
                }
            }
            (kind, choice) => panic!("{kind} with choice {choice:?}"),
        }
    }
    out
}

/// Components by breadth-first search.
pub fn components(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adjacency = vec![Vec::new(); n];
    for &(x, y) in edges {
        adjacency[x].push(y);
        adjacency[y].push(x);
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &adjacency[x] {
                if label[y] == usize::MAX {
                    label[y] = next;
                    queue.push_back(y);
                }
            }
        }
        next += 1;
    }
    label
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub has_cycle: bool,
    pub connected: bool,
}

/// A forest with `k` components on `n` nodes has `n - k` edges; more edges
/// means a cycle (self-loops and parallel edges included).
pub fn shape(n: usize, edges: &[(usize, usize)]) -> Shape {
    let labels = components(n, edges);
    let k = labels.iter().copied().max().map_or(0, |m| m + 1);
    Shape { has_cycle: edges.len() + k > n, connected: k <= 1 }
}

pub fn is_tree(g: &ProofGraph, s: &MetaSwitching) -> bool {
    let sh = shape(g.node_count(), &edges_of(g, s));
    !sh.has_cycle && sh.connected
}

/// Soundness by brute force over every switching, with the BFS test.
pub fn sound_by_bfs(g: &ProofGraph) -> bool {
    let count = 1u64 << g.switchable_links().len();
    (0..count).all(|k| is_tree(g, &MetaSwitching::nth(g, k)))
}

/// The node component of `a` in the switching graph after removing the kept
/// edges whose upper end (north) or lower end (south) is `a`. For a virtual
/// edge the hypothesis is the upper end.
pub fn component_at(g: &ProofGraph, s: &MetaSwitching, a: NodeId, north: bool) -> Vec<bool> {
    let edges: Vec<(usize, usize)> = edges_of(g, s)
        .into_iter()
        .filter(|&(upper, lower)| if north { upper != a.index() } else { lower != a.index() })
        .collect();
    let labels = components(g.node_count(), &edges);
    labels.iter().map(|&l| l == labels[a.index()]).collect()
}

pub fn corpus_spec(seed: u64) -> GeneratorSpec {
    GeneratorSpec { seed, max_links: 2 + (seed % 19) as usize, ..GeneratorSpec::default() }
}

/// The first `size` sound graphs from seeds 0, 1, ... with at most
/// [`MAX_CORPUS_SWITCHABLES`] switchable links.
pub fn sound_corpus(size: usize) -> Vec<(u64, ProofGraph)> {
    (0..)
        .map(|seed| (seed, generate_sound(&corpus_spec(seed)).expect("corpus spec is valid")))
        .filter(|(_, g)| g.switchable_links().len() <= MAX_CORPUS_SWITCHABLES)
        .take(size)
        .collect()
}

/// Multiset of labels as sorted strings.
pub fn labels(g: &ProofGraph, nodes: impl IntoIterator<Item = NodeId>) -> Vec<String> {
    let mut out: Vec<String> = nodes.into_iter().map(|n| g.label(n).to_string()).collect();
    out.sort();
    out
}

pub fn strings(items: &[&str]) -> Vec<String> {
    let mut out: Vec<String> = items.iter().map(|s| s.to_string()).collect();
    out.sort();
    out
}
