use std::fmt;

use fixedbitset::FixedBitSet;

use crate::graph::NodeId;

/// A set of nodes of one graph, stored as a bitset sized to the graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NodeSet(FixedBitSet);

impl NodeSet {
    pub fn empty(node_count: usize) -> NodeSet {
        NodeSet(FixedBitSet::with_capacity(node_count))
    }

    pub fn full(node_count: usize) -> NodeSet {
        let mut bits = FixedBitSet::with_capacity(node_count);
        bits.insert_range(..);
        NodeSet(bits)
    }

    pub fn from_nodes(node_count: usize, nodes: impl IntoIterator<Item = NodeId>) -> NodeSet {
        let mut set = NodeSet::empty(node_count);
        for node in nodes {
            set.insert(node);
        }
        set
    }

    pub fn capacity(&self) -> usize {
        self.0.len()
    }

    /// Returns true if the node was not already present.
    pub fn insert(&mut self, node: NodeId) -> bool {
        !self.0.put(node.index())
    }

    pub fn remove(&mut self, node: NodeId) {
        self.0.set(node.index(), false);
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.0.contains(node.index())
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.capacity()
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.0.ones().map(NodeId::new)
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_proper_subset(&self, other: &NodeSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(&self, other: &NodeSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn intersect_with(&mut self, other: &NodeSet) {
        self.0.intersect_with(&other.0);
    }

    pub fn union_with(&mut self, other: &NodeSet) {
        self.0.union_with(&other.0);
    }

    pub fn intersection(&self, other: &NodeSet) -> NodeSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|n| n.index())).finish()
    }
}
