//! Graphviz output for graphs, empires, splits, switchings and derivations.
//!
//! Nodes are written as `n<index>` with the node name and label as caption,
//! so the output depends only on the input.

use std::fmt::Write;

use crate::empire::{Empire, EmpireSide};
use crate::graph::{EdgeKind, LinkKind, NodeId, ProofGraph};
use crate::lk::Derivation;
use crate::split::Split;
use crate::switching::{switching_graph, MetaSwitching, SwitchEdgeKind};

const NORTH_FILL: &str = "palegreen";
const SOUTH_FILL: &str = "lightyellow";
const WHOLE_FILL: &str = "lightblue";
const ROOT_FILL: &str = "salmon";

fn quote(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

fn caption(g: &ProofGraph, n: NodeId) -> String {
    quote(&format!("{}: {}", g.name(n), g.label(n).unicode()))
}

fn node_line(out: &mut String, indent: &str, g: &ProofGraph, n: NodeId, fill: Option<&str>) {
    let style = match fill {
        Some(color) => format!(", style=filled, fillcolor={color}"),
        None => String::new(),
    };
    writeln!(out, "{indent}n{} [label={}{style}];", n.index(), caption(g, n)).unwrap();
}

fn edge_lines(out: &mut String, g: &ProofGraph) {
    for e in g.edges() {
        let kind = g.link(e.link).kind;
        let attrs = match e.kind {
            EdgeKind::Meta => "style=dashed, label=\"m\"".to_string(),
            EdgeKind::Solid if matches!(kind, LinkKind::Contraction | LinkKind::Expansion) => {
                format!("style=dotted, label={}", quote(kind.name()))
            }
            EdgeKind::Solid => format!("label={}", quote(kind.name())),
        };
        writeln!(out, "  n{} -> n{} [{attrs}];", e.from.index(), e.to.index()).unwrap();
    }
}

fn header(out: &mut String, name: &str) {
    writeln!(out, "digraph {name} {{").unwrap();
    writeln!(out, "  node [shape=box, fontname=\"Helvetica\"];").unwrap();
    writeln!(out, "  edge [fontsize=9];").unwrap();
}

/// The proof-graph with solid, meta (dashed) and structural (dotted) edges.
pub fn graph_dot(g: &ProofGraph) -> String {
    let mut out = String::new();
    header(&mut out, "proofgraph");
    for n in g.node_ids() {
        node_line(&mut out, "  ", g, n, None);
    }
    edge_lines(&mut out, g);
    out.push_str("}\n");
    out
}

/// The graph with the empire's members filled and its root marked.
pub fn empire_dot(g: &ProofGraph, empire: &Empire) -> String {
    let fill = match empire.side {
        EmpireSide::North => NORTH_FILL,
        EmpireSide::South => SOUTH_FILL,
        EmpireSide::Whole => WHOLE_FILL,
    };
    let mut out = String::new();
    header(&mut out, "empire");
    writeln!(out, "  label={};", quote(&format!("{} empire of {}", empire.side, g.name(empire.root)))).unwrap();
    for n in g.node_ids() {
        let color = if n == empire.root {
            Some(ROOT_FILL)
        } else if empire.members.contains(n) {
            Some(fill)
        } else {
            None
        };
        node_line(&mut out, "  ", g, n, color);
    }
    edge_lines(&mut out, g);
    out.push_str("}\n");
    out
}

/// The graph cut at the split node: north and south clusters, with the
/// split node drawn between them.
pub fn split_dot(g: &ProofGraph, split: &Split) -> String {
    let mut out = String::new();
    header(&mut out, "split");
    for (name, empire, fill) in [("north", &split.north, NORTH_FILL), ("south", &split.south, SOUTH_FILL)] {
        writeln!(out, "  subgraph cluster_{name} {{").unwrap();
        writeln!(out, "    label={};", quote(&format!("{name} empire"))).unwrap();
        for n in empire.members.iter().filter(|&n| n != split.node) {
            node_line(&mut out, "    ", g, n, Some(fill));
        }
        out.push_str("  }\n");
    }
    node_line(&mut out, "  ", g, split.node, Some(ROOT_FILL));
    edge_lines(&mut out, g);
    out.push_str("}\n");
    out
}

/// The undirected switching graph of `s`; virtual edges are dashed.
pub fn switching_dot(g: &ProofGraph, s: &MetaSwitching) -> String {
    let mut out = String::new();
    writeln!(out, "graph switching {{").unwrap();
    writeln!(out, "  node [shape=box, fontname=\"Helvetica\"];").unwrap();
    writeln!(out, "  label={};", quote(&s.describe(g))).unwrap();
    for n in g.node_ids() {
        node_line(&mut out, "  ", g, n, None);
    }
    for e in switching_graph(g, s).edges {
        let style = match e.kind {
            SwitchEdgeKind::Solid => "",
            SwitchEdgeKind::Virtual => " [style=dashed, label=\"virtual\"]",
        };
        writeln!(out, "  n{} -- n{}{style};", e.upper.index(), e.lower.index()).unwrap();
    }
    out.push_str("}\n");
    out
}

/// The derivation as a tree, conclusion at the bottom.
pub fn derivation_dot(d: &Derivation) -> String {
    let mut out = String::new();
    writeln!(out, "digraph derivation {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=plaintext, fontname=\"Helvetica\"];").unwrap();
    let mut next = 0;
    derivation_nodes(&mut out, d, &mut next);
    out.push_str("}\n");
    out
}

fn derivation_nodes(out: &mut String, d: &Derivation, next: &mut usize) -> usize {
    let id = *next;
    *next += 1;
    let text = format!("{}  ({:?})", d.conclusion.unicode(), d.rule);
    writeln!(out, "  d{id} [label={}];", quote(&text)).unwrap();
    for p in &d.premises {
        let child = derivation_nodes(out, p, next);
        writeln!(out, "  d{child} -> d{id};").unwrap();
    }
    id
}
