//! JSON form of proof-graphs.
//!
//! ```json
//! {"nodes": [{"id": "x", "formula": "a | b"}, ...],
//!  "links": [{"kind": "OrE", "premises": ["x"], "conclusions": ["l", "r"]}, ...]}
//! ```
//!
//! `ImpI` links name their discharged node under `"hypothesis"`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::formula::parse_formula;
use crate::graph::{GraphError, Link, LinkKind, Node, NodeId, ProofGraph, RawGraph};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    nodes: Vec<NodeEntry>,
    #[serde(default)]
    links: Vec<LinkEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeEntry {
    id: String,
    formula: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinkEntry {
    kind: LinkKind,
    premises: Vec<String>,
    conclusions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hypothesis: Option<String>,
}

/// Parses a graph file without checking structure beyond name resolution.
pub fn raw_from_json(text: &str) -> Result<RawGraph, GraphError> {
    let file: GraphFile = serde_json::from_str(text)?;
    let mut index: HashMap<&str, NodeId> = HashMap::new();
    let mut nodes = Vec::with_capacity(file.nodes.len());
    for (i, entry) in file.nodes.iter().enumerate() {
        let label = parse_formula(&entry.formula)
            .map_err(|source| GraphError::Formula { node: entry.id.clone(), source })?;
        index.entry(&entry.id).or_insert(NodeId::new(i));
        nodes.push(Node { name: entry.id.clone(), label });
    }
    let mut links = Vec::with_capacity(file.links.len());
    for (li, entry) in file.links.iter().enumerate() {
        let resolve = |name: &String| {
            index
                .get(name.as_str())
                .copied()
                .ok_or_else(|| GraphError::UnknownNode { link: li, node: name.clone() })
        };
        let premises = entry.premises.iter().map(resolve).collect::<Result<_, _>>()?;
        let conclusions = entry.conclusions.iter().map(resolve).collect::<Result<_, _>>()?;
        let hypothesis = entry.hypothesis.as_ref().map(resolve).transpose()?;
        links.push(Link { kind: entry.kind, premises, conclusions, hypothesis });
    }
    Ok(RawGraph { nodes, links })
}

pub fn from_json(text: &str) -> Result<ProofGraph, GraphError> {
    raw_from_json(text)?.into_graph()
}

pub fn to_json(graph: &ProofGraph) -> String {
    let name = |id: &NodeId| graph.name(*id).to_string();
    let file = GraphFile {
        nodes: graph
            .nodes()
            .iter()
            .map(|n| NodeEntry { id: n.name.clone(), formula: n.label.to_string() })
            .collect(),
        links: graph
            .links()
            .iter()
            .map(|l| LinkEntry {
                kind: l.kind,
                premises: l.premises.iter().map(name).collect(),
                conclusions: l.conclusions.iter().map(name).collect(),
                hypothesis: l.hypothesis.as_ref().map(name),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("graph serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::StructuralViolation;

    const OR_AND: &str = r#"{
        "nodes": [
            {"id": "x", "formula": "a | b"},
            {"id": "l", "formula": "a"},
            {"id": "r", "formula": "b"},
            {"id": "y", "formula": "a & b"}
        ],
        "links": [
            {"kind": "OrE", "premises": ["x"], "conclusions": ["l", "r"]},
            {"kind": "AndI", "premises": ["l", "r"], "conclusions": ["y"]}
        ]
    }"#;

    #[test]
    fn round_trip() {
        let g = from_json(OR_AND).unwrap();
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.link_count(), 2);
        let again = from_json(&to_json(&g)).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn unknown_name() {
        let text = OR_AND.replace(r#"["l", "r"], "conclusions": ["y"]"#, r#"["l", "q"], "conclusions": ["y"]"#);
        assert!(matches!(from_json(&text), Err(GraphError::UnknownNode { link: 1, .. })));
    }

    #[test]
    fn bad_formula_and_structure() {
        let text = OR_AND.replace("a & b", "a &");
        assert!(matches!(from_json(&text), Err(GraphError::Formula { .. })));
        let text = OR_AND.replace("a & b", "a | b");
        match from_json(&text) {
            Err(GraphError::Invalid(v)) => {
                assert_eq!(v, vec![StructuralViolation::SchemaMismatch { link: 1, kind: LinkKind::AndI }])
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn hypothesis_field() {
        let text = r#"{
            "nodes": [{"id": "x", "formula": "a"}, {"id": "w", "formula": "a -> a"}],
            "links": [{"kind": "ImpI", "premises": ["x"], "conclusions": ["w"], "hypothesis": "x"}]
        }"#;
        let g = from_json(text).unwrap();
        assert_eq!(g.hypotheses(), vec![NodeId::new(0)]);
        assert!(to_json(&g).contains("\"hypothesis\": \"x\""));
    }
}
