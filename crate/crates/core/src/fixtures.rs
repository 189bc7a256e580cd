//! Small hand-built proof-graphs used by the tests and the CLI examples.

use crate::graph::ProofGraph;
use crate::io::from_json;

/// `(name, json)` for every bundled graph.
pub const ALL: &[(&str, &str)] = &[
    ("or_and_cycle", include_str!("../fixtures/or_and_cycle.json")),
    ("or_contraction", include_str!("../fixtures/or_contraction.json")),
    ("expansion_and", include_str!("../fixtures/expansion_and.json")),
    ("reused_discharge", include_str!("../fixtures/reused_discharge.json")),
    ("reused_discharge_expansion", include_str!("../fixtures/reused_discharge_expansion.json")),
    ("discharged_disjunction", include_str!("../fixtures/discharged_disjunction.json")),
    ("two_empires", include_str!("../fixtures/two_empires.json")),
    ("contraction_chain", include_str!("../fixtures/contraction_chain.json")),
];

/// Loads a bundled graph by name; panics on an unknown name.
pub fn load(name: &str) -> ProofGraph {
    let (_, text) = ALL
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("no fixture named {name}"));
    from_json(text).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}
