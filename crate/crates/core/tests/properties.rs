mod common;

use proptest::prelude::*;
use rayon::prelude::*;

use ngraph_core::empire::{empire_by_intersection, empire_closure, whole_empire, Side};
use ngraph_core::generate::{generate_sound, generate_unsound, GeneratorSpec};
use ngraph_core::io;
use ngraph_core::lk::lk_check;
use ngraph_core::sequentialize::sequentialize;
use ngraph_core::split::{domain, find_split, order_lt, reducible_link};
use ngraph_core::switching::{is_ngraph, switching_graph, MetaSwitching, Verdict};
use ngraph_core::{parse_formula, Formula, LinkId, LinkKind, NodeId, NodeSet, ProofGraph};

use common::*;

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["a", "b", "c", "p1"]).prop_map(Formula::atom),
        Just(Formula::Top),
        Just(Formula::Bottom),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::neg),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Formula::imp(l, r)),
        ]
    })
}

fn spec(seed: u64, max_links: usize) -> GeneratorSpec {
    GeneratorSpec { seed, max_links, ..GeneratorSpec::default() }
}

fn sound_graph(max_links: usize) -> impl Strategy<Value = ProofGraph> {
    (any::<u64>(), 0..=max_links).prop_map(|(seed, n)| generate_sound(&spec(seed, n)).unwrap())
}

fn sound(g: &ProofGraph) -> bool {
    is_ngraph(g, 20).unwrap().is_sound()
}

fn nodes_of(g: &ProofGraph, links: &[LinkId]) -> NodeSet {
    NodeSet::from_nodes(g.node_count(), links.iter().flat_map(|&l| g.link(l).nodes()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn formula_round_trip(f in formula()) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn unit_encoding_is_idempotent(f in formula()) {
        let w = Formula::atom("a");
        let once = f.encode_units(&w);
        prop_assert!(!once.has_units());
        prop_assert_eq!(once.encode_units(&w), once);
    }

    #[test]
    fn json_round_trip(g in sound_graph(16)) {
        let again = io::from_json(&io::to_json(&g)).unwrap();
        prop_assert_eq!(io::to_json(&again), io::to_json(&g));
        prop_assert_eq!(again.end_sequent(), g.end_sequent());
    }

    #[test]
    fn generator_is_deterministic(seed in any::<u64>(), n in 0usize..20) {
        let s = spec(seed, n);
        prop_assert_eq!(io::to_json(&generate_sound(&s).unwrap()), io::to_json(&generate_sound(&s).unwrap()));
        let g = generate_sound(&s).unwrap();
        prop_assert!(g.link_count() <= n);
        prop_assert!(sound_by_bfs(&g));
    }

    #[test]
    fn switching_trees_have_n_minus_one_edges(g in sound_graph(12)) {
        let count = 1u64 << g.switchable_links().len();
        for k in 0..count {
            let sg = switching_graph(&g, &MetaSwitching::nth(&g, k));
            prop_assert_eq!(sg.edges.len(), g.node_count() - 1);
        }
    }

    #[test]
    fn verdict_is_deterministic(seed in any::<u64>(), n in 1usize..12) {
        let g = generate_unsound(&GeneratorSpec { mutation_rate: 0.2, ..spec(seed, n) }).unwrap();
        let first = is_ngraph(&g, 20).unwrap();
        prop_assert_eq!(&first, &is_ngraph(&g, 20).unwrap());
        let Verdict::Unsound { witness, .. } = first else {
            return Err(TestCaseError::fail("mutant is sound"));
        };
        let expected = (0..1u64 << g.switchable_links().len())
            .find(|&k| !is_tree(&g, &MetaSwitching::nth(&g, k)))
            .unwrap();
        prop_assert_eq!(witness.index(), expected);
    }

    #[test]
    fn sequentialization_is_checked(g in sound_graph(14)) {
        let d = sequentialize(&g).unwrap();
        prop_assert_eq!(lk_check(&d), Ok(()));
        prop_assert_eq!(d.end_sequent(), &g.end_sequent());
    }

    #[test]
    fn closure_matches_intersection(g in sound_graph(10)) {
        for a in g.node_ids() {
            for side in [Side::North, Side::South] {
                prop_assert_eq!(
                    empire_closure(&g, a, side).members,
                    empire_by_intersection(&g, a, side, 20).unwrap()
                );
            }
        }
    }

    #[test]
    fn empires_are_maximal(g in sound_graph(8).prop_filter("small", |g| g.node_count() <= 10)) {
        let links: Vec<LinkId> = g.link_ids().collect();
        for mask in 0u32..1 << links.len() {
            let chosen: Vec<LinkId> = links.iter().enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &l)| l)
                .collect();
            if chosen.is_empty() {
                continue;
            }
            let members = nodes_of(&g, &chosen);
            let h = g.subgraph(&members, &chosen);
            if !sound(&h) {
                continue;
            }
            for a in members.iter() {
                let local = NodeId::new(members.iter().position(|n| n == a).unwrap());
                if h.is_conclusion(local) {
                    prop_assert!(members.is_subset(&empire_closure(&g, a, Side::North).members));
                }
                if h.is_premise(local) {
                    prop_assert!(members.is_subset(&empire_closure(&g, a, Side::South).members));
                }
            }
        }
    }

    #[test]
    fn order_is_strict(g in sound_graph(14)) {
        let d = domain(&g);
        for &a in &d {
            prop_assert!(!order_lt(&g, a, a).unwrap());
            for &b in &d {
                if !order_lt(&g, a, b).unwrap() {
                    continue;
                }
                prop_assert!(!order_lt(&g, b, a).unwrap());
                for &c in &d {
                    if order_lt(&g, b, c).unwrap() {
                        prop_assert!(order_lt(&g, a, c).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn escaping_a_whole_empire_climbs_the_order(g in sound_graph(14)) {
        let d = domain(&g);
        let inside = |a: NodeId, w: &NodeSet, n: NodeId| w.contains(n) && n != a;
        for &a in &d {
            let w = whole_empire(&g, a).members;
            for link in g.links() {
                let upper: Vec<NodeId> = link.premises.iter().copied().chain(link.hypothesis).collect();
                let escapes: Vec<NodeId> = if upper.iter().any(|&n| inside(a, &w, n)) {
                    link.conclusions.iter().copied().filter(|&n| !w.contains(n)).collect()
                } else if link.kind != LinkKind::ImpI && link.conclusions.iter().any(|&n| inside(a, &w, n)) {
                    link.premises.iter().copied().filter(|&n| !w.contains(n)).collect()
                } else {
                    Vec::new()
                };
                for y in escapes.into_iter().filter(|y| d.contains(y)) {
                    prop_assert!(order_lt(&g, a, y).unwrap(), "{} escapes to {}", g.name(a), g.name(y));
                }
            }
        }
    }

    #[test]
    fn splits_are_total_and_local(g in sound_graph(16)) {
        if g.link_count() < 2 || reducible_link(&g).is_some() {
            return Ok(());
        }
        let split = find_split(&g).unwrap();
        prop_assert!(sound(&split.north_graph(&g)));
        prop_assert!(sound(&split.south_graph(&g)));
        prop_assert_eq!(
            split.north.members.intersection(&split.south.members),
            NodeSet::from_nodes(g.node_count(), [split.node])
        );
        for link in g.links().iter().filter(|l| l.kind == LinkKind::ImpI) {
            let rest: Vec<NodeId> = link.nodes().filter(|&n| n != split.node).collect();
            prop_assert!(
                rest.iter().all(|&n| split.north.members.contains(n))
                    || rest.iter().all(|&n| split.south.members.contains(n))
            );
        }
    }
}

#[test]
fn ten_thousand_samples_are_sound() {
    let unsound: Vec<u64> = (0..10_000u64)
        .into_par_iter()
        .filter(|&seed| !sound(&generate_sound(&spec(seed, 16)).unwrap()))
        .collect();
    assert!(unsound.is_empty(), "unsound seeds: {unsound:?}");
}
