//! Translation of sound proof-graphs into LK derivations.
//!
//! The graph is taken apart one step at a time, by link count:
//!
//! 1. no links: the single node `A` gives the axiom `A ⊢ A`;
//! 2. a single non-switchable link: its fixed local derivation;
//! 3. an expansion under a graph premise: remove both, recurse, `LC`;
//! 4. a contraction over a graph conclusion: remove both, recurse, `RC`;
//! 5. an `ImpI` over a graph conclusion: remove the link and its main
//!    conclusion, so the hypothesis becomes a premise; recurse, `ImpR`;
//! 6. otherwise split at a maximal node and join the two sides by `Cut`.
//!
//! Each case strictly reduces the number of links.

use thiserror::Error;

use crate::formula::{Formula, Sequent};
use crate::graph::{LinkId, LinkKind, NodeId, ProofGraph};
use crate::lk::{Derivation, Rule};
use crate::split::{find_split, reducible_link, Reduction, SplitError};
use crate::switching::{is_ngraph, Defect, MetaSwitching, ResourceError, Verdict, DEFAULT_MAX_SWITCHABLES};

#[derive(Debug, Error)]
pub enum SequentializeError {
    #[error("the proof-graph is not sound: a meta-switching graph is {defect}")]
    Unsound { witness: MetaSwitching, defect: Defect },
    #[error(transparent)]
    Resource(#[from] ResourceError),
    #[error("{kind} links have no local derivation")]
    Switchable { kind: LinkKind },
    #[error("splitting a {links}-link subgraph failed")]
    Split { links: usize, source: SplitError },
    #[error("a {links}-link subgraph produced by {step} is not sound ({defect})")]
    UnsoundStep { step: &'static str, links: usize, defect: Defect },
    #[error("a sound graph with no links must have one node, found {nodes}")]
    NotAnAxiom { nodes: usize },
}

#[derive(Clone, Debug)]
pub struct Options {
    pub max_switchables: usize,
    /// Re-check soundness of every intermediate graph. Exponential; meant
    /// for tests.
    pub check_steps: bool,
}

impl Default for Options {
    fn default() -> Options {
        Options { max_switchables: DEFAULT_MAX_SWITCHABLES, check_steps: false }
    }
}

/// How often each case fired during one translation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CaseCounts {
    pub axiom: usize,
    pub single_link: usize,
    pub expansion: usize,
    pub contraction: usize,
    pub imp_intro: usize,
    pub split: usize,
}

impl CaseCounts {
    fn add(&mut self, other: CaseCounts) {
        self.axiom += other.axiom;
        self.single_link += other.single_link;
        self.expansion += other.expansion;
        self.contraction += other.contraction;
        self.imp_intro += other.imp_intro;
        self.split += other.split;
    }
}

/// The derivation of a link's local sequent, premises ⊢ conclusions.
pub fn single_link_derivation(g: &ProofGraph, l: LinkId) -> Result<Derivation, SequentializeError> {
    let link = g.link(l);
    let premises: Vec<&Formula> = link.premises.iter().map(|&n| g.label(n)).collect();
    let conclusions: Vec<&Formula> = link.conclusions.iter().map(|&n| g.label(n)).collect();
    link_derivation(link.kind, &premises, &conclusions)
}

fn rule(rule: Rule, gamma: &[&Formula], delta: &[&Formula], premises: Vec<Derivation>) -> Derivation {
    let conclusion = Sequent::new(gamma.iter().map(|f| (*f).clone()), delta.iter().map(|f| (*f).clone()));
    Derivation::new(rule, conclusion, premises)
}

/// The local derivation for a link kind given its labels, which must fit the
/// kind's schema.
pub fn link_derivation(
    kind: LinkKind,
    premises: &[&Formula],
    conclusions: &[&Formula],
) -> Result<Derivation, SequentializeError> {
    use LinkKind::*;
    let ax = |f: &Formula| Derivation::axiom(f.clone());
    let top = Formula::Top;
    let bottom = Formula::Bottom;
    let d = match kind {
        AndI => {
            let Formula::And(a, b) = conclusions[0] else { panic!("AndI conclusion is not a conjunction") };
            rule(Rule::AndR, premises, conclusions, vec![ax(a), ax(b)])
        }
        OrE => {
            let Formula::Or(a, b) = premises[0] else { panic!("OrE premise is not a disjunction") };
            rule(Rule::OrL, premises, conclusions, vec![ax(a), ax(b)])
        }
        ImpE => {
            let major = |i: usize| matches!(premises[i], Formula::Imp(a, _) if **a == *premises[1 - i]);
            let imp = if major(1) { premises[1] } else { premises[0] };
            let Formula::Imp(a, b) = imp else { panic!("ImpE without implication") };
            rule(Rule::ImpL, premises, conclusions, vec![ax(a), ax(b)])
        }
        AndEL | AndER => {
            let Formula::And(a, b) = premises[0] else { panic!("{kind} premise is not a conjunction") };
            let (r, part) = if kind == AndEL { (Rule::AndL1, a) } else { (Rule::AndL2, b) };
            rule(r, premises, conclusions, vec![ax(part)])
        }
        OrIL | OrIR => {
            let Formula::Or(a, b) = conclusions[0] else { panic!("{kind} conclusion is not a disjunction") };
            let (r, part) = if kind == OrIL { (Rule::OrR1, a) } else { (Rule::OrR2, b) };
            rule(r, premises, conclusions, vec![ax(part)])
        }
        BotLink => {
            let a = if *premises[1] == Formula::neg(premises[0].clone()) { premises[0] } else { premises[1] };
            let neg = rule(Rule::NegL, premises, &[], vec![ax(a)]);
            rule(Rule::RW, premises, conclusions, vec![neg])
        }
        TopLink => {
            let a = if *conclusions[1] == Formula::neg(conclusions[0].clone()) {
                conclusions[0]
            } else {
                conclusions[1]
            };
            let neg = rule(Rule::NegR, &[], conclusions, vec![ax(a)]);
            rule(Rule::LW, premises, conclusions, vec![neg])
        }
        TopFW => rule(Rule::LW, premises, conclusions, vec![ax(conclusions[0])]),
        BotDW => rule(Rule::RW, premises, conclusions, vec![ax(premises[0])]),
        TopSW => {
            let unit = rule(Rule::TopR, &[], &[&top], vec![]);
            rule(Rule::LW, premises, conclusions, vec![unit])
        }
        BotSW => {
            let unit = rule(Rule::BotL, &[&bottom], &[], vec![]);
            rule(Rule::RW, premises, conclusions, vec![unit])
        }
        Contraction | Expansion | ImpI => return Err(SequentializeError::Switchable { kind }),
    };
    Ok(d)
}

/// Translates a sound graph. Soundness is checked first.
pub fn sequentialize(g: &ProofGraph) -> Result<Derivation, SequentializeError> {
    sequentialize_with(g, &Options::default()).map(|(d, _)| d)
}

pub fn sequentialize_with(
    g: &ProofGraph,
    options: &Options,
) -> Result<(Derivation, CaseCounts), SequentializeError> {
    if let Verdict::Unsound { witness, defect } = is_ngraph(g, options.max_switchables)? {
        return Err(SequentializeError::Unsound { witness, defect });
    }
    let mut counts = CaseCounts::default();
    let d = translate(g, options, &mut counts)?;
    Ok((d, counts))
}

fn without(g: &ProofGraph, node: NodeId, link: LinkId) -> ProofGraph {
    let mut members = g.all_nodes();
    members.remove(node);
    let links: Vec<LinkId> = g.link_ids().filter(|&l| l != link).collect();
    g.subgraph(&members, &links)
}

fn checked(step: &'static str, g: ProofGraph, options: &Options) -> Result<ProofGraph, SequentializeError> {
    if options.check_steps {
        if let Verdict::Unsound { defect, .. } = is_ngraph(&g, options.max_switchables)? {
            return Err(SequentializeError::UnsoundStep { step, links: g.link_count(), defect });
        }
    }
    Ok(g)
}

fn translate(g: &ProofGraph, options: &Options, counts: &mut CaseCounts) -> Result<Derivation, SequentializeError> {
    let end = g.end_sequent();
    if g.link_count() == 0 {
        if g.node_count() != 1 {
            return Err(SequentializeError::NotAnAxiom { nodes: g.node_count() });
        }
        counts.axiom += 1;
        return Ok(Derivation::axiom(g.label(NodeId::new(0)).clone()));
    }
    if g.link_count() == 1 && !g.link(LinkId::new(0)).kind.is_switchable() {
        counts.single_link += 1;
        return single_link_derivation(g, LinkId::new(0));
    }
    if let Some((reduction, l)) = reducible_link(g) {
        let link = g.link(l);
        let (node, step, rule) = match reduction {
            Reduction::InitialExpansion => {
                counts.expansion += 1;
                (link.premises[0], "removing an initial expansion", Rule::LC)
            }
            Reduction::FinalContraction => {
                counts.contraction += 1;
                (link.conclusions[0], "removing a final contraction", Rule::RC)
            }
            Reduction::FinalImpIntro => {
                counts.imp_intro += 1;
                (link.conclusions[0], "removing a final implication", Rule::ImpR)
            }
        };
        let rest = checked(step, without(g, node, l), options)?;
        let inner = translate(&rest, options, counts)?;
        return Ok(Derivation::new(rule, end, vec![inner]));
    }
    let split = find_split(g).map_err(|source| SequentializeError::Split { links: g.link_count(), source })?;
    counts.split += 1;
    let north = checked("splitting (north side)", split.north_graph(g), options)?;
    let south = checked("splitting (south side)", split.south_graph(g), options)?;
    let (mut north_counts, mut south_counts) = (CaseCounts::default(), CaseCounts::default());
    let (left, right) = rayon::join(
        || translate(&north, options, &mut north_counts),
        || translate(&south, options, &mut south_counts),
    );
    counts.add(north_counts);
    counts.add(south_counts);
    Ok(Derivation::new(Rule::Cut, end, vec![left?, right?]))
}

/// The atom used to spell out units: the least atom name in the graph, or
/// `p` when there is none.
pub fn unit_witness(g: &ProofGraph) -> Formula {
    let mut atoms = Vec::new();
    for node in g.nodes() {
        node.label.atoms(&mut atoms);
    }
    Formula::atom(atoms.into_iter().min().unwrap_or("p"))
}

/// Rewrites a derivation so that `T` reads `w | ~w` and `F` reads `w & ~w`,
/// replacing the unit axioms by proofs of those formulas.
pub fn encode_units(d: &Derivation, witness: &Formula) -> Derivation {
    let encode = |f: &Formula| f.encode_units(witness);
    match d.rule {
        Rule::TopR | Rule::BotL => {
            let conclusion = d.conclusion.map(encode);
            let core = if d.rule == Rule::TopR { excluded_middle(witness) } else { contradiction(witness) };
            weaken_to(core, &conclusion)
        }
        _ => Derivation {
            rule: d.rule,
            conclusion: d.conclusion.map(encode),
            premises: d.premises.iter().map(|p| encode_units(p, witness)).collect(),
            principal: d.principal.as_ref().map(encode),
        },
    }
}

fn seq(gamma: &[&Formula], delta: &[&Formula]) -> Sequent {
    Sequent::new(gamma.iter().map(|f| (*f).clone()), delta.iter().map(|f| (*f).clone()))
}

/// `⊢ w | ~w`
fn excluded_middle(w: &Formula) -> Derivation {
    let nw = Formula::neg(w.clone());
    let lem = Formula::or(w.clone(), nw.clone());
    let negr = Derivation::new(Rule::NegR, seq(&[], &[w, &nw]), vec![Derivation::axiom(w.clone())]);
    let right = Derivation::new(Rule::OrR2, seq(&[], &[w, &lem]), vec![negr]);
    let left = Derivation::new(Rule::OrR1, seq(&[], &[&lem, &lem]), vec![right]);
    Derivation::new(Rule::RC, seq(&[], &[&lem]), vec![left])
}

/// `w & ~w ⊢`
fn contradiction(w: &Formula) -> Derivation {
    let nw = Formula::neg(w.clone());
    let con = Formula::and(w.clone(), nw.clone());
    let negl = Derivation::new(Rule::NegL, seq(&[w, &nw], &[]), vec![Derivation::axiom(w.clone())]);
    let right = Derivation::new(Rule::AndL2, seq(&[w, &con], &[]), vec![negl]);
    let left = Derivation::new(Rule::AndL1, seq(&[&con, &con], &[]), vec![right]);
    Derivation::new(Rule::LC, seq(&[&con], &[]), vec![left])
}

/// Extends `d` by weakenings until it concludes `target`, whose sides must
/// contain those of `d`'s conclusion.
fn weaken_to(mut d: Derivation, target: &Sequent) -> Derivation {
    let mut gamma: Vec<Formula> = d.conclusion.antecedent().to_vec();
    let mut delta: Vec<Formula> = d.conclusion.succedent().to_vec();
    for f in missing(d.conclusion.antecedent(), target.antecedent()) {
        gamma.push(f);
        let conclusion = Sequent::new(gamma.clone(), delta.clone());
        d = Derivation::new(Rule::LW, conclusion, vec![d]);
    }
    for f in missing(d.conclusion.succedent(), target.succedent()) {
        delta.push(f);
        let conclusion = Sequent::new(gamma.clone(), delta.clone());
        d = Derivation::new(Rule::RW, conclusion, vec![d]);
    }
    debug_assert_eq!(&d.conclusion, target);
    d
}

/// `big` minus `small` as multisets; `small` must be contained in `big`.
fn missing(small: &[Formula], big: &[Formula]) -> Vec<Formula> {
    let mut rest = big.to_vec();
    for f in small {
        let i = rest.iter().position(|x| x == f).expect("weakening target lacks a formula");
        rest.remove(i);
    }
    rest
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::graph::GraphBuilder;
    use crate::lk::lk_check;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn local(kind: LinkKind, ps: &[&str], cs: &[&str]) -> Derivation {
        let ps: Vec<Formula> = ps.iter().map(|s| f(s)).collect();
        let cs: Vec<Formula> = cs.iter().map(|s| f(s)).collect();
        link_derivation(kind, &ps.iter().collect::<Vec<_>>(), &cs.iter().collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn local_table_is_checked() {
        let cases: &[(LinkKind, &[&str], &[&str])] = &[
            (LinkKind::AndI, &["b", "a"], &["a & b"]),
            (LinkKind::OrE, &["a | b"], &["a", "b"]),
            (LinkKind::ImpE, &["a -> b", "a"], &["b"]),
            (LinkKind::ImpE, &["a -> a", "(a -> a) -> c"], &["c"]),
            (LinkKind::AndEL, &["a & b"], &["a"]),
            (LinkKind::AndER, &["a & b"], &["b"]),
            (LinkKind::OrIL, &["a"], &["a | b"]),
            (LinkKind::OrIR, &["b"], &["a | b"]),
            (LinkKind::BotLink, &["~a", "a"], &["F"]),
            (LinkKind::BotLink, &["~~a", "~a"], &["F"]),
            (LinkKind::TopLink, &["T"], &["~a", "a"]),
            (LinkKind::TopFW, &["T", "a"], &["a"]),
            (LinkKind::TopFW, &["T", "T"], &["T"]),
            (LinkKind::BotDW, &["a"], &["a", "F"]),
            (LinkKind::TopSW, &["a"], &["T"]),
            (LinkKind::BotSW, &["F"], &["a"]),
        ];
        for (kind, ps, cs) in cases {
            let d = local(*kind, ps, cs);
            assert_eq!(lk_check(&d), Ok(()), "{kind}");
            let expected = Sequent::new(ps.iter().map(|s| f(s)), cs.iter().map(|s| f(s)));
            assert_eq!(d.conclusion, expected, "{kind}");
        }
    }

    #[test]
    fn switchable_links_have_no_local_derivation() {
        let a = f("a");
        assert!(matches!(
            link_derivation(LinkKind::Contraction, &[&a, &a], &[&a]),
            Err(SequentializeError::Switchable { .. })
        ));
    }

    #[test]
    fn self_discharge() {
        let mut b = GraphBuilder::new();
        let x = b.node("x", "a");
        let w = b.node("w", "a -> a");
        b.imp_intro(x, w, x);
        let g = b.build().unwrap();
        let d = sequentialize(&g).unwrap();
        assert_eq!(d.skeleton(), "ImpR(Axiom)");
        assert_eq!(lk_check(&d), Ok(()));
    }

    #[test]
    fn unsound_input_is_rejected() {
        let mut b = GraphBuilder::new();
        let x = b.node("x", "a | b");
        let l = b.node("l", "a");
        let r = b.node("r", "b");
        let y = b.node("y", "a & b");
        b.link(LinkKind::OrE, &[x], &[l, r]);
        b.link(LinkKind::AndI, &[l, r], &[y]);
        let g = b.build().unwrap();
        assert!(matches!(sequentialize(&g), Err(SequentializeError::Unsound { defect: Defect::Cyclic, .. })));
    }

    #[test]
    fn units_can_be_encoded() {
        let mut b = GraphBuilder::new();
        let x = b.node("x", "b");
        let y = b.node("y", "T");
        b.link(LinkKind::TopSW, &[x], &[y]);
        let g = b.build().unwrap();
        let d = sequentialize(&g).unwrap();
        let w = unit_witness(&g);
        assert_eq!(w, f("b"));
        let e = encode_units(&d, &w);
        assert_eq!(lk_check(&e), Ok(()));
        assert_eq!(e.conclusion, g.end_sequent().map(|x| x.encode_units(&w)));
        assert_eq!(e.count(Rule::TopR), 0);
    }
}
