//! Random proof-graphs: sound ones by construction, unsound ones by mutation.
//!
//! Sound graphs are grown with [`SoundBuilder`], whose every operation keeps
//! each meta-switching graph of each component a tree: it either hangs new
//! nodes off one existing node, merges two components through a new node or
//! a shared node, or adds a switchable link whose two alternatives each
//! attach one new node.
//!
//! The random driver is deterministic given the spec. It uses ChaCha8 seeded
//! from `seed` through `seed_from_u64`, and draws in this order:
//!
//! 1. the number of starting axioms, 1 to 3 (never more than `max_links + 1`),
//!    and a label for each;
//! 2. while fewer than `max_links` links exist: if the components can only
//!    just be merged within the remaining budget, a merge (glueing when
//!    labels allow, otherwise `AndI`); otherwise a link kind by
//!    `kind_weights` followed by a random placement for it. A placement that
//!    is not possible in the current graph is dropped and the loop draws
//!    again, up to a fixed number of attempts.

use std::collections::BTreeMap;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::formula::Formula;
use crate::graph::{Link, LinkKind, Node, NodeId, ProofGraph, RawGraph};
use crate::schema;
use crate::switching::{is_ngraph, Verdict, DEFAULT_MAX_SWITCHABLES};

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub seed: u64,
    pub max_links: usize,
    pub atom_pool: Vec<String>,
    pub kind_weights: BTreeMap<LinkKind, f64>,
    /// Mutations per link when generating unsound graphs.
    pub mutation_rate: f64,
}

impl Default for GeneratorSpec {
    fn default() -> GeneratorSpec {
        let mut kind_weights: BTreeMap<LinkKind, f64> = LinkKind::ALL.iter().map(|&k| (k, 1.0)).collect();
        for k in [LinkKind::Contraction, LinkKind::Expansion, LinkKind::ImpI] {
            kind_weights.insert(k, 3.0);
        }
        GeneratorSpec {
            seed: 0,
            max_links: 16,
            atom_pool: ["a", "b", "c"].map(String::from).to_vec(),
            kind_weights,
            mutation_rate: 0.1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SpecError {
    #[error("atom pool is empty")]
    EmptyAtomPool,
    #[error("{0:?} is not a usable atom name")]
    BadAtom(String),
    #[error("weight of {0} is negative or not finite")]
    BadWeight(LinkKind),
    #[error("all link weights are zero")]
    ZeroWeights,
    #[error("mutation rate must lie in (0, 1], got {0}")]
    BadMutationRate(f64),
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<(), SpecError> {
        if self.atom_pool.is_empty() {
            return Err(SpecError::EmptyAtomPool);
        }
        for atom in &self.atom_pool {
            let ok = matches!(crate::formula::parse_formula(atom), Ok(Formula::Atom(ref n)) if n == atom);
            if !ok {
                return Err(SpecError::BadAtom(atom.clone()));
            }
        }
        for (&kind, &w) in &self.kind_weights {
            if !(w.is_finite() && w >= 0.0) {
                return Err(SpecError::BadWeight(kind));
            }
        }
        if self.kind_weights.values().all(|&w| w == 0.0) {
            return Err(SpecError::ZeroWeights);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("node {0} is not a conclusion")]
    NotAConclusion(String),
    #[error("node {0} is not a premise")]
    NotAPremise(String),
    #[error("nodes {0} and {1} must lie in the same component")]
    DifferentComponents(String, String),
    #[error("nodes {0} and {1} must lie in different components")]
    SameComponent(String, String),
    #[error("labels do not fit a {0} link here")]
    LabelMismatch(LinkKind),
    #[error("a {0} link is not available for this step")]
    WrongKind(LinkKind),
    #[error("a {0} link here needs an extra formula")]
    MissingFormula(LinkKind),
    #[error("graph still has {0} components")]
    Disconnected(usize),
}

#[derive(Clone, Debug, Error)]
pub enum GenerateError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("no unsound mutation found after {0} attempts")]
    GaveUp(usize),
}

const DELETED: usize = usize::MAX;

/// Builds sound proof-graphs step by step. Node ids returned by the builder
/// index its own node list; [`SoundBuilder::finish`] renumbers them to drop
/// nodes removed by glueing. Names come from a counter (`n0`, `n1`, ...).
#[derive(Clone, Debug, Default)]
pub struct SoundBuilder {
    nodes: Vec<Node>,
    links: Vec<Link>,
    component: Vec<usize>,
    has_below: Vec<bool>,
    has_above: Vec<bool>,
    next_component: usize,
}

impl SoundBuilder {
    pub fn new() -> SoundBuilder {
        SoundBuilder::default()
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn label(&self, n: NodeId) -> &Formula {
        &self.nodes[n.index()].label
    }

    fn name(&self, n: NodeId) -> String {
        self.nodes[n.index()].name.clone()
    }

    fn live(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).map(NodeId::new).filter(|n| self.component[n.index()] != DELETED)
    }

    /// Nodes with no link below.
    pub fn conclusions(&self) -> Vec<NodeId> {
        self.live().filter(|n| !self.has_below[n.index()]).collect()
    }

    /// Nodes with no link above; discharged hypotheses are excluded.
    pub fn premises(&self) -> Vec<NodeId> {
        self.live().filter(|n| !self.has_above[n.index()]).collect()
    }

    pub fn component_count(&self) -> usize {
        let mut ids: Vec<usize> = self.live().map(|n| self.component[n.index()]).collect();
        ids.sort_unstable();
        ids.dedup();
        ids.len()
    }

    pub fn same_component(&self, x: NodeId, y: NodeId) -> bool {
        self.component[x.index()] == self.component[y.index()]
    }

    fn fresh(&mut self, label: Formula, component: usize) -> NodeId {
        let id = NodeId::new(self.nodes.len());
        self.nodes.push(Node { name: format!("n{}", self.nodes.len()), label });
        self.component.push(component);
        self.has_below.push(false);
        self.has_above.push(false);
        id
    }

    /// A new one-node component.
    pub fn axiom(&mut self, label: Formula) -> NodeId {
        let c = self.next_component;
        self.next_component += 1;
        self.fresh(label, c)
    }

    fn push(&mut self, link: Link) {
        debug_assert!({
            let label = |n: &NodeId| &self.nodes[n.index()].label;
            let ps: Vec<_> = link.premises.iter().map(label).collect();
            let cs: Vec<_> = link.lower_nodes().map(|n| label(&n)).collect();
            schema::matches(link.kind, &ps, &cs)
        });
        for p in &link.premises {
            self.has_below[p.index()] = true;
        }
        for c in link.lower_nodes() {
            self.has_above[c.index()] = true;
        }
        self.links.push(link);
    }

    fn merge(&mut self, keep: usize, gone: usize) {
        for c in &mut self.component {
            if *c == gone {
                *c = keep;
            }
        }
    }

    fn need_conclusion(&self, n: NodeId) -> Result<(), StepError> {
        if self.has_below[n.index()] || self.component[n.index()] == DELETED {
            return Err(StepError::NotAConclusion(self.name(n)));
        }
        Ok(())
    }

    fn need_premise(&self, n: NodeId) -> Result<(), StepError> {
        if self.has_above[n.index()] || self.component[n.index()] == DELETED {
            return Err(StepError::NotAPremise(self.name(n)));
        }
        Ok(())
    }

    /// A simple link hanging below conclusion `c`. `other` is the added
    /// disjunct for `OrIL`/`OrIR` and the conclusion label for `BotSW`.
    pub fn below_simple(&mut self, kind: LinkKind, c: NodeId, other: Option<Formula>) -> Result<NodeId, StepError> {
        use LinkKind::*;
        self.need_conclusion(c)?;
        let a = self.label(c).clone();
        let missing = || StepError::MissingFormula(kind);
        let label = match (kind, &a) {
            (AndEL, Formula::And(l, _)) => (**l).clone(),
            (AndER, Formula::And(_, r)) => (**r).clone(),
            (OrIL, _) => Formula::or(a.clone(), other.ok_or_else(missing)?),
            (OrIR, _) => Formula::or(other.ok_or_else(missing)?, a.clone()),
            (TopSW, _) => Formula::Top,
            (BotSW, Formula::Bottom) => other.ok_or_else(missing)?,
            (AndEL | AndER | BotSW, _) => return Err(StepError::LabelMismatch(kind)),
            _ => return Err(StepError::WrongKind(kind)),
        };
        let y = self.fresh(label, self.component[c.index()]);
        self.push(Link::new(kind, vec![c], vec![y]));
        Ok(y)
    }

    /// A non-switchable defocussing link below conclusion `c`. `other` is
    /// the excluded-middle formula for `TopLink`.
    pub fn below_defocus(
        &mut self,
        kind: LinkKind,
        c: NodeId,
        other: Option<Formula>,
    ) -> Result<(NodeId, NodeId), StepError> {
        use LinkKind::*;
        self.need_conclusion(c)?;
        let a = self.label(c).clone();
        let (l, r) = match (kind, &a) {
            (OrE, Formula::Or(l, r)) => ((**l).clone(), (**r).clone()),
            (TopLink, Formula::Top) => {
                let x = other.ok_or(StepError::MissingFormula(kind))?;
                (x.clone(), Formula::neg(x))
            }
            (BotDW, _) => (a.clone(), Formula::Bottom),
            (OrE | TopLink, _) => return Err(StepError::LabelMismatch(kind)),
            _ => return Err(StepError::WrongKind(kind)),
        };
        let comp = self.component[c.index()];
        let y = self.fresh(l, comp);
        let z = self.fresh(r, comp);
        self.push(Link::new(kind, vec![c], vec![y, z]));
        Ok((y, z))
    }

    /// A simple link placed above premise `p`. `other` is the added conjunct
    /// for `AndEL`/`AndER` and the premise label for `TopSW`.
    pub fn above_simple(&mut self, kind: LinkKind, p: NodeId, other: Option<Formula>) -> Result<NodeId, StepError> {
        use LinkKind::*;
        self.need_premise(p)?;
        let a = self.label(p).clone();
        let missing = || StepError::MissingFormula(kind);
        let label = match (kind, &a) {
            (AndEL, _) => Formula::and(a.clone(), other.ok_or_else(missing)?),
            (AndER, _) => Formula::and(other.ok_or_else(missing)?, a.clone()),
            (OrIL, Formula::Or(l, _)) => (**l).clone(),
            (OrIR, Formula::Or(_, r)) => (**r).clone(),
            (TopSW, Formula::Top) => other.ok_or_else(missing)?,
            (BotSW, _) => Formula::Bottom,
            (OrIL | OrIR | TopSW, _) => return Err(StepError::LabelMismatch(kind)),
            _ => return Err(StepError::WrongKind(kind)),
        };
        let x = self.fresh(label, self.component[p.index()]);
        self.push(Link::new(kind, vec![x], vec![p]));
        Ok(x)
    }

    /// A non-switchable focussing link above premise `p` with two new
    /// premises. `other` is the formula `X` of `BotLink` (`X, ~X`) and the
    /// antecedent `A` of `ImpE` (`A, A -> B`).
    pub fn above_focus(
        &mut self,
        kind: LinkKind,
        p: NodeId,
        other: Option<Formula>,
    ) -> Result<(NodeId, NodeId), StepError> {
        use LinkKind::*;
        self.need_premise(p)?;
        let a = self.label(p).clone();
        let missing = || StepError::MissingFormula(kind);
        let (l, r) = match (kind, &a) {
            (AndI, Formula::And(l, r)) => ((**l).clone(), (**r).clone()),
            (BotLink, Formula::Bottom) => {
                let x = other.ok_or_else(missing)?;
                (x.clone(), Formula::neg(x))
            }
            (ImpE, _) => {
                let x = other.ok_or_else(missing)?;
                (x.clone(), Formula::imp(x, a.clone()))
            }
            (TopFW, _) => (Formula::Top, a.clone()),
            (AndI | BotLink, _) => return Err(StepError::LabelMismatch(kind)),
            _ => return Err(StepError::WrongKind(kind)),
        };
        let comp = self.component[p.index()];
        let x = self.fresh(l, comp);
        let y = self.fresh(r, comp);
        self.push(Link::new(kind, vec![x, y], vec![p]));
        Ok((x, y))
    }

    /// A non-switchable defocussing link above premises `p` and `q` of two
    /// different components, merging them.
    pub fn above_defocus(&mut self, kind: LinkKind, p: NodeId, q: NodeId) -> Result<NodeId, StepError> {
        use LinkKind::*;
        self.need_premise(p)?;
        self.need_premise(q)?;
        if self.same_component(p, q) {
            return Err(StepError::SameComponent(self.name(p), self.name(q)));
        }
        let (a, b) = (self.label(p).clone(), self.label(q).clone());
        let label = match kind {
            OrE => Formula::or(a, b),
            TopLink if b == Formula::neg(a.clone()) || a == Formula::neg(b.clone()) => Formula::Top,
            BotDW if b == Formula::Bottom => a,
            BotDW if a == Formula::Bottom => b,
            TopLink | BotDW => return Err(StepError::LabelMismatch(kind)),
            _ => return Err(StepError::WrongKind(kind)),
        };
        let (cp, cq) = (self.component[p.index()], self.component[q.index()]);
        self.merge(cp, cq);
        let x = self.fresh(label, cp);
        self.push(Link::new(kind, vec![x], vec![p, q]));
        Ok(x)
    }

    /// A non-switchable focussing link below conclusions `c1` and `c2` of two
    /// different components, merging them.
    pub fn join(&mut self, kind: LinkKind, c1: NodeId, c2: NodeId) -> Result<NodeId, StepError> {
        use LinkKind::*;
        self.need_conclusion(c1)?;
        self.need_conclusion(c2)?;
        if self.same_component(c1, c2) {
            return Err(StepError::SameComponent(self.name(c1), self.name(c2)));
        }
        let (a, b) = (self.label(c1).clone(), self.label(c2).clone());
        let label = match (kind, &a, &b) {
            (AndI, _, _) => Formula::and(a.clone(), b.clone()),
            (BotLink, _, _) if b == Formula::neg(a.clone()) || a == Formula::neg(b.clone()) => Formula::Bottom,
            (ImpE, _, Formula::Imp(x, y)) if **x == a => (**y).clone(),
            (ImpE, Formula::Imp(x, y), _) if **x == b => (**y).clone(),
            (TopFW, Formula::Top, _) => b.clone(),
            (TopFW, _, Formula::Top) => a.clone(),
            (BotLink | ImpE | TopFW, _, _) => return Err(StepError::LabelMismatch(kind)),
            _ => return Err(StepError::WrongKind(kind)),
        };
        let (k1, k2) = (self.component[c1.index()], self.component[c2.index()]);
        self.merge(k1, k2);
        let z = self.fresh(label, k1);
        self.push(Link::new(kind, vec![c1, c2], vec![z]));
        Ok(z)
    }

    /// Contracts two equally labelled conclusions of one component.
    pub fn contract(&mut self, c1: NodeId, c2: NodeId) -> Result<NodeId, StepError> {
        self.need_conclusion(c1)?;
        self.need_conclusion(c2)?;
        if c1 == c2 || !self.same_component(c1, c2) {
            return Err(StepError::DifferentComponents(self.name(c1), self.name(c2)));
        }
        if self.label(c1) != self.label(c2) {
            return Err(StepError::LabelMismatch(LinkKind::Contraction));
        }
        let z = self.fresh(self.label(c1).clone(), self.component[c1.index()]);
        self.push(Link::new(LinkKind::Contraction, vec![c1, c2], vec![z]));
        Ok(z)
    }

    /// Expands into two equally labelled premises of one component.
    pub fn expand(&mut self, p1: NodeId, p2: NodeId) -> Result<NodeId, StepError> {
        self.need_premise(p1)?;
        self.need_premise(p2)?;
        if p1 == p2 || !self.same_component(p1, p2) {
            return Err(StepError::DifferentComponents(self.name(p1), self.name(p2)));
        }
        if self.label(p1) != self.label(p2) {
            return Err(StepError::LabelMismatch(LinkKind::Expansion));
        }
        let x = self.fresh(self.label(p1).clone(), self.component[p1.index()]);
        self.push(Link::new(LinkKind::Expansion, vec![x], vec![p1, p2]));
        Ok(x)
    }

    /// Discharges premise `p` from conclusion `c` of the same component. The
    /// two may be the same node when it stands alone.
    pub fn discharge(&mut self, c: NodeId, p: NodeId) -> Result<NodeId, StepError> {
        self.need_conclusion(c)?;
        self.need_premise(p)?;
        if !self.same_component(c, p) {
            return Err(StepError::DifferentComponents(self.name(c), self.name(p)));
        }
        let label = Formula::imp(self.label(p).clone(), self.label(c).clone());
        let w = self.fresh(label, self.component[c.index()]);
        self.push(Link::imp_intro(c, w, p));
        Ok(w)
    }

    /// Identifies conclusion `c` with the equally labelled premise `p` of
    /// another component; `p` disappears.
    pub fn glue(&mut self, c: NodeId, p: NodeId) -> Result<(), StepError> {
        self.need_conclusion(c)?;
        self.need_premise(p)?;
        if self.same_component(c, p) {
            return Err(StepError::SameComponent(self.name(c), self.name(p)));
        }
        if self.label(c) != self.label(p) {
            return Err(StepError::LabelMismatch(LinkKind::AndI));
        }
        for link in &mut self.links {
            for n in link.premises.iter_mut() {
                if *n == p {
                    *n = c;
                }
            }
        }
        self.has_below[c.index()] = self.has_below[p.index()];
        let (kc, kp) = (self.component[c.index()], self.component[p.index()]);
        self.merge(kc, kp);
        self.component[p.index()] = DELETED;
        Ok(())
    }

    /// The finished graph; it must be connected.
    pub fn finish(self) -> Result<ProofGraph, StepError> {
        let count = self.component_count();
        if count != 1 {
            return Err(StepError::Disconnected(count));
        }
        let mut renumber = vec![None; self.nodes.len()];
        let mut nodes = Vec::new();
        for n in self.live() {
            renumber[n.index()] = Some(NodeId::new(nodes.len()));
            nodes.push(self.nodes[n.index()].clone());
        }
        let map = |n: NodeId| renumber[n.index()].expect("link refers to a removed node");
        let links = self
            .links
            .iter()
            .map(|l| Link {
                kind: l.kind,
                premises: l.premises.iter().map(|&n| map(n)).collect(),
                conclusions: l.conclusions.iter().map(|&n| map(n)).collect(),
                hypothesis: l.hypothesis.map(map),
            })
            .collect();
        Ok(RawGraph { nodes, links }.into_graph().expect("builder produced an invalid graph"))
    }
}

/// Largest label the random driver creates.
const MAX_FORMULA_SIZE: usize = 12;
const ATTEMPTS_PER_LINK: usize = 40;

struct Driver<'s> {
    spec: &'s GeneratorSpec,
    rng: ChaCha8Rng,
    b: SoundBuilder,
    kinds: Vec<LinkKind>,
    weights: WeightedIndex<f64>,
}

impl Driver<'_> {
    fn atom(&mut self) -> Formula {
        Formula::atom(self.spec.atom_pool.choose(&mut self.rng).expect("atom pool checked").clone())
    }

    fn formula(&mut self, depth: usize) -> Formula {
        if depth == 0 || self.rng.random_bool(0.5) {
            return self.atom();
        }
        match self.rng.random_range(0..4) {
            0 => Formula::neg(self.formula(depth - 1)),
            1 => Formula::and(self.formula(depth - 1), self.formula(depth - 1)),
            2 => Formula::or(self.formula(depth - 1), self.formula(depth - 1)),
            _ => Formula::imp(self.formula(depth - 1), self.formula(depth - 1)),
        }
    }

    /// A companion formula, often equal to `hint` so that duplicates arise
    /// for contraction and expansion.
    fn companion(&mut self, hint: &Formula) -> Formula {
        if self.rng.random_bool(0.4) && hint.size() <= MAX_FORMULA_SIZE / 2 {
            hint.clone()
        } else {
            self.formula(1)
        }
    }

    fn pick(&mut self, nodes: &[NodeId]) -> Option<NodeId> {
        nodes.choose(&mut self.rng).copied()
    }

    fn small(&self, n: NodeId) -> bool {
        self.b.label(n).size() <= MAX_FORMULA_SIZE
    }

    /// Undoes a step whose new labels are too large.
    fn within_size(&mut self, before: &SoundBuilder) -> bool {
        let fresh = before.nodes.len()..self.b.nodes.len();
        if fresh.into_iter().all(|i| self.small(NodeId::new(i))) {
            true
        } else {
            self.b = before.clone();
            false
        }
    }

    fn pairs(&self, nodes: &[NodeId], same_component: bool) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for (i, &x) in nodes.iter().enumerate() {
            for &y in &nodes[i + 1..] {
                if self.b.same_component(x, y) == same_component {
                    out.push((x, y));
                }
            }
        }
        out
    }

    fn merge_step(&mut self) -> bool {
        let conclusions = self.b.conclusions();
        let premises = self.b.premises();
        let glueable: Vec<(NodeId, NodeId)> = conclusions
            .iter()
            .flat_map(|&c| premises.iter().map(move |&p| (c, p)))
            .filter(|&(c, p)| !self.b.same_component(c, p) && self.b.label(c) == self.b.label(p))
            .collect();
        if let Some(&(c, p)) = glueable.choose(&mut self.rng) {
            return self.b.glue(c, p).is_ok();
        }
        let pairs = self.pairs(&conclusions, false);
        match pairs.choose(&mut self.rng) {
            Some(&(x, y)) => self.b.join(LinkKind::AndI, x, y).is_ok(),
            None => false,
        }
    }

    fn step(&mut self, kind: LinkKind) -> bool {
        use LinkKind::*;
        let before = self.b.clone();
        let below = self.rng.random_bool(0.5);
        let conclusions = self.b.conclusions();
        let premises = self.b.premises();
        let ok = match kind {
            AndEL | AndER | OrIL | OrIR | TopSW | BotSW => {
                let Some(n) = self.pick(if below { &conclusions } else { &premises }) else { return false };
                let other = Some(self.companion(&self.b.label(n).clone()));
                if below {
                    self.b.below_simple(kind, n, other).is_ok()
                } else {
                    self.b.above_simple(kind, n, other).is_ok()
                }
            }
            AndI | BotLink | ImpE | TopFW => {
                if below {
                    let Some(c) = self.pick(&conclusions) else { return false };
                    let a = self.b.label(c).clone();
                    let partner = conclusions
                        .iter()
                        .copied()
                        .filter(|&d| !self.b.same_component(c, d))
                        .find(|&d| self.fits_join(kind, &a, self.b.label(d)));
                    let d = match partner {
                        Some(d) if self.rng.random_bool(0.5) => d,
                        _ => {
                            let label = self.join_partner(kind, &a);
                            self.b.axiom(label)
                        }
                    };
                    self.b.join(kind, c, d).is_ok()
                } else {
                    let Some(p) = self.pick(&premises) else { return false };
                    let other = Some(self.companion(&self.b.label(p).clone()));
                    self.b.above_focus(kind, p, other).is_ok()
                }
            }
            OrE | TopLink | BotDW => {
                if below {
                    let Some(c) = self.pick(&conclusions) else { return false };
                    let other = Some(self.formula(1));
                    self.b.below_defocus(kind, c, other).is_ok()
                } else {
                    let Some(p) = self.pick(&premises) else { return false };
                    let a = self.b.label(p).clone();
                    let label = match kind {
                        OrE => self.companion(&a),
                        TopLink => Formula::neg(a),
                        _ => Formula::Bottom,
                    };
                    let q = self.b.axiom(label);
                    self.b.above_defocus(kind, p, q).is_ok()
                }
            }
            Contraction => {
                let pairs: Vec<_> = self
                    .pairs(&conclusions, true)
                    .into_iter()
                    .filter(|&(x, y)| self.b.label(x) == self.b.label(y))
                    .collect();
                match pairs.choose(&mut self.rng) {
                    Some(&(x, y)) => self.b.contract(x, y).is_ok(),
                    None => false,
                }
            }
            Expansion => {
                let pairs: Vec<_> = self
                    .pairs(&premises, true)
                    .into_iter()
                    .filter(|&(x, y)| self.b.label(x) == self.b.label(y))
                    .collect();
                match pairs.choose(&mut self.rng) {
                    Some(&(x, y)) => self.b.expand(x, y).is_ok(),
                    None => false,
                }
            }
            ImpI => {
                let options: Vec<(NodeId, NodeId)> = conclusions
                    .iter()
                    .flat_map(|&c| premises.iter().map(move |&p| (c, p)))
                    .filter(|&(c, p)| self.b.same_component(c, p) && (c != p || self.lone(c)))
                    .collect();
                match options.choose(&mut self.rng) {
                    Some(&(c, p)) => self.b.discharge(c, p).is_ok(),
                    None => false,
                }
            }
        };
        if !ok {
            self.b = before;
            return false;
        }
        self.within_size(&before)
    }

    fn lone(&self, n: NodeId) -> bool {
        !self.b.has_above[n.index()] && !self.b.has_below[n.index()]
    }

    fn fits_join(&self, kind: LinkKind, a: &Formula, b: &Formula) -> bool {
        match kind {
            LinkKind::AndI => true,
            LinkKind::BotLink => *b == Formula::neg(a.clone()) || *a == Formula::neg(b.clone()),
            LinkKind::ImpE => matches!(b, Formula::Imp(x, _) if **x == *a),
            _ => *a == Formula::Top || *b == Formula::Top,
        }
    }

    fn join_partner(&mut self, kind: LinkKind, a: &Formula) -> Formula {
        match kind {
            LinkKind::AndI => self.companion(a),
            LinkKind::BotLink => Formula::neg(a.clone()),
            LinkKind::ImpE => {
                let b = self.formula(1);
                Formula::imp(a.clone(), b)
            }
            _ => Formula::Top,
        }
    }

    fn run(mut self) -> ProofGraph {
        let max = self.spec.max_links;
        let starts = 1 + self.rng.random_range(0..=max.min(2));
        for _ in 0..starts {
            let label = self.formula(2);
            self.b.axiom(label);
        }
        let mut attempts = 0;
        while self.b.link_count() < max && attempts < ATTEMPTS_PER_LINK * (max + 1) {
            attempts += 1;
            let remaining = max - self.b.link_count();
            let components = self.b.component_count();
            if components > 1 && components > remaining {
                self.merge_step();
                continue;
            }
            let kind = self.kinds[self.weights.sample(&mut self.rng)];
            self.step(kind);
        }
        while self.b.component_count() > 1 {
            assert!(self.merge_step(), "components can always be joined");
        }
        self.b.finish().expect("driver leaves one component")
    }
}

fn driver(spec: &GeneratorSpec, seed: u64) -> Result<Driver<'_>, SpecError> {
    spec.validate()?;
    let kinds: Vec<LinkKind> = spec.kind_weights.keys().copied().collect();
    let weights = WeightedIndex::new(kinds.iter().map(|k| spec.kind_weights[k])).map_err(|_| SpecError::ZeroWeights)?;
    Ok(Driver { spec, rng: ChaCha8Rng::seed_from_u64(seed), b: SoundBuilder::new(), kinds, weights })
}

/// A sound proof-graph with at most `spec.max_links` links.
pub fn generate_sound(spec: &GeneratorSpec) -> Result<ProofGraph, SpecError> {
    Ok(driver(spec, spec.seed)?.run())
}

const UNSOUND_ATTEMPTS: usize = 64;

/// A structurally valid but unsound proof-graph made by mutating sound ones.
pub fn generate_unsound(spec: &GeneratorSpec) -> Result<ProofGraph, GenerateError> {
    if !(spec.mutation_rate > 0.0 && spec.mutation_rate <= 1.0) {
        return Err(SpecError::BadMutationRate(spec.mutation_rate).into());
    }
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ 0x9e37_79b9_7f4a_7c15);
    for attempt in 0..UNSOUND_ATTEMPTS {
        let base = generate_sound(&GeneratorSpec { seed: spec.seed.wrapping_add(attempt as u64), ..spec.clone() })?;
        let count = ((spec.mutation_rate * base.link_count() as f64).round() as usize).max(1);
        let mut raw = base.to_raw();
        for _ in 0..count {
            raw = mutate(&raw, &mut rng);
        }
        let Ok(g) = raw.into_graph() else { continue };
        // graphs beyond the bound cannot be labelled, so they are skipped
        if let Ok(Verdict::Unsound { .. }) = is_ngraph(&g, DEFAULT_MAX_SWITCHABLES) {
            return Ok(g);
        }
    }
    Err(GenerateError::GaveUp(UNSOUND_ATTEMPTS))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mutation {
    ContractWithFresh,
    JoinConclusions,
    SplitPremises,
    SwapKind,
    DeleteLink,
    DischargeFresh,
    ExpandWithFresh,
    Rewire,
}

const MUTATIONS: [Mutation; 8] = [
    Mutation::ContractWithFresh,
    Mutation::JoinConclusions,
    Mutation::SplitPremises,
    Mutation::SwapKind,
    Mutation::DeleteLink,
    Mutation::DischargeFresh,
    Mutation::ExpandWithFresh,
    Mutation::Rewire,
];

fn node_flags(raw: &RawGraph) -> (Vec<bool>, Vec<bool>) {
    let mut below = vec![false; raw.nodes.len()];
    let mut above = vec![false; raw.nodes.len()];
    for l in &raw.links {
        for p in &l.premises {
            below[p.index()] = true;
        }
        for c in l.lower_nodes() {
            above[c.index()] = true;
        }
    }
    (below, above)
}

fn add_node(raw: &mut RawGraph, label: Formula) -> NodeId {
    let id = NodeId::new(raw.nodes.len());
    raw.nodes.push(Node { name: format!("m{}", raw.nodes.len()), label });
    id
}

/// Applies one random mutation that keeps the graph structurally valid, or
/// returns it unchanged when the drawn mutation does not apply.
fn mutate(raw: &RawGraph, rng: &mut ChaCha8Rng) -> RawGraph {
    let (below, above) = node_flags(raw);
    let ids = || (0..raw.nodes.len()).map(NodeId::new);
    let conclusions: Vec<NodeId> = ids().filter(|n| !below[n.index()]).collect();
    let premises: Vec<NodeId> = ids().filter(|n| !above[n.index()]).collect();
    let label = |n: NodeId| raw.nodes[n.index()].label.clone();
    let mut out = raw.clone();
    let mutation = *MUTATIONS.choose(rng).expect("nonempty");
    match mutation {
        Mutation::ContractWithFresh => {
            let Some(&c) = conclusions.choose(rng) else { return out };
            let f = add_node(&mut out, label(c));
            let z = add_node(&mut out, label(c));
            out.links.push(Link::new(LinkKind::Contraction, vec![c, f], vec![z]));
        }
        Mutation::JoinConclusions => {
            let (Some(&x), Some(&y)) = (conclusions.choose(rng), conclusions.choose(rng)) else { return out };
            if x == y {
                return out;
            }
            let z = add_node(&mut out, Formula::and(label(x), label(y)));
            out.links.push(Link::new(LinkKind::AndI, vec![x, y], vec![z]));
        }
        Mutation::SplitPremises => {
            let (Some(&x), Some(&y)) = (premises.choose(rng), premises.choose(rng)) else { return out };
            if x == y {
                return out;
            }
            let z = add_node(&mut out, Formula::or(label(x), label(y)));
            out.links.push(Link::new(LinkKind::OrE, vec![z], vec![x, y]));
        }
        Mutation::SwapKind => {
            let Some(i) = (0..out.links.len()).collect::<Vec<_>>().choose(rng).copied() else { return out };
            let link = &out.links[i];
            let alternatives: Vec<LinkKind> = LinkKind::ALL
                .iter()
                .copied()
                .filter(|&k| k != link.kind && k != LinkKind::ImpI && link.kind != LinkKind::ImpI)
                .filter(|&k| k.arity_class() == link.kind.arity_class())
                .filter(|&k| {
                    let ps: Vec<_> = link.premises.iter().map(|n| &raw.nodes[n.index()].label).collect();
                    let cs: Vec<_> = link.conclusions.iter().map(|n| &raw.nodes[n.index()].label).collect();
                    schema::matches(k, &ps, &cs)
                })
                .collect();
            let Some(&k) = alternatives.choose(rng) else { return out };
            out.links[i].kind = k;
        }
        Mutation::DeleteLink => {
            if out.links.is_empty() {
                return out;
            }
            let i = rng.random_range(0..out.links.len());
            out.links.remove(i);
        }
        Mutation::DischargeFresh => {
            let Some(&c) = conclusions.choose(rng) else { return out };
            let h = add_node(&mut out, label(c));
            let w = add_node(&mut out, Formula::imp(label(c), label(c)));
            out.links.push(Link::imp_intro(c, w, h));
        }
        Mutation::ExpandWithFresh => {
            let Some(&p) = premises.choose(rng) else { return out };
            let q = add_node(&mut out, label(p));
            let x = add_node(&mut out, label(p));
            out.links.push(Link::new(LinkKind::Expansion, vec![x], vec![p, q]));
        }
        Mutation::Rewire => {
            // move a link's premise onto another conclusion with the same label
            let options: Vec<(usize, usize, NodeId)> = out
                .links
                .iter()
                .enumerate()
                .flat_map(|(i, l)| l.premises.iter().enumerate().map(move |(j, &p)| (i, j, p)))
                .flat_map(|(i, j, p)| {
                    conclusions.iter().filter(move |&&c| c != p).map(move |&c| (i, j, c))
                })
                .filter(|&(i, j, c)| label(c) == label(out_premise(raw, i, j)))
                .collect();
            let Some(&(i, j, c)) = options.choose(rng) else { return out };
            out.links[i].premises[j] = c;
        }
    }
    if out.validate().is_empty() {
        out
    } else {
        raw.clone()
    }
}

fn out_premise(raw: &RawGraph, link: usize, slot: usize) -> NodeId {
    raw.links[link].premises[slot]
}
