//! LK derivations and an independent checker.
//!
//! Contexts are multisets and two-premise rules split their context between
//! the premises. `TopR` and `BotL` are axioms with arbitrary context. A
//! derivation names its rule and conclusion only; the checker works out the
//! principal formula itself, and an optional `principal` is cross-checked
//! when present.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{parse_formula, Formula, ParseError, Sequent};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    Axiom,
    TopR,
    BotL,
    LW,
    RW,
    LC,
    RC,
    AndL1,
    AndL2,
    AndR,
    OrR1,
    OrR2,
    OrL,
    ImpL,
    ImpR,
    NegL,
    NegR,
    Cut,
}

impl Rule {
    pub fn premise_count(self) -> usize {
        use Rule::*;
        match self {
            Axiom | TopR | BotL => 0,
            AndR | OrL | ImpL | Cut => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub rule: Rule,
    pub conclusion: Sequent,
    pub premises: Vec<Derivation>,
    pub principal: Option<Formula>,
}

impl Derivation {
    pub fn new(rule: Rule, conclusion: Sequent, premises: Vec<Derivation>) -> Derivation {
        Derivation { rule, conclusion, premises, principal: None }
    }

    pub fn axiom(formula: Formula) -> Derivation {
        Derivation::new(Rule::Axiom, Sequent::axiom(formula), vec![])
    }

    pub fn end_sequent(&self) -> &Sequent {
        &self.conclusion
    }

    /// Rule names only, e.g. `Cut(RC(OrL(Axiom,Axiom)),OrR1(Axiom))`.
    pub fn skeleton(&self) -> String {
        if self.premises.is_empty() {
            return self.rule.to_string();
        }
        let inner: Vec<String> = self.premises.iter().map(Derivation::skeleton).collect();
        format!("{}({})", self.rule, inner.join(","))
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn count(&self, rule: Rule) -> usize {
        (self.rule == rule) as usize + self.premises.iter().map(|d| d.count(rule)).sum::<usize>()
    }

    /// Applies `f` to every formula in every sequent.
    pub fn map_formulas(&self, f: &impl Fn(&Formula) -> Formula) -> Derivation {
        Derivation {
            rule: self.rule,
            conclusion: self.conclusion.map(f),
            premises: self.premises.iter().map(|d| d.map_formulas(f)).collect(),
            principal: self.principal.as_ref().map(f),
        }
    }

    pub fn check(&self) -> Result<(), LkDefect> {
        lk_check(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&DerivationFile::from(self)).expect("derivation serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Derivation, DerivationFileError> {
        let file: DerivationFile = serde_json::from_str(text)?;
        file.try_into()
    }
}

impl fmt::Display for Derivation {
    /// One line per rule application, premises indented below.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn walk(d: &Derivation, depth: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            writeln!(f, "{:indent$}{}  {}", "", d.rule, d.conclusion, indent = depth * 2)?;
            d.premises.iter().try_for_each(|p| walk(p, depth + 1, f))
        }
        walk(self, 0, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefectKind {
    WrongPremiseCount,
    /// no formula of the shape the rule needs
    SchemaMismatch,
    /// the stated principal formula is absent
    MissingFormula,
    /// shapes fit but the contexts do not add up
    ConclusionMismatch,
}

/// A rule instance that fails. `path` lists premise indices from the root.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{rule} at {} concluding {conclusion}: {kind:?}", path_string(.path))]
pub struct LkDefect {
    pub path: Vec<usize>,
    pub rule: Rule,
    pub conclusion: Sequent,
    pub kind: DefectKind,
}

fn path_string(path: &[usize]) -> String {
    if path.is_empty() {
        "root".to_string()
    } else {
        path.iter().map(ToString::to_string).collect::<Vec<_>>().join(".")
    }
}

/// Checks every rule instance, root first, then premises left to right.
pub fn lk_check(d: &Derivation) -> Result<(), LkDefect> {
    let mut path = Vec::new();
    check_at(d, &mut path)
}

fn check_at(d: &Derivation, path: &mut Vec<usize>) -> Result<(), LkDefect> {
    check_instance(d).map_err(|kind| LkDefect {
        path: path.clone(),
        rule: d.rule,
        conclusion: d.conclusion.clone(),
        kind,
    })?;
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        check_at(p, path)?;
        path.pop();
    }
    Ok(())
}

type Bag = Vec<Formula>;

fn without(fs: &[Formula], f: &Formula) -> Option<Bag> {
    let i = fs.iter().position(|x| x == f)?;
    let mut out = fs.to_vec();
    out.remove(i);
    Some(out)
}

fn with(fs: &[Formula], f: &Formula) -> Bag {
    let mut out = fs.to_vec();
    let i = out.partition_point(|x| x < f);
    out.insert(i, f.clone());
    out
}

fn sum(a: &[Formula], b: &[Formula]) -> Bag {
    let mut out = [a, b].concat();
    out.sort();
    out
}

fn distinct(fs: &[Formula]) -> Vec<&Formula> {
    let mut out: Vec<&Formula> = fs.iter().collect();
    out.dedup();
    out
}

fn shaped(fs: &[Formula], test: fn(&Formula) -> bool) -> Vec<&Formula> {
    distinct(fs).into_iter().filter(|f| test(f)).collect()
}

/// Tries each candidate principal formula; `fits` checks one candidate.
fn try_candidates<'a>(
    candidates: Vec<&'a Formula>,
    stated: Option<&Formula>,
    fits: impl Fn(&'a Formula) -> bool,
) -> Result<(), DefectKind> {
    if candidates.is_empty() {
        return Err(DefectKind::SchemaMismatch);
    }
    let candidates: Vec<_> = match stated {
        Some(p) => candidates.into_iter().filter(|c| *c == p).collect(),
        None => candidates,
    };
    if candidates.is_empty() {
        return Err(DefectKind::MissingFormula);
    }
    if candidates.into_iter().any(fits) {
        Ok(())
    } else {
        Err(DefectKind::ConclusionMismatch)
    }
}

fn check_instance(d: &Derivation) -> Result<(), DefectKind> {
    use Rule::*;
    if d.premises.len() != d.rule.premise_count() {
        return Err(DefectKind::WrongPremiseCount);
    }
    let gamma = d.conclusion.antecedent();
    let delta = d.conclusion.succedent();
    let stated = d.principal.as_ref();
    let prem = |i: usize| &d.premises[i].conclusion;
    match d.rule {
        Axiom => {
            let ok = gamma.len() == 1 && delta.len() == 1 && gamma[0] == delta[0];
            if !ok {
                return Err(DefectKind::SchemaMismatch);
            }
            try_candidates(vec![&gamma[0]], stated, |_| true)
        }
        TopR => try_candidates(shaped(delta, |f| *f == Formula::Top), stated, |_| true),
        BotL => try_candidates(shaped(gamma, |f| *f == Formula::Bottom), stated, |_| true),
        LW => {
            let p = prem(0);
            try_candidates(distinct(gamma), stated, |a| {
                p.succedent() == delta && without(gamma, a).as_deref() == Some(p.antecedent())
            })
        }
        RW => {
            let p = prem(0);
            try_candidates(distinct(delta), stated, |a| {
                p.antecedent() == gamma && without(delta, a).as_deref() == Some(p.succedent())
            })
        }
        LC => {
            let p = prem(0);
            try_candidates(distinct(gamma), stated, |a| {
                p.succedent() == delta && with(gamma, a) == p.antecedent()
            })
        }
        RC => {
            let p = prem(0);
            try_candidates(distinct(delta), stated, |a| {
                p.antecedent() == gamma && with(delta, a) == p.succedent()
            })
        }
        AndL1 | AndL2 => {
            let p = prem(0);
            let left = d.rule == AndL1;
            try_candidates(shaped(gamma, |f| matches!(f, Formula::And(..))), stated, |f| {
                let Formula::And(a, b) = f else { unreachable!() };
                let part = if left { a } else { b };
                p.succedent() == delta
                    && without(gamma, f).is_some_and(|rest| with(&rest, part) == p.antecedent())
            })
        }
        OrR1 | OrR2 => {
            let p = prem(0);
            let left = d.rule == OrR1;
            try_candidates(shaped(delta, |f| matches!(f, Formula::Or(..))), stated, |f| {
                let Formula::Or(a, b) = f else { unreachable!() };
                let part = if left { a } else { b };
                p.antecedent() == gamma
                    && without(delta, f).is_some_and(|rest| with(&rest, part) == p.succedent())
            })
        }
        ImpR => {
            let p = prem(0);
            try_candidates(shaped(delta, |f| matches!(f, Formula::Imp(..))), stated, |f| {
                let Formula::Imp(a, b) = f else { unreachable!() };
                with(gamma, a) == p.antecedent()
                    && without(delta, f).is_some_and(|rest| with(&rest, b) == p.succedent())
            })
        }
        NegL => {
            let p = prem(0);
            try_candidates(shaped(gamma, |f| matches!(f, Formula::Neg(..))), stated, |f| {
                let Formula::Neg(a) = f else { unreachable!() };
                with(delta, a) == p.succedent()
                    && without(gamma, f).as_deref() == Some(p.antecedent())
            })
        }
        NegR => {
            let p = prem(0);
            try_candidates(shaped(delta, |f| matches!(f, Formula::Neg(..))), stated, |f| {
                let Formula::Neg(a) = f else { unreachable!() };
                with(gamma, a) == p.antecedent()
                    && without(delta, f).as_deref() == Some(p.succedent())
            })
        }
        AndR => {
            let (p, q) = (prem(0), prem(1));
            try_candidates(shaped(delta, |f| matches!(f, Formula::And(..))), stated, |f| {
                let Formula::And(a, b) = f else { unreachable!() };
                let (Some(d1), Some(d2)) = (without(p.succedent(), a), without(q.succedent(), b)) else {
                    return false;
                };
                sum(p.antecedent(), q.antecedent()) == gamma
                    && without(delta, f).is_some_and(|rest| rest == sum(&d1, &d2))
            })
        }
        OrL => {
            let (p, q) = (prem(0), prem(1));
            try_candidates(shaped(gamma, |f| matches!(f, Formula::Or(..))), stated, |f| {
                let Formula::Or(a, b) = f else { unreachable!() };
                let (Some(g1), Some(g2)) = (without(p.antecedent(), a), without(q.antecedent(), b)) else {
                    return false;
                };
                sum(p.succedent(), q.succedent()) == delta
                    && without(gamma, f).is_some_and(|rest| rest == sum(&g1, &g2))
            })
        }
        ImpL => {
            let (p, q) = (prem(0), prem(1));
            try_candidates(shaped(gamma, |f| matches!(f, Formula::Imp(..))), stated, |f| {
                let Formula::Imp(a, b) = f else { unreachable!() };
                let (Some(d1), Some(g2)) = (without(p.succedent(), a), without(q.antecedent(), b)) else {
                    return false;
                };
                sum(&d1, q.succedent()) == delta
                    && without(gamma, f).is_some_and(|rest| rest == sum(p.antecedent(), &g2))
            })
        }
        Cut => {
            let (p, q) = (prem(0), prem(1));
            let shared: Vec<&Formula> =
                distinct(p.succedent()).into_iter().filter(|f| q.antecedent().contains(f)).collect();
            try_candidates(shared, stated, |a| {
                let d1 = without(p.succedent(), a).expect("candidate is present");
                let g2 = without(q.antecedent(), a).expect("candidate is present");
                sum(p.antecedent(), &g2) == gamma && sum(&d1, q.succedent()) == delta
            })
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SequentFile {
    antecedent: Vec<String>,
    succedent: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DerivationFile {
    rule: Rule,
    conclusion: SequentFile,
    #[serde(default)]
    premises: Vec<DerivationFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    principal: Option<String>,
}

#[derive(Debug, Error)]
pub enum DerivationFileError {
    #[error("malformed derivation file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("formula {text:?}")]
    Formula { text: String, source: ParseError },
}

impl From<&Derivation> for DerivationFile {
    fn from(d: &Derivation) -> DerivationFile {
        let strings = |fs: &[Formula]| fs.iter().map(ToString::to_string).collect();
        DerivationFile {
            rule: d.rule,
            conclusion: SequentFile {
                antecedent: strings(d.conclusion.antecedent()),
                succedent: strings(d.conclusion.succedent()),
            },
            premises: d.premises.iter().map(DerivationFile::from).collect(),
            principal: d.principal.as_ref().map(ToString::to_string),
        }
    }
}

impl TryFrom<DerivationFile> for Derivation {
    type Error = DerivationFileError;

    fn try_from(file: DerivationFile) -> Result<Derivation, DerivationFileError> {
        let parse = |text: &String| {
            parse_formula(text).map_err(|source| DerivationFileError::Formula { text: text.clone(), source })
        };
        let antecedent = file.conclusion.antecedent.iter().map(parse).collect::<Result<Vec<_>, _>>()?;
        let succedent = file.conclusion.succedent.iter().map(parse).collect::<Result<Vec<_>, _>>()?;
        Ok(Derivation {
            rule: file.rule,
            conclusion: Sequent::new(antecedent, succedent),
            premises: file.premises.into_iter().map(Derivation::try_from).collect::<Result<_, _>>()?,
            principal: file.principal.as_ref().map(parse).transpose()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn seq(gamma: &[&str], delta: &[&str]) -> Sequent {
        Sequent::new(gamma.iter().map(|s| f(s)), delta.iter().map(|s| f(s)))
    }

    fn ax(s: &str) -> Derivation {
        Derivation::axiom(f(s))
    }

    #[test]
    fn axiom() {
        assert_eq!(lk_check(&ax("a")), Ok(()));
        let bad = Derivation::new(Rule::Axiom, seq(&["a"], &["b"]), vec![]);
        assert_eq!(lk_check(&bad).unwrap_err().kind, DefectKind::SchemaMismatch);
    }

    #[test]
    fn and_right() {
        let good = Derivation::new(Rule::AndR, seq(&["a", "b"], &["a & b"]), vec![ax("a"), ax("b")]);
        assert_eq!(lk_check(&good), Ok(()));
        let bad = Derivation::new(Rule::AndR, seq(&["a", "b"], &["a | b"]), vec![ax("a"), ax("b")]);
        assert_eq!(lk_check(&bad).unwrap_err().kind, DefectKind::SchemaMismatch);
        let lost = Derivation::new(Rule::AndR, seq(&["a"], &["a & b"]), vec![ax("a"), ax("b")]);
        assert_eq!(lk_check(&lost).unwrap_err().kind, DefectKind::ConclusionMismatch);
    }

    #[test]
    fn or_left_then_contraction() {
        let orl = Derivation::new(Rule::OrL, seq(&["a | a"], &["a", "a"]), vec![ax("a"), ax("a")]);
        let rc = Derivation::new(Rule::RC, seq(&["a | a"], &["a"]), vec![orl]);
        assert_eq!(lk_check(&rc), Ok(()));
        assert_eq!(rc.skeleton(), "RC(OrL(Axiom,Axiom))");
    }

    #[test]
    fn cut_and_implication() {
        let left = Derivation::new(Rule::OrR1, seq(&["a"], &["a | c"]), vec![ax("a")]);
        let imp = Derivation::new(Rule::ImpR, seq(&[], &["a -> a | c"]), vec![left.clone()]);
        assert_eq!(lk_check(&imp), Ok(()));
        let cut = Derivation::new(Rule::Cut, seq(&["a"], &["a | c"]), vec![ax("a"), left]);
        assert_eq!(lk_check(&cut), Ok(()));
        let impl_left = Derivation::new(Rule::ImpL, seq(&["a", "a -> b"], &["b"]), vec![ax("a"), ax("b")]);
        assert_eq!(lk_check(&impl_left), Ok(()));
    }

    #[test]
    fn negation_and_units() {
        let negr = Derivation::new(Rule::NegR, seq(&[], &["a", "~a"]), vec![ax("a")]);
        let lw = Derivation::new(Rule::LW, seq(&["T"], &["a", "~a"]), vec![negr]);
        assert_eq!(lk_check(&lw), Ok(()));
        let top = Derivation::new(Rule::TopR, seq(&["b"], &["T", "c"]), vec![]);
        assert_eq!(lk_check(&top), Ok(()));
        let no_top = Derivation::new(Rule::TopR, seq(&["b"], &["c"]), vec![]);
        assert_eq!(lk_check(&no_top).unwrap_err().kind, DefectKind::SchemaMismatch);
    }

    #[test]
    fn stated_principal_is_cross_checked() {
        let mut d = Derivation::new(Rule::RW, seq(&["a"], &["a", "b"]), vec![ax("a")]);
        d.principal = Some(f("b"));
        assert_eq!(lk_check(&d), Ok(()));
        d.principal = Some(f("c"));
        assert_eq!(lk_check(&d).unwrap_err().kind, DefectKind::MissingFormula);
        d.principal = Some(f("a"));
        assert_eq!(lk_check(&d).unwrap_err().kind, DefectKind::ConclusionMismatch);
    }

    #[test]
    fn defect_path_points_at_node() {
        let bad = Derivation::new(Rule::OrR1, seq(&["b"], &["a | c"]), vec![ax("b")]);
        let root = Derivation::new(Rule::Cut, seq(&["b"], &["a | c"]), vec![ax("b"), bad]);
        let err = lk_check(&root).unwrap_err();
        assert_eq!(err.path, vec![1]);
        assert_eq!(err.rule, Rule::OrR1);
        assert_eq!(lk_check(&Derivation::new(Rule::LW, seq(&["a"], &["a"]), vec![])).unwrap_err().kind, DefectKind::WrongPremiseCount);
    }

    #[test]
    fn json_round_trip() {
        let orl = Derivation::new(Rule::OrL, seq(&["a | b"], &["a", "b"]), vec![ax("a"), ax("b")]);
        let d = Derivation::new(Rule::ImpR, seq(&[], &["a | b -> a", "b"]), vec![orl]);
        let back = Derivation::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
        assert!(matches!(Derivation::from_json("{\"rule\": \"Axiom\"}"), Err(DerivationFileError::Json(_))));
    }
}
