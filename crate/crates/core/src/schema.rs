//! Label schemas of the link catalog.
//!
//! Each link kind is described by patterns over its premise and conclusion
//! labels. The four weakening links are only drawn, never written out, so
//! their rows are a reconstruction; correcting one of them means editing
//! [`schema`] and nothing else.

use crate::formula::Formula;
use crate::graph::LinkKind;

/// A label pattern. `Var(i)` binds schematic variable `i` on first use and
/// must match the same formula on every later use.
#[derive(Debug, Clone, Copy)]
pub enum Pat {
    Var(u8),
    Top,
    Bottom,
    Neg(&'static Pat),
    And(&'static Pat, &'static Pat),
    Or(&'static Pat, &'static Pat),
    Imp(&'static Pat, &'static Pat),
}

#[derive(Debug, Clone, Copy)]
pub struct Schema {
    pub premises: &'static [Pat],
    /// For `ImpI` the hypothesis is listed after the main conclusion.
    pub conclusions: &'static [Pat],
}

const A: Pat = Pat::Var(0);
const B: Pat = Pat::Var(1);

pub fn schema(kind: LinkKind) -> Schema {
    use LinkKind::*;
    let (premises, conclusions): (&'static [Pat], &'static [Pat]) = match kind {
        AndEL => (&[Pat::And(&A, &B)], &[A]),
        AndER => (&[Pat::And(&A, &B)], &[B]),
        OrIL => (&[A], &[Pat::Or(&A, &B)]),
        OrIR => (&[B], &[Pat::Or(&A, &B)]),
        TopSW => (&[A], &[Pat::Top]),
        BotSW => (&[Pat::Bottom], &[A]),
        AndI => (&[A, B], &[Pat::And(&A, &B)]),
        BotLink => (&[A, Pat::Neg(&A)], &[Pat::Bottom]),
        ImpE => (&[A, Pat::Imp(&A, &B)], &[B]),
        TopFW => (&[Pat::Top, A], &[A]),
        Contraction => (&[A, A], &[A]),
        OrE => (&[Pat::Or(&A, &B)], &[A, B]),
        TopLink => (&[Pat::Top], &[A, Pat::Neg(&A)]),
        ImpI => (&[B], &[Pat::Imp(&A, &B), A]),
        BotDW => (&[A], &[A, Pat::Bottom]),
        Expansion => (&[A], &[A, A]),
    };
    Schema { premises, conclusions }
}

type Bindings<'f> = [Option<&'f Formula>; 2];

fn match_pat<'f>(pat: &Pat, formula: &'f Formula, env: &mut Bindings<'f>) -> bool {
    match (pat, formula) {
        (Pat::Var(i), _) => match env[*i as usize] {
            Some(bound) => bound == formula,
            None => {
                env[*i as usize] = Some(formula);
                true
            }
        },
        (Pat::Top, Formula::Top) | (Pat::Bottom, Formula::Bottom) => true,
        (Pat::Neg(p), Formula::Neg(f)) => match_pat(p, f, env),
        (Pat::And(p, q), Formula::And(l, r))
        | (Pat::Or(p, q), Formula::Or(l, r))
        | (Pat::Imp(p, q), Formula::Imp(l, r)) => match_pat(p, l, env) && match_pat(q, r, env),
        _ => false,
    }
}

fn match_all<'f>(pats: &[Pat], labels: &[&'f Formula], env: &mut Bindings<'f>) -> bool {
    pats.len() == labels.len() && pats.iter().zip(labels).all(|(p, f)| match_pat(p, f, env))
}

fn orders<'f>(labels: &[&'f Formula], permute: bool) -> Vec<Vec<&'f Formula>> {
    let mut out = vec![labels.to_vec()];
    if permute && labels.len() == 2 {
        out.push(vec![labels[1], labels[0]]);
    }
    out
}

/// Checks the labels of a link against its kind's schema.
///
/// Two-element premise or conclusion lists may come in either order, since
/// list order carries no meaning. `ImpI` is the exception: its main
/// conclusion and hypothesis live in distinct fields and are matched in
/// place.
pub fn matches(kind: LinkKind, premises: &[&Formula], conclusions: &[&Formula]) -> bool {
    let schema = schema(kind);
    let permute = kind != LinkKind::ImpI;
    for ps in orders(premises, permute) {
        for cs in orders(conclusions, permute) {
            let mut env: Bindings<'_> = [None, None];
            if match_all(schema.premises, &ps, &mut env)
                && match_all(schema.conclusions, &cs, &mut env)
            {
                return true;
            }
        }
    }
    false
}
