//! Propositional formulas and sequents.
//!
//! The concrete syntax is
//!
//! ```text
//! formula := imp
//! imp     := or ( "->" imp )?          right-associative, loosest
//! or      := and ( "|" and )*          left-associative
//! and     := unary ( "&" unary )*      left-associative
//! unary   := "~" unary | atom | "T" | "F" | "(" formula ")"
//! atom    := [a-zA-Z][a-zA-Z0-9_]*     except the constants T and F
//! ```
//!
//! Whitespace is insignificant. [`Formula`]'s `Display` prints this syntax
//! with the minimal number of parentheses, so printing and re-parsing is the
//! identity.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Top,
    Bottom,
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(sub: Formula) -> Formula {
        Formula::Neg(Box::new(sub))
    }

    pub fn and(left: Formula, right: Formula) -> Formula {
        Formula::And(Box::new(left), Box::new(right))
    }

    pub fn or(left: Formula, right: Formula) -> Formula {
        Formula::Or(Box::new(left), Box::new(right))
    }

    pub fn imp(left: Formula, right: Formula) -> Formula {
        Formula::Imp(Box::new(left), Box::new(right))
    }

    /// Number of connectives, atoms and constants in the tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bottom => 1,
            Formula::Neg(sub) => 1 + sub.size(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn has_units(&self) -> bool {
        match self {
            Formula::Top | Formula::Bottom => true,
            Formula::Atom(_) => false,
            Formula::Neg(sub) => sub.has_units(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.has_units() || r.has_units()
            }
        }
    }

    /// Collects the atom names occurring in the formula, in first-occurrence order.
    pub fn atoms<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Formula::Atom(name) => {
                if !out.contains(&name.as_str()) {
                    out.push(name);
                }
            }
            Formula::Top | Formula::Bottom => {}
            Formula::Neg(sub) => sub.atoms(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.atoms(out);
                r.atoms(out);
            }
        }
    }

    /// Rewrites `T` as `w | ~w` and `F` as `w & ~w` for the given witness `w`.
    pub fn encode_units(&self, witness: &Formula) -> Formula {
        match self {
            Formula::Top => Formula::or(witness.clone(), Formula::neg(witness.clone())),
            Formula::Bottom => Formula::and(witness.clone(), Formula::neg(witness.clone())),
            Formula::Atom(_) => self.clone(),
            Formula::Neg(sub) => Formula::neg(sub.encode_units(witness)),
            Formula::And(l, r) => Formula::and(l.encode_units(witness), r.encode_units(witness)),
            Formula::Or(l, r) => Formula::or(l.encode_units(witness), r.encode_units(witness)),
            Formula::Imp(l, r) => Formula::imp(l.encode_units(witness), r.encode_units(witness)),
        }
    }

    /// Display adaptor using the usual logical glyphs (`¬ ∧ ∨ → ⊤ ⊥`).
    pub fn unicode(&self) -> Unicode<'_> {
        Unicode(self)
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Imp(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Neg(_) => 4,
            Formula::Atom(_) | Formula::Top | Formula::Bottom => 5,
        }
    }

    fn write_with(&self, f: &mut fmt::Formatter<'_>, glyphs: &Glyphs) -> fmt::Result {
        let child = |f: &mut fmt::Formatter<'_>, sub: &Formula, parens: bool| {
            if parens {
                f.write_str("(")?;
                sub.write_with(f, glyphs)?;
                f.write_str(")")
            } else {
                sub.write_with(f, glyphs)
            }
        };
        let p = self.precedence();
        match self {
            Formula::Atom(name) => f.write_str(name),
            Formula::Top => f.write_str(glyphs.top),
            Formula::Bottom => f.write_str(glyphs.bottom),
            Formula::Neg(sub) => {
                f.write_str(glyphs.neg)?;
                child(f, sub, sub.precedence() < p)
            }
            Formula::And(l, r) | Formula::Or(l, r) => {
                let op = if matches!(self, Formula::And(..)) { glyphs.and } else { glyphs.or };
                child(f, l, l.precedence() < p)?;
                f.write_str(op)?;
                child(f, r, r.precedence() <= p)
            }
            Formula::Imp(l, r) => {
                child(f, l, l.precedence() <= p)?;
                f.write_str(glyphs.imp)?;
                child(f, r, r.precedence() < p)
            }
        }
    }
}

struct Glyphs {
    neg: &'static str,
    and: &'static str,
    or: &'static str,
    imp: &'static str,
    top: &'static str,
    bottom: &'static str,
}

const ASCII: Glyphs = Glyphs { neg: "~", and: " & ", or: " | ", imp: " -> ", top: "T", bottom: "F" };
const UNICODE: Glyphs = Glyphs { neg: "¬", and: " ∧ ", or: " ∨ ", imp: " → ", top: "⊤", bottom: "⊥" };

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, &ASCII)
    }
}

pub struct Unicode<'a>(&'a Formula);

impl fmt::Display for Unicode<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write_with(f, &UNICODE)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// Parses a formula in the concrete syntax described in the module docs.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser { src: text, pos: 0 };
    let formula = parser.implication()?;
    parser.skip_ws();
    if parser.pos < text.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(formula)
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ParseError {
        ParseError { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let left = self.disjunction()?;
        if self.eat("->") {
            let right = self.implication()?;
            return Ok(Formula::imp(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while self.eat("|") {
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.eat("&") {
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.eat("~") {
            return Ok(Formula::neg(self.unary()?));
        }
        if self.eat("(") {
            let inner = self.implication()?;
            if !self.eat(")") {
                return Err(self.error("expected ')'"));
            }
            return Ok(inner);
        }
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() => {}
            Some(_) => return Err(self.error("expected an atom, a constant, '~' or '('")),
            None => return Err(self.error("unexpected end of input")),
        }
        let end = chars
            .find(|&(_, c)| !(c.is_ascii_alphanumeric() || c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        let name = &rest[..end];
        self.pos += end;
        Ok(match name {
            "T" => Formula::Top,
            "F" => Formula::Bottom,
            _ => Formula::atom(name),
        })
    }
}

/// A sequent `antecedent ⊢ succedent` with multiset semantics.
///
/// Both sides are kept sorted, so the derived equality is multiset equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Sequent {
    antecedent: Vec<Formula>,
    succedent: Vec<Formula>,
}

impl Sequent {
    pub fn new(
        antecedent: impl IntoIterator<Item = Formula>,
        succedent: impl IntoIterator<Item = Formula>,
    ) -> Sequent {
        let mut antecedent: Vec<_> = antecedent.into_iter().collect();
        let mut succedent: Vec<_> = succedent.into_iter().collect();
        antecedent.sort();
        succedent.sort();
        Sequent { antecedent, succedent }
    }

    pub fn axiom(formula: Formula) -> Sequent {
        Sequent { antecedent: vec![formula.clone()], succedent: vec![formula] }
    }

    pub fn antecedent(&self) -> &[Formula] {
        &self.antecedent
    }

    pub fn succedent(&self) -> &[Formula] {
        &self.succedent
    }

    pub fn map(&self, f: impl Fn(&Formula) -> Formula) -> Sequent {
        Sequent::new(self.antecedent.iter().map(&f), self.succedent.iter().map(&f))
    }

    /// Writes the sequent with the given formula printer.
    fn write_with(
        &self,
        f: &mut fmt::Formatter<'_>,
        turnstile: &str,
        item: impl Fn(&mut fmt::Formatter<'_>, &Formula) -> fmt::Result,
    ) -> fmt::Result {
        let side = |f: &mut fmt::Formatter<'_>, fs: &[Formula]| {
            for (i, formula) in fs.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                item(f, formula)?;
            }
            Ok(())
        };
        side(f, &self.antecedent)?;
        if !self.antecedent.is_empty() {
            f.write_str(" ")?;
        }
        f.write_str(turnstile)?;
        if !self.succedent.is_empty() {
            f.write_str(" ")?;
        }
        side(f, &self.succedent)
    }

    pub fn unicode(&self) -> UnicodeSequent<'_> {
        UnicodeSequent(self)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, "|-", |f, x| write!(f, "{x}"))
    }
}

pub struct UnicodeSequent<'a>(&'a Sequent);

impl fmt::Display for UnicodeSequent<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write_with(f, "⊢", |f, x| write!(f, "{}", x.unicode()))
    }
}
