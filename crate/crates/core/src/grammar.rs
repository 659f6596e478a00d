//! Literal, clause and term grammars D1–D5, and the bucketed views of D4
//! clauses and terms that the generation and recognition code works on.
//!
//! Membership is purely syntactic: `a ∨ ¬a` is a D4 clause.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::formula::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DefId {
    D1,
    D2,
    D3a,
    D3b,
    D4,
    D5,
}

impl DefId {
    pub const ALL: [DefId; 6] = [DefId::D1, DefId::D2, DefId::D3a, DefId::D3b, DefId::D4, DefId::D5];
}

impl FromStr for DefId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<DefId, String> {
        match s.to_ascii_lowercase().as_str() {
            "d1" => Ok(DefId::D1),
            "d2" => Ok(DefId::D2),
            "d3a" => Ok(DefId::D3a),
            "d3b" => Ok(DefId::D3b),
            "d4" => Ok(DefId::D4),
            "d5" => Ok(DefId::D5),
            _ => Err(format!(
                "unknown definition `{s}` (expected d1, d2, d3a, d3b, d4 or d5)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SyntacticKind {
    Literal,
    Clause,
    Term,
}

impl FromStr for SyntacticKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<SyntacticKind, String> {
        match s.to_ascii_lowercase().as_str() {
            "literal" => Ok(SyntacticKind::Literal),
            "clause" => Ok(SyntacticKind::Clause),
            "term" => Ok(SyntacticKind::Term),
            _ => Err(format!("unknown kind `{s}` (expected literal, clause or term)")),
        }
    }
}

fn both(l: &Formula, r: &Formula, p: fn(&Formula) -> bool) -> bool {
    p(l) && p(r)
}

// D1: L ::= a | ¬a | □L | ◇L ; C adds ∨ ; T adds ∧
fn d1_lit(f: &Formula) -> bool {
    match f {
        Formula::Box(x) | Formula::Dia(x) => d1_lit(x),
        _ => f.is_prop_literal(),
    }
}

fn d1_clause(f: &Formula) -> bool {
    match f {
        Formula::Box(x) | Formula::Dia(x) => d1_clause(x),
        Formula::Or(l, r) => both(l, r, d1_clause),
        _ => f.is_prop_literal(),
    }
}

fn d1_term(f: &Formula) -> bool {
    match f {
        Formula::Box(x) | Formula::Dia(x) => d1_term(x),
        Formula::And(l, r) => both(l, r, d1_term),
        _ => f.is_prop_literal(),
    }
}

fn or_of(f: &Formula, lit: fn(&Formula) -> bool) -> bool {
    match f {
        Formula::Or(l, r) => or_of(l, lit) && or_of(r, lit),
        _ => lit(f),
    }
}

fn and_of(f: &Formula, lit: fn(&Formula) -> bool) -> bool {
    match f {
        Formula::And(l, r) => and_of(l, lit) && and_of(r, lit),
        _ => lit(f),
    }
}

// D3: C ::= a | ¬a | □C | ◇ConjC | C ∨ C ; ConjC ::= C | ConjC ∧ ConjC
fn d3_clause(f: &Formula) -> bool {
    match f {
        Formula::Box(x) => d3_clause(x),
        Formula::Dia(x) => and_of(x, d3_clause),
        Formula::Or(l, r) => both(l, r, d3_clause),
        _ => f.is_prop_literal(),
    }
}

// D3a: T ::= a | ¬a | □DisjT | ◇T | T ∧ T ; DisjT ::= T | DisjT ∨ DisjT
fn d3a_term(f: &Formula) -> bool {
    match f {
        Formula::Box(x) => or_of(x, d3a_term),
        Formula::Dia(x) => d3a_term(x),
        Formula::And(l, r) => both(l, r, d3a_term),
        _ => f.is_prop_literal(),
    }
}

// D3b: L ::= a | ¬a | □C | ◇ConjC
fn d3b_lit(f: &Formula) -> bool {
    match f {
        Formula::Box(x) => d3_clause(x),
        Formula::Dia(x) => and_of(x, d3_clause),
        _ => f.is_prop_literal(),
    }
}

// D4: L ::= a | ¬a | □F | ◇F with F any NNF formula
fn d4_lit(f: &Formula) -> bool {
    match f {
        Formula::Box(x) | Formula::Dia(x) => x.is_nnf(),
        _ => f.is_prop_literal(),
    }
}

// D5: L ::= a | ¬a | □C | ◇T
fn d5_lit(f: &Formula) -> bool {
    match f {
        Formula::Box(x) => or_of(x, d5_lit),
        Formula::Dia(x) => and_of(x, d5_lit),
        _ => f.is_prop_literal(),
    }
}

/// Whether `f` derives from nonterminal `k` of grammar `d`.
pub fn is_member(f: &Formula, d: DefId, k: SyntacticKind) -> bool {
    use SyntacticKind::*;
    match (d, k) {
        (DefId::D1 | DefId::D2 | DefId::D3a, Literal) => d1_lit(f),
        (DefId::D1, Clause) => d1_clause(f),
        (DefId::D1, Term) => d1_term(f),
        (DefId::D2, Clause) => or_of(f, d1_lit),
        (DefId::D2, Term) => and_of(f, d1_lit),
        (DefId::D3a | DefId::D3b, Clause) => d3_clause(f),
        (DefId::D3a, Term) => d3a_term(f),
        (DefId::D3b, Literal) => d3b_lit(f),
        (DefId::D3b, Term) => and_of(f, d3b_lit),
        (DefId::D4, Literal) => d4_lit(f),
        (DefId::D4, Clause) => or_of(f, d4_lit),
        (DefId::D4, Term) => and_of(f, d4_lit),
        (DefId::D5, Literal) => d5_lit(f),
        (DefId::D5, Clause) => or_of(f, d5_lit),
        (DefId::D5, Term) => and_of(f, d5_lit),
    }
}

/// A D4 clause `γ_1 ∨ … ∨ ◇ψ_1 ∨ … ∨ □χ_1 ∨ …`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ClauseView4 {
    pub gammas: Vec<Formula>,
    pub diamonds: Vec<Formula>,
    pub boxes: Vec<Formula>,
}

/// A D4 term with literals `L_T`, diamond bodies `D_T` and box bodies `B_T`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TermView4 {
    pub lits: Vec<Formula>,
    pub diamonds: Vec<Formula>,
    pub boxes: Vec<Formula>,
}

fn push_unique(v: &mut Vec<Formula>, f: Formula) {
    if !v.contains(&f) {
        v.push(f);
    }
}

fn assemble(props: &[Formula], dias: &[Formula], boxes: &[Formula]) -> Vec<Formula> {
    props
        .iter()
        .cloned()
        .chain(dias.iter().cloned().map(Formula::dia))
        .chain(boxes.iter().cloned().map(Formula::boxed))
        .collect()
}

impl ClauseView4 {
    /// Disjuncts in bucket order.
    pub fn disjuncts(&self) -> Vec<Formula> {
        assemble(&self.gammas, &self.diamonds, &self.boxes)
    }

    /// The clause as a formula; `None` for the empty clause.
    pub fn to_formula(&self) -> Option<Formula> {
        Formula::disj(self.disjuncts())
    }

    pub fn len(&self) -> usize {
        self.gammas.len() + self.diamonds.len() + self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Puts one surface disjunct into its bucket.
    pub fn push(&mut self, d: Formula) {
        match d {
            Formula::Dia(x) => push_unique(&mut self.diamonds, (*x).clone()),
            Formula::Box(x) => push_unique(&mut self.boxes, (*x).clone()),
            lit => push_unique(&mut self.gammas, lit),
        }
    }
}

impl TermView4 {
    pub fn conjuncts(&self) -> Vec<Formula> {
        assemble(&self.lits, &self.diamonds, &self.boxes)
    }

    pub fn to_formula(&self) -> Option<Formula> {
        Formula::conj(self.conjuncts())
    }

    /// `β_T`, the conjunction of the box bodies; `None` stands for `⊤`.
    pub fn beta(&self) -> Option<Formula> {
        Formula::conj(self.boxes.iter().cloned())
    }

    pub fn push(&mut self, c: Formula) {
        match c {
            Formula::Dia(x) => push_unique(&mut self.diamonds, (*x).clone()),
            Formula::Box(x) => push_unique(&mut self.boxes, (*x).clone()),
            lit => push_unique(&mut self.lits, lit),
        }
    }
}

impl fmt::Display for ClauseView4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_formula() {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "false"),
        }
    }
}

impl fmt::Display for TermView4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_formula() {
            Some(t) => write!(f, "{t}"),
            None => write!(f, "true"),
        }
    }
}

pub fn view_clause(f: &Formula) -> Result<ClauseView4> {
    if !is_member(f, DefId::D4, SyntacticKind::Clause) {
        return Err(Error::NotD4("clause"));
    }
    let mut v = ClauseView4::default();
    for d in f.disjuncts() {
        v.push(d);
    }
    Ok(v)
}

pub fn view_term(f: &Formula) -> Result<TermView4> {
    if !is_member(f, DefId::D4, SyntacticKind::Term) {
        return Err(Error::NotD4("term"));
    }
    let mut v = TermView4::default();
    for c in f.conjuncts() {
        v.push(c);
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum View4 {
    Clause(ClauseView4),
    Term(TermView4),
}

pub fn view4(f: &Formula, k: SyntacticKind) -> Result<View4> {
    match k {
        SyntacticKind::Clause => view_clause(f).map(View4::Clause),
        SyntacticKind::Term => view_term(f).map(View4::Term),
        SyntacticKind::Literal => Err(Error::Precondition("views exist for clauses and terms only")),
    }
}
