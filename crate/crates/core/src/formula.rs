//! Modal formulas over propositional variables: the AST, canonical printing,
//! negation normal form and size metrics.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Name of the reserved variable behind the `true`/`false` sugar.
pub const RESERVED: &str = "_c";

/// A formula of K. Children are reference counted, so cloning is cheap.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(Arc<str>),
    Neg(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Box(Arc<Formula>),
    Dia(Arc<Formula>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metrics {
    pub length: usize,
    pub depth: usize,
    pub vars: BTreeSet<String>,
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(Arc::from(name))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Neg(Arc::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Arc::new(l), Arc::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Arc::new(l), Arc::new(r))
    }

    pub fn boxed(f: Formula) -> Formula {
        Formula::Box(Arc::new(f))
    }

    pub fn dia(f: Formula) -> Formula {
        Formula::Dia(Arc::new(f))
    }

    /// `true` as the parser desugars it.
    pub fn verum() -> Formula {
        let c = Formula::var(RESERVED);
        Formula::or(c.clone(), Formula::not(c))
    }

    /// `false` as the parser desugars it.
    pub fn falsum() -> Formula {
        let c = Formula::var(RESERVED);
        Formula::and(c.clone(), Formula::not(c))
    }

    /// Right-folded conjunction; `None` for an empty list.
    pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Option<Formula> {
        fold_right(items, Formula::and)
    }

    /// Right-folded disjunction; `None` for an empty list.
    pub fn disj<I: IntoIterator<Item = Formula>>(items: I) -> Option<Formula> {
        fold_right(items, Formula::or)
    }

    /// `□^k f`
    pub fn box_n(k: usize, f: Formula) -> Formula {
        (0..k).fold(f, |acc, _| Formula::boxed(acc))
    }

    /// `◇^k f`
    pub fn dia_n(k: usize, f: Formula) -> Formula {
        (0..k).fold(f, |acc, _| Formula::dia(acc))
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Formula::Var(_))
    }

    /// A variable or a negated variable.
    pub fn is_prop_literal(&self) -> bool {
        match self {
            Formula::Var(_) => true,
            Formula::Neg(x) => x.is_var(),
            _ => false,
        }
    }

    /// True when negation only occurs directly above variables.
    pub fn is_nnf(&self) -> bool {
        match self {
            Formula::Var(_) => true,
            Formula::Neg(x) => x.is_var(),
            Formula::And(l, r) | Formula::Or(l, r) => l.is_nnf() && r.is_nnf(),
            Formula::Box(x) | Formula::Dia(x) => x.is_nnf(),
        }
    }

    pub fn length(&self) -> usize {
        match self {
            Formula::Var(_) => 1,
            Formula::Neg(x) | Formula::Box(x) | Formula::Dia(x) => 1 + x.length(),
            Formula::And(l, r) | Formula::Or(l, r) => 1 + l.length() + r.length(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) => 0,
            Formula::Neg(x) => x.depth(),
            Formula::Box(x) | Formula::Dia(x) => 1 + x.depth(),
            Formula::And(l, r) | Formula::Or(l, r) => l.depth().max(r.depth()),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.to_string());
            }
            Formula::Neg(x) | Formula::Box(x) | Formula::Dia(x) => x.collect_vars(out),
            Formula::And(l, r) | Formula::Or(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn metrics(&self) -> Metrics {
        Metrics {
            length: self.length(),
            depth: self.depth(),
            vars: self.vars(),
        }
    }

    /// Lexicographically least variable name.
    pub fn least_var(&self) -> String {
        self.vars().into_iter().next().expect("every formula has a variable")
    }

    /// Number of `◇` nodes.
    pub fn count_dia(&self) -> usize {
        match self {
            Formula::Var(_) => 0,
            Formula::Neg(x) | Formula::Box(x) => x.count_dia(),
            Formula::Dia(x) => 1 + x.count_dia(),
            Formula::And(l, r) | Formula::Or(l, r) => l.count_dia() + r.count_dia(),
        }
    }

    /// Top-level disjuncts of a right- or left-nested `Or` chain.
    pub fn disjuncts(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        flatten(self, true, &mut out);
        out
    }

    /// Top-level conjuncts of an `And` chain.
    pub fn conjuncts(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        flatten(self, false, &mut out);
        out
    }
}

fn fold_right<I, F>(items: I, op: F) -> Option<Formula>
where
    I: IntoIterator<Item = Formula>,
    F: Fn(Formula, Formula) -> Formula,
{
    let items: Vec<Formula> = items.into_iter().collect();
    let mut it = items.into_iter().rev();
    let last = it.next()?;
    Some(it.fold(last, |acc, f| op(f, acc)))
}

fn flatten(f: &Formula, disjunction: bool, out: &mut Vec<Formula>) {
    match (f, disjunction) {
        (Formula::Or(l, r), true) | (Formula::And(l, r), false) => {
            flatten(l, disjunction, out);
            flatten(r, disjunction, out);
        }
        _ => out.push(f.clone()),
    }
}

/// Negation normal form.
pub fn nnf(f: &Formula) -> Formula {
    match f {
        Formula::Var(_) => f.clone(),
        Formula::And(l, r) => Formula::and(nnf(l), nnf(r)),
        Formula::Or(l, r) => Formula::or(nnf(l), nnf(r)),
        Formula::Box(x) => Formula::boxed(nnf(x)),
        Formula::Dia(x) => Formula::dia(nnf(x)),
        Formula::Neg(x) => match x.as_ref() {
            Formula::Var(_) => f.clone(),
            Formula::Neg(y) => nnf(y),
            Formula::And(l, r) => Formula::or(negated_nnf(l), negated_nnf(r)),
            Formula::Or(l, r) => Formula::and(negated_nnf(l), negated_nnf(r)),
            Formula::Box(y) => Formula::dia(negated_nnf(y)),
            Formula::Dia(y) => Formula::boxed(negated_nnf(y)),
        },
    }
}

fn negated_nnf(f: &Formula) -> Formula {
    match f {
        Formula::Var(_) => Formula::Neg(Arc::new(f.clone())),
        _ => nnf(&Formula::Neg(Arc::new(f.clone()))),
    }
}

/// `nnf(¬f)`: turns D4 clauses into D4 terms and back.
pub fn dual_negate(f: &Formula) -> Formula {
    negated_nnf(f)
}

fn is_reserved_pair(l: &Formula, r: &Formula) -> bool {
    let c = Formula::var(RESERVED);
    match (l, r) {
        (Formula::Var(_), Formula::Neg(n)) => *l == c && **n == c,
        (Formula::Neg(n), Formula::Var(_)) => *r == c && **n == c,
        _ => false,
    }
}

impl Formula {
    fn write_canonical(&self, f: &mut fmt::Formatter<'_>, top: bool) -> fmt::Result {
        match self {
            Formula::Var(v) => write!(f, "{v}"),
            Formula::Neg(x) => {
                write!(f, "!")?;
                x.write_operand(f)
            }
            Formula::Box(x) => {
                write!(f, "[]")?;
                x.write_operand(f)
            }
            Formula::Dia(x) => {
                write!(f, "<>")?;
                x.write_operand(f)
            }
            Formula::And(l, r) | Formula::Or(l, r) => {
                let conj = matches!(self, Formula::And(..));
                if is_reserved_pair(l, r) {
                    return write!(f, "{}", if conj { "false" } else { "true" });
                }
                if !top {
                    write!(f, "(")?;
                }
                l.write_canonical(f, false)?;
                write!(f, " {} ", if conj { "&" } else { "|" })?;
                // a right-nested chain of the same connective reads back identically
                let same = matches!(
                    (self, r.as_ref()),
                    (Formula::And(..), Formula::And(..)) | (Formula::Or(..), Formula::Or(..))
                );
                r.write_canonical(f, same)?;
                if !top {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }

    fn write_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_canonical(f, false)
    }
}

/// Canonical text. Binary connectives are parenthesized except at the top
/// and along a right-nested chain of the same connective, which is exactly
/// how the parser folds `a | b | c`.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_canonical(f, true)
    }
}

/// Same as `to_string`.
pub fn print(f: &Formula) -> String {
    f.to_string()
}
