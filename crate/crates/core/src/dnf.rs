//! Decomposition into satisfiable D4 terms, the dual clause form, and the
//! candidate literal sets `Δ(T)` used by prime implicate generation.

use std::collections::HashSet;

use crate::decision::{branch_sat, Branch, SurfaceBranches};
use crate::error::{Error, Result};
use crate::formula::{dual_negate, nnf, Formula};
use crate::grammar::TermView4;

/// Stream of the satisfiable D4 terms of a formula, in left-to-right
/// distribution order. Terms that are equal as sets of conjuncts are
/// reported once.
pub struct Dnf4 {
    branches: SurfaceBranches,
    seen: HashSet<Vec<Formula>>,
}

impl Iterator for Dnf4 {
    type Item = TermView4;

    fn next(&mut self) -> Option<TermView4> {
        for b in self.branches.by_ref() {
            if !branch_sat(&b) {
                continue;
            }
            let t = TermView4 {
                lits: b.lits,
                diamonds: b.dias,
                boxes: b.boxes,
            };
            let mut key = t.conjuncts();
            key.sort();
            if self.seen.insert(key) {
                return Some(t);
            }
        }
        None
    }
}

pub fn dnf4(f: &Formula) -> Dnf4 {
    Dnf4 {
        branches: SurfaceBranches::new(vec![nnf(f)]),
        seen: HashSet::new(),
    }
}

/// D4 clauses whose conjunction is equivalent to `f`; empty iff `f` is a
/// tautology.
pub fn cnf4(f: &Formula) -> Vec<Formula> {
    dnf4(&dual_negate(f))
        .map(|t| dual_negate(&t.to_formula().expect("terms are nonempty")))
        .collect()
}

/// The candidate literals `Δ(T)` of a term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSet {
    pub entries: Vec<Formula>,
}

/// `L_T`, then `□β_T` when `T` has boxes, then `◇(ζ ∧ β_T)` for every
/// diamond body `ζ`.
pub fn delta_set(t: &TermView4) -> Result<DeltaSet> {
    let b = Branch {
        lits: t.lits.clone(),
        dias: t.diamonds.clone(),
        boxes: t.boxes.clone(),
    };
    let consistent = SurfaceBranches::new(t.conjuncts()).next().is_some();
    if !consistent || !branch_sat(&b) {
        return Err(Error::Precondition("term is unsatisfiable"));
    }
    Ok(delta_entries(t))
}

pub(crate) fn delta_entries(t: &TermView4) -> DeltaSet {
    let mut entries: Vec<Formula> = Vec::new();
    let mut add = |f: Formula| {
        if !entries.contains(&f) {
            entries.push(f);
        }
    };
    for l in &t.lits {
        add(l.clone());
    }
    let beta = t.beta();
    if let Some(b) = &beta {
        add(Formula::boxed(b.clone()));
    }
    for z in &t.diamonds {
        add(Formula::dia(match &beta {
            Some(b) => Formula::and(z.clone(), b.clone()),
            None => z.clone(),
        }));
    }
    DeltaSet { entries }
}
