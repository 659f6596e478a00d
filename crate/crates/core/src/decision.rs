//! Satisfiability and entailment for K.
//!
//! The input is put in NNF and split into branches of the propositional DNF
//! in which every `□`/`◇` subformula is an atom. A branch with a consistent
//! set of propositional literals is satisfiable iff, for each `◇ψ` in it,
//! `ψ` together with every box body of the branch is satisfiable.
//! [`sat_nnf_conj`] searches these branches lazily; [`SurfaceBranches`]
//! enumerates them all.

use crate::error::{Error, Result};
use crate::formula::{dual_negate, nnf, Formula};
use crate::grammar::ClauseView4;

/// One branch of the surface DNF: a conjunction of surface literals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Branch {
    pub lits: Vec<Formula>,
    pub dias: Vec<Formula>,
    pub boxes: Vec<Formula>,
}

#[derive(Clone)]
struct Frame {
    todo: Vec<Formula>,
    branch: Branch,
}

fn complement(lit: &Formula) -> Formula {
    match lit {
        Formula::Neg(x) => (**x).clone(),
        _ => Formula::not(lit.clone()),
    }
}

/// Lazily enumerates the propositionally consistent branches of the surface
/// DNF of a conjunction of NNF formulas, left to right. Literals keep their
/// first-occurrence order and repeated conjuncts are dropped.
pub struct SurfaceBranches {
    stack: Vec<Frame>,
}

impl SurfaceBranches {
    pub fn new(goals: Vec<Formula>) -> SurfaceBranches {
        debug_assert!(goals.iter().all(Formula::is_nnf));
        let mut todo = goals;
        todo.reverse();
        SurfaceBranches {
            stack: vec![Frame {
                todo,
                branch: Branch::default(),
            }],
        }
    }
}

impl Iterator for SurfaceBranches {
    type Item = Branch;

    fn next(&mut self) -> Option<Branch> {
        'frames: while let Some(mut fr) = self.stack.pop() {
            while let Some(f) = fr.todo.pop() {
                match f {
                    Formula::And(l, r) => {
                        fr.todo.push((*r).clone());
                        fr.todo.push((*l).clone());
                    }
                    Formula::Or(l, r) => {
                        let mut alt = fr.clone();
                        alt.todo.push((*r).clone());
                        self.stack.push(alt);
                        fr.todo.push((*l).clone());
                    }
                    Formula::Box(x) => {
                        if !fr.branch.boxes.contains(&x) {
                            fr.branch.boxes.push((*x).clone());
                        }
                    }
                    Formula::Dia(x) => {
                        if !fr.branch.dias.contains(&x) {
                            fr.branch.dias.push((*x).clone());
                        }
                    }
                    lit => {
                        if fr.branch.lits.contains(&complement(&lit)) {
                            continue 'frames;
                        }
                        if !fr.branch.lits.contains(&lit) {
                            fr.branch.lits.push(lit);
                        }
                    }
                }
            }
            return Some(fr.branch);
        }
        None
    }
}

/// Satisfiability of a propositionally consistent branch.
pub fn branch_sat(b: &Branch) -> bool {
    b.dias.iter().all(|d| {
        let mut goals = Vec::with_capacity(b.boxes.len() + 1);
        goals.push(d.clone());
        goals.extend(b.boxes.iter().cloned());
        sat_nnf_conj(goals)
    })
}

/// Satisfiability of a conjunction of NNF formulas.
///
/// Only disjunctions with a modal subformula are split here. Purely
/// propositional conjuncts are set aside and checked once per leaf, so they
/// do not multiply the modal work.
pub fn sat_nnf_conj(goals: Vec<Formula>) -> bool {
    let mut todo = goals;
    todo.reverse();
    search(todo, Leaf::default())
}

#[derive(Clone, Default)]
struct Leaf {
    branch: Branch,
    prop: Vec<Formula>,
}

impl Leaf {
    fn holds(&self, d: &Formula) -> bool {
        match d {
            Formula::Box(x) => self.branch.boxes.contains(x),
            Formula::Dia(x) => self.branch.dias.contains(x),
            _ => self.branch.lits.contains(d),
        }
    }

    /// Adds a literal; false on a clash.
    fn assume(&mut self, lit: Formula) -> bool {
        if self.branch.lits.contains(&complement(&lit)) {
            return false;
        }
        if !self.branch.lits.contains(&lit) {
            self.branch.lits.push(lit);
        }
        true
    }
}

fn search(mut todo: Vec<Formula>, mut leaf: Leaf) -> bool {
    while let Some(f) = todo.pop() {
        match f {
            Formula::And(l, r) => {
                todo.push((*r).clone());
                todo.push((*l).clone());
            }
            Formula::Or(..) if f.depth() == 0 => leaf.prop.push(f),
            Formula::Or(ref l, ref r) => {
                // a disjunct already on the branch makes the split pointless
                if f.disjuncts().iter().any(|d| leaf.holds(d)) {
                    continue;
                }
                let mut alt_todo = todo.clone();
                alt_todo.push((**r).clone());
                let mut alt = leaf.clone();
                // after `l` fails, the other side may assume its negation
                let alt_ok = !l.is_prop_literal() || alt.assume(complement(l));
                todo.push((**l).clone());
                return search(todo, leaf) || (alt_ok && search(alt_todo, alt));
            }
            Formula::Box(x) => {
                if !leaf.branch.boxes.contains(&x) {
                    leaf.branch.boxes.push((*x).clone());
                }
            }
            Formula::Dia(x) => {
                if !leaf.branch.dias.contains(&x) {
                    leaf.branch.dias.push((*x).clone());
                }
            }
            lit => {
                if !leaf.assume(lit) {
                    return false;
                }
            }
        }
    }
    let mut prop = leaf.branch.lits.clone();
    prop.append(&mut leaf.prop);
    SurfaceBranches::new(prop).next().is_some() && branch_sat(&leaf.branch)
}

pub fn sat(f: &Formula) -> bool {
    sat_nnf_conj(vec![nnf(f)])
}

/// Local consequence `f ⊨ g`.
pub fn entails(f: &Formula, g: &Formula) -> bool {
    !sat_nnf_conj(vec![nnf(f), dual_negate(g)])
}

pub fn equivalent(f: &Formula, g: &Formula) -> bool {
    entails(f, g) && entails(g, f)
}

pub fn is_tautology(f: &Formula) -> bool {
    !sat_nnf_conj(vec![dual_negate(f)])
}

pub fn is_unsat(f: &Formula) -> bool {
    !sat(f)
}

/// Entailment where a missing side is an empty disjunction, i.e. `⊥`.
pub(crate) fn entails_opt(l: Option<&Formula>, r: Option<&Formula>) -> bool {
    match (l, r) {
        (None, _) => true,
        (Some(l), None) => !sat(l),
        (Some(l), Some(r)) => entails(l, r),
    }
}

/// Clause entailment `l ⊨ r` decided part by part: the propositional parts,
/// the diamond bodies, and for every box of `l` some box of `r` that covers
/// it together with the diamond bodies of `r`.
pub fn clause_entails_fast(l: &ClauseView4, r: &ClauseView4) -> Result<bool> {
    if r.to_formula().is_some_and(|f| is_tautology(&f)) {
        return Err(Error::Precondition("right-hand clause is a tautology"));
    }
    Ok(clause_entails_unchecked(l, r))
}

/// [`clause_entails_fast`] without the tautology check on `r`.
pub(crate) fn clause_entails_unchecked(l: &ClauseView4, r: &ClauseView4) -> bool {
    let gl = Formula::disj(l.gammas.iter().cloned());
    let gr = Formula::disj(r.gammas.iter().cloned());
    if !entails_opt(gl.as_ref(), gr.as_ref()) {
        return false;
    }
    let pl = Formula::disj(l.diamonds.iter().cloned());
    let pr = Formula::disj(r.diamonds.iter().cloned());
    if !entails_opt(pl.as_ref(), pr.as_ref()) {
        return false;
    }
    l.boxes.iter().all(|chi| {
        r.boxes.iter().any(|chi_r| {
            let cover = Formula::disj(r.diamonds.iter().cloned().chain([chi_r.clone()]));
            entails_opt(Some(chi), cover.as_ref())
        })
    })
}
