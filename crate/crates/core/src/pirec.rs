//! Prime implicate recognition.
//!
//! [`test_pi`] decides whether a D4 clause `λ` is a prime implicate of `φ`
//! without generating the prime implicates of `φ`. After the entailment and
//! limit-case checks, `λ` is normalised and each kind of disjunct is tested
//! separately: propositional literals, box literals, and all diamond
//! literals together.

use std::fmt;

use crate::decision::{entails, entails_opt, is_tautology, sat};
use crate::dnf::dnf4;
use crate::error::{Error, Result};
use crate::formula::{dual_negate, nnf, Formula};
use crate::grammar::{view_clause, view_term, ClauseView4};

/// The step of [`test_pi`] that settled the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// `φ ⊭ λ`.
    Entailment,
    /// `φ` unsatisfiable or `λ` valid.
    LimitCase,
    Propositional,
    Box,
    Diamond,
    /// Every check passed.
    Passed,
}

impl Step {
    /// Position in the procedure; normalisation is step 3.
    pub fn number(self) -> Option<u8> {
        match self {
            Step::Entailment => Some(1),
            Step::LimitCase => Some(2),
            Step::Propositional => Some(4),
            Step::Box => Some(5),
            Step::Diamond => Some(6),
            Step::Passed => None,
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Step::Entailment => "entailment",
            Step::LimitCase => "limit case",
            Step::Propositional => "propositional literals",
            Step::Box => "box literals",
            Step::Diamond => "diamond literals",
            Step::Passed => "all checks passed",
        };
        match self.number() {
            Some(n) => write!(f, "step {n} ({name})"),
            None => write!(f, "{name}"),
        }
    }
}

/// Modal bodies at the propositional top level of `nnf(φ)`, and the subset
/// that witnessed a negative diamond verdict.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WitnessUniverse {
    pub x_set: Vec<Formula>,
    pub subset: Option<Vec<Formula>>,
}

impl WitnessUniverse {
    pub fn of(phi: &Formula) -> WitnessUniverse {
        fn walk(f: &Formula, out: &mut Vec<Formula>) {
            match f {
                Formula::And(l, r) | Formula::Or(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
                Formula::Box(x) | Formula::Dia(x) if !out.contains(x) => out.push((**x).clone()),
                _ => {}
            }
        }
        let mut x_set = Vec::new();
        walk(&nnf(phi), &mut x_set);
        WitnessUniverse { x_set, subset: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiTrace {
    pub verdict: bool,
    pub step: Step,
    /// The clause after normalisation, when that step was reached.
    pub normalized: Option<ClauseView4>,
    /// For negative diamond verdicts: the subset that refuted primality.
    pub witness: Option<Vec<Formula>>,
}

fn without(l: &ClauseView4, skip: &Formula) -> ClauseView4 {
    let mut out = ClauseView4::default();
    for d in l.disjuncts() {
        if d != *skip {
            out.push(d);
        }
    }
    out
}

/// `φ ∧ nnf(¬rest)`, or just `φ` when `rest` is the empty clause.
fn and_not(phi: &Formula, rest: &ClauseView4) -> Formula {
    match rest.to_formula() {
        Some(r) => Formula::and(phi.clone(), dual_negate(&r)),
        None => phi.clone(),
    }
}

/// Removes redundant disjuncts (left to right, rescanning after each
/// removal), then widens every box body with the diamond bodies.
pub fn normalize_clause(l: &ClauseView4) -> ClauseView4 {
    let mut ds = l.disjuncts();
    'scan: loop {
        if ds.len() <= 1 {
            break;
        }
        for k in 0..ds.len() {
            let rest = Formula::disj(ds.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, d)| d.clone()));
            if entails_opt(Some(&ds[k]), rest.as_ref()) {
                ds.remove(k);
                continue 'scan;
            }
        }
        break;
    }
    let mut out = ClauseView4::default();
    for d in ds {
        out.push(d);
    }
    if !out.diamonds.is_empty() {
        let psis = out.diamonds.clone();
        out.boxes = out
            .boxes
            .iter()
            .map(|chi| Formula::disj(std::iter::once(chi.clone()).chain(psis.iter().cloned())).unwrap())
            .collect();
    }
    out
}

fn clause_formula(l: &ClauseView4) -> Result<Formula> {
    l.to_formula().ok_or(Error::Precondition("empty clause"))
}

/// No propositional literal of `l` can be dropped while staying an
/// implicate of `φ`.
pub fn test_prop_pi(l: &ClauseView4, phi: &Formula) -> Result<bool> {
    if !entails(phi, &clause_formula(l)?) {
        return Err(Error::Precondition("phi does not entail the clause"));
    }
    Ok(prop_unchecked(l, phi))
}

fn prop_unchecked(l: &ClauseView4, phi: &Formula) -> bool {
    l.gammas.iter().all(|g| {
        let rest = without(l, g).to_formula();
        !entails_opt(Some(phi), rest.as_ref())
    })
}

/// Whether `□(χ ∧ ¬ψ_1 ∧ … ∧ ¬ψ_m)` cannot be strengthened as a consequence
/// of `φ'`: some term of `φ'` has box bodies entailed by the box content.
pub fn test_box_pi(chi: &Formula, psis: &[Formula], phi_prime: &Formula) -> Result<bool> {
    if !entails(phi_prime, &Formula::boxed(box_target(chi, psis))) {
        return Err(Error::Precondition("phi' does not entail the box"));
    }
    Ok(box_unchecked(chi, psis, phi_prime))
}

fn box_target(chi: &Formula, psis: &[Formula]) -> Formula {
    Formula::conj(std::iter::once(chi.clone()).chain(psis.iter().map(dual_negate))).unwrap()
}

fn box_unchecked(chi: &Formula, psis: &[Formula], phi_prime: &Formula) -> bool {
    let target = box_target(chi, psis);
    dnf4(phi_prime).any(|t| match t.beta() {
        None => true,
        Some(b) => entails(&target, &b),
    })
}

/// Whether `◇ψ` is a prime implicate of `φ`.
pub fn test_dia_pi(psi: &Formula, phi: &Formula) -> Result<bool> {
    test_dia_pi_traced(psi, phi).map(|(v, _)| v)
}

/// [`test_dia_pi`], also returning the universe and, on a negative verdict
/// past the unsatisfiable case, the refuting subset.
pub fn test_dia_pi_traced(psi: &Formula, phi: &Formula) -> Result<(bool, WitnessUniverse)> {
    if !entails(phi, &Formula::dia(psi.clone())) {
        return Err(Error::Precondition("phi does not entail the diamond"));
    }
    Ok(dia_unchecked(psi, phi))
}

/// Condition (b) for one subset: every term has some `◇η` whose body,
/// together with all box bodies of the term, entails `ψ`, where `η` or one
/// of those boxes lies in the subset. Using all boxes is no loss: more
/// boxes only make both requirements easier to meet.
pub fn covers_every_term(psi: &Formula, phi: &Formula, subset: &[Formula]) -> bool {
    dnf4(phi).all(|t| {
        let box_hit = t.boxes.iter().any(|m| subset.contains(m));
        t.diamonds.iter().any(|eta| {
            (box_hit || subset.contains(eta)) && {
                let body = Formula::conj(std::iter::once(eta.clone()).chain(t.boxes.iter().cloned())).unwrap();
                entails(&body, psi)
            }
        })
    })
}

/// Condition (a) for one subset: `ψ ⊭ ∨S`.
pub fn escapes_subset(psi: &Formula, subset: &[Formula]) -> bool {
    let d = Formula::disj(subset.iter().cloned());
    !entails_opt(Some(psi), d.as_ref())
}

fn dia_unchecked(psi: &Formula, phi: &Formula) -> (bool, WitnessUniverse) {
    let mut u = WitnessUniverse::of(phi);
    if !sat(phi) {
        return (!sat(psi), u);
    }
    let n = u.x_set.len();
    for size in 0..=n {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let s: Vec<Formula> = idx.iter().map(|&i| u.x_set[i].clone()).collect();
            if escapes_subset(psi, &s) && covers_every_term(psi, phi, &s) {
                u.subset = Some(s);
                return (false, u);
            }
            // next combination in lexicographic order
            let mut k = size;
            while k > 0 && idx[k - 1] == n - size + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            idx[k - 1] += 1;
            for j in k..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    (true, u)
}

/// Full recognition with the deciding step.
pub fn test_pi_traced(l: &Formula, phi: &Formula) -> Result<PiTrace> {
    let view = view_clause(l)?;
    let done = |verdict, step| PiTrace {
        verdict,
        step,
        normalized: None,
        witness: None,
    };
    if !entails(phi, l) {
        return Ok(done(false, Step::Entailment));
    }
    if !sat(phi) {
        return Ok(done(!sat(l), Step::LimitCase));
    }
    if is_tautology(l) {
        return Ok(done(is_tautology(phi), Step::LimitCase));
    }
    let n = normalize_clause(&view);
    let mut trace = PiTrace {
        verdict: false,
        step: Step::Propositional,
        normalized: Some(n.clone()),
        witness: None,
    };
    if !prop_unchecked(&n, phi) {
        return Ok(trace);
    }
    for chi in &n.boxes {
        let rest = without(&n, &Formula::boxed(chi.clone()));
        if !box_unchecked(chi, &n.diamonds, &and_not(phi, &rest)) {
            trace.step = Step::Box;
            return Ok(trace);
        }
    }
    if !n.diamonds.is_empty() {
        let psi = Formula::disj(n.diamonds.iter().cloned()).unwrap();
        let rest = ClauseView4 {
            gammas: n.gammas.clone(),
            diamonds: Vec::new(),
            boxes: n.boxes.clone(),
        };
        let (ok, u) = dia_unchecked(&psi, &and_not(phi, &rest));
        if !ok {
            trace.step = Step::Diamond;
            trace.witness = u.subset;
            return Ok(trace);
        }
    }
    trace.verdict = true;
    trace.step = Step::Passed;
    Ok(trace)
}

/// Whether the D4 clause `l` is a prime implicate of `φ`.
pub fn test_pi(l: &Formula, phi: &Formula) -> Result<bool> {
    test_pi_traced(l, phi).map(|t| t.verdict)
}

/// Whether the D4 term `t` is a prime implicant of `φ`.
pub fn test_implicant(t: &Formula, phi: &Formula) -> Result<bool> {
    test_implicant_traced(t, phi).map(|t| t.verdict)
}

pub fn test_implicant_traced(t: &Formula, phi: &Formula) -> Result<PiTrace> {
    view_term(t)?;
    test_pi_traced(&dual_negate(t), &dual_negate(phi))
}
