//! Prime implicate generation.
//!
//! Candidates pick one entry of `Δ(T)` for each term `T` of `dnf4(f)`; the
//! tuples are ordered lexicographically with the first term most
//! significant. Candidate `i` is kept iff no earlier candidate entails it
//! and every later candidate that entails it is entailed back, which leaves
//! the lowest-indexed representative of each class of prime implicates.

use crate::decision::{clause_entails_unchecked, is_tautology, sat};
use crate::dnf::{delta_entries, dnf4};
use crate::formula::{dual_negate, Formula};
use crate::grammar::{view_clause, ClauseView4};

/// Candidate count above which eager generation streams instead.
pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Eager,
    Iterative,
}

/// Pairwise non-equivalent prime implicates (or implicants), in emission
/// order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PiSet {
    pub clauses: Vec<Formula>,
}

/// The ordered candidate clauses of a satisfiable, non-tautological formula.
#[derive(Clone, Debug)]
pub struct CandidateSpace {
    deltas: Vec<Vec<Formula>>,
}

impl CandidateSpace {
    pub fn new(f: &Formula) -> CandidateSpace {
        CandidateSpace {
            deltas: dnf4(f).map(|t| delta_entries(&t).entries).collect(),
        }
    }

    /// `Δ(T_1), …, Δ(T_n)`.
    pub fn deltas(&self) -> &[Vec<Formula>] {
        &self.deltas
    }

    /// Number of candidates, saturating.
    pub fn len(&self) -> usize {
        if self.deltas.is_empty() {
            return 0;
        }
        self.deltas.iter().fold(1usize, |acc, d| acc.saturating_mul(d.len()))
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `i`-th candidate clause `τ_1 ∨ … ∨ τ_n`, duplicates included.
    pub fn clause(&self, i: usize) -> Formula {
        let mut picks = vec![0; self.deltas.len()];
        let mut rest = i;
        for (k, d) in self.deltas.iter().enumerate().rev() {
            picks[k] = rest % d.len();
            rest /= d.len();
        }
        Formula::disj(self.deltas.iter().zip(picks).map(|(d, j)| d[j].clone())).expect("at least one term")
    }

    fn candidate(&self, i: usize) -> Candidate {
        Candidate::new(self.clause(i))
    }
}

struct Candidate {
    formula: Formula,
    view: ClauseView4,
    tautology: bool,
}

impl Candidate {
    fn new(formula: Formula) -> Candidate {
        let view = view_clause(&formula).expect("candidates are D4 clauses");
        let tautology = is_tautology(&formula);
        Candidate {
            formula,
            view,
            tautology,
        }
    }

    fn entails(&self, other: &Candidate) -> bool {
        if other.tautology {
            return true;
        }
        if self.tautology {
            return false;
        }
        clause_entails_unchecked(&self.view, &other.view)
    }
}

/// The fixed answers for unsatisfiable and valid formulas.
fn limit_case(f: &Formula) -> Option<Formula> {
    let v = Formula::var(&f.least_var());
    if !sat(f) {
        Some(Formula::dia(Formula::and(v.clone(), Formula::not(v))))
    } else if is_tautology(f) {
        Some(Formula::or(v.clone(), Formula::not(v)))
    } else {
        None
    }
}

/// Emits prime implicates one at a time, rebuilding candidates from their
/// index instead of storing them.
pub struct PiStream {
    limit: Option<Formula>,
    space: CandidateSpace,
    next: usize,
    total: usize,
}

impl PiStream {
    fn is_kept(&self, i: usize) -> bool {
        let c = self.space.candidate(i);
        for j in 0..self.total {
            if j == i {
                continue;
            }
            let other = self.space.candidate(j);
            if other.entails(&c) && (j < i || !c.entails(&other)) {
                return false;
            }
        }
        true
    }
}

impl Iterator for PiStream {
    type Item = Formula;

    fn next(&mut self) -> Option<Formula> {
        if let Some(l) = self.limit.take() {
            self.total = 0;
            return Some(l);
        }
        while self.next < self.total {
            let i = self.next;
            self.next += 1;
            if self.is_kept(i) {
                return Some(self.space.clause(i));
            }
        }
        None
    }
}

pub fn gen_pi_stream(f: &Formula) -> PiStream {
    match limit_case(f) {
        Some(l) => PiStream {
            limit: Some(l),
            space: CandidateSpace { deltas: Vec::new() },
            next: 0,
            total: 0,
        },
        None => {
            let space = CandidateSpace::new(f);
            let total = space.len();
            PiStream {
                limit: None,
                space,
                next: 0,
                total,
            }
        }
    }
}

pub fn gen_pi(f: &Formula, mode: Mode) -> PiSet {
    gen_pi_with_cap(f, mode, DEFAULT_CAP)
}

/// Eager mode compares each candidate against the current representatives
/// only: a candidate entailed by a kept clause is dropped, and a kept clause
/// strictly entailed by a new candidate is replaced. This selects the same
/// clauses as the index rule because entailment is transitive.
pub fn gen_pi_with_cap(f: &Formula, mode: Mode, cap: usize) -> PiSet {
    if let Some(l) = limit_case(f) {
        return PiSet { clauses: vec![l] };
    }
    let space = CandidateSpace::new(f);
    if mode == Mode::Iterative || space.len() > cap {
        let total = space.len();
        let stream = PiStream {
            limit: None,
            space,
            next: 0,
            total,
        };
        return PiSet {
            clauses: stream.collect(),
        };
    }
    let mut kept: Vec<Candidate> = Vec::new();
    for i in 0..space.len() {
        let c = space.candidate(i);
        if kept.iter().any(|k| k.entails(&c)) {
            continue;
        }
        kept.retain(|k| !c.entails(k));
        kept.push(c);
    }
    PiSet {
        clauses: kept.into_iter().map(|c| c.formula).collect(),
    }
}

/// Prime implicants of `f`, as negated prime implicates of `¬f`.
pub fn gen_implicants(f: &Formula) -> PiSet {
    let dual = gen_pi(&dual_negate(f), Mode::Eager);
    PiSet {
        clauses: dual.clauses.iter().map(dual_negate).collect(),
    }
}

/// Drops repeated disjuncts, keeping first occurrences; display only.
pub fn collapse_duplicates(clause: &Formula) -> Formula {
    let mut seen = Vec::new();
    for d in clause.disjuncts() {
        if !seen.contains(&d) {
            seen.push(d);
        }
    }
    Formula::disj(seen).expect("nonempty")
}
