//! Proptest strategies shared by the unit tests.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::families::{random_formula, var_name};
use crate::formula::{nnf, Formula};
use crate::grammar::SyntacticKind;

pub fn arb_formula(vars: usize, depth: usize, length: usize) -> impl Strategy<Value = Formula> {
    any::<u64>().prop_map(move |s| random_formula(vars, depth, length, s))
}

pub fn arb_nnf_formula(vars: usize, depth: usize, length: usize) -> impl Strategy<Value = Formula> {
    arb_formula(vars, depth, length).prop_map(|f| nnf(&f))
}

fn prop_lit(vars: usize, i: usize, positive: bool) -> Formula {
    let v = Formula::var(&var_name(i % vars));
    if positive {
        v
    } else {
        Formula::not(v)
    }
}

pub fn arb_prop_clause(vars: usize) -> impl Strategy<Value = Formula> {
    prop::collection::vec((0..vars, any::<bool>()), 1..4)
        .prop_map(move |ls| Formula::disj(ls.into_iter().map(|(i, s)| prop_lit(vars, i, s))).unwrap())
}

fn d5(rng: &mut ChaCha8Rng, kind: SyntacticKind, depth: usize) -> Formula {
    match kind {
        SyntacticKind::Literal => {
            if depth == 0 || rng.gen_bool(0.4) {
                prop_lit(3, rng.gen_range(0..3), rng.gen())
            } else if rng.gen() {
                Formula::boxed(d5(rng, SyntacticKind::Clause, depth - 1))
            } else {
                Formula::dia(d5(rng, SyntacticKind::Term, depth - 1))
            }
        }
        _ => {
            let n = rng.gen_range(1..4);
            let items: Vec<Formula> = (0..n).map(|_| d5(rng, SyntacticKind::Literal, depth)).collect();
            if kind == SyntacticKind::Clause {
                Formula::disj(items).unwrap()
            } else {
                Formula::conj(items).unwrap()
            }
        }
    }
}

/// Random D5 clauses or terms of modal depth at most 2.
pub fn arb_d5(kind: SyntacticKind) -> impl Strategy<Value = Formula> {
    any::<u64>().prop_map(move |s| d5(&mut ChaCha8Rng::seed_from_u64(s), kind, 2))
}
