//! Prime implicates and prime implicants for the modal logic K.
//!
//! Formulas are parsed with [`parse::parse`], normalised with
//! [`formula::nnf`], decided with [`decision`], decomposed into D4 terms by
//! [`dnf::dnf4`], compiled to prime implicates by [`pigen::gen_pi`] and
//! checked for primality by [`pirec::test_pi`].

pub mod decision;
pub mod dnf;
pub mod error;
pub mod families;
pub mod formula;
pub mod grammar;
pub mod parse;
pub mod pigen;
pub mod pirec;
pub mod semantics;

#[cfg(test)]
pub(crate) mod test_support;

pub use error::{Error, Result};
pub use formula::Formula;
pub use parse::parse;
