//! Exact tools for Sperner-type theorems on set systems and weak set
//! compositions: bound calculators, hypothesis checkers with witnesses,
//! rational LYM sums, maximal-chain counting, extremal constructions with an
//! exact maximum-family search, and the first-appearance analysis of
//! multinomial coefficients that decides when the bounds cannot be attained.

pub mod attain;
pub mod chains;
pub mod cli;
pub mod clique;
pub mod coeffs;
pub mod error;
pub mod extremal;
pub mod hyp;
pub mod lym;
pub mod model;

pub use error::{Error, Result};
