//! Nameful λ-terms modulo alpha, with renaming as the primitive operation.
//! Freshness and swapping are derived from renaming; recursion principles
//! and semantic interpretations are checked against their laws.

pub mod laws;
pub mod perm;
pub mod recursion;
pub mod renset;
pub mod semantics;
pub mod term;
pub mod var;

pub use laws::{Carrier, LawReport, Sampling, Violation};
pub use renset::Renset;
pub use term::{parse_term, print_term, FinTermEnv, Term};
pub use var::{fresh_var, Names, Var, VarSet};
