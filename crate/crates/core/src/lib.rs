//! Exact computations with monomials over `G[x] = G * <x>`, their co-zero
//! sets, and the constructive witnesses behind the low-degree Zariski
//! topologies on groups: free and abelian backends, the binary-tree
//! semidirect product `F(T) ⋊ Aut(T)`, and a deterministic CLI.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod group;
pub mod monomial;
pub mod report;
pub mod tree;

pub use error::{Error, Result};
