//! Exact invariants of twisted group algebras of finitely generated
//! virtually abelian groups: cocycle classification, central extensions,
//! irreducible projective representations via orbit/stabilizer induction,
//! and nuclear-dimension reports for noncommutative tori.

pub mod cocycles;
pub mod error;
pub mod exact;
pub mod groups;

pub use error::{Error, Result};
