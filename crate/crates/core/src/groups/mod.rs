//! Finite groups, virtually abelian groups as extension data, and the
//! central-extension builder used by the twisted-representation pipeline.

pub mod extension;
pub mod fin;
pub mod va;

pub use extension::{central_extension, ExtensionResult};
pub use fin::FinGroup;
pub use va::{CentralizerData, FiniteQuotient, GroupElement, GroupViolation, VAGroup};
