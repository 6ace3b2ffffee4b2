//! Finite pseudoreflection groups, their relative invariants, weighted Hardy
//! spaces on the quotient domain `θ(Ω)` and Toeplitz operators transferred
//! between `Ω` and `θ(Ω)`.

pub mod cli;
pub mod group;
pub mod hardy;
pub mod invariants;
pub mod poly;
pub mod sampling;
pub mod schur;
pub mod toeplitz;
pub mod tolerance;
