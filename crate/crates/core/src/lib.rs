//! Garside normal forms for simply-laced spherical Artin groups.
//!
//! The crate solves the word problem in `A(Γ)` for Γ of type A, D or E via
//! left normal forms `Δ^k s₁…s_n`, models geometric homomorphisms on
//! homology by symplectic transvections, and assembles both into
//! replayable certificates about the Wajnryb element of `A(E6)`.

pub mod catalog;
pub mod certificate;
pub mod coxeter;
pub mod exec;
pub mod garside;
pub mod homology;
pub mod lang;

pub use coxeter::{CoxeterElement, CoxeterGraph, GraphError, RootSystem};
pub use garside::{GarsideElement, GarsideGroup, GeneratorWord, Letter};
