//! Finite commutative ternary Γ-semirings.
//!
//! A structure is a commutative additive monoid `(T, +, 0)` together with a
//! ternary product `a_α b_β c` for every ordered pair of parameters
//! `(α, β) ∈ Γ × Γ`. This crate validates such tables, enumerates all of
//! them for small orders up to isomorphism, and computes their ideal
//! theory: prime, semiprime, maximal and primary ideals, radicals,
//! congruences and quotients, the prime spectrum with its closed sets,
//! idempotent decompositions, and finite ternary Γ-modules.

pub mod axioms;
pub mod checks;
pub mod config;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod ideals;
pub mod modules;
pub mod morphism;
pub mod quotient;
pub mod radicals;
pub mod set;
pub mod spectrum;
pub mod structure;
pub mod theorems;
pub mod verdict;

pub use axioms::{verify_axioms, AxiomReport, AxiomVerdict, AxiomWitness};
pub use config::{AnalysisConfig, ModuleAssoc, PrimaryParams, RadicalIterate};
pub use enumerate::{canonical_form, CanonicalForm, Caps};
pub use error::{Error, Result};
pub use set::ElementSet;
pub use structure::{Elem, GammaStructure, Param};
pub use verdict::Verdict;
