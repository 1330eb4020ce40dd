//! Exact symbolic verification of the classification of four-dimensional
//! Leibniz algebras into irreducible components.
//!
//! The crate provides exact arithmetic over Q(i) with symbolic parameters,
//! structure-constant models of algebras with their invariants, degeneration
//! certificates, separation (non-degeneration) arguments, a catalog of the
//! algebras and certificates under verification, and an orchestrator that
//! assembles everything into a machine-checked component count.

pub mod algebra;
pub mod catalog;
pub mod degeneration;
pub mod exactmath;
pub mod separation;
pub mod subspaces;
