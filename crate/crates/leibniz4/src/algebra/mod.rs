//! Structure-constant calculus for finite-dimensional algebras over the
//! Gaussian rationals.
//!
//! An algebra is a point of the variety of structure constants, possibly
//! depending on named parameters.  This module provides the basic toolkit
//! built on that representation: the bilinear product, the defining identity,
//! the basis-change action of the general linear group, subspaces and their
//! products, annihilators, powers, descending series, and the dimension of
//! the derivation algebra.  Every computation is exact; answers that depend
//! on parameters come with the polynomial constraints under which the
//! generic answer could change.

mod invariants;
mod structure;
mod subspace;

pub use invariants::{
    annihilators, derivation_dim, is_nilpotent, is_solvable, plus_square, series,
    square, subspace_product, DerivationReport, ExceptionalDim, SeriesKind,
};
pub use structure::AlgebraStructure;
pub use subspace::Subspace;
