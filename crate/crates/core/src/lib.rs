//! Exact invariants of Seifert fibered spaces and graph manifolds, with the
//! finitely presented group machinery needed to certify them.

pub mod fpgroup;
pub mod graph_manifold;
pub mod orbifold;
pub mod seifert;
mod text;

pub use fpgroup::{AbelianGroup, FiniteGroupTable, GroupPresentation, HomSearchResult, Word};
pub use orbifold::Orbifold2;
pub use seifert::SeifertInvariants;

/// Exact rational numbers.
pub type Rational = num_rational::Ratio<i128>;
