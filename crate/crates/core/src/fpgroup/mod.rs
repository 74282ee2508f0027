//! Finitely presented groups: words and presentations, Smith normal form
//! and abelianization, homomorphism search into finite groups, and
//! Todd–Coxeter coset enumeration.

mod abelian;
mod coset;
mod finite_group;
mod homsearch;
mod matrix;
mod presentation;
mod snf;
mod word;

pub use abelian::AbelianGroup;
pub use coset::{coset_enumeration, CosetOutcome};
pub use finite_group::{FiniteGroupTable, TableError};
pub use homsearch::{
    hom_search, hom_search_with_budget, image_order_divisor, image_size, relator_order_bound,
    relator_order_bound_with_depth, verify_assignment, HomSearchResult, SearchError, DEFAULT_BUDGET,
    DEFAULT_CHAIN_DEPTH,
};
pub use matrix::{BigMatrix, IntMatrix};
pub use presentation::{Elimination, GroupPresentation, ParseError, PresentationError, PresentationJson};
pub use snf::{smith_normal_form, SmithForm};
pub use word::Word;

/// Cokernel of the exponent-sum matrix.
pub fn abelianization(p: &GroupPresentation) -> AbelianGroup {
    smith_normal_form(&p.exponent_matrix()).cokernel()
}
