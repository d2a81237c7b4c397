//! Exact invariants of monomial ideals and Stanley–Reisner rings: graded
//! Betti tables, Hilbert series, multiplicity, codimension and regularity,
//! together with checkers for multiplicity bounds in terms of the shifts of
//! a minimal free resolution, and the Koszul-homology reduction to
//! codimension two.
//!
//! Everything is computed over `Q` with exact integer arithmetic.

pub mod betti;
pub mod campaign;
pub mod checks;
pub mod error;
pub mod grid;
pub mod hilbert;
pub mod homology;
pub mod ideal;
pub mod koszul;
pub mod linalg;
pub mod monomial;
pub mod simplicial;
pub mod stability;
pub mod strand;

pub use betti::{BettiTable, Regularity, ResolutionStats, Subject};
pub use error::{Error, Result};
pub use hilbert::{HilbertSummary, IntPoly};
pub use ideal::MonomialIdeal;
pub use monomial::{Bound, BoundVector, Monomial};
pub use simplicial::SimplicialComplex;
