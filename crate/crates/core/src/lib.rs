//! Exact computations for 2-arrangements: finite families of real
//! codimension-two subspaces of `R^{2d}` whose intersections all have even
//! codimension.
//!
//! Given the defining forms, the crate computes the intersection lattice and
//! matroid data, a signed presentation of the integral cohomology ring of the
//! complement, the multiplication pairing on degree-two relations, and the
//! linking signs of the great-circle link in `S^3` when `d = 2`. All
//! arithmetic is exact.
//!
//! ```
//! use twoarr::{fixtures, kappa, kappa_rank};
//!
//! let complex = fixtures::example_b();
//! let twisted = fixtures::example_b_prime();
//! assert_eq!(kappa_rank(&kappa(&complex).unwrap()), 0);
//! assert_eq!(kappa_rank(&kappa(&twisted).unwrap()), 2);
//! ```

pub mod arrangement;
pub mod exterior;
pub mod fixtures;
pub mod invariants;
pub mod json;
pub mod linalg;
pub mod matroid;
pub mod presentation;
pub mod set;

pub use arrangement::{
    from_complex_form, parse_arrangement, restrict, to_document, validate, Arrangement,
    ArrangementError, ComplexFormSpec, LinearForm, SubspacePair, ValidationReport, Violation,
};
pub use exterior::{degree_span_rank, normalize, ExtElement, GradedSpan, Monomial};
pub use invariants::{
    compare, kappa, kappa_rank, linking_data, pairwise_linking, triple_coefficients,
    ComparisonReport, CompareOptions, InvariantsError, KappaForm, LinkingData, Verdict,
};
pub use linalg::{Matrix, Rational, Sign};
pub use matroid::{
    betti_vector, circuits, closure, flats, nbc_sets, nbc_sets_with_order, whitney_check,
    Circuit, Flat, IntersectionLattice, MatroidError, NbcComplex, RankOracle,
};
pub use presentation::{
    circuit_dependencies, circuit_relation, full_presentation, ideal_rank, nbc_basis_check,
    CircuitRelation, DependencyPair, Mode, Presentation, PresentationError,
};
pub use set::IndexSet;
