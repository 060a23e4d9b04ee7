//! Exact arrangements of piecewise-linear topological lines in the plane and
//! of abstract intersection semilattices.
//!
//! Everything is generic over an exact ordered field ([`scalar::Scalar`],
//! implemented for `num_rational::Ratio`); the aliases below fix it to
//! arbitrary-precision rationals.

pub mod arrangement;
pub mod faces;
pub mod format;
pub mod generate;
pub mod geom;
pub mod model;
pub mod projective;
pub mod reglue;
pub mod scalar;
pub mod semilattice;
pub mod svg;

pub use arrangement::{build_arrangement, classify_pair, is_affine, PairClass};
pub use model::LineId;
pub use semilattice::Semilattice;

pub type Rat = num_rational::BigRational;
pub type Point = geom::Point<Rat>;
pub type Vector = geom::Vector<Rat>;
pub type Dir = geom::Dir<Rat>;
pub type Topoline = model::Topoline<Rat>;
pub type Arrangement = arrangement::Arrangement<Rat>;
pub type IntersectionPoint = arrangement::IntersectionPoint<Rat>;
pub type PlanarSubdivision = faces::PlanarSubdivision<Rat>;
pub type ReglueStep = reglue::ReglueStep<Rat>;
pub type ProjectiveStructure = projective::ProjectiveStructure<Rat>;
