//! Exact-arithmetic tools for subshifts of Dyck shifts defined by excluding
//! two-letter words.
//!
//! A subshift is described by copy counts `M_n` and three cardinality
//! matrices `A⁻`, `A`, `A⁺` (see [`SubshiftSpec`]). From these the crate
//! computes the excursion generating functions, the zeta functions split by
//! multiplier, closed forms in the two-class case, and labelled-graph
//! presentations.

pub mod genfun;
pub mod identities;
pub mod kernel;
pub mod matrix;
pub mod presentations;
pub mod series;
pub mod specfile;
pub mod zeta;

pub use genfun::{solve_genfun, GenFunError, GenFunSolution, SystemForm};
pub use identities::{CubicData, FamilyForm, Triplet};
pub use kernel::{
    reduce, MultiplierClass, ReducedElement, Sign, SignedSymbol, SpecError, SubsetFamily, SubshiftSpec, Word,
};
pub use matrix::IntMatrix;
pub use presentations::{Format, LabelRule, PresentationGraph};
pub use series::{Rational, RationalSeries, SeriesError, SeriesMatrix};
pub use specfile::{load_spec, SpecFile, SpecFileError};
pub use zeta::{periodic_census, zeta_parts, PeriodicCensus, ZetaError, ZetaParts, ZetaVariant};
