//! Difference-coarray analysis of sparse linear arrays.
//!
//! Sensor positions are integers on the half-wavelength grid. From them this
//! crate computes the difference set, the difference coarray (DCA), the
//! weight function w(m), holes, aperture and the primary weights
//! (w(1), w(2), w(3)), and compares two arrays side by side.
//!
//! ```
//! use coarray_core::{analyze, parse_ies_array};
//!
//! let array = parse_ies_array("1, 1, 2^6").unwrap();
//! let analysis = analyze(&array);
//! assert!(analysis.hole_free());
//! assert_eq!(analysis.primary_weights().0, [2, 7, 1]);
//! ```
//!
//! The weight function is computed twice over, by counting sensor pairs
//! ([`WeightFunction`]) and by autocorrelating the grid occupancy sequence
//! ([`IndicatorSequence`]). The latter is generic over its sample type; the
//! aliases below name the common instantiations.

pub mod analysis;
pub mod array;
pub mod autocorr;
pub mod catalog;
pub mod compare;
pub mod input;
pub mod weights;

pub use analysis::{
    analyze, difference_coarray, difference_set, holes, is_hole_free, normalize, primary_weights,
    weight_function, AnalysisDocument, CoarrayAnalysis, HAS_HOLES_STATUS, HOLE_FREE_STATUS,
    SCHEMA_VERSION,
};
pub use array::{ArrayError, NormalizedArray, SensorArray, MAX_APERTURE, MAX_SENSORS};
pub use autocorr::{round_count, IndicatorSequence, PrimaryWeights};
pub use catalog::{
    Catalog, CatalogEntry, CatalogError, Claim, ClaimMismatch, Definition, EntryDocument,
    ExpectedClaims, Family, ListDocument, Provenance, ResolveError,
};
pub use compare::{compare, compare_analyses, ComparisonDeltas, ComparisonDocument, ComparisonReport};
pub use input::{
    ies_to_positions, parse_array, parse_ies, parse_ies_array, parse_positions, IesError, IesSpec,
    IesTerm, InputFormat, ParseError, ParseErrorKind,
};
pub use weights::{DifferenceSet, LagWeight, WeightFunction};

/// Exact pair counts.
pub type CountIndicator = IndicatorSequence<u32>;
/// Double-precision samples; supports the FFT route.
pub type Indicator64 = IndicatorSequence<f64>;
/// Single-precision samples; supports the FFT route.
pub type Indicator32 = IndicatorSequence<f32>;
