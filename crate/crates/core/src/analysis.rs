//! Full coarray analysis of one array.

use serde::{Deserialize, Serialize};

use crate::array::{NormalizedArray, SensorArray};
use crate::autocorr::{self, PrimaryWeights};
use crate::weights::{DifferenceSet, WeightFunction};

/// Status line for an array whose coarray is contiguous.
pub const HOLE_FREE_STATUS: &str = "Coarray is hole-free";
/// Status line for an array with at least one hole.
pub const HAS_HOLES_STATUS: &str = "Coarray has holes";

/// Current version of the JSON documents produced by [`AnalysisDocument`]
/// and [`crate::ComparisonDocument`].
pub const SCHEMA_VERSION: u32 = 1;

pub fn normalize(array: &SensorArray) -> NormalizedArray {
    array.normalize()
}

pub fn difference_set(array: &SensorArray) -> DifferenceSet {
    DifferenceSet::of(array)
}

/// Sorted distinct lags of the difference set.
pub fn difference_coarray(array: &SensorArray) -> Vec<i64> {
    DifferenceSet::of(array).iter().map(|(lag, _)| lag).collect()
}

pub fn weight_function(array: &SensorArray) -> WeightFunction {
    WeightFunction::of(array)
}

pub fn primary_weights(array: &SensorArray) -> PrimaryWeights {
    autocorr::primary_weights(array)
}

/// Lags in [−A, A] missing from the coarray, both signs listed.
pub fn holes(array: &SensorArray) -> Vec<i64> {
    WeightFunction::of(array)
        .iter()
        .filter(|lw| lw.weight == 0)
        .map(|lw| lw.lag)
        .collect()
}

/// True iff the coarray has 2A + 1 distinct lags, A being max − min.
pub fn is_hole_free(array: &SensorArray) -> bool {
    DifferenceSet::of(array).distinct() == 2 * array.aperture() + 1
}

/// Everything the workbench reports about one array.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AnalysisRepr", into = "AnalysisRepr")]
pub struct CoarrayAnalysis {
    source: SensorArray,
    normalized: NormalizedArray,
    dca: Vec<i64>,
    holes: Vec<i64>,
    weight_function: WeightFunction,
    primary_weights: PrimaryWeights,
}

pub fn analyze(array: &SensorArray) -> CoarrayAnalysis {
    let set = DifferenceSet::of(array);
    let dca = set.iter().map(|(lag, _)| lag).collect();
    let weight_function = WeightFunction::from(set);
    let holes = weight_function
        .iter()
        .filter(|lw| lw.weight == 0)
        .map(|lw| lw.lag)
        .collect();
    CoarrayAnalysis {
        source: array.clone(),
        normalized: array.normalize(),
        dca,
        holes,
        weight_function,
        primary_weights: autocorr::primary_weights(array),
    }
}

impl CoarrayAnalysis {
    pub fn source(&self) -> &SensorArray {
        &self.source
    }

    pub fn normalized(&self) -> &NormalizedArray {
        &self.normalized
    }

    pub fn sensor_count(&self) -> usize {
        self.source.len()
    }

    pub fn dca(&self) -> &[i64] {
        &self.dca
    }

    pub fn holes(&self) -> &[i64] {
        &self.holes
    }

    pub fn hole_free(&self) -> bool {
        self.holes.is_empty()
    }

    pub fn aperture(&self) -> usize {
        self.normalized.aperture()
    }

    pub fn weight_function(&self) -> &WeightFunction {
        &self.weight_function
    }

    pub fn primary_weights(&self) -> PrimaryWeights {
        self.primary_weights
    }

    pub fn status(&self) -> &'static str {
        if self.hole_free() {
            HOLE_FREE_STATUS
        } else {
            HAS_HOLES_STATUS
        }
    }

    /// The whole analysis as a versioned JSON document, pretty-printed with a
    /// trailing newline. Output is deterministic for a given array.
    pub fn to_json(&self) -> String {
        let doc = AnalysisDocument {
            schema_version: SCHEMA_VERSION,
            status: self.status().to_string(),
            analysis: self.clone(),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("analysis serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str::<AnalysisDocument>(text).map(|d| d.analysis)
    }
}

/// Top-level JSON document for one analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisDocument {
    pub schema_version: u32,
    pub status: String,
    #[serde(flatten)]
    pub analysis: CoarrayAnalysis,
}

#[derive(Serialize, Deserialize)]
struct AnalysisRepr {
    source: SensorArray,
    normalized: NormalizedArray,
    dca: Vec<i64>,
    holes: Vec<i64>,
    hole_free: bool,
    aperture: usize,
    weight_function: WeightFunction,
    primary_weights: PrimaryWeights,
}

impl From<CoarrayAnalysis> for AnalysisRepr {
    fn from(a: CoarrayAnalysis) -> Self {
        AnalysisRepr {
            hole_free: a.hole_free(),
            aperture: a.aperture(),
            source: a.source,
            normalized: a.normalized,
            dca: a.dca,
            holes: a.holes,
            weight_function: a.weight_function,
            primary_weights: a.primary_weights,
        }
    }
}

impl TryFrom<AnalysisRepr> for CoarrayAnalysis {
    type Error = String;

    // A document is accepted only if it is exactly what `analyze` would
    // produce for its source array.
    fn try_from(repr: AnalysisRepr) -> Result<Self, Self::Error> {
        let fresh = analyze(&repr.source);
        let consistent = fresh.normalized == repr.normalized
            && fresh.dca == repr.dca
            && fresh.holes == repr.holes
            && fresh.hole_free() == repr.hole_free
            && fresh.aperture() == repr.aperture
            && fresh.weight_function == repr.weight_function
            && fresh.primary_weights == repr.primary_weights;
        if consistent {
            Ok(fresh)
        } else {
            Err("analysis fields are inconsistent with the source array".into())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(p: &[i64]) -> SensorArray {
        SensorArray::new(p.to_vec()).unwrap()
    }

    #[test]
    fn mra4() {
        let a = analyze(&arr(&[0, 1, 4, 6]));
        assert!(a.hole_free());
        assert_eq!(a.aperture(), 6);
        assert_eq!(a.dca(), (-6..=6).collect::<Vec<_>>().as_slice());
        assert_eq!(a.primary_weights(), PrimaryWeights([1, 1, 1]));
        assert_eq!(a.status(), HOLE_FREE_STATUS);
    }

    #[test]
    fn holey4() {
        let s = arr(&[0, 1, 2, 6]);
        assert_eq!(holes(&s), vec![-3, 3]);
        let expected: Vec<i64> = (-6..=6).filter(|m: &i64| m.abs() != 3).collect();
        assert_eq!(difference_coarray(&s), expected);
        assert!(!is_hole_free(&s));
    }

    #[test]
    fn coprime() {
        let s = arr(&[0, 2, 3, 4, 6, 9]);
        let a = analyze(&s);
        assert!(!a.hole_free());
        assert_eq!(a.holes(), &[-8, 8]);
        assert_eq!(a.aperture(), 9);
        assert_eq!(a.status(), HAS_HOLES_STATUS);
    }

    #[test]
    fn odnra_holes() {
        assert_eq!(
            holes(&arr(&[0, 4, 6, 7, 15, 20])),
            vec![-19, -18, -17, -12, -10, 10, 12, 17, 18, 19]
        );
        assert!(holes(&arr(&[0, 1, 4, 6])).is_empty());
    }

    #[test]
    fn hole_free_flags() {
        assert!(is_hole_free(&arr(&[0, 1, 4, 6])));
        assert!(!is_hole_free(&arr(&[0, 2, 4, 6, 8, 10, 12, 14])));
        assert!(is_hole_free(&arr(&[0, 1, 2, 4, 6, 8, 10, 12, 14])));
        // hole-free check uses max − min, not max
        assert!(is_hole_free(&arr(&[-7, -6, -3, -1])));
    }

    #[test]
    fn single_sensor() {
        let a = analyze(&arr(&[0]));
        assert!(a.hole_free());
        assert_eq!(a.aperture(), 0);
        assert_eq!(a.dca(), &[0]);
        assert_eq!(a.primary_weights(), PrimaryWeights([0, 0, 0]));
    }

    #[test]
    fn json_round_trip() {
        let a = analyze(&arr(&[-7, -4, 0, 5, 10, 15, 20, 25, 28, 31]));
        let text = a.to_json();
        assert!(text.starts_with("{\n  \"schema_version\": 1,"));
        assert_eq!(CoarrayAnalysis::from_json(&text).unwrap(), a);
    }

    #[test]
    fn json_rejects_tampered_fields() {
        let text = analyze(&arr(&[0, 1, 2, 6])).to_json();
        let tampered = text.replace("\"hole_free\": false", "\"hole_free\": true");
        assert_ne!(tampered, text);
        assert!(CoarrayAnalysis::from_json(&tampered).is_err());
    }
}
