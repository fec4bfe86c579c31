//! Side-by-side comparison of two arrays.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::analysis::{analyze, CoarrayAnalysis, SCHEMA_VERSION};
use crate::array::SensorArray;

/// Per-metric differences, each computed as `a − b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonDeltas {
    pub aperture: i64,
    pub sensor_count: i64,
    pub primary_weights: [i64; 3],
    pub hole_count: i64,
    /// Lags that are a hole in exactly one of the two arrays.
    pub holes_symmetric_difference: Vec<i64>,
    pub holes_only_in_a: Vec<i64>,
    pub holes_only_in_b: Vec<i64>,
}

impl ComparisonDeltas {
    pub fn is_zero(&self) -> bool {
        self.aperture == 0
            && self.sensor_count == 0
            && self.primary_weights == [0; 3]
            && self.hole_count == 0
            && self.holes_symmetric_difference.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub a: CoarrayAnalysis,
    pub b: CoarrayAnalysis,
    pub deltas: ComparisonDeltas,
}

/// Versioned JSON wrapper for a [`ComparisonReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonDocument {
    pub schema_version: u32,
    #[serde(flatten)]
    pub report: ComparisonReport,
}

pub fn compare(a: &SensorArray, b: &SensorArray) -> ComparisonReport {
    compare_analyses(analyze(a), analyze(b))
}

pub fn compare_analyses(a: CoarrayAnalysis, b: CoarrayAnalysis) -> ComparisonReport {
    let holes_a: BTreeSet<i64> = a.holes().iter().copied().collect();
    let holes_b: BTreeSet<i64> = b.holes().iter().copied().collect();
    let (pa, pb) = (a.primary_weights().0, b.primary_weights().0);
    let deltas = ComparisonDeltas {
        aperture: a.aperture() as i64 - b.aperture() as i64,
        sensor_count: a.sensor_count() as i64 - b.sensor_count() as i64,
        primary_weights: [0, 1, 2].map(|i| i64::from(pa[i]) - i64::from(pb[i])),
        hole_count: holes_a.len() as i64 - holes_b.len() as i64,
        holes_symmetric_difference: holes_a.symmetric_difference(&holes_b).copied().collect(),
        holes_only_in_a: holes_a.difference(&holes_b).copied().collect(),
        holes_only_in_b: holes_b.difference(&holes_a).copied().collect(),
    };
    ComparisonReport { a, b, deltas }
}

impl ComparisonReport {
    /// Pretty-printed versioned JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let doc = ComparisonDocument {
            schema_version: SCHEMA_VERSION,
            report: self.clone(),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str::<ComparisonDocument>(text).map(|d| d.report)
    }
}
