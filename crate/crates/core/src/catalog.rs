//! Library of reference arrays with their known coarray properties.
//!
//! Entries live in a TOML file (`data/catalog.toml` ships with the crate and
//! is compiled in as the default); [`Catalog::load`] reads a replacement at
//! startup so arrays can be added without rebuilding.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{analyze, AnalysisDocument, CoarrayAnalysis, SCHEMA_VERSION};
use crate::array::SensorArray;
use crate::autocorr::PrimaryWeights;
use crate::input::{ies_to_positions, parse_array, IesSpec, InputFormat, ParseError};

const BUILTIN: &str = include_str!("../data/catalog.toml");

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("no catalog entry with id '{0}'")]
    NotFound(String),
    #[error("catalog file: {0}")]
    Io(#[from] std::io::Error),
    #[error("catalog syntax: {0}")]
    Syntax(#[from] toml::de::Error),
    #[error("catalog id '{0}' appears more than once")]
    DuplicateId(String),
    #[error("catalog entry '{id}': {reason}")]
    InvalidEntry { id: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "MRA")]
    Mra,
    #[serde(rename = "MHA")]
    Mha,
    #[serde(rename = "ULA")]
    Ula,
    #[serde(rename = "coprime")]
    Coprime,
    #[serde(rename = "ODNRA")]
    Odnra,
    #[serde(rename = "WCSA")]
    Wcsa,
    #[serde(rename = "nested-variant")]
    NestedVariant,
    #[serde(rename = "custom")]
    Custom,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::Mra => "MRA",
            Family::Mha => "MHA",
            Family::Ula => "ULA",
            Family::Coprime => "coprime",
            Family::Odnra => "ODNRA",
            Family::Wcsa => "WCSA",
            Family::NestedVariant => "nested-variant",
            Family::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Definition {
    Positions(Vec<i64>),
    Ies(IesSpec),
}

/// Where a recorded claim comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the literature for this array.
    Published,
    /// Computed by exhaustive pair enumeration.
    Derived,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim<T> {
    pub value: T,
    pub source: Provenance,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedClaims {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hole_free: Option<Claim<bool>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holes: Option<Claim<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aperture: Option<Claim<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primary_weights: Option<Claim<[u32; 3]>>,
}

/// One claim that an analysis did not reproduce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimMismatch {
    pub field: &'static str,
    pub expected: String,
    pub actual: String,
}

impl ExpectedClaims {
    pub fn check(&self, analysis: &CoarrayAnalysis) -> Vec<ClaimMismatch> {
        let mut out = Vec::new();
        let mut cmp = |field, expected: String, actual: String| {
            if expected != actual {
                out.push(ClaimMismatch {
                    field,
                    expected,
                    actual,
                });
            }
        };
        if let Some(c) = &self.hole_free {
            cmp("hole_free", c.value.to_string(), analysis.hole_free().to_string());
        }
        if let Some(c) = &self.holes {
            cmp("holes", format!("{:?}", c.value), format!("{:?}", analysis.holes()));
        }
        if let Some(c) = &self.aperture {
            cmp("aperture", c.value.to_string(), analysis.aperture().to_string());
        }
        if let Some(c) = &self.primary_weights {
            cmp(
                "primary_weights",
                PrimaryWeights(c.value).to_string(),
                analysis.primary_weights().to_string(),
            );
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.hole_free.is_none()
            && self.holes.is_none()
            && self.aperture.is_none()
            && self.primary_weights.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub id: String,
    pub name: String,
    pub family: Family,
    pub definition: Definition,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExpectedClaims>,
    #[serde(skip)]
    array: SensorArray,
}

impl CatalogEntry {
    /// The entry's sensor array, validated at load time.
    pub fn array(&self) -> &SensorArray {
        &self.array
    }

    pub fn analyze(&self) -> CoarrayAnalysis {
        analyze(&self.array)
    }

    /// The definition as input text, in the grammar of [`Self::input_format`].
    pub fn input_text(&self) -> String {
        match &self.definition {
            Definition::Positions(p) => p
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(", "),
            Definition::Ies(spec) => spec.to_string(),
        }
    }

    pub fn input_format(&self) -> InputFormat {
        match self.definition {
            Definition::Positions(_) => InputFormat::Positions,
            Definition::Ies(_) => InputFormat::Ies,
        }
    }
}

/// JSON document for one entry together with its fresh analysis.
#[derive(Debug, Serialize)]
pub struct EntryDocument<'a> {
    pub schema_version: u32,
    pub entry: &'a CatalogEntry,
    pub analysis: AnalysisDocument,
}

/// JSON document listing entries without analyses.
#[derive(Debug, Serialize)]
pub struct ListDocument<'a> {
    pub schema_version: u32,
    pub entries: &'a [CatalogEntry],
}

impl CatalogEntry {
    /// Pretty JSON of the entry plus analysis, trailing newline included.
    pub fn to_json_with_analysis(&self) -> String {
        let analysis = self.analyze();
        let doc = EntryDocument {
            schema_version: SCHEMA_VERSION,
            entry: self,
            analysis: AnalysisDocument {
                schema_version: SCHEMA_VERSION,
                status: analysis.status().to_string(),
                analysis,
            },
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("entry serializes");
        out.push('\n');
        out
    }
}

impl Catalog {
    /// Pretty JSON listing of all entries, trailing newline included.
    pub fn to_json(&self) -> String {
        let doc = ListDocument {
            schema_version: SCHEMA_VERSION,
            entries: &self.entries,
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("catalog serializes");
        out.push('\n');
        out
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    id: String,
    name: String,
    family: Family,
    positions: Option<Vec<i64>>,
    ies: Option<String>,
    expected: Option<ExpectedClaims>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalog {
    #[serde(default)]
    array: Vec<RawEntry>,
}

/// Immutable set of entries, ordered by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// The catalog compiled into the crate.
    pub fn builtin() -> Self {
        Self::from_toml_str(BUILTIN).expect("built-in catalog is valid")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, CatalogError> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn from_toml_str(text: &str) -> Result<Self, CatalogError> {
        let raw: RawCatalog = toml::from_str(text)?;
        let mut seen = BTreeSet::new();
        let mut entries = Vec::with_capacity(raw.array.len());
        for r in raw.array {
            if !seen.insert(r.id.clone()) {
                return Err(CatalogError::DuplicateId(r.id));
            }
            entries.push(entry(r)?);
        }
        entries.sort_by(|a, b| a.id.cmp(&b.id));
        Ok(Catalog { entries })
    }

    /// All entries in id order.
    pub fn list_entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get_entry(&self, id: &str) -> Result<&CatalogEntry, CatalogError> {
        self.entries
            .binary_search_by(|e| e.id.as_str().cmp(id))
            .map(|i| &self.entries[i])
            .map_err(|_| CatalogError::NotFound(id.to_string()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Resolves input text of any format, looking catalog ids up here.
    pub fn resolve(&self, format: InputFormat, text: &str) -> Result<SensorArray, ResolveError> {
        match parse_array(format, text) {
            Some(parsed) => parsed.map_err(ResolveError::Parse),
            None => self
                .get_entry(text.trim())
                .map(|e| e.array.clone())
                .map_err(|_| ResolveError::NotFound(text.trim().to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error(transparent)]
    Parse(ParseError),
    #[error("no catalog entry with id '{0}'")]
    NotFound(String),
}

fn entry(raw: RawEntry) -> Result<CatalogEntry, CatalogError> {
    let invalid = |reason: String| CatalogError::InvalidEntry {
        id: raw.id.clone(),
        reason,
    };
    let (definition, array) = match (raw.positions, raw.ies) {
        (Some(p), None) => {
            let array = SensorArray::new(p.clone()).map_err(|e| invalid(e.to_string()))?;
            (Definition::Positions(p), array)
        }
        (None, Some(text)) => {
            let spec: IesSpec = text.parse().map_err(|e: ParseError| invalid(e.to_string()))?;
            let array = ies_to_positions(&spec).map_err(|e| invalid(e.to_string()))?;
            (Definition::Ies(spec), array)
        }
        _ => {
            return Err(invalid(
                "exactly one of 'positions' or 'ies' is required".into(),
            ))
        }
    };
    Ok(CatalogEntry {
        id: raw.id,
        name: raw.name,
        family: raw.family,
        definition,
        expected: raw.expected.filter(|e| !e.is_empty()),
        array,
    })
}
