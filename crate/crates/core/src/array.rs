//! Sensor arrays on the half-wavelength integer grid.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest accepted aperture (max − min position), in half-wavelengths.
pub const MAX_APERTURE: u64 = 1_000_000;

/// Largest accepted number of sensors.
pub const MAX_SENSORS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrayError {
    #[error("array has no sensors")]
    Empty,
    #[error("two sensors share position {0}")]
    DuplicatePosition(i64),
    #[error("aperture {aperture} exceeds the limit of {MAX_APERTURE}")]
    ApertureLimit { aperture: u128 },
    #[error("{count} sensors exceed the limit of {MAX_SENSORS}")]
    SensorLimit { count: usize },
}

/// A physical array: distinct integer sensor positions, kept sorted ascending.
///
/// Positions may be negative; all coarray quantities are translation
/// invariant, so analysis runs on the [`NormalizedArray`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SensorArrayRepr", into = "SensorArrayRepr")]
pub struct SensorArray {
    positions: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct SensorArrayRepr {
    positions: Vec<i64>,
    count: usize,
}

impl TryFrom<SensorArrayRepr> for SensorArray {
    type Error = String;

    fn try_from(repr: SensorArrayRepr) -> Result<Self, Self::Error> {
        let array = SensorArray::new(repr.positions).map_err(|e| e.to_string())?;
        if array.len() != repr.count {
            return Err(format!(
                "count {} does not match {} positions",
                repr.count,
                array.len()
            ));
        }
        Ok(array)
    }
}

impl From<SensorArray> for SensorArrayRepr {
    fn from(array: SensorArray) -> Self {
        let count = array.len();
        SensorArrayRepr {
            positions: array.positions,
            count,
        }
    }
}

impl SensorArray {
    /// Builds an array from positions in any order.
    ///
    /// Rejects empty input, coinciding sensors and arrays beyond
    /// [`MAX_SENSORS`] / [`MAX_APERTURE`].
    pub fn new(mut positions: Vec<i64>) -> Result<Self, ArrayError> {
        if positions.is_empty() {
            return Err(ArrayError::Empty);
        }
        if positions.len() > MAX_SENSORS {
            return Err(ArrayError::SensorLimit {
                count: positions.len(),
            });
        }
        positions.sort_unstable();
        if let Some(pair) = positions.windows(2).find(|w| w[0] == w[1]) {
            return Err(ArrayError::DuplicatePosition(pair[0]));
        }
        let aperture = span(positions[0], positions[positions.len() - 1]);
        if aperture > u128::from(MAX_APERTURE) {
            return Err(ArrayError::ApertureLimit { aperture });
        }
        Ok(SensorArray { positions })
    }

    /// A uniform linear array with `count` sensors at unit spacing from 0.
    pub fn uniform(count: usize) -> Result<Self, ArrayError> {
        let count = i64::try_from(count).map_err(|_| ArrayError::SensorLimit { count })?;
        SensorArray::new((0..count).collect())
    }

    pub fn positions(&self) -> &[i64] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    /// Always false; an array holds at least one sensor.
    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn min(&self) -> i64 {
        self.positions[0]
    }

    pub fn max(&self) -> i64 {
        self.positions[self.positions.len() - 1]
    }

    /// Physical extent, max − min.
    pub fn aperture(&self) -> usize {
        // bounded by MAX_APERTURE at construction
        span(self.min(), self.max()) as usize
    }

    /// Shifts the array so its first sensor sits at 0.
    pub fn normalize(&self) -> NormalizedArray {
        let origin = self.min();
        NormalizedArray {
            positions: self
                .positions
                .iter()
                .map(|&p| span(origin, p) as usize)
                .collect(),
        }
    }

    /// Every position shifted by `offset`.
    pub fn translated(&self, offset: i64) -> Result<Self, ArrayError> {
        let shifted = self
            .positions
            .iter()
            .map(|&p| p.checked_add(offset))
            .collect::<Option<Vec<_>>>()
            .ok_or(ArrayError::ApertureLimit {
                aperture: u128::MAX,
            })?;
        SensorArray::new(shifted)
    }

    /// The array reflected about the origin.
    pub fn mirrored(&self) -> Result<Self, ArrayError> {
        let negated = self
            .positions
            .iter()
            .map(|&p| p.checked_neg())
            .collect::<Option<Vec<_>>>()
            .ok_or(ArrayError::ApertureLimit {
                aperture: u128::MAX,
            })?;
        SensorArray::new(negated)
    }

    /// Consecutive inter-element spacings, N − 1 of them.
    pub fn spacings(&self) -> Vec<u64> {
        self.positions
            .windows(2)
            .map(|w| span(w[0], w[1]) as u64)
            .collect()
    }
}

fn span(lo: i64, hi: i64) -> u128 {
    (i128::from(hi) - i128::from(lo)) as u128
}

/// A sensor array translated so that its first sensor is at 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "NormalizedRepr", into = "NormalizedRepr")]
pub struct NormalizedArray {
    positions: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct NormalizedRepr {
    positions: Vec<usize>,
    aperture: usize,
}

impl TryFrom<NormalizedRepr> for NormalizedArray {
    type Error = String;

    fn try_from(repr: NormalizedRepr) -> Result<Self, Self::Error> {
        let ok = repr.positions.first() == Some(&0)
            && repr.positions.windows(2).all(|w| w[0] < w[1])
            && repr.positions.last() == Some(&repr.aperture);
        if !ok {
            return Err("normalized positions must start at 0, increase strictly and end at the aperture".into());
        }
        Ok(NormalizedArray {
            positions: repr.positions,
        })
    }
}

impl From<NormalizedArray> for NormalizedRepr {
    fn from(array: NormalizedArray) -> Self {
        let aperture = array.aperture();
        NormalizedRepr {
            positions: array.positions,
            aperture,
        }
    }
}

impl NormalizedArray {
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn aperture(&self) -> usize {
        self.positions[self.positions.len() - 1]
    }
}

impl From<&NormalizedArray> for SensorArray {
    fn from(array: &NormalizedArray) -> Self {
        SensorArray {
            positions: array.positions.iter().map(|&p| p as i64).collect(),
        }
    }
}
