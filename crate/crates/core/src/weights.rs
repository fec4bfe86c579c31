//! Difference set and weight function by pair counting.

use serde::{Deserialize, Serialize};

use crate::array::SensorArray;

/// The multiset of all ordered pairwise differences sᵢ − sⱼ.
///
/// Stored as a dense lag → count table over [−A, A], so memory grows with
/// the aperture rather than with N².
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceSet {
    aperture: usize,
    counts: Vec<u32>,
}

impl DifferenceSet {
    pub fn of(array: &SensorArray) -> Self {
        let normalized = array.normalize();
        let aperture = normalized.aperture();
        let positions = normalized.positions();
        let mut counts = vec![0u32; 2 * aperture + 1];
        counts[aperture] = positions.len() as u32;
        for (i, &hi) in positions.iter().enumerate() {
            for &lo in &positions[..i] {
                let lag = hi - lo;
                counts[aperture + lag] += 1;
                counts[aperture - lag] += 1;
            }
        }
        DifferenceSet { aperture, counts }
    }

    pub fn aperture(&self) -> usize {
        self.aperture
    }

    /// Multiplicity of `lag`; zero outside [−A, A].
    pub fn count(&self, lag: i64) -> u32 {
        self.index(lag).map_or(0, |i| self.counts[i])
    }

    /// Lags with nonzero multiplicity, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.dense().filter(|&(_, c)| c > 0)
    }

    /// Number of distinct lags.
    pub fn distinct(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    /// Total number of ordered pairs, N².
    pub fn cardinality(&self) -> u64 {
        self.counts.iter().map(|&c| u64::from(c)).sum()
    }

    fn dense(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        let a = self.aperture as i64;
        self.counts
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i as i64 - a, c))
    }

    fn index(&self, lag: i64) -> Option<usize> {
        let i = lag.checked_add(self.aperture as i64)?;
        usize::try_from(i).ok().filter(|&i| i < self.counts.len())
    }
}

/// Weight w(m) for every lag m in [−A, A], holes included with w(m) = 0.
///
/// Serializes as a list of `{"lag": m, "weight": w}` pairs in ascending lag
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<LagWeight>", into = "Vec<LagWeight>")]
pub struct WeightFunction {
    aperture: usize,
    weights: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LagWeight {
    pub lag: i64,
    pub weight: u32,
}

impl WeightFunction {
    pub fn of(array: &SensorArray) -> Self {
        Self::from(DifferenceSet::of(array))
    }

    pub fn aperture(&self) -> usize {
        self.aperture
    }

    /// w(m); zero for lags outside [−A, A].
    pub fn weight(&self, lag: i64) -> u32 {
        let a = self.aperture as i64;
        if lag < -a || lag > a {
            return 0;
        }
        self.weights[(lag + a) as usize]
    }

    /// All (lag, weight) pairs over [−A, A].
    pub fn iter(&self) -> impl Iterator<Item = LagWeight> + '_ {
        let a = self.aperture as i64;
        self.weights
            .iter()
            .enumerate()
            .map(move |(i, &weight)| LagWeight {
                lag: i as i64 - a,
                weight,
            })
    }

    /// Σ w(m), which equals N².
    pub fn total(&self) -> u64 {
        self.weights.iter().map(|&w| u64::from(w)).sum()
    }
}

impl From<DifferenceSet> for WeightFunction {
    fn from(set: DifferenceSet) -> Self {
        WeightFunction {
            aperture: set.aperture,
            weights: set.counts,
        }
    }
}

impl TryFrom<Vec<LagWeight>> for WeightFunction {
    type Error = String;

    fn try_from(pairs: Vec<LagWeight>) -> Result<Self, Self::Error> {
        if pairs.len().is_multiple_of(2) {
            return Err("weight function must cover an odd number of lags".into());
        }
        let aperture = pairs.len() / 2;
        let a = aperture as i64;
        for (i, p) in pairs.iter().enumerate() {
            if p.lag != i as i64 - a {
                return Err(format!(
                    "expected lag {} at index {i}, found {}",
                    i as i64 - a,
                    p.lag
                ));
            }
        }
        Ok(WeightFunction {
            aperture,
            weights: pairs.into_iter().map(|p| p.weight).collect(),
        })
    }
}

impl From<WeightFunction> for Vec<LagWeight> {
    fn from(wf: WeightFunction) -> Self {
        wf.iter().collect()
    }
}
