//! Indicator-sequence autocorrelation.
//!
//! A second route to the weight function that never forms sensor pairs: the
//! array becomes a 0/1 sequence over the grid 0..=A, and the autocorrelation
//! of that sequence at lag m counts the sensor pairs separated by m.
//!
//! The sequence is generic over its sample type. Integer samples give exact
//! counts through the direct sum; floating-point samples can also go through
//! an FFT, whose output is rounded back to counts.

use std::ops::AddAssign;

use num_traits::{Float, Num};
use rustfft::num_complex::Complex;
use rustfft::{FftNum, FftPlanner};

use crate::array::{NormalizedArray, SensorArray};

/// 0/1 occupancy of the grid 0..=A.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorSequence<T> {
    samples: Vec<T>,
}

impl<T: Num + Copy> IndicatorSequence<T> {
    pub fn from_normalized(array: &NormalizedArray) -> Self {
        let mut samples = vec![T::zero(); array.aperture() + 1];
        for &p in array.positions() {
            samples[p] = T::one();
        }
        IndicatorSequence { samples }
    }

    pub fn from_array(array: &SensorArray) -> Self {
        Self::from_normalized(&array.normalize())
    }

    pub fn samples(&self) -> &[T] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

impl<T: Num + Copy + AddAssign> IndicatorSequence<T> {
    /// r(m) = Σᵢ y(i)·y(i+m). Zero at and beyond the sequence length.
    pub fn autocorrelation_at(&self, lag: usize) -> T {
        let mut acc = T::zero();
        if lag >= self.samples.len() {
            return acc;
        }
        for (a, b) in self.samples.iter().zip(&self.samples[lag..]) {
            acc += *a * *b;
        }
        acc
    }

    /// r(0), …, r(max_lag) by direct summation.
    pub fn autocorrelation(&self, max_lag: usize) -> Vec<T> {
        (0..=max_lag).map(|m| self.autocorrelation_at(m)).collect()
    }
}

impl<T: FftNum + Float> IndicatorSequence<T> {
    /// r(0), …, r(A) via zero-padded FFT, |Y|², inverse FFT.
    ///
    /// Values carry floating-point error; see [`round_count`].
    pub fn autocorrelation_fft(&self) -> Vec<T> {
        let n = self.samples.len();
        let padded = (2 * n - 1).next_power_of_two();
        let mut buf: Vec<Complex<T>> = self
            .samples
            .iter()
            .map(|&s| Complex::new(s, T::zero()))
            .chain(std::iter::repeat(Complex::new(T::zero(), T::zero())))
            .take(padded)
            .collect();

        let mut planner = FftPlanner::new();
        planner.plan_fft_forward(padded).process(&mut buf);
        for z in buf.iter_mut() {
            *z = Complex::new(z.norm_sqr(), T::zero());
        }
        planner.plan_fft_inverse(padded).process(&mut buf);

        let scale = T::from(padded).expect("fft length fits the sample type");
        buf.iter().take(n).map(|z| z.re / scale).collect()
    }
}

/// Rounds an approximate autocorrelation value to a pair count.
pub fn round_count<T: Float>(value: T) -> u32 {
    value.round().max(T::zero()).to_u32().unwrap_or(u32::MAX)
}

/// (w(1), w(2), w(3)) read off the exact indicator autocorrelation.
///
/// Lags past the aperture read as zero.
pub fn primary_weights(array: &SensorArray) -> PrimaryWeights {
    let y = IndicatorSequence::<u32>::from_array(array);
    PrimaryWeights([
        y.autocorrelation_at(1),
        y.autocorrelation_at(2),
        y.autocorrelation_at(3),
    ])
}

/// The three weights nearest the origin, w(1), w(2), w(3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct PrimaryWeights(pub [u32; 3]);

impl PrimaryWeights {
    pub fn w1(&self) -> u32 {
        self.0[0]
    }

    pub fn w2(&self) -> u32 {
        self.0[1]
    }

    pub fn w3(&self) -> u32 {
        self.0[2]
    }
}

impl std::fmt::Display for PrimaryWeights {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}
