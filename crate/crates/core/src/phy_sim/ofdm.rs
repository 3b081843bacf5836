//! OFDM framing: unitary N-point transforms and a cyclic prefix.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Cyclic-prefix length as a fraction G of the useful symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CyclicPrefix {
    Quarter,
    Eighth,
    Sixteenth,
    ThirtySecond,
}

impl CyclicPrefix {
    pub fn denominator(self) -> usize {
        match self {
            CyclicPrefix::Quarter => 4,
            CyclicPrefix::Eighth => 8,
            CyclicPrefix::Sixteenth => 16,
            CyclicPrefix::ThirtySecond => 32,
        }
    }

    pub fn ratio(self) -> f64 {
        1.0 / self.denominator() as f64
    }

    /// Parses `1/4`, `1/8`, `1/16` or `1/32`.
    pub fn parse(text: &str) -> Option<Self> {
        match text.trim().replace(' ', "").as_str() {
            "1/4" => Some(CyclicPrefix::Quarter),
            "1/8" => Some(CyclicPrefix::Eighth),
            "1/16" => Some(CyclicPrefix::Sixteenth),
            "1/32" => Some(CyclicPrefix::ThirtySecond),
            _ => None,
        }
    }
}

impl fmt::Display for CyclicPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}", self.denominator())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OfdmConfig {
    num_subcarriers: usize,
    cyclic_prefix: CyclicPrefix,
}

impl OfdmConfig {
    pub fn new(num_subcarriers: usize, cyclic_prefix: CyclicPrefix) -> Result<Self> {
        if !num_subcarriers.is_power_of_two() || num_subcarriers < cyclic_prefix.denominator() {
            return Err(Error::domain(
                "OfdmConfig",
                format!(
                    "subcarrier count must be a power of two with an integral prefix of {cyclic_prefix}, got {num_subcarriers}"
                ),
            ));
        }
        Ok(Self {
            num_subcarriers,
            cyclic_prefix,
        })
    }

    pub fn num_subcarriers(&self) -> usize {
        self.num_subcarriers
    }

    pub fn cyclic_prefix(&self) -> CyclicPrefix {
        self.cyclic_prefix
    }

    pub fn prefix_len(&self) -> usize {
        self.num_subcarriers / self.cyclic_prefix.denominator()
    }
}

/// Precomputed transforms for one [`OfdmConfig`]; cheap to share across
/// threads.
#[derive(Clone)]
pub struct OfdmModem {
    config: OfdmConfig,
    inverse: Arc<dyn Fft<f64>>,
    forward: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for OfdmModem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OfdmModem").field("config", &self.config).finish()
    }
}

impl OfdmModem {
    pub fn new(config: OfdmConfig) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            config,
            inverse: planner.plan_fft_inverse(config.num_subcarriers),
            forward: planner.plan_fft_forward(config.num_subcarriers),
        }
    }

    pub fn config(&self) -> &OfdmConfig {
        &self.config
    }

    /// N frequency-domain symbols → N + G·N time samples.
    pub fn transmit(&self, subcarriers: &[Complex64]) -> Vec<Complex64> {
        let n = self.config.num_subcarriers;
        assert_eq!(
            subcarriers.len(),
            n,
            "one OFDM symbol needs exactly N subcarrier values"
        );
        let mut body = subcarriers.to_vec();
        self.inverse.process(&mut body);
        let scale = 1.0 / (n as f64).sqrt();
        body.iter_mut().for_each(|x| *x *= scale);
        let cp = self.config.prefix_len();
        let mut out = Vec::with_capacity(n + cp);
        out.extend_from_slice(&body[n - cp..]);
        out.extend_from_slice(&body);
        out
    }

    /// Strips the prefix and returns the N subcarrier values.
    pub fn receive(&self, samples: &[Complex64]) -> Vec<Complex64> {
        let n = self.config.num_subcarriers;
        let cp = self.config.prefix_len();
        assert_eq!(samples.len(), n + cp, "one OFDM symbol is N + G·N samples");
        let mut body = samples[cp..].to_vec();
        self.forward.process(&mut body);
        let scale = 1.0 / (n as f64).sqrt();
        body.iter_mut().for_each(|x| *x *= scale);
        body
    }

    /// Per-subcarrier response H[k] = Σ h·e^{−j2πk·d/N} of a tapped delay line.
    pub fn frequency_response(&self, taps: &[(usize, Complex64)]) -> Vec<Complex64> {
        let n = self.config.num_subcarriers;
        (0..n)
            .map(|k| {
                taps.iter()
                    .map(|&(d, h)| {
                        let angle = -2.0 * std::f64::consts::PI * ((k * d) % n) as f64 / n as f64;
                        h * Complex64::from_polar(1.0, angle)
                    })
                    .sum()
            })
            .collect()
    }
}
