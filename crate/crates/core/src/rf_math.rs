//! Numeric primitives shared by the link-budget, BER and coverage code.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// A carrier frequency together with its wavelength and wavenumber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RfCarrier {
    frequency_hz: f64,
    wavelength_m: f64,
    wavenumber_per_m: f64,
}

impl RfCarrier {
    pub fn new(frequency_hz: f64) -> Result<Self> {
        let wavelength_m = wavelength_m(frequency_hz)?;
        Ok(Self {
            frequency_hz,
            wavelength_m,
            wavenumber_per_m: 2.0 * PI / wavelength_m,
        })
    }

    pub fn from_ghz(frequency_ghz: f64) -> Result<Self> {
        Self::new(frequency_ghz * 1e9)
    }

    pub fn frequency_hz(&self) -> f64 {
        self.frequency_hz
    }

    pub fn wavelength_m(&self) -> f64 {
        self.wavelength_m
    }

    /// k = 2π/λ, rad/m.
    pub fn wavenumber_per_m(&self) -> f64 {
        self.wavenumber_per_m
    }
}

/// Power ratio to decibels.
pub fn to_db(ratio: f64) -> Result<f64> {
    if !(ratio > 0.0) || !ratio.is_finite() {
        return Err(Error::domain(
            "to_db",
            format!("ratio must be positive and finite, got {ratio}"),
        ));
    }
    Ok(10.0 * ratio.log10())
}

/// Decibels to power ratio.
pub fn from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn wavelength_m(frequency_hz: f64) -> Result<f64> {
    if !(frequency_hz > 0.0) || !frequency_hz.is_finite() {
        return Err(Error::domain(
            "wavelength_m",
            format!("frequency must be positive and finite, got {frequency_hz}"),
        ));
    }
    Ok(SPEED_OF_LIGHT / frequency_hz)
}

/// Gaussian tail probability, Q(x) = ½·erfc(x/√2).
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / SQRT_2)
}

/// Exact binomial coefficient C(n, k).
///
/// Uses the multiplicative form with an intermediate `u128`, which cannot
/// overflow for any `n <= 64`.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Err(Error::domain("binomial", format!("k = {k} exceeds n = {n}")));
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    u64::try_from(acc).map_err(|_| Error::domain("binomial", format!("C({n}, {k}) overflows u64")))
}
