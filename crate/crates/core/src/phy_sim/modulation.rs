//! Gray-mapped unit-energy constellations and hard-decision demapping.
//!
//! Mapping table (bit words are MSB first):
//!
//! | scheme | bits | in-phase axis     | quadrature axis   |
//! |--------|------|-------------------|-------------------|
//! | BPSK   | 1    | b0                | -                 |
//! | QPSK   | 2    | b0                | b1                |
//! | 16-QAM | 4    | b0 b1             | b2 b3             |
//! | 64-QAM | 6    | b0 b1 b2          | b3 b4 b5          |
//!
//! On each axis the PAM levels are listed from most positive to most
//! negative, `L-1, L-3, …, -(L-1)`, and level `i` carries the Gray word
//! `i ^ (i >> 1)`. The leading bit of each axis is therefore the sign
//! (0 → positive), so BPSK maps 0 → +1 and QPSK maps 00 → (1 + j)/√2.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Modulation {
    Bpsk,
    Qpsk,
    Qam16,
    Qam64,
}

impl Modulation {
    pub const ALL: [Modulation; 4] = [Modulation::Bpsk, Modulation::Qpsk, Modulation::Qam16, Modulation::Qam64];

    pub fn bits_per_symbol(self) -> usize {
        match self {
            Modulation::Bpsk => 1,
            Modulation::Qpsk => 2,
            Modulation::Qam16 => 4,
            Modulation::Qam64 => 6,
        }
    }

    /// Number of constellation points.
    pub fn order(self) -> usize {
        1 << self.bits_per_symbol()
    }

    pub fn name(self) -> &'static str {
        match self {
            Modulation::Bpsk => "bpsk",
            Modulation::Qpsk => "qpsk",
            Modulation::Qam16 => "qam16",
            Modulation::Qam64 => "qam64",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().replace('-', "").as_str() {
            "bpsk" => Some(Modulation::Bpsk),
            "qpsk" | "4qam" | "qam4" => Some(Modulation::Qpsk),
            "16qam" | "qam16" => Some(Modulation::Qam16),
            "64qam" | "qam64" => Some(Modulation::Qam64),
            _ => None,
        }
    }

    fn bits_per_axis(self) -> usize {
        match self {
            Modulation::Bpsk => 1,
            m => m.bits_per_symbol() / 2,
        }
    }

    fn levels_per_axis(self) -> usize {
        1 << self.bits_per_axis()
    }

    /// Amplitude of a unit PAM step so that mean symbol energy is 1.
    fn scale(self) -> f64 {
        match self {
            Modulation::Bpsk => 1.0,
            Modulation::Qpsk => std::f64::consts::FRAC_1_SQRT_2,
            Modulation::Qam16 => 1.0 / 10f64.sqrt(),
            Modulation::Qam64 => 1.0 / 42f64.sqrt(),
        }
    }

    /// Half the minimum distance between constellation points.
    pub fn half_min_distance(self) -> f64 {
        self.scale()
    }

    /// Constellation point carrying `label` (bit word, MSB first).
    pub fn point(self, label: u32) -> Complex64 {
        let per_axis = self.bits_per_axis();
        let mask = (1u32 << per_axis) - 1;
        match self {
            Modulation::Bpsk => Complex64::new(self.axis_level(label & 1), 0.0),
            _ => Complex64::new(
                self.axis_level((label >> per_axis) & mask),
                self.axis_level(label & mask),
            ),
        }
    }

    fn axis_level(self, gray_word: u32) -> f64 {
        let index = gray_decode(gray_word);
        let l = self.levels_per_axis() as f64;
        (l - 1.0 - 2.0 * index as f64) * self.scale()
    }

    fn axis_decide(self, x: f64) -> u32 {
        let l = self.levels_per_axis();
        let index = (((l as f64 - 1.0) - x / self.scale()) / 2.0).round();
        let index = index.clamp(0.0, (l - 1) as f64) as u32;
        index ^ (index >> 1)
    }

    /// Label of the nearest constellation point.
    pub fn decide(self, y: Complex64) -> u32 {
        match self {
            Modulation::Bpsk => self.axis_decide(y.re),
            _ => (self.axis_decide(y.re) << self.bits_per_axis()) | self.axis_decide(y.im),
        }
    }

    /// Every (label, point) pair.
    pub fn constellation(self) -> Vec<(u32, Complex64)> {
        (0..self.order() as u32).map(|l| (l, self.point(l))).collect()
    }
}

impl fmt::Display for Modulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Modulation::Bpsk => "BPSK",
            Modulation::Qpsk => "QPSK",
            Modulation::Qam16 => "16-QAM",
            Modulation::Qam64 => "64-QAM",
        })
    }
}

fn gray_decode(mut g: u32) -> u32 {
    let mut b = g;
    while g > 0 {
        g >>= 1;
        b ^= g;
    }
    b
}

pub fn modulate(bits: &[bool], scheme: Modulation) -> Result<Vec<Complex64>> {
    let k = scheme.bits_per_symbol();
    if !bits.len().is_multiple_of(k) {
        return Err(Error::domain(
            "modulate",
            format!("{} bits is not a multiple of {k} bits per {scheme} symbol", bits.len()),
        ));
    }
    Ok(bits
        .chunks_exact(k)
        .map(|word| {
            let label = word.iter().fold(0u32, |acc, &b| (acc << 1) | u32::from(b));
            scheme.point(label)
        })
        .collect())
}

/// Minimum-distance hard decision, Gray demapped.
pub fn demodulate(symbols: &[Complex64], scheme: Modulation) -> Vec<bool> {
    let k = scheme.bits_per_symbol();
    let mut bits = Vec::with_capacity(symbols.len() * k);
    for &s in symbols {
        let label = scheme.decide(s);
        bits.extend((0..k).rev().map(|i| (label >> i) & 1 == 1));
    }
    bits
}
