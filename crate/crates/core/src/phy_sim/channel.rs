//! AWGN, flat Rayleigh/Ricean and SUI tap-delay-line channels.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::modulation::Modulation;
use crate::error::{Error, Result};

/// Sample rate used to turn SUI tap delays (µs) into whole samples.
/// At 3.2 MHz the longest SUI-6 delay is 64 samples, the cyclic prefix of
/// a 256-point OFDM symbol at G = 1/4.
pub const SUI_DEFAULT_SAMPLE_RATE_HZ: f64 = 3.2e6;

/// Delays (µs), relative powers (dB) and K-factors of the three SUI taps,
/// omnidirectional antenna, 90% cell coverage.
const SUI_TABLE: [([f64; 3], [f64; 3], [f64; 3]); 6] = [
    ([0.0, 0.4, 0.9], [0.0, -15.0, -20.0], [4.0, 0.0, 0.0]),
    ([0.0, 0.4, 1.1], [0.0, -12.0, -15.0], [2.0, 0.0, 0.0]),
    ([0.0, 0.4, 0.9], [0.0, -5.0, -10.0], [1.0, 0.0, 0.0]),
    ([0.0, 1.5, 4.0], [0.0, -4.0, -8.0], [0.0, 0.0, 0.0]),
    ([0.0, 4.0, 10.0], [0.0, -5.0, -10.0], [0.0, 0.0, 0.0]),
    ([0.0, 14.0, 20.0], [0.0, -10.0, -14.0], [0.0, 0.0, 0.0]),
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TapSpec {
    pub delay_samples: usize,
    /// Linear mean power; the taps of a profile sum to 1.
    pub power: f64,
    pub k_factor: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiProfile {
    index: u8,
    taps: [TapSpec; 3],
}

impl SuiProfile {
    pub fn standard(index: u8, sample_rate_hz: f64) -> Result<Self> {
        if !(1..=6).contains(&index) {
            return Err(Error::domain(
                "SuiProfile",
                format!("SUI index must be 1..=6, got {index}"),
            ));
        }
        if !(sample_rate_hz > 0.0) {
            return Err(Error::domain("SuiProfile", "sample rate must be positive"));
        }
        let (delays_us, powers_db, ks) = SUI_TABLE[usize::from(index) - 1];
        let linear: Vec<f64> = powers_db.iter().map(|&p| crate::rf_math::from_db(p)).collect();
        let total: f64 = linear.iter().sum();
        let taps = std::array::from_fn(|i| TapSpec {
            delay_samples: (delays_us[i] * 1e-6 * sample_rate_hz).round() as usize,
            power: linear[i] / total,
            k_factor: ks[i],
        });
        Ok(Self { index, taps })
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    pub fn taps(&self) -> &[TapSpec; 3] {
        &self.taps
    }

    pub fn max_delay_samples(&self) -> usize {
        self.taps.iter().map(|t| t.delay_samples).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FadingChannel {
    Awgn,
    Rayleigh,
    Ricean { k_factor: f64 },
    Sui(SuiProfile),
}

impl FadingChannel {
    pub fn sui(index: u8) -> Result<Self> {
        Ok(FadingChannel::Sui(SuiProfile::standard(
            index,
            SUI_DEFAULT_SAMPLE_RATE_HZ,
        )?))
    }

    pub fn ricean(k_factor: f64) -> Result<Self> {
        if !(k_factor >= 0.0) {
            return Err(Error::domain(
                "FadingChannel",
                format!("K must be >= 0, got {k_factor}"),
            ));
        }
        Ok(FadingChannel::Ricean { k_factor })
    }

    pub fn label(&self) -> String {
        match self {
            FadingChannel::Awgn => "awgn".into(),
            FadingChannel::Rayleigh => "rayleigh".into(),
            FadingChannel::Ricean { k_factor } => format!("ricean-k{k_factor}"),
            FadingChannel::Sui(p) => format!("sui{}", p.index),
        }
    }
}

/// Circularly-symmetric complex Gaussian with E|z|² = `variance`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Complex64 {
    let s = (variance / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re * s, im * s)
}

/// Unit-mean-power fade with a fixed zero-phase specular part:
/// h = √(K/(K+1)) + √(1/(K+1))·CN(0, 1).
pub fn ricean_fade<R: Rng + ?Sized>(rng: &mut R, k_factor: f64) -> Complex64 {
    let los = (k_factor / (k_factor + 1.0)).sqrt();
    Complex64::new(los, 0.0) + complex_gaussian(rng, 1.0 / (k_factor + 1.0))
}

/// One realization of a channel impulse response as (delay, gain) taps.
/// Flat channels yield a single tap at delay 0.
pub fn draw_taps<R: Rng + ?Sized>(channel: &FadingChannel, rng: &mut R) -> Vec<(usize, Complex64)> {
    match channel {
        FadingChannel::Awgn => vec![(0, Complex64::new(1.0, 0.0))],
        FadingChannel::Rayleigh => vec![(0, ricean_fade(rng, 0.0))],
        FadingChannel::Ricean { k_factor } => vec![(0, ricean_fade(rng, *k_factor))],
        FadingChannel::Sui(profile) => profile
            .taps
            .iter()
            .map(|t| (t.delay_samples, ricean_fade(rng, t.k_factor) * t.power.sqrt()))
            .collect(),
    }
}

/// Linear convolution truncated to the input length (zero initial state).
pub fn convolve(samples: &[Complex64], taps: &[(usize, Complex64)]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); samples.len()];
    for &(delay, gain) in taps {
        for (o, s) in out.iter_mut().skip(delay).zip(samples) {
            *o += gain * s;
        }
    }
    out
}

/// Complex noise variance N0 for unit symbol energy at the given Eb/N0.
pub fn noise_variance(scheme: Modulation, ebn0_db: f64) -> f64 {
    1.0 / (scheme.bits_per_symbol() as f64 * crate::rf_math::from_db(ebn0_db))
}

pub fn add_awgn<R: Rng + ?Sized>(samples: &mut [Complex64], variance: f64, rng: &mut R) {
    for s in samples {
        *s += complex_gaussian(rng, variance);
    }
}

/// Received samples plus the per-symbol gains a one-tap equalizer divides by.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelOutput {
    pub received: Vec<Complex64>,
    pub gains: Vec<Complex64>,
    /// Impulse response used for this block; empty for per-symbol fading.
    pub taps: Vec<(usize, Complex64)>,
}

/// Passes a single-carrier block through `channel` and adds noise at
/// `ebn0_db` (`None` disables noise).
///
/// Flat Rayleigh/Ricean channels draw an independent fade per symbol. SUI
/// channels draw one tap realization for the block; the reported gain is the
/// delay-0 tap, so the later taps act as uncompensated ISI.
pub fn apply_channel<R: Rng + ?Sized>(
    symbols: &[Complex64],
    channel: &FadingChannel,
    ebn0_db: Option<f64>,
    scheme: Modulation,
    rng: &mut R,
) -> ChannelOutput {
    let (mut received, gains, taps) = match channel {
        FadingChannel::Awgn => (
            symbols.to_vec(),
            vec![Complex64::new(1.0, 0.0); symbols.len()],
            Vec::new(),
        ),
        FadingChannel::Rayleigh | FadingChannel::Ricean { .. } => {
            let k = match channel {
                FadingChannel::Ricean { k_factor } => *k_factor,
                _ => 0.0,
            };
            let gains: Vec<Complex64> = symbols.iter().map(|_| ricean_fade(rng, k)).collect();
            let received = symbols.iter().zip(&gains).map(|(s, h)| s * h).collect();
            (received, gains, Vec::new())
        }
        FadingChannel::Sui(_) => {
            let taps = draw_taps(channel, rng);
            let main = taps.iter().find(|t| t.0 == 0).map_or(Complex64::new(0.0, 0.0), |t| t.1);
            (convolve(symbols, &taps), vec![main; symbols.len()], taps)
        }
    };
    if let Some(db) = ebn0_db {
        add_awgn(&mut received, noise_variance(scheme, db), rng);
    }
    ChannelOutput { received, gains, taps }
}
