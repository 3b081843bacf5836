//! Seeded, chunked Monte Carlo BER estimation.
//!
//! The bit budget is cut into fixed-size chunks. Chunk `i` draws all of its
//! randomness from ChaCha8 seeded with the run seed and switched to stream
//! `i`, so a chunk's outcome does not depend on which worker runs it or in
//! what order. Chunks are evaluated a wave at a time and folded strictly in
//! index order; the stopping rule is checked after each chunk of the fold,
//! which makes the estimate independent of the worker count.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::channel::{add_awgn, apply_channel, convolve, draw_taps, noise_variance, FadingChannel};
use super::modulation::{demodulate, modulate, Modulation};
use super::ofdm::{OfdmConfig, OfdmModem};
use crate::error::{Error, Result};

/// Symbols per chunk on a single carrier; OFDM chunks hold the same number
/// of subcarrier symbols rounded down to whole OFDM symbols.
const CHUNK_SYMBOLS: usize = 16_384;
/// Chunks evaluated concurrently before the in-order fold.
const WAVE_CHUNKS: usize = 16;
/// Symbols sharing one SUI tap realization on a single carrier.
const SINGLE_CARRIER_FRAME: usize = 64;

pub const DEFAULT_MIN_BIT_ERRORS: u64 = 100;
pub const DEFAULT_MAX_BITS: u64 = 10_000_000;

/// Generator for chunk `chunk` of a run seeded with `seed`.
pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub seed: u64,
    pub min_bit_errors: u64,
    pub max_bits: u64,
    /// Mean Eb/N0 in dB; `+inf` disables noise.
    pub ebn0_db: f64,
    /// Charge the cyclic-prefix energy, 10·log10(1 + G) dB, to Eb/N0.
    pub charge_cyclic_prefix: bool,
    /// Dedicated thread count; `None` uses the global pool.
    pub workers: Option<usize>,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            min_bit_errors: DEFAULT_MIN_BIT_ERRORS,
            max_bits: DEFAULT_MAX_BITS,
            ebn0_db: 0.0,
            charge_cyclic_prefix: false,
            workers: None,
        }
    }
}

impl SimConfig {
    pub fn at(ebn0_db: f64) -> Self {
        Self {
            ebn0_db,
            ..Self::default()
        }
    }

    pub fn validate(&self, scheme: Modulation) -> Result<()> {
        const OP: &str = "simulate_ber";
        if self.min_bit_errors < 1 {
            return Err(Error::domain(OP, "min_bit_errors must be >= 1"));
        }
        if self.max_bits < scheme.bits_per_symbol() as u64 {
            return Err(Error::domain(
                OP,
                format!("max_bits must cover at least one {scheme} symbol"),
            ));
        }
        if self.ebn0_db.is_nan() || self.ebn0_db == f64::NEG_INFINITY {
            return Err(Error::domain(OP, "ebn0_db must be a number"));
        }
        if self.workers == Some(0) {
            return Err(Error::domain(OP, "workers must be >= 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BerEstimate {
    pub bits_simulated: u64,
    pub bit_errors: u64,
    pub ber: f64,
    /// 1.96·√(ber(1 − ber)/bits).
    pub ci95_halfwidth: f64,
    /// The bit budget ran out before `min_bit_errors` errors were seen.
    pub low_confidence: bool,
}

impl BerEstimate {
    pub fn from_counts(bits_simulated: u64, bit_errors: u64, min_bit_errors: u64) -> Self {
        let ber = if bits_simulated == 0 {
            0.0
        } else {
            bit_errors as f64 / bits_simulated as f64
        };
        let ci95_halfwidth = if bits_simulated == 0 {
            0.0
        } else {
            1.96 * (ber * (1.0 - ber) / bits_simulated as f64).sqrt()
        };
        Self {
            bits_simulated,
            bit_errors,
            ber,
            ci95_halfwidth,
            low_confidence: bit_errors < min_bit_errors,
        }
    }

    /// Binomial standard error, ci95_halfwidth / 1.96.
    pub fn std_error(&self) -> f64 {
        self.ci95_halfwidth / 1.96
    }
}

struct Plan<'a> {
    scheme: Modulation,
    channel: &'a FadingChannel,
    modem: Option<OfdmModem>,
    noise_variance: Option<f64>,
    /// Units are symbols on a single carrier, OFDM symbols otherwise.
    units_per_chunk: usize,
    total_units: u64,
    seed: u64,
}

impl Plan<'_> {
    fn unit_bits(&self) -> u64 {
        let n = self.modem.as_ref().map_or(1, |m| m.config().num_subcarriers());
        (n * self.scheme.bits_per_symbol()) as u64
    }

    fn num_chunks(&self) -> u64 {
        self.total_units.div_ceil(self.units_per_chunk as u64)
    }

    fn units_in(&self, chunk: u64) -> usize {
        let start = chunk * self.units_per_chunk as u64;
        (self.total_units - start).min(self.units_per_chunk as u64) as usize
    }

    /// (bits, errors) for one chunk.
    fn run_chunk(&self, chunk: u64) -> (u64, u64) {
        let mut rng = chunk_rng(self.seed, chunk);
        let units = self.units_in(chunk);
        match &self.modem {
            None => self.run_single_carrier(units, &mut rng),
            Some(modem) => self.run_ofdm(modem, units, &mut rng),
        }
    }

    fn run_single_carrier(&self, symbols: usize, rng: &mut ChaCha8Rng) -> (u64, u64) {
        let k = self.scheme.bits_per_symbol();
        let bits: Vec<bool> = (0..symbols * k).map(|_| rng.random()).collect();
        let mut errors = 0u64;
        for frame in bits.chunks(SINGLE_CARRIER_FRAME * k) {
            let tx = modulate(frame, self.scheme).expect("frame is a whole number of symbols");
            let out = apply_channel(&tx, self.channel, None, self.scheme, rng);
            let mut rx = out.received;
            if let Some(var) = self.noise_variance {
                add_awgn(&mut rx, var, rng);
            }
            let equalized: Vec<Complex64> = rx.iter().zip(&out.gains).map(|(y, h)| y / h).collect();
            errors += count_errors(frame, &demodulate(&equalized, self.scheme));
        }
        (bits.len() as u64, errors)
    }

    fn run_ofdm(&self, modem: &OfdmModem, ofdm_symbols: usize, rng: &mut ChaCha8Rng) -> (u64, u64) {
        let n = modem.config().num_subcarriers();
        let k = self.scheme.bits_per_symbol();
        let mut errors = 0u64;
        let mut bits = vec![false; n * k];
        for _ in 0..ofdm_symbols {
            bits.iter_mut().for_each(|b| *b = rng.random());
            let subcarriers = modulate(&bits, self.scheme).expect("N·k bits");
            let taps = draw_taps(self.channel, rng);
            let mut samples = convolve(&modem.transmit(&subcarriers), &taps);
            if let Some(var) = self.noise_variance {
                add_awgn(&mut samples, var, rng);
            }
            let response = modem.frequency_response(&taps);
            let equalized: Vec<Complex64> = modem
                .receive(&samples)
                .iter()
                .zip(&response)
                .map(|(y, h)| y / h)
                .collect();
            errors += count_errors(&bits, &demodulate(&equalized, self.scheme));
        }
        ((ofdm_symbols * n * k) as u64, errors)
    }
}

fn count_errors(sent: &[bool], received: &[bool]) -> u64 {
    sent.iter().zip(received).filter(|(a, b)| a != b).count() as u64
}

/// Monte Carlo BER of `scheme` over `channel`, optionally OFDM-framed.
///
/// Stops after the first chunk (in index order) that brings the error count
/// to `min_bit_errors`, or when `max_bits` is exhausted. With OFDM the
/// budget is rounded up to whole OFDM symbols.
pub fn simulate_ber(
    scheme: Modulation,
    channel: &FadingChannel,
    sim: &SimConfig,
    ofdm: Option<OfdmConfig>,
) -> Result<BerEstimate> {
    sim.validate(scheme)?;
    let modem = ofdm.map(OfdmModem::new);
    let mut ebn0_db = sim.ebn0_db;
    if let (Some(cfg), true) = (ofdm, sim.charge_cyclic_prefix) {
        ebn0_db -= 10.0 * (1.0 + cfg.cyclic_prefix().ratio()).log10();
    }
    let noise = (ebn0_db != f64::INFINITY).then(|| noise_variance(scheme, ebn0_db));
    let units_per_chunk = match &ofdm {
        None => CHUNK_SYMBOLS,
        Some(cfg) => (CHUNK_SYMBOLS / cfg.num_subcarriers()).max(1),
    };
    let mut plan = Plan {
        scheme,
        channel,
        modem,
        noise_variance: noise,
        units_per_chunk,
        total_units: 0,
        seed: sim.seed,
    };
    plan.total_units = sim.max_bits.div_ceil(plan.unit_bits());

    let run = || fold_chunks(&plan, sim.min_bit_errors);
    let (bits, errors) = match sim.workers {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        },
        None => run(),
    };
    Ok(BerEstimate::from_counts(bits, errors, sim.min_bit_errors))
}

fn fold_chunks(plan: &Plan<'_>, min_bit_errors: u64) -> (u64, u64) {
    let total = plan.num_chunks();
    let (mut bits, mut errors) = (0u64, 0u64);
    let mut next = 0u64;
    while next < total {
        let end = (next + WAVE_CHUNKS as u64).min(total);
        let wave: Vec<(u64, u64)> = (next..end).into_par_iter().map(|c| plan.run_chunk(c)).collect();
        for (b, e) in wave {
            bits += b;
            errors += e;
            if errors >= min_bit_errors {
                return (bits, errors);
            }
        }
        next = end;
    }
    (bits, errors)
}
