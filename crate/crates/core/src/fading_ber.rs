//! Closed-form bit-error probabilities for AWGN and fading channels, and
//! their inverses.

use crate::error::{Error, Result};
use crate::phy_sim::Modulation;
use crate::rf_math::{binomial, q_function};

/// Ricean K-factor and mean SNR per bit, both linear.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiceanSpec {
    k_factor: f64,
    mean_snr_per_bit: f64,
}

impl RiceanSpec {
    pub fn new(k_factor: f64, mean_snr_per_bit: f64) -> Result<Self> {
        if !(k_factor >= 0.0) || !(mean_snr_per_bit >= 0.0) {
            return Err(Error::domain(
                "RiceanSpec",
                format!("K = {k_factor} and mean SNR = {mean_snr_per_bit} must be non-negative"),
            ));
        }
        Ok(Self {
            k_factor,
            mean_snr_per_bit,
        })
    }

    pub fn k_factor(&self) -> f64 {
        self.k_factor
    }

    pub fn mean_snr_per_bit(&self) -> f64 {
        self.mean_snr_per_bit
    }
}

/// L diversity branches with mean SNR γ̄c on each.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiversityConfig {
    branches: u32,
    mean_snr_per_channel: f64,
}

impl DiversityConfig {
    pub fn new(branches: u32, mean_snr_per_channel: f64) -> Result<Self> {
        if branches == 0 {
            return Err(Error::domain("DiversityConfig", "at least one branch is required"));
        }
        // C(2L - 2, L - 1) must stay representable
        if branches > 32 {
            return Err(Error::domain(
                "DiversityConfig",
                format!("{branches} branches exceeds the supported 32"),
            ));
        }
        if !(mean_snr_per_channel >= 0.0) {
            return Err(Error::domain(
                "DiversityConfig",
                format!("mean SNR per channel must be non-negative, got {mean_snr_per_channel}"),
            ));
        }
        Ok(Self {
            branches,
            mean_snr_per_channel,
        })
    }

    pub fn branches(&self) -> u32 {
        self.branches
    }

    pub fn mean_snr_per_channel(&self) -> f64 {
        self.mean_snr_per_channel
    }
}

/// Noncoherent BFSK over Ricean fading:
/// Pb = (1+K)/(2+2K+γ̄) · exp(−Kγ̄/(2+2K+γ̄)).
pub fn ricean_bfsk_ber(spec: &RiceanSpec) -> f64 {
    let k = spec.k_factor;
    let g = spec.mean_snr_per_bit;
    let denom = 2.0 + 2.0 * k + g;
    (1.0 + k) / denom * (-k * g / denom).exp()
}

/// Binary orthogonal signalling with L-branch square-law combining over
/// Rayleigh fading.
pub fn mrc_diversity_ber(config: &DiversityConfig) -> f64 {
    let g = config.mean_snr_per_channel;
    let mu = g / (g + 2.0);
    let p = 0.5 * (1.0 - mu);
    let q = 0.5 * (1.0 + mu);
    let l = u64::from(config.branches);
    let sum: f64 = (0..l)
        .map(|k| {
            let c = binomial(l - 1 + k, k).expect("k <= l - 1 + k") as f64;
            c * q.powi(k as i32)
        })
        .sum();
    p.powi(l as i32) * sum
}

/// Theoretical per-bit BER over AWGN. M-QAM uses the Gray-coded
/// nearest-neighbour approximation.
pub fn awgn_ber(modulation: Modulation, ebn0: f64) -> Result<f64> {
    if !(ebn0 >= 0.0) {
        return Err(Error::domain(
            "awgn_ber",
            format!("Eb/N0 must be non-negative, got {ebn0}"),
        ));
    }
    Ok(match modulation {
        Modulation::Bpsk | Modulation::Qpsk => q_function((2.0 * ebn0).sqrt()),
        Modulation::Qam16 | Modulation::Qam64 => {
            let m = modulation.order() as f64;
            let k = modulation.bits_per_symbol() as f64;
            4.0 / k * (1.0 - 1.0 / m.sqrt()) * q_function((3.0 * k * ebn0 / (m - 1.0)).sqrt())
        }
    })
}

/// Analytic channel whose forward BER formula is inverted by
/// [`required_mean_snr`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnalyticChannel {
    RayleighBfsk,
    RiceanBfsk { k_factor: f64 },
    Mrc { branches: u32 },
    Awgn(Modulation),
}

impl AnalyticChannel {
    pub fn ber(&self, mean_snr: f64) -> Result<f64> {
        match *self {
            AnalyticChannel::RayleighBfsk => Ok(ricean_bfsk_ber(&RiceanSpec::new(0.0, mean_snr)?)),
            AnalyticChannel::RiceanBfsk { k_factor } => Ok(ricean_bfsk_ber(&RiceanSpec::new(k_factor, mean_snr)?)),
            AnalyticChannel::Mrc { branches } => Ok(mrc_diversity_ber(&DiversityConfig::new(branches, mean_snr)?)),
            AnalyticChannel::Awgn(m) => awgn_ber(m, mean_snr),
        }
    }
}

/// Upper end of the SNR search bracket, linear.
pub const SNR_SEARCH_CEILING: f64 = 1e14;
const MAX_BISECTIONS: usize = 200;
const RELATIVE_TOLERANCE: f64 = 1e-9;

/// Smallest mean SNR (linear) whose BER on `channel` does not exceed
/// `target_ber`.
pub fn required_mean_snr(target_ber: f64, channel: AnalyticChannel) -> Result<f64> {
    const OP: &str = "required_mean_snr";
    if !(target_ber > 0.0 && target_ber < 0.5) {
        return Err(Error::domain(
            OP,
            format!("target BER must lie in (0, 0.5), got {target_ber}"),
        ));
    }
    if channel.ber(0.0)? <= target_ber {
        return Ok(0.0);
    }
    let mut hi = SNR_SEARCH_CEILING;
    if channel.ber(hi)? > target_ber {
        return Err(Error::domain(
            OP,
            format!("target BER {target_ber:e} needs more than {SNR_SEARCH_CEILING:e} SNR"),
        ));
    }
    let mut lo = 0.0;
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= RELATIVE_TOLERANCE * hi {
            break;
        }
        // geometric midpoint once both ends are positive; the bracket spans
        // many decades
        let mid = if lo > 0.0 { (lo * hi).sqrt() } else { hi * 1e-6 };
        let mid = if mid <= lo || mid >= hi { 0.5 * (lo + hi) } else { mid };
        if channel.ber(mid)? <= target_ber {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
