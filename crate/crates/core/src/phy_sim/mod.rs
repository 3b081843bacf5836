//! Baseband Monte Carlo modem: constellations, fading channels, OFDM
//! framing and BER estimation.

pub mod channel;
pub mod modulation;
pub mod ofdm;
pub mod sim;

pub use channel::{apply_channel, ChannelOutput, FadingChannel, SuiProfile, TapSpec};
pub use modulation::{demodulate, modulate, Modulation};
pub use ofdm::{CyclicPrefix, OfdmConfig, OfdmModem};
pub use sim::{chunk_rng, simulate_ber, BerEstimate, SimConfig};
