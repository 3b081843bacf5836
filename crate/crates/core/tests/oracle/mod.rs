//! Reference computations that share no code path with the library.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

/// e^{−x}·I0(x) from I0(x) = (1/π)∫₀^π e^{x·cosθ} dθ, trapezoid rule on the
/// periodic integrand.
pub fn scaled_bessel_i0(x: f64) -> f64 {
    let n = 512;
    let h = std::f64::consts::PI / n as f64;
    let f = |t: f64| (x * (t.cos() - 1.0)).exp();
    let mut sum = 0.5 * (f(0.0) + f(std::f64::consts::PI));
    for i in 1..n {
        sum += f(i as f64 * h);
    }
    sum * h / std::f64::consts::PI
}

/// Ricean SNR density p(γ; K, γ̄).
pub fn ricean_snr_density(gamma: f64, k: f64, mean: f64) -> f64 {
    let a = (1.0 + k) / mean;
    let x = 2.0 * (k * (1.0 + k) * gamma / mean).sqrt();
    a * (x - k - a * gamma).exp() * scaled_bessel_i0(x)
}

/// ∫₀^∞ ½e^{−γ/2}·p(γ) dγ by composite Simpson on [0, 120].
pub fn ricean_bfsk_by_quadrature(k: f64, mean: f64) -> f64 {
    let upper = 120.0;
    let n = 24_000;
    let h = upper / n as f64;
    let f = |g: f64| 0.5 * (-g / 2.0).exp() * ricean_snr_density(g, k, mean);
    let mut sum = f(0.0) + f(upper);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(i as f64 * h);
    }
    sum * h / 3.0
}

/// Binary orthogonal signalling with L-branch square-law combining over
/// independent Rayleigh branches of mean SNR `mean_snr`. Returns the error
/// count over `trials`.
pub fn square_law_combining_errors(branches: usize, mean_snr: f64, trials: u64, seed: u64) -> u64 {
    let batches = 1000u64;
    let per_batch = trials / batches;
    assert_eq!(per_batch * batches, trials);
    let cn = |rng: &mut ChaCha8Rng, var: f64| {
        let s = (var / 2.0).sqrt();
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        (re * s, im * s)
    };
    (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let mut errors = 0u64;
            for _ in 0..per_batch {
                // signal on tone 1 with unit energy, noise N0 = 1/γ̄ on both
                let n0 = 1.0 / mean_snr;
                let (mut e1, mut e2) = (0.0, 0.0);
                for _ in 0..branches {
                    let (hr, hi) = cn(&mut rng, 1.0);
                    let (n1r, n1i) = cn(&mut rng, n0);
                    let (n2r, n2i) = cn(&mut rng, n0);
                    e1 += (hr + n1r).powi(2) + (hi + n1i).powi(2);
                    e2 += n2r * n2r + n2i * n2i;
                }
                if e2 > e1 {
                    errors += 1;
                }
            }
            errors
        })
        .sum()
}

/// ½(1 − √(γ̄/(1+γ̄))), coherent BPSK over Rayleigh.
pub fn coherent_bpsk_rayleigh(mean_snr: f64) -> f64 {
    0.5 * (1.0 - (mean_snr / (1.0 + mean_snr)).sqrt())
}
