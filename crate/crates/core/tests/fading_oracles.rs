mod oracle;

use mmwave_link::fading_ber::{mrc_diversity_ber, ricean_bfsk_ber, DiversityConfig, RiceanSpec};
use mmwave_link::phy_sim::{simulate_ber, FadingChannel, Modulation, SimConfig};

#[test]
fn bessel_oracle_sanity() {
    // e^{-x}I0(x) at x = 0, 1, 10 (tabulated)
    assert!((oracle::scaled_bessel_i0(0.0) - 1.0).abs() < 1e-15);
    assert!((oracle::scaled_bessel_i0(1.0) - 0.465_759_607_593_640_6).abs() < 1e-12);
    assert!((oracle::scaled_bessel_i0(10.0) - 0.127_833_337_163_194_2).abs() < 1e-12);
}

#[test]
fn ricean_closed_form_matches_quadrature() {
    for k in [0.0, 1.0, 5.0, 10.0] {
        for mean in [1.0, 10.0, 100.0] {
            let closed = ricean_bfsk_ber(&RiceanSpec::new(k, mean).unwrap());
            let numeric = oracle::ricean_bfsk_by_quadrature(k, mean);
            assert!((closed - numeric).abs() < 1e-6, "K={k} γ̄={mean}: {closed} vs {numeric}");
        }
    }
}

#[test]
fn two_branch_square_law_monte_carlo() {
    let trials = 10_000_000u64;
    let errors = oracle::square_law_combining_errors(2, 2.0, trials, 2024);
    let p = mrc_diversity_ber(&DiversityConfig::new(2, 2.0).unwrap());
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    let measured = errors as f64 / trials as f64;
    assert!((measured - p).abs() < 3.0 * sigma, "{measured} vs {p} (σ = {sigma})");
}

#[test]
fn four_branch_square_law_monte_carlo() {
    let trials = 2_000_000u64;
    let errors = oracle::square_law_combining_errors(4, 3.0, trials, 77);
    let p = mrc_diversity_ber(&DiversityConfig::new(4, 3.0).unwrap());
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    let measured = errors as f64 / trials as f64;
    assert!((measured - p).abs() < 3.0 * sigma, "{measured} vs {p}");
}

#[test]
fn simulated_rayleigh_bpsk_matches_closed_form() {
    for db in [0.0, 10.0, 20.0] {
        let sim = SimConfig {
            seed: 5,
            min_bit_errors: 1000,
            ..SimConfig::at(db)
        };
        let est = simulate_ber(Modulation::Bpsk, &FadingChannel::Rayleigh, &sim, None).unwrap();
        let want = oracle::coherent_bpsk_rayleigh(10f64.powf(db / 10.0));
        assert!(
            (est.ber - want).abs() <= 3.0 * est.ci95_halfwidth,
            "{db} dB: {est:?} vs {want}"
        );
    }
}
