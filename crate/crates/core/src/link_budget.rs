//! Closed-form link-budget chain.
//!
//! Distances are in meters and powers in dBm/dB unless a type says
//! otherwise. The Barnett-Vignant inputs are the exception: they take the
//! path length in km and the carrier in GHz, which is how the fade-margin
//! formula is conventionally evaluated.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rf_math::{from_db, to_db, RfCarrier};

/// Default specific attenuation from oxygen absorption near 60 GHz, dB/km.
pub const OXYGEN_ATTENUATION_60GHZ_DB_PER_KM: f64 = 15.0;

/// Barnett-Vignant terrain factor A.
pub mod terrain {
    pub const SMOOTH: f64 = 4.0;
    pub const AVERAGE: f64 = 1.0;
    pub const ROUGH: f64 = 0.25;
}

/// Barnett-Vignant climate factor B.
pub mod climate {
    pub const HOT_HUMID: f64 = 0.5;
    pub const TEMPERATE: f64 = 0.25;
    pub const DRY: f64 = 0.125;
}

/// Tabulated relative directive gain over (θ, φ), bilinearly interpolated.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternGrid {
    theta_rad: Vec<f64>,
    phi_rad: Vec<f64>,
    /// Row-major, one row per θ sample.
    values: Vec<f64>,
}

impl PatternGrid {
    /// The first θ sample must be 0 (boresight) and every value there 1.
    pub fn new(theta_rad: Vec<f64>, phi_rad: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        const OP: &str = "PatternGrid::new";
        if theta_rad.is_empty() || phi_rad.is_empty() {
            return Err(Error::domain(OP, "grid axes must be non-empty"));
        }
        if values.len() != theta_rad.len() * phi_rad.len() {
            return Err(Error::domain(OP, "value count does not match grid shape"));
        }
        if !is_increasing(&theta_rad) || !is_increasing(&phi_rad) {
            return Err(Error::domain(OP, "grid axes must be strictly increasing"));
        }
        if theta_rad[0] != 0.0 {
            return Err(Error::domain(OP, "θ axis must start at boresight (0 rad)"));
        }
        if values.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::domain(OP, "pattern values must lie in [0, 1]"));
        }
        if values[..phi_rad.len()].iter().any(|&v| v != 1.0) {
            return Err(Error::domain(OP, "pattern must equal 1 at boresight"));
        }
        Ok(Self {
            theta_rad,
            phi_rad,
            values,
        })
    }

    pub fn gain(&self, theta: f64, phi: f64) -> Result<f64> {
        let (i, ti) = bracket(&self.theta_rad, theta)
            .ok_or_else(|| Error::domain("PatternGrid::gain", format!("θ = {theta} outside table")))?;
        let (j, tj) = bracket(&self.phi_rad, phi)
            .ok_or_else(|| Error::domain("PatternGrid::gain", format!("φ = {phi} outside table")))?;
        let cols = self.phi_rad.len();
        let at = |r: usize, c: usize| self.values[r.min(self.theta_rad.len() - 1) * cols + c.min(cols - 1)];
        let top = at(i, j) * (1.0 - tj) + at(i, j + 1) * tj;
        let bottom = at(i + 1, j) * (1.0 - tj) + at(i + 1, j + 1) * tj;
        Ok(top * (1.0 - ti) + bottom * ti)
    }
}

fn is_increasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[0] < w[1]) && xs.iter().all(|x| x.is_finite())
}

/// Index of the lower grid point and the fractional offset towards the next.
fn bracket(axis: &[f64], x: f64) -> Option<(usize, f64)> {
    let last = *axis.last()?;
    if !(x >= axis[0] && x <= last) {
        return None;
    }
    if axis.len() == 1 {
        return Some((0, 0.0));
    }
    let i = axis.partition_point(|&a| a <= x).saturating_sub(1).min(axis.len() - 2);
    let t = (x - axis[i]) / (axis[i + 1] - axis[i]);
    Some((i, t))
}

#[derive(Debug, Clone, PartialEq, Default)]
pub enum AntennaPattern {
    #[default]
    Isotropic,
    Tabulated(PatternGrid),
}

impl AntennaPattern {
    pub fn gain(&self, theta: f64, phi: f64) -> Result<f64> {
        match self {
            AntennaPattern::Isotropic => Ok(1.0),
            AntennaPattern::Tabulated(grid) => grid.gain(theta, phi),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct AntennaSpec {
    pub boresight_gain_dbi: f64,
    pub pattern: AntennaPattern,
}

impl AntennaSpec {
    pub fn isotropic(boresight_gain_dbi: f64) -> Self {
        Self {
            boresight_gain_dbi,
            pattern: AntennaPattern::Isotropic,
        }
    }
}

/// One end of the link. `tx_power_dbm` is ignored on the receive side.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LinkEndpoint {
    pub tx_power_dbm: f64,
    pub antenna: AntennaSpec,
    pub cable_loss_db: f64,
    /// (θ, φ) at which the pattern is evaluated, rad.
    pub pointing: (f64, f64),
}

impl LinkEndpoint {
    pub fn transmitter(tx_power_dbm: f64, gain_dbi: f64, cable_loss_db: f64) -> Self {
        Self {
            tx_power_dbm,
            antenna: AntennaSpec::isotropic(gain_dbi),
            cable_loss_db,
            pointing: (0.0, 0.0),
        }
    }

    pub fn receiver(gain_dbi: f64, cable_loss_db: f64) -> Self {
        Self::transmitter(0.0, gain_dbi, cable_loss_db)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cable_loss_db >= 0.0) {
            return Err(Error::domain(
                "LinkEndpoint",
                format!("cable_loss_db must be >= 0, got {}", self.cable_loss_db),
            ));
        }
        Ok(())
    }

    pub fn pattern_gain(&self) -> Result<f64> {
        self.antenna.pattern.gain(self.pointing.0, self.pointing.1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathEnvironment {
    pub distance_m: f64,
    /// α, dB/km.
    pub atmospheric_attenuation_db_per_km: f64,
    /// A_T, dB.
    pub misc_loss_tx_db: f64,
    /// A_R, dB.
    pub misc_loss_rx_db: f64,
    /// Polarization match factor m in [0, 1].
    pub polarization_match: f64,
    /// Return -∞ dB for m = 0 instead of an error.
    pub allow_total_mismatch: bool,
}

impl PathEnvironment {
    pub fn free_space(distance_m: f64) -> Self {
        Self {
            distance_m,
            atmospheric_attenuation_db_per_km: 0.0,
            misc_loss_tx_db: 0.0,
            misc_loss_rx_db: 0.0,
            polarization_match: 1.0,
            allow_total_mismatch: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        const OP: &str = "PathEnvironment";
        if !(self.distance_m > 0.0) {
            return Err(Error::domain(
                OP,
                format!("distance_m must be > 0, got {}", self.distance_m),
            ));
        }
        if !(0.0..=1.0).contains(&self.polarization_match) {
            return Err(Error::domain(
                OP,
                format!("polarization_match must lie in [0, 1], got {}", self.polarization_match),
            ));
        }
        for (name, v) in [
            (
                "atmospheric_attenuation_db_per_km",
                self.atmospheric_attenuation_db_per_km,
            ),
            ("misc_loss_tx_db", self.misc_loss_tx_db),
            ("misc_loss_rx_db", self.misc_loss_rx_db),
        ] {
            if !(v >= 0.0) {
                return Err(Error::domain(OP, format!("{name} must be >= 0, got {v}")));
            }
        }
        Ok(())
    }

    /// Losses on top of free-space spreading, dB: α·d + A_T + A_R − 10·log10 m.
    pub fn excess_loss_db(&self) -> Result<f64> {
        self.validate()?;
        let mismatch_db = if self.polarization_match == 0.0 {
            if self.allow_total_mismatch {
                return Ok(f64::INFINITY);
            }
            return Err(Error::domain(
                "one_way_received_power_db",
                "polarization_match = 0 is a total polarization mismatch",
            ));
        } else {
            to_db(self.polarization_match)?
        };
        Ok(self.atmospheric_attenuation_db_per_km * self.distance_m / 1000.0
            + self.misc_loss_tx_db
            + self.misc_loss_rx_db
            - mismatch_db)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadeMarginInputs {
    pub distance_km: f64,
    pub terrain_factor: f64,
    pub climate_factor: f64,
    pub frequency_ghz: f64,
    /// Reliability objective R, e.g. 0.99999.
    pub availability: f64,
}

impl FadeMarginInputs {
    pub fn validate(&self) -> Result<()> {
        const OP: &str = "fade_margin_db";
        if !(self.availability > 0.0 && self.availability < 1.0) {
            return Err(Error::domain(
                OP,
                format!("availability must lie in (0, 1), got {}", self.availability),
            ));
        }
        for (name, v) in [
            ("distance_km", self.distance_km),
            ("terrain_factor", self.terrain_factor),
            ("climate_factor", self.climate_factor),
            ("frequency_ghz", self.frequency_ghz),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::domain(OP, format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// Direct and reflected ray lengths plus the four relative directive gains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoRayGeometry {
    pub r1_m: f64,
    pub r2_m: f64,
    pub g_t1: f64,
    pub g_r1: f64,
    pub g_t2: f64,
    pub g_r2: f64,
}

impl TwoRayGeometry {
    pub fn validate(&self) -> Result<()> {
        const OP: &str = "two_ray_power_ratio";
        if !(self.r1_m > 0.0) {
            return Err(Error::domain(OP, format!("r1_m must be > 0, got {}", self.r1_m)));
        }
        if !(self.r2_m >= self.r1_m) {
            return Err(Error::domain(OP, "reflected path r2_m must be >= direct path r1_m"));
        }
        for g in [self.g_t1, self.g_r1, self.g_t2, self.g_r2] {
            if !(0.0..=1.0).contains(&g) {
                return Err(Error::domain(OP, format!("relative gains must lie in [0, 1], got {g}")));
            }
        }
        Ok(())
    }
}

/// f(θ) factor of a log-spiral antenna outline.
#[derive(Debug, Clone, PartialEq)]
pub enum PolarProfile {
    Constant(f64),
    /// Linear interpolation over (θ, f(θ)) samples.
    Tabulated {
        theta_rad: Vec<f64>,
        values: Vec<f64>,
    },
}

impl PolarProfile {
    pub fn eval(&self, theta: f64) -> Result<f64> {
        const OP: &str = "spiral_radius";
        match self {
            PolarProfile::Constant(v) => {
                if !(*v > 0.0) {
                    return Err(Error::domain(OP, "polar profile must be positive"));
                }
                Ok(*v)
            }
            PolarProfile::Tabulated { theta_rad, values } => {
                if theta_rad.len() != values.len() || !is_increasing(theta_rad) {
                    return Err(Error::domain(OP, "malformed polar profile table"));
                }
                if values.iter().any(|&v| !(v > 0.0)) {
                    return Err(Error::domain(OP, "polar profile must be positive"));
                }
                let (i, t) = bracket(theta_rad, theta)
                    .ok_or_else(|| Error::domain(OP, format!("θ = {theta} outside profile domain")))?;
                let next = values[(i + 1).min(values.len() - 1)];
                Ok(values[i] * (1.0 - t) + next * t)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpiralShape {
    pub growth_rate: f64,
    pub phase_offset: f64,
    pub polar_profile: PolarProfile,
}

/// Complete point-to-point scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkScenario {
    pub carrier: RfCarrier,
    pub tx: LinkEndpoint,
    pub rx: LinkEndpoint,
    pub environment: PathEnvironment,
    pub fade_margin: Option<FadeMarginInputs>,
}

fn check_distance(op: &'static str, distance_m: f64) -> Result<()> {
    if !(distance_m > 0.0) || !distance_m.is_finite() {
        return Err(Error::domain(
            op,
            format!("distance must be positive, got {distance_m}"),
        ));
    }
    Ok(())
}

/// Free-space path loss 20·log10(4πD/λ), dB.
pub fn fspl_db(carrier: &RfCarrier, distance_m: f64) -> Result<f64> {
    check_distance("fspl_db", distance_m)?;
    Ok(20.0 * (4.0 * PI * distance_m / carrier.wavelength_m()).log10())
}

pub fn eirp_dbm(tx: &LinkEndpoint) -> f64 {
    tx.tx_power_dbm - tx.cable_loss_db + tx.antenna.boresight_gain_dbi
}

/// EIRP − FSPL + receive gain − receive cable loss, dBm.
pub fn received_signal_level_dbm(
    tx: &LinkEndpoint,
    rx: &LinkEndpoint,
    carrier: &RfCarrier,
    distance_m: f64,
) -> Result<f64> {
    tx.validate()?;
    rx.validate()?;
    let loss = fspl_db(carrier, distance_m)?;
    Ok(eirp_dbm(tx) - loss + rx.antenna.boresight_gain_dbi - rx.cable_loss_db)
}

/// Friis transmission equation in linear units. The result has the unit of
/// `tx_power`.
pub fn friis_received_power(
    tx_power: f64,
    gain_tx: f64,
    gain_rx: f64,
    pattern_tx: f64,
    pattern_rx: f64,
    carrier: &RfCarrier,
    distance_m: f64,
) -> Result<f64> {
    check_distance("friis_received_power", distance_m)?;
    for g in [pattern_tx, pattern_rx] {
        if !(0.0..=1.0).contains(&g) {
            return Err(Error::domain(
                "friis_received_power",
                format!("pattern factors must lie in [0, 1], got {g}"),
            ));
        }
    }
    let lambda = carrier.wavelength_m();
    let spreading = lambda * lambda / (4.0 * PI * distance_m).powi(2);
    // grouped so that swapping the two ends is exact in floating point
    Ok(tx_power * (gain_tx * gain_rx) * (pattern_tx * pattern_rx) * spreading)
}

/// Loss between isotropic antennas, −(20·log10 λ − 20·log10 R − 20·log10 4π).
pub fn basic_transmission_loss_db(carrier: &RfCarrier, distance_m: f64) -> Result<f64> {
    check_distance("basic_transmission_loss_db", distance_m)?;
    Ok(-(20.0 * carrier.wavelength_m().log10() - 20.0 * distance_m.log10() - 20.0 * (4.0 * PI).log10()))
}

/// One-way received power relative to P_T, dB: Friis with antenna patterns,
/// polarization mismatch, terminal losses and atmospheric attenuation.
pub fn one_way_received_power_db(
    tx: &LinkEndpoint,
    rx: &LinkEndpoint,
    env: &PathEnvironment,
    carrier: &RfCarrier,
) -> Result<f64> {
    tx.validate()?;
    rx.validate()?;
    let excess = env.excess_loss_db()?;
    let ratio = friis_received_power(
        1.0,
        from_db(tx.antenna.boresight_gain_dbi),
        from_db(rx.antenna.boresight_gain_dbi),
        tx.pattern_gain()?,
        rx.pattern_gain()?,
        carrier,
        env.distance_m,
    )?;
    if ratio == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(to_db(ratio)? - excess)
}

/// Barnett-Vignant fade margin: 30·log10 D + 10·log10(6ABf) − 10·log10(1 − R) − 70.
pub fn fade_margin_db(inputs: &FadeMarginInputs) -> Result<f64> {
    inputs.validate()?;
    Ok(30.0 * inputs.distance_km.log10()
        + 10.0 * (6.0 * inputs.terrain_factor * inputs.climate_factor * inputs.frequency_ghz).log10()
        - 10.0 * (1.0 - inputs.availability).log10()
        - 70.0)
}

/// P_R/P_T for a direct ray plus one reflected ray.
///
/// Evaluated as the squared magnitude of the two-phasor field sum, which
/// equals the expanded form with the 2·√(…)/(R1·R2)·cos(k(R2 − R1)) cross
/// term and cannot go negative through rounding.
pub fn two_ray_power_ratio(geometry: &TwoRayGeometry, gain_tx: f64, gain_rx: f64, carrier: &RfCarrier) -> Result<f64> {
    geometry.validate()?;
    let direct = (geometry.g_t1 * geometry.g_r1).sqrt() / geometry.r1_m;
    let reflected = (geometry.g_t2 * geometry.g_r2).sqrt() / geometry.r2_m;
    let phase = carrier.wavenumber_per_m() * (geometry.r2_m - geometry.r1_m);
    let field = Complex64::new(direct, 0.0) + Complex64::from_polar(reflected, -phase);
    let scale = (carrier.wavelength_m() / (4.0 * PI)).powi(2) * gain_tx * gain_rx;
    Ok(scale * field.norm_sqr())
}

/// Log-spiral outline r = e^{a(φ + φ0)}·f(θ).
pub fn spiral_radius(shape: &SpiralShape, phi: f64, theta: f64) -> Result<f64> {
    let profile = shape.polar_profile.eval(theta)?;
    Ok((shape.growth_rate * (phi + shape.phase_offset)).exp() * profile)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ghz(f: f64) -> RfCarrier {
        RfCarrier::from_ghz(f).unwrap()
    }

    #[test]
    fn fspl_examples() {
        let c60 = ghz(60.0);
        let l = fspl_db(&c60, 3000.0).unwrap();
        assert!((l - 137.553_233_323_9).abs() < 1e-9);
        assert!((l - 137.50).abs() < 0.1);
        assert!((fspl_db(&c60, 1000.0).unwrap() - 128.010_808_229_6).abs() < 1e-9);
        let unit = c60.wavelength_m() / (4.0 * PI);
        assert!(fspl_db(&c60, unit).unwrap().abs() < 1e-12);
        assert!(fspl_db(&c60, 0.0).is_err());
        assert!(fspl_db(&c60, -1.0).is_err());
    }

    #[test]
    fn fspl_monotone_and_doubling_law() {
        let mut prev = f64::NEG_INFINITY;
        for i in 1..200 {
            let d = i as f64 * 7.5;
            let l = fspl_db(&ghz(60.0), d).unwrap();
            assert!(l > prev);
            prev = l;
            let doubled = fspl_db(&ghz(60.0), 2.0 * d).unwrap();
            assert!((doubled - l - 6.020_599_913).abs() < 1e-6);
        }
        assert!(fspl_db(&ghz(63.0), 100.0).unwrap() > fspl_db(&ghz(57.0), 100.0).unwrap());
    }

    #[test]
    fn eirp_examples() {
        assert_eq!(eirp_dbm(&LinkEndpoint::transmitter(30.0, 0.0, 0.0)), 30.0);
        assert_eq!(eirp_dbm(&LinkEndpoint::transmitter(30.0, 20.0, 2.0)), 48.0);
        assert_eq!(eirp_dbm(&LinkEndpoint::transmitter(0.0, 38.0, 3.0)), 35.0);
    }

    #[test]
    fn rsl_examples() {
        let tx = LinkEndpoint::transmitter(30.0, 20.0, 2.0);
        let rx = LinkEndpoint::receiver(38.0, 2.0);
        let rsl = received_signal_level_dbm(&tx, &rx, &ghz(60.0), 3000.0).unwrap();
        assert!((rsl - (-53.553_233_323_9)).abs() < 1e-9);

        let c = ghz(60.0);
        let tx0 = LinkEndpoint::transmitter(17.0, 0.0, 0.0);
        let rx0 = LinkEndpoint::receiver(0.0, 0.0);
        let rsl = received_signal_level_dbm(&tx0, &rx0, &c, c.wavelength_m() / (4.0 * PI)).unwrap();
        assert!((rsl - 17.0).abs() < 1e-12);

        let tx = LinkEndpoint::transmitter(0.0, 38.0, 3.0);
        let rx = LinkEndpoint::receiver(14.0, 0.0);
        let rsl = received_signal_level_dbm(&tx, &rx, &ghz(63.0), 20.0).unwrap();
        assert!((rsl - (35.0 - 94.455_194_124_2 + 14.0)).abs() < 1e-9);
        assert!((rsl - (-45.45)).abs() < 0.01);

        let bad = LinkEndpoint::receiver(0.0, -1.0);
        assert!(received_signal_level_dbm(&tx, &bad, &c, 10.0).is_err());
        assert!(received_signal_level_dbm(&tx, &rx, &c, 0.0).is_err());
    }

    #[test]
    fn friis_examples() {
        let c = ghz(60.0);
        let unit = c.wavelength_m() / (4.0 * PI);
        let pr = friis_received_power(2.5, 1.0, 1.0, 1.0, 1.0, &c, unit).unwrap();
        assert!((pr - 2.5).abs() < 1e-12);

        // λ = R = 1 m gives −20·log10(4π) ≈ −21.98 dB, printed as −22.
        let c300 = RfCarrier::new(crate::rf_math::SPEED_OF_LIGHT).unwrap();
        let db = to_db(friis_received_power(1.0, 1.0, 1.0, 1.0, 1.0, &c300, 1.0).unwrap()).unwrap();
        assert!((db + 21.984).abs() < 1e-3);
        assert!((db + 22.0).abs() < 0.05);

        let db = to_db(friis_received_power(1.0, 1.0, 1.0, 1.0, 1.0, &c, 3000.0).unwrap()).unwrap();
        assert!((db + fspl_db(&c, 3000.0).unwrap()).abs() < 1e-9);

        assert!(friis_received_power(1.0, 1.0, 1.0, 1.0, 1.0, &c, 0.0).is_err());
        assert!(friis_received_power(1.0, 1.0, 1.0, 1.5, 1.0, &c, 1.0).is_err());
    }

    #[test]
    fn friis_db_consistency_and_reciprocity_grid() {
        for f in [57.0, 60.0, 63.0] {
            for d in [1.0, 13.0, 250.0, 3000.0] {
                for (gt_db, gr_db) in [(0.0, 0.0), (38.0, 14.0), (20.0, 50.0)] {
                    for (pt, pr) in [(1.0, 1.0), (0.5, 0.25), (0.9, 0.1)] {
                        let c = ghz(f);
                        let (gt, gr) = (from_db(gt_db), from_db(gr_db));
                        let lin = friis_received_power(3.0, gt, gr, pt, pr, &c, d).unwrap();
                        let want = gt_db + gr_db + to_db(pt * pr).unwrap() - fspl_db(&c, d).unwrap();
                        assert!((to_db(lin / 3.0).unwrap() - want).abs() < 1e-9);
                        let swapped = friis_received_power(3.0, gr, gt, pr, pt, &c, d).unwrap();
                        assert_eq!(lin, swapped);
                    }
                }
            }
        }
    }

    #[test]
    fn basic_transmission_loss_examples() {
        let c = ghz(60.0);
        let lb = basic_transmission_loss_db(&c, 3000.0).unwrap();
        assert!((lb - fspl_db(&c, 3000.0).unwrap()).abs() < 1e-9);
        assert!(
            basic_transmission_loss_db(&c, c.wavelength_m() / (4.0 * PI))
                .unwrap()
                .abs()
                < 1e-9
        );
        let lb57 = basic_transmission_loss_db(&ghz(57.0), 13.0).unwrap();
        assert!((lb57 - 89.844_147_381_5).abs() < 1e-9);
        assert!(basic_transmission_loss_db(&c, 0.0).is_err());
    }

    #[test]
    fn one_way_examples() {
        let c = ghz(60.0);
        let tx = LinkEndpoint::transmitter(0.0, 0.0, 0.0);
        let rx = LinkEndpoint::receiver(0.0, 0.0);
        let friis = -fspl_db(&c, 1000.0).unwrap();

        let env = PathEnvironment::free_space(1000.0);
        assert!((one_way_received_power_db(&tx, &rx, &env, &c).unwrap() - friis).abs() < 1e-12);

        let env = PathEnvironment {
            atmospheric_attenuation_db_per_km: OXYGEN_ATTENUATION_60GHZ_DB_PER_KM,
            ..PathEnvironment::free_space(1000.0)
        };
        assert!((one_way_received_power_db(&tx, &rx, &env, &c).unwrap() - (friis - 15.0)).abs() < 1e-9);

        let env = PathEnvironment {
            polarization_match: 0.5,
            ..PathEnvironment::free_space(1000.0)
        };
        assert!((one_way_received_power_db(&tx, &rx, &env, &c).unwrap() - (friis - 3.0103)).abs() < 1e-4);

        let env = PathEnvironment {
            misc_loss_tx_db: 1.5,
            misc_loss_rx_db: 2.5,
            ..PathEnvironment::free_space(1000.0)
        };
        assert!((one_way_received_power_db(&tx, &rx, &env, &c).unwrap() - (friis - 4.0)).abs() < 1e-9);
    }

    #[test]
    fn total_polarization_mismatch() {
        let c = ghz(60.0);
        let tx = LinkEndpoint::transmitter(0.0, 0.0, 0.0);
        let rx = LinkEndpoint::receiver(0.0, 0.0);
        let mut env = PathEnvironment {
            polarization_match: 0.0,
            ..PathEnvironment::free_space(100.0)
        };
        assert!(matches!(
            one_way_received_power_db(&tx, &rx, &env, &c),
            Err(Error::Domain { .. })
        ));
        env.allow_total_mismatch = true;
        assert_eq!(
            one_way_received_power_db(&tx, &rx, &env, &c).unwrap(),
            f64::NEG_INFINITY
        );
        env.polarization_match = 1.2;
        assert!(one_way_received_power_db(&tx, &rx, &env, &c).is_err());
    }

    #[test]
    fn tabulated_pattern() {
        let grid = PatternGrid::new(vec![0.0, 0.5, 1.0], vec![0.0, PI], vec![1.0, 1.0, 0.5, 0.3, 0.1, 0.0]).unwrap();
        assert_eq!(grid.gain(0.0, 1.0).unwrap(), 1.0);
        assert!((grid.gain(0.25, 0.0).unwrap() - 0.75).abs() < 1e-12);
        assert!((grid.gain(0.5, PI / 2.0).unwrap() - 0.4).abs() < 1e-12);
        assert!(grid.gain(1.5, 0.0).is_err());

        assert!(PatternGrid::new(vec![0.0], vec![0.0], vec![0.9]).is_err());
        assert!(PatternGrid::new(vec![0.1], vec![0.0], vec![1.0]).is_err());
        assert!(PatternGrid::new(vec![0.0, 1.0], vec![0.0], vec![1.0, 1.2]).is_err());

        let c = ghz(60.0);
        let tx = LinkEndpoint {
            tx_power_dbm: 0.0,
            antenna: AntennaSpec {
                boresight_gain_dbi: 0.0,
                pattern: AntennaPattern::Tabulated(grid),
            },
            cable_loss_db: 0.0,
            pointing: (0.5, 0.0),
        };
        let rx = LinkEndpoint::receiver(0.0, 0.0);
        let env = PathEnvironment::free_space(100.0);
        let got = one_way_received_power_db(&tx, &rx, &env, &c).unwrap();
        assert!((got - (-fspl_db(&c, 100.0).unwrap() - 3.0103)).abs() < 1e-4);
    }

    #[test]
    fn fade_margin_examples() {
        let karachi = FadeMarginInputs {
            distance_km: 30.0,
            terrain_factor: terrain::SMOOTH,
            climate_factor: climate::HOT_HUMID,
            frequency_ghz: 60.0,
            availability: 0.99999,
        };
        let fm = fade_margin_db(&karachi).unwrap();
        assert!((fm - 52.886_962_606).abs() < 1e-6);
        assert!((fm - 53.0).abs() < 0.5);

        let zero = FadeMarginInputs {
            distance_km: 1.0,
            terrain_factor: 1.0,
            climate_factor: 1.0,
            frequency_ghz: 1.0 / 6.0,
            availability: 1.0 - 1e-7,
        };
        assert!(fade_margin_db(&zero).unwrap().abs() < 1e-6);

        let third = FadeMarginInputs {
            distance_km: 10.0,
            terrain_factor: terrain::AVERAGE,
            climate_factor: climate::TEMPERATE,
            frequency_ghz: 60.0,
            availability: 0.999,
        };
        assert!((fade_margin_db(&third).unwrap() - 9.542_425_094).abs() < 1e-6);

        for availability in [1.0, 0.0, 1.5, -0.1] {
            let bad = FadeMarginInputs {
                availability,
                ..karachi
            };
            assert!(fade_margin_db(&bad).is_err());
        }
    }

    #[test]
    fn fade_margin_distance_decade_adds_30_db() {
        for d in [0.5, 3.0, 30.0] {
            let base = FadeMarginInputs {
                distance_km: d,
                terrain_factor: 1.0,
                climate_factor: 0.25,
                frequency_ghz: 60.0,
                availability: 0.9999,
            };
            let far = FadeMarginInputs {
                distance_km: 10.0 * d,
                ..base
            };
            let diff = fade_margin_db(&far).unwrap() - fade_margin_db(&base).unwrap();
            assert!((diff - 30.0).abs() < 1e-9);
        }
    }

    /// Expanded closed form with an explicit cosine cross term.
    fn two_ray_expanded(g: &TwoRayGeometry, gt: f64, gr: f64, c: &RfCarrier) -> f64 {
        let lam = (c.wavelength_m() / (4.0 * PI)).powi(2);
        lam * gt
            * gr
            * (g.g_t1 * g.g_r1 / g.r1_m.powi(2)
                + g.g_t2 * g.g_r2 / g.r2_m.powi(2)
                + 2.0 * (g.g_t1 * g.g_r1 * g.g_t2 * g.g_r2).sqrt() / (g.r1_m * g.r2_m)
                    * (c.wavenumber_per_m() * (g.r2_m - g.r1_m)).cos())
    }

    #[test]
    fn two_ray_examples() {
        let c = ghz(60.0);
        let single = TwoRayGeometry {
            r1_m: 50.0,
            r2_m: 52.0,
            g_t1: 0.8,
            g_r1: 0.9,
            g_t2: 0.0,
            g_r2: 0.0,
        };
        let got = two_ray_power_ratio(&single, 10.0, 20.0, &c).unwrap();
        let friis = friis_received_power(1.0, 10.0, 20.0, 0.8, 0.9, &c, 50.0).unwrap();
        assert!(((got - friis) / friis).abs() < 1e-12);

        let coherent = TwoRayGeometry {
            r1_m: 40.0,
            r2_m: 40.0,
            g_t1: 1.0,
            g_r1: 1.0,
            g_t2: 1.0,
            g_r2: 1.0,
        };
        let got = two_ray_power_ratio(&coherent, 1.0, 1.0, &c).unwrap();
        let friis = friis_received_power(1.0, 1.0, 1.0, 1.0, 1.0, &c, 40.0).unwrap();
        assert!((got / friis - 4.0).abs() < 1e-12);

        // equal amplitudes, half-wavelength path difference
        let r1 = 40.0;
        let r2 = r1 + c.wavelength_m() / 2.0;
        let cancel = TwoRayGeometry {
            r1_m: r1,
            r2_m: r2,
            g_t1: 1.0,
            g_r1: (r1 / r2).powi(2),
            g_t2: 1.0,
            g_r2: 1.0,
        };
        let got = two_ray_power_ratio(&cancel, 1.0, 1.0, &c).unwrap();
        assert!(got / friis < 1e-20);

        let reversed = TwoRayGeometry {
            r1_m: 10.0,
            r2_m: 5.0,
            ..coherent
        };
        assert!(two_ray_power_ratio(&reversed, 1.0, 1.0, &c).is_err());
    }

    #[test]
    fn two_ray_matches_expanded_form_and_stays_in_envelope() {
        let c = ghz(60.0);
        let base = TwoRayGeometry {
            r1_m: 100.0,
            r2_m: 100.0,
            g_t1: 1.0,
            g_r1: 0.9,
            g_t2: 0.6,
            g_r2: 0.7,
        };
        let scale = (c.wavelength_m() / (4.0 * PI)).powi(2) * 5.0 * 3.0;
        for i in 0..2000 {
            let g = TwoRayGeometry {
                r2_m: 100.0 + i as f64 * 1.3e-4,
                ..base
            };
            let got = two_ray_power_ratio(&g, 5.0, 3.0, &c).unwrap();
            let expanded = two_ray_expanded(&g, 5.0, 3.0, &c);
            assert!((got - expanded).abs() <= 1e-9 * got.max(expanded) + 1e-30);
            let a1 = (g.g_t1 * g.g_r1).sqrt() / g.r1_m;
            let a2 = (g.g_t2 * g.g_r2).sqrt() / g.r2_m;
            let lo = (a1 - a2).powi(2) * scale;
            let hi = (a1 + a2).powi(2) * scale;
            assert!(got >= lo * (1.0 - 1e-12) && got <= hi * (1.0 + 1e-12));
        }
    }

    #[test]
    fn spiral_examples() {
        let flat = SpiralShape {
            growth_rate: 0.0,
            phase_offset: 0.7,
            polar_profile: PolarProfile::Constant(2.5),
        };
        for phi in [-10.0, 0.0, 3.0] {
            assert_eq!(spiral_radius(&flat, phi, 0.3).unwrap(), 2.5);
        }
        let shifted = SpiralShape {
            growth_rate: 0.37,
            phase_offset: 1.2,
            polar_profile: PolarProfile::Constant(2.5),
        };
        assert!((spiral_radius(&shifted, -1.2, 0.0).unwrap() - 2.5).abs() < 1e-15);

        let unit = SpiralShape {
            growth_rate: 0.1,
            phase_offset: 0.0,
            polar_profile: PolarProfile::Constant(1.0),
        };
        assert!((spiral_radius(&unit, 2.0 * PI, 0.0).unwrap() - 1.874_456_087_585).abs() < 1e-12);
    }

    #[test]
    fn spiral_rotation_identity() {
        let shape = SpiralShape {
            growth_rate: 0.23,
            phase_offset: -0.4,
            polar_profile: PolarProfile::Tabulated {
                theta_rad: vec![0.0, 1.0, 2.0],
                values: vec![1.0, 2.0, 0.5],
            },
        };
        for i in 0..40 {
            let phi = -6.0 + i as f64 * 0.3;
            for delta in [-2.0, 0.1, 1.0, 5.0] {
                let r0 = spiral_radius(&shape, phi, 1.3).unwrap();
                let r1 = spiral_radius(&shape, phi + delta, 1.3).unwrap();
                let want = (0.23 * delta).exp();
                assert!(((r1 / r0 - want) / want).abs() < 1e-12);
            }
        }
        assert!(spiral_radius(&shape, 0.0, 2.5).is_err());
        let bad = SpiralShape {
            polar_profile: PolarProfile::Constant(0.0),
            ..shape
        };
        assert!(spiral_radius(&bad, 0.0, 0.0).is_err());
    }
}
