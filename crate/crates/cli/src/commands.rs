//! The ten subcommands. Each one fronts a library operation or curve,
//! prints a one-line summary per scalar result and writes its curves.

use std::fs::OpenOptions;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use mmwave_link::coverage::{
    ber_distance_curve, capacity_distance_curve, coverage_radius, coverage_vs_capacity_curve, shannon_capacity,
    snr_at_distance, BerMode, CapacityMeasure, CurveResult,
};
use mmwave_link::fading_ber::{required_mean_snr, AnalyticChannel};
use mmwave_link::link_budget::{eirp_dbm, fade_margin_db, fspl_db, received_signal_level_dbm, two_ray_power_ratio};
use mmwave_link::phy_sim::{simulate_ber, FadingChannel, Modulation, SimConfig};
use mmwave_link::rf_math::{from_db, to_db};

use crate::csv::emit_csv;
use crate::error::CliError;
use crate::scenario::Scenario;
use crate::svg::{emit_plot, PlotStyle};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Fspl,
    Eirp,
    Rsl,
    FadeMargin,
    TwoRay,
    BerTheory,
    BerSim,
    Capacity,
    Coverage,
    Sweep,
}

impl Command {
    pub const ALL: [Command; 10] = [
        Command::Fspl,
        Command::Eirp,
        Command::Rsl,
        Command::FadeMargin,
        Command::TwoRay,
        Command::BerTheory,
        Command::BerSim,
        Command::Capacity,
        Command::Coverage,
        Command::Sweep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Fspl => "fspl",
            Command::Eirp => "eirp",
            Command::Rsl => "rsl",
            Command::FadeMargin => "fade-margin",
            Command::TwoRay => "two-ray",
            Command::BerTheory => "ber-theory",
            Command::BerSim => "ber-sim",
            Command::Capacity => "capacity",
            Command::Coverage => "coverage",
            Command::Sweep => "sweep",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Overrides the scenario's output directory.
    pub out_dir: Option<PathBuf>,
    /// File-name prefix for artifacts; the scenario name when empty.
    pub stem: String,
    /// Overrides the scenario's worker count.
    pub workers: Option<usize>,
    /// Results file that scalar values are appended to.
    pub record: Option<PathBuf>,
}

/// A scalar result as written to the record file.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub quantity: String,
    pub value: f64,
    pub unit: String,
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub summary: Vec<String>,
    pub records: Vec<Record>,
    pub curves: Vec<CurveResult>,
    pub files: Vec<PathBuf>,
}

struct Work {
    summary: Vec<String>,
    records: Vec<Record>,
    curves: Vec<CurveResult>,
    style: PlotStyle,
}

impl Work {
    fn new(style: PlotStyle) -> Self {
        Self {
            summary: Vec::new(),
            records: Vec::new(),
            curves: Vec::new(),
            style,
        }
    }

    fn scalar(&mut self, line: String, quantity: impl Into<String>, value: f64, unit: &str) {
        self.summary.push(line);
        self.records.push(Record {
            quantity: quantity.into(),
            value,
            unit: unit.into(),
        });
    }
}

pub fn run(command: Command, scenario: &Scenario, opts: &RunOptions) -> Result<Outcome, CliError> {
    let work = match command {
        Command::Fspl => fspl(scenario)?,
        Command::Eirp => eirp(scenario)?,
        Command::Rsl => rsl(scenario)?,
        Command::FadeMargin => fade_margin(scenario)?,
        Command::TwoRay => two_ray(scenario)?,
        Command::BerTheory => ber_theory(scenario)?,
        Command::BerSim => ber_sim(scenario, opts.workers)?,
        Command::Capacity => capacity(scenario)?,
        Command::Coverage => coverage(scenario)?,
        Command::Sweep => sweep(scenario, opts.workers)?,
    };
    let stem = if opts.stem.is_empty() {
        scenario.name.as_str()
    } else {
        opts.stem.as_str()
    };
    let stem = if stem.is_empty() { "scenario" } else { stem };
    let dir = opts
        .out_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from(&scenario.output.dir));
    let mut files = Vec::new();
    if !work.curves.is_empty() {
        if scenario.output.csv {
            for c in &work.curves {
                let path = dir.join(format!("{stem}-{}.csv", c.name));
                emit_csv(c, &path)?;
                files.push(path);
            }
        }
        if scenario.output.svg {
            let path = dir.join(format!("{stem}-{}.svg", command.name()));
            emit_plot(&work.curves, &path, &format!("{stem}: {}", command.name()), work.style)?;
            files.push(path);
        }
    }
    if let Some(path) = &opts.record {
        append_records(path, stem, command, &work.records)?;
    }
    Ok(Outcome {
        summary: work.summary,
        records: work.records,
        curves: work.curves,
        files,
    })
}

fn append_records(path: &Path, stem: &str, command: Command, records: &[Record]) -> Result<(), CliError> {
    let mut text = String::new();
    for r in records {
        text.push_str(&format!(
            "{stem},{},{},{:.9e},{}\n",
            command.name(),
            r.quantity,
            r.value,
            r.unit
        ));
    }
    OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .and_then(|mut f| f.write_all(text.as_bytes()))
        .map_err(|e| CliError::io(path, e))
}

/// Distance grid when the scenario sweeps distance.
fn distance_grid(s: &Scenario) -> Result<Option<Vec<f64>>, CliError> {
    match &s.sweep {
        Some(sw) if sw.variable == "distance_m" => Ok(Some(s.sweep_values()?)),
        _ => Ok(None),
    }
}

fn fspl(s: &Scenario) -> Result<Work, CliError> {
    let carrier = s.carrier()?;
    let mut w = Work::new(PlotStyle::Linear);
    if let Some(d) = s.environment.distance_m {
        let v = fspl_db(&carrier, d)?;
        w.scalar(format!("fspl: {v:.2} dB"), "fspl", v, "dB");
    }
    if let Some(grid) = distance_grid(s)? {
        let points = grid
            .iter()
            .map(|&d| Ok((d, fspl_db(&carrier, d)?)))
            .collect::<Result<_, CliError>>()?;
        w.curves
            .push(CurveResult::new("fspl", ("distance", "m"), ("fspl", "dB"), points)?);
    }
    if w.summary.is_empty() && w.curves.is_empty() {
        return Err(CliError::missing("environment.distance_m"));
    }
    Ok(w)
}

fn eirp(s: &Scenario) -> Result<Work, CliError> {
    let tx = s.transmitter()?;
    tx.validate()?;
    let v = eirp_dbm(&tx);
    let mut w = Work::new(PlotStyle::Linear);
    w.scalar(format!("eirp: {v:.2} dBm"), "eirp", v, "dBm");
    Ok(w)
}

fn rsl(s: &Scenario) -> Result<Work, CliError> {
    let (carrier, tx, rx) = (s.carrier()?, s.transmitter()?, s.receiver()?);
    let mut w = Work::new(PlotStyle::Linear);
    if let Some(d) = s.environment.distance_m {
        let v = received_signal_level_dbm(&tx, &rx, &carrier, d)?;
        w.scalar(format!("rsl: {v:.2} dBm"), "rsl", v, "dBm");
    }
    if let Some(grid) = distance_grid(s)? {
        let points = grid
            .iter()
            .map(|&d| Ok((d, received_signal_level_dbm(&tx, &rx, &carrier, d)?)))
            .collect::<Result<_, CliError>>()?;
        w.curves
            .push(CurveResult::new("rsl", ("distance", "m"), ("rsl", "dBm"), points)?);
    }
    if w.summary.is_empty() && w.curves.is_empty() {
        return Err(CliError::missing("environment.distance_m"));
    }
    Ok(w)
}

fn fade_margin(s: &Scenario) -> Result<Work, CliError> {
    let v = fade_margin_db(&s.fade_margin_inputs()?)?;
    let mut w = Work::new(PlotStyle::Linear);
    w.scalar(format!("fade-margin: {v:.2} dB"), "fade_margin", v, "dB");
    Ok(w)
}

fn two_ray(s: &Scenario) -> Result<Work, CliError> {
    let tr = s.two_ray.as_ref().ok_or_else(|| CliError::missing("two_ray"))?;
    let carrier = s.carrier()?;
    let g = |dbi: Option<f64>| from_db(dbi.unwrap_or(0.0));
    let gain_tx = g(s.tx.as_ref().map(|t| t.gain_dbi));
    let gain_rx = g(s.rx.as_ref().map(|r| r.gain_dbi));
    let ratio = two_ray_power_ratio(&tr.geometry(), gain_tx, gain_rx, &carrier)?;
    let v = to_db(ratio)?;
    let mut w = Work::new(PlotStyle::Linear);
    w.scalar(format!("two-ray: {v:.2} dB"), "two_ray_ratio", v, "dB");
    Ok(w)
}

/// Analytic channels requested in the theory section, with curve labels.
fn theory_channels(s: &Scenario) -> Vec<(String, AnalyticChannel)> {
    let th = &s.theory;
    let mut out = Vec::new();
    for m in s.modulation_list() {
        out.push((format!("{}_awgn", m.name()), AnalyticChannel::Awgn(m)));
    }
    if th.rayleigh_bfsk {
        out.push(("bfsk_rayleigh".into(), AnalyticChannel::RayleighBfsk));
    }
    for &k in &th.ricean_k {
        out.push((format!("bfsk_ricean_k{k}"), AnalyticChannel::RiceanBfsk { k_factor: k }));
    }
    for &l in &th.diversity_branches {
        out.push((format!("bfsk_diversity_l{l}"), AnalyticChannel::Mrc { branches: l }));
    }
    out
}

fn ber_theory(s: &Scenario) -> Result<Work, CliError> {
    let channels = theory_channels(s);
    if channels.is_empty() {
        return Err(CliError::missing("modulations or theory"));
    }
    let th = &s.theory;
    let mut w = Work::new(PlotStyle::SemilogY);
    for (label, ch) in &channels {
        if let Some(db) = th.mean_snr_db {
            let v = ch.ber(from_db(db))?;
            w.scalar(
                format!("ber-theory: {label} at {db:.2} dB: {v:.4e}"),
                format!("ber_{label}"),
                v,
                "ratio",
            );
        }
        if let Some(target) = th.target_ber {
            let snr = required_mean_snr(target, *ch)?;
            let db = if snr > 0.0 { to_db(snr)? } else { f64::NEG_INFINITY };
            w.scalar(
                format!("ber-theory: {label} needs {db:.2} dB for BER {target:e}"),
                format!("required_snr_{label}"),
                db,
                "dB",
            );
        }
    }
    if let Some(sw) = &s.sweep {
        if sw.variable != "ebn0_db" {
            return Err(CliError::Validation {
                field: "sweep.variable".into(),
                reason: "ber-theory sweeps ebn0_db".into(),
            });
        }
        let grid = s.sweep_values()?;
        for (label, ch) in &channels {
            let points = grid
                .iter()
                .map(|&db| Ok((db, ch.ber(from_db(db))?)))
                .collect::<Result<_, CliError>>()?;
            w.curves.push(CurveResult::new(
                format!("ber_{label}_theory"),
                ("ebn0", "dB"),
                ("ber", "ratio"),
                points,
            )?);
        }
    }
    if w.summary.is_empty() && w.curves.is_empty() {
        return Err(CliError::missing("theory.mean_snr_db, theory.target_ber or sweep"));
    }
    Ok(w)
}

fn require_modulations(s: &Scenario) -> Result<Vec<Modulation>, CliError> {
    let list = s.modulation_list();
    if list.is_empty() {
        return Err(CliError::missing("modulations"));
    }
    Ok(list)
}

/// Simulated BER against Eb/N0; point `i` runs with seed `seed ^ i`.
fn simulated_ebn0_curve(
    scheme: Modulation,
    channel: &FadingChannel,
    base: &SimConfig,
    s: &Scenario,
    grid: &[f64],
) -> Result<CurveResult, CliError> {
    let ofdm = s.ofdm()?;
    let mut points = Vec::with_capacity(grid.len());
    let mut ci = Vec::with_capacity(grid.len());
    for (i, &db) in grid.iter().enumerate() {
        let cfg = SimConfig {
            seed: base.seed ^ i as u64,
            ebn0_db: db,
            ..base.clone()
        };
        let est = simulate_ber(scheme, channel, &cfg, ofdm)?;
        points.push((db, est.ber));
        ci.push(est.ci95_halfwidth);
    }
    let mut curve = CurveResult::new(
        format!("ber_{}_{}_sim", scheme.name(), channel.label()),
        ("ebn0", "dB"),
        ("ber", "ratio"),
        points,
    )?;
    curve.ci95 = Some(ci);
    curve.seed = Some(base.seed);
    Ok(curve)
}

fn awgn_theory_ebn0_curve(scheme: Modulation, grid: &[f64]) -> Result<CurveResult, CliError> {
    let ch = AnalyticChannel::Awgn(scheme);
    let points = grid
        .iter()
        .map(|&db| Ok((db, ch.ber(from_db(db))?)))
        .collect::<Result<_, CliError>>()?;
    Ok(CurveResult::new(
        format!("ber_{}_theory", scheme.name()),
        ("ebn0", "dB"),
        ("ber", "ratio"),
        points,
    )?)
}

fn ber_sim(s: &Scenario, workers: Option<usize>) -> Result<Work, CliError> {
    let schemes = require_modulations(s)?;
    let channel = s.fading_channel()?;
    let base = s.sim_config(workers);
    let mut w = Work::new(PlotStyle::SemilogY);
    match &s.sweep {
        None => {
            let db = s
                .theory
                .mean_snr_db
                .ok_or_else(|| CliError::missing("sweep or theory.mean_snr_db"))?;
            for m in schemes {
                let est = simulate_ber(
                    m,
                    &channel,
                    &SimConfig {
                        ebn0_db: db,
                        ..base.clone()
                    },
                    s.ofdm()?,
                )?;
                w.scalar(
                    format!(
                        "ber-sim: {} over {} at {db:.2} dB: {:.4e} ± {:.2e} ({} errors in {} bits)",
                        m.name(),
                        channel.label(),
                        est.ber,
                        est.ci95_halfwidth,
                        est.bit_errors,
                        est.bits_simulated
                    ),
                    format!("ber_{}_{}_sim", m.name(), channel.label()),
                    est.ber,
                    "ratio",
                );
            }
        }
        Some(sw) if sw.variable == "ebn0_db" => {
            let grid = s.sweep_values()?;
            for m in schemes {
                if channel == FadingChannel::Awgn {
                    w.curves.push(awgn_theory_ebn0_curve(m, &grid)?);
                }
                w.curves.push(simulated_ebn0_curve(m, &channel, &base, s, &grid)?);
            }
        }
        Some(_) => {
            let grid = s.sweep_values()?;
            let system = s.radio_system(None)?;
            let mode = BerMode::MonteCarlo {
                channel: channel.clone(),
                sim: base,
                ofdm: s.ofdm()?,
            };
            for m in schemes {
                if channel == FadingChannel::Awgn {
                    w.curves
                        .push(ber_distance_curve(&system, m, &grid, &BerMode::Theoretical)?);
                }
                w.curves.push(ber_distance_curve(&system, m, &grid, &mode)?);
            }
        }
    }
    Ok(w)
}

fn capacity_pair(s: &Scenario, grid: &[f64]) -> Result<Vec<CurveResult>, CliError> {
    let los = s.radio_system(None)?;
    let nlos = s.radio_system(Some(s.system.nlos_exponent))?;
    Ok(vec![
        capacity_distance_curve(&los, grid)?,
        capacity_distance_curve(&nlos, grid)?,
    ])
}

fn capacity(s: &Scenario) -> Result<Work, CliError> {
    let system = s.radio_system(None)?;
    let mut w = Work::new(PlotStyle::Linear);
    if let Some(d) = s.environment.distance_m {
        let snr = snr_at_distance(&system, d)?;
        let c = shannon_capacity(system.noise_bandwidth_hz, snr)?;
        w.scalar(
            format!("capacity: {:.4} Gbit/s at {d} m (SNR {:.2} dB)", c / 1e9, to_db(snr)?),
            "capacity",
            c,
            "bit/s",
        );
    }
    if let Some(grid) = distance_grid(s)? {
        w.curves.extend(capacity_pair(s, &grid)?);
    }
    if w.summary.is_empty() && w.curves.is_empty() {
        return Err(CliError::missing("environment.distance_m"));
    }
    Ok(w)
}

fn coverage(s: &Scenario) -> Result<Work, CliError> {
    let target = s
        .theory
        .target_ber
        .ok_or_else(|| CliError::missing("theory.target_ber"))?;
    let schemes = require_modulations(s)?;
    let system = s.radio_system(None)?;
    let mut w = Work::new(PlotStyle::Linear);
    for &m in &schemes {
        let r = coverage_radius(&system, m, target)?;
        w.scalar(
            format!("coverage: {} reaches {r:.2} m at BER {target:e}", m.name()),
            format!("coverage_{}", m.name()),
            r,
            "m",
        );
    }
    w.curves.push(coverage_vs_capacity_curve(
        &system,
        &schemes,
        target,
        CapacityMeasure::Nominal,
    )?);
    w.curves.push(coverage_vs_capacity_curve(
        &system,
        &schemes,
        target,
        CapacityMeasure::Shannon,
    )?);
    Ok(w)
}

fn sweep(s: &Scenario, workers: Option<usize>) -> Result<Work, CliError> {
    let sw = s.sweep.as_ref().ok_or_else(|| CliError::missing("sweep"))?;
    let grid = s.sweep_values()?;
    let wrong = |reason: &str| CliError::Validation {
        field: "sweep.quantity".into(),
        reason: reason.into(),
    };
    let mut w;
    match (sw.variable.as_str(), sw.quantity.as_str()) {
        ("distance_m", "ber") => {
            w = Work::new(PlotStyle::SemilogY);
            let schemes = require_modulations(s)?;
            let system = s.radio_system(None)?;
            for &m in &schemes {
                w.curves
                    .push(ber_distance_curve(&system, m, &grid, &BerMode::Theoretical)?);
            }
            if s.sim.montecarlo {
                let mode = BerMode::MonteCarlo {
                    channel: s.fading_channel()?,
                    sim: s.sim_config(workers),
                    ofdm: s.ofdm()?,
                };
                for &m in &schemes {
                    w.curves.push(ber_distance_curve(&system, m, &grid, &mode)?);
                }
            }
        }
        ("distance_m", "capacity") => {
            w = Work::new(PlotStyle::Linear);
            w.curves.extend(capacity_pair(s, &grid)?);
        }
        ("distance_m", "snr") => {
            w = Work::new(PlotStyle::Linear);
            let system = s.radio_system(None)?;
            let points = grid
                .iter()
                .map(|&d| Ok((d, to_db(snr_at_distance(&system, d)?)?)))
                .collect::<Result<_, CliError>>()?;
            w.curves
                .push(CurveResult::new("snr", ("distance", "m"), ("snr", "dB"), points)?);
        }
        ("ebn0_db", "ber") => {
            w = Work::new(PlotStyle::SemilogY);
            let schemes = require_modulations(s)?;
            let channel = s.fading_channel()?;
            let base = s.sim_config(workers);
            for m in schemes {
                w.curves.push(awgn_theory_ebn0_curve(m, &grid)?);
                if s.sim.montecarlo {
                    w.curves.push(simulated_ebn0_curve(m, &channel, &base, s, &grid)?);
                }
            }
        }
        _ => return Err(wrong("an Eb/N0 sweep can only evaluate ber")),
    }
    let n = w.curves.len();
    w.summary.push(format!(
        "sweep: {n} curves over {} points of {}",
        grid.len(),
        sw.variable
    ));
    Ok(w)
}
