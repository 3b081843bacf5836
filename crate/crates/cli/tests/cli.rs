use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mmlink::{load_scenario, parse_scenario};

fn scenarios() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

fn mmlink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mmlink"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn worked_examples_print_one_line() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().to_str().unwrap();
    let link = scenarios().join("link-60ghz-3km.toml");
    let o = mmlink(&["fspl", link.to_str().unwrap(), "--out-dir", out]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "fspl: 137.55 dB\n");

    let karachi = scenarios().join("karachi-fade-margin.toml");
    let o = mmlink(&["fade-margin", karachi.to_str().unwrap(), "--out-dir", out]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "fade-margin: 52.89 dB\n");

    let theory = scenarios().join("bfsk-fading-theory.toml");
    let o = mmlink(&["ber-theory", theory.to_str().unwrap(), "--out-dir", out]);
    assert!(o.status.success());
    assert!(
        stdout(&o).contains("bfsk_rayleigh needs 120.00 dB for BER 1e-12"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn record_file_collects_scalars() {
    let tmp = tempfile::tempdir().unwrap();
    let record = tmp.path().join("results.csv");
    let link = scenarios().join("link-60ghz-3km.toml");
    for cmd in ["fspl", "eirp", "rsl"] {
        let o = mmlink(&[
            cmd,
            link.to_str().unwrap(),
            "--out-dir",
            tmp.path().to_str().unwrap(),
            "--record",
            record.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let text = fs::read_to_string(&record).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][..3], ["link-60ghz-3km", "fspl", "fspl"]);
    let fspl: f64 = rows[0][3].parse().unwrap();
    assert!((fspl - 137.553_233_323_9).abs() < 1e-6);
    assert_eq!(rows[1][4], "dBm");
}

#[test]
fn syntax_and_validation_errors_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = write(tmp.path(), "syntax.toml", "[carrier]\nfrequency_ghz = = 60\n");
    let o = mmlink(&["fspl", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let unknown = write(
        tmp.path(),
        "unknown.toml",
        "[carrier]\nfrequency_ghz = 60\nfrequncy = 1\n",
    );
    let o = mmlink(&["fspl", &unknown]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("frequncy"));

    let avail = write(
        tmp.path(),
        "avail.toml",
        "[fade_margin]\ndistance_km = 30\nterrain_factor = 4\nclimate_factor = 0.5\nfrequency_ghz = 60\navailability = 1.0\n",
    );
    let o = mmlink(&["fade-margin", &avail]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("fade_margin.availability"), "{}", stderr(&o));

    let preset = write(tmp.path(), "preset.toml", "presets = [\"table1-row12\"]\n");
    assert_eq!(mmlink(&["fspl", &preset]).status.code(), Some(2));
}

#[test]
fn missing_fields_are_named() {
    let tmp = tempfile::tempdir().unwrap();
    let empty = write(tmp.path(), "carrier.toml", "[carrier]\nfrequency_ghz = 60\n");
    let o = mmlink(&["fspl", &empty]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("environment.distance_m"), "{}", stderr(&o));
    let o = mmlink(&["two-ray", &empty]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("two_ray"));
}

#[test]
fn numerical_errors_exit_three() {
    let tmp = tempfile::tempdir().unwrap();
    let weak = write(
        tmp.path(),
        "weak.toml",
        "modulations = [\"qam64\"]\n[carrier]\nfrequency_ghz = 60\n[tx]\npower_dbm = -120\n[rx]\n[theory]\ntarget_ber = 1e-9\n",
    );
    let o = mmlink(&["coverage", &weak, "--out-dir", tmp.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("coverage_radius"), "{}", stderr(&o));
}

#[test]
fn unwritable_output_exits_four() {
    let tmp = tempfile::tempdir().unwrap();
    let blocker = tmp.path().join("not-a-dir");
    fs::write(&blocker, "").unwrap();
    let link = scenarios().join("link-60ghz-3km.toml");
    let o = mmlink(&[
        "fspl",
        link.to_str().unwrap(),
        "--out-dir",
        blocker.join("sub").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
    let o = mmlink(&["fspl", tmp.path().join("absent.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn canonical_form_round_trips() {
    for entry in fs::read_dir(scenarios()).unwrap() {
        let path = entry.unwrap().path();
        let s = load_scenario(&path).unwrap();
        let canon = s.to_canonical();
        let again = parse_scenario(&canon).unwrap_or_else(|e| panic!("{}: {e}\n{canon}", path.display()));
        assert_eq!(s, again, "{}", path.display());
        assert_eq!(canon, again.to_canonical());
    }
    let o = mmlink(&[
        "canonical",
        scenarios().join("karachi-fade-margin.toml").to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("availability = 0.99999"));
}

#[test]
fn csv_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().to_str().unwrap();
    let two = write(
        tmp.path(),
        "two.toml",
        "name = \"two\"\n[carrier]\nfrequency_ghz = 60\n[sweep]\nvariable = \"distance_m\"\nstart = 10\nstop = 20\nstep = 10\n",
    );
    assert!(mmlink(&["fspl", &two, "--out-dir", dir]).status.success());
    let text = fs::read_to_string(tmp.path().join("two-fspl.csv")).unwrap();
    assert!(!text.contains('\r'));
    let lines: Vec<&str> = text.split_terminator('\n').collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "x_distance_m,y_fspl_db");
    assert!(text.ends_with('\n'));

    let sim = scenarios().join("table1-row2-ofdm.toml");
    assert!(mmlink(&["ber-sim", sim.to_str().unwrap(), "--out-dir", dir])
        .status
        .success());
    let text = fs::read_to_string(tmp.path().join("table1-row2-ofdm-ber_qpsk_awgn_sim.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x_ebn0_db,y_ber_ratio,ci95"));
    for line in lines {
        let ci: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
        assert!(ci > 0.0, "{line}");
    }
}

#[test]
fn capacity_plot_has_los_above_nlos() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().to_str().unwrap();
    let cap = scenarios().join("capacity-los-nlos.toml");
    let o = mmlink(&["sweep", cap.to_str().unwrap(), "--out-dir", dir]);
    assert!(o.status.success());
    let svg = fs::read_to_string(tmp.path().join("capacity-los-nlos-sweep.svg")).unwrap();
    assert_eq!(svg.matches("<g class=\"series\"").count(), 2);
    assert!(svg.contains("data-name=\"capacity_n2\"") && svg.contains("data-name=\"capacity_n3.5\""));
    assert!(!svg.contains("<script"));

    let read = |name: &str| -> Vec<f64> {
        fs::read_to_string(tmp.path().join(name))
            .unwrap()
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .collect()
    };
    let (los, nlos) = (
        read("capacity-los-nlos-capacity_n2.csv"),
        read("capacity-los-nlos-capacity_n3.5.csv"),
    );
    for c in [&los, &nlos] {
        assert!(c.windows(2).all(|w| w[1] < w[0]));
    }
    assert!(los.iter().zip(&nlos).all(|(a, b)| a >= b));
}

#[test]
fn ber_plot_overlays_theory_and_simulation() {
    let tmp = tempfile::tempdir().unwrap();
    let fig = scenarios().join("ber-distance-bpsk-63ghz.toml");
    let o = mmlink(&[
        "sweep",
        fig.to_str().unwrap(),
        "--out-dir",
        tmp.path().to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let svg = fs::read_to_string(tmp.path().join("ber-distance-bpsk-63ghz-sweep.svg")).unwrap();
    assert!(svg.contains("data-name=\"ber_bpsk_theory\"") && svg.contains("data-name=\"ber_bpsk_awgn_sim\""));
    assert!(svg.contains("(log)"));
}

#[test]
fn worker_count_does_not_change_output() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let sim = scenarios().join("table1-row2-ofdm.toml");
    for (dir, workers) in [(&a, "1"), (&b, "3")] {
        let o = mmlink(&[
            "ber-sim",
            sim.to_str().unwrap(),
            "--out-dir",
            dir.path().to_str().unwrap(),
            "--workers",
            workers,
        ]);
        assert!(o.status.success());
    }
    for name in ["table1-row2-ofdm-ber_qpsk_awgn_sim.csv", "table1-row2-ofdm-ber-sim.svg"] {
        assert_eq!(
            fs::read(a.path().join(name)).unwrap(),
            fs::read(b.path().join(name)).unwrap(),
            "{name}"
        );
    }
}
