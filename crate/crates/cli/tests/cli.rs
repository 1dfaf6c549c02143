use std::path::Path;
use std::process::{Command, Output};

fn ntnsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ntnsim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn report_value(report: &str, key: &str) -> f64 {
    report
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("{key} missing"))
        .parse()
        .unwrap()
}

fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == name).unwrap();
    lines
        .map(|l| l.split(',').nth(idx).unwrap().to_string())
        .collect()
}

#[test]
fn geometry_at_beam_center() {
    let o = ntnsim(&["geometry", "--slant", "882.38", "--separation", "-22.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = stdout(&o);
    assert!((report_value(&r, "elevation_deg") - 40.0).abs() < 0.01);
    assert!((report_value(&r, "inr_db") - 2.82).abs() < 0.1);
}

#[test]
fn geometry_outside_validity_exits_2() {
    let o = ntnsim(&[
        "geometry",
        "--slant",
        "1075",
        "--separation",
        "400",
        "--alpha",
        "180",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let r = stdout(&o);
    assert!(report_value(&r, "elevation_deg") < 20.0);
    assert!(r.contains("itu_valid = false"));
}

#[test]
fn input_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.conf");
    let o = ntnsim(&["--config", missing.to_str().unwrap(), "geometry"]);
    assert_eq!(o.status.code(), Some(1));

    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "altitude_km = 600\n\nbeam_width = 3\n").unwrap();
    let o = ntnsim(&["--config", bad.to_str().unwrap(), "geometry"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let o = ntnsim(&["sweep-slant", "--alphas", ""]);
    assert_eq!(o.status.code(), Some(1));

    let unwritable = dir.path().join("no/such/dir/out.csv");
    let o = ntnsim(&["sweep-slant", "--out", unwritable.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    let o = ntnsim(&["--set", "shadow_and_clutter=true", "geometry"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn slant_sweep_rx_peaks_then_declines() {
    let o = ntnsim(&["sweep-slant", "--alphas", "0", "--fixed", "100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = stdout(&o);
    assert!(csv.starts_with(
        "variable,alpha_deg,elevation_deg,theta_deg,eirp_dbw,fspl_db,gaseous_db,scint_db,channel_gain_db,rx_dbm,noise_dbm,inr_db,itu_valid\n"
    ));
    assert!(!csv.contains('\r'));
    let rx: Vec<f64> = column(&csv, "rx_dbm")
        .iter()
        .map(|v| v.parse().unwrap())
        .collect();
    let peak = (0..rx.len())
        .max_by(|&i, &j| rx[i].total_cmp(&rx[j]))
        .unwrap();
    assert!(peak > 0 && peak + 1 < rx.len());
}

#[test]
fn sweep_writes_csv_and_plots() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sep.csv");
    let o = ntnsim(&[
        "sweep-separation",
        "--out",
        out.to_str().unwrap(),
        "--svg",
        "--figures",
        "eirp,inr",
        "--max",
        "400",
        "--step",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 1 + 5 * 41);
    for f in ["sep_eirp.svg", "sep_inr.svg"] {
        let svg = std::fs::read_to_string(dir.path().join(f)).unwrap();
        assert!(svg.starts_with("<svg") && svg.contains("<polyline"));
    }
    let o = ntnsim(&[
        "sweep-separation",
        "--out",
        out.to_str().unwrap(),
        "--svg",
        "--figures",
        "pie",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

fn echoed_config(o: &Output) -> String {
    stderr(o)
        .lines()
        .skip_while(|l| !l.starts_with("# effective config"))
        .take_while(|l| l.starts_with('#') || l.contains(" = "))
        .map(|l| format!("{l}\n"))
        .collect()
}

#[test]
fn effective_config_reproduces_results() {
    let first = ntnsim(&[
        "--set",
        "latitude_deg=35",
        "--set",
        "gaseous_model=true",
        "sweep-separation",
        "--fixed",
        "1000",
        "--max",
        "300",
        "--step",
        "20",
        "--alphas",
        "0,135",
    ]);
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("effective.conf");
    std::fs::write(&conf, echoed_config(&first)).unwrap();
    let second = ntnsim(&["--config", conf.to_str().unwrap(), "sweep-separation"]);
    assert_eq!(second.status.code(), Some(0), "{}", stderr(&second));
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(echoed_config(&first), echoed_config(&second));
}

#[test]
fn monte_carlo_sweep_is_byte_deterministic() {
    let args = [
        "--seed",
        "42",
        "--runs",
        "3",
        "--set",
        "duration_s=0.01",
        "sweep-separation",
        "--mode",
        "monte_carlo",
        "--environment",
        "suburban",
        "--alphas",
        "0",
        "--max",
        "40",
        "--step",
        "20",
    ];
    let a = ntnsim(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let b = ntnsim(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(stderr(&a).contains("SYNTHETIC"));
    let gains = column(&stdout(&a), "channel_gain_db");
    assert!(gains.iter().all(|g| g != "1.20000"));
}

#[test]
fn min_separation_profile() {
    let o = ntnsim(&["min-separation"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = stdout(&o);
    assert!(csv.starts_with("slant_km,min_separation_km,binding_alpha_deg\n"));
    let seps: Vec<f64> = column(&csv, "min_separation_km")
        .iter()
        .map(|v| v.parse().unwrap())
        .collect();
    assert_eq!(seps.len(), 20);
    assert!(seps.iter().all(|&s| s <= 320.0));
    let slants: Vec<f64> = column(&csv, "slant_km")
        .iter()
        .map(|v| v.parse().unwrap())
        .collect();
    let alphas: Vec<f64> = column(&csv, "binding_alpha_deg")
        .iter()
        .map(|v| v.parse().unwrap())
        .collect();
    let switch = alphas
        .windows(2)
        .position(|w| w[0] == 180.0 && w[1] == 0.0)
        .unwrap();
    assert!((slants[switch] - 770.0).abs() <= 50.0);
    assert!(stderr(&o).contains("far side to near side"));

    let o = ntnsim(&["min-separation", "--slants", "700"]);
    let csv = stdout(&o);
    assert_eq!(column(&csv, "binding_alpha_deg"), vec!["180.000"]);
}

#[test]
fn channel_stats_table_gap_and_determinism() {
    let o = ntnsim(&[
        "channel-stats",
        "--environment",
        "residential",
        "--elevation",
        "45",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("residential"));

    let args = [
        "--seed",
        "5",
        "--runs",
        "4",
        "channel-stats",
        "--environment",
        "urban",
        "--elevation",
        "30",
        "--duration",
        "0.02",
    ];
    let a = ntnsim(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, ntnsim(&args).stdout);
    assert!(stdout(&a)
        .starts_with("environment,elevation_deg,runs,mean_gain_db,ci95_low_db,ci95_high_db\n"));
}

fn write_table(path: &Path, body: &str) {
    std::fs::write(path, format!("@source synthetic\n{body}")).unwrap();
}

#[test]
fn direct_only_table_gives_exact_mean() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("direct.txt");
    write_table(
        &table,
        "village 60 S good s -1.5 0 0 0 0 -400 0.0 0.5 0.5\n\
         village 60 S bad  s -1.5 0 0 0 0 -400 0.0 0.5 0.5\n",
    );
    let o = ntnsim(&[
        "--runs",
        "5",
        "channel-stats",
        "--table",
        table.to_str().unwrap(),
        "--environment",
        "village",
        "--elevation",
        "60",
        "--duration",
        "0.01",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = stdout(&o);
    assert_eq!(column(&csv, "mean_gain_db"), vec!["-1.50000"]);
    assert_eq!(column(&csv, "ci95_low_db"), column(&csv, "ci95_high_db"));

    let broken = dir.path().join("broken.txt");
    write_table(&broken, "village 60 S good s -1.5 0 0\n");
    let o = ntnsim(&["channel-stats", "--table", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}
