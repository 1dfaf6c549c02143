//! `ntnsim` command-line front end.
//!
//! Exit codes: 0 success, 1 input or runtime error, 2 geometry outside the
//! two-state channel model's validity range.

mod config;
mod output;
mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use ntnsim::lms_channel::{
    simulate_gain, DopplerConfig, Environment, GainExperiment, LmsEnvironmentTable,
};
use ntnsim::seed::derive_seed;
use ntnsim::{
    check_itu_validity, dominant_alpha_crossover, link_at, run_sweep, separation_profile,
    ChannelMode, Crossover, CrossoverOptions, MonteCarloSpec, ScenarioConfig, SolverOptions,
    SweepRange, SweepResult, SweepSpec, SweepVariable, ZeroDbSeparation,
};

use config::{parse_aggregation, parse_list, parse_mode, ModeSetting, Settings};
use svg::{LinePlot, Series};

#[derive(Parser)]
#[command(
    name = "ntnsim",
    version,
    about = "LEO S-band satellite to terrestrial UE interference simulator"
)]
struct Cli {
    /// Scenario file with `key = value` lines.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output CSV path. CSV goes to stdout when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Also write SVG plots next to the CSV output.
    #[arg(long, global = true)]
    svg: bool,
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    #[arg(long, global = true, value_name = "N")]
    runs: Option<usize>,
    /// Override any scenario key, e.g. `--set latitude_deg=10`. Repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the geometry and link budget for one UE position.
    Geometry {
        #[arg(long, allow_negative_numbers = true)]
        slant: Option<f64>,
        /// Distance from the cell edge, km. Use minus the cell radius for the beam center.
        #[arg(long, allow_negative_numbers = true)]
        separation: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Link budget over slant range at a fixed separation.
    SweepSlant(SweepArgs),
    /// Link budget over separation at a fixed slant range.
    SweepSeparation(SweepArgs),
    /// 0 dB-INR separation distance for a range of slant ranges.
    MinSeparation {
        #[command(flatten)]
        range: RangeArgs,
        /// Explicit comma-separated slant ranges, km. Overrides the range.
        #[arg(long, value_name = "LIST")]
        slants: Option<String>,
        /// Also locate the far-to-near binding direction switch precisely.
        #[arg(long)]
        crossover: bool,
    },
    /// Mean channel gain and 95% interval per environment and elevation.
    ChannelStats {
        #[arg(long)]
        environment: Option<String>,
        #[arg(long)]
        elevation: Option<f64>,
        #[arg(long, value_name = "PATH")]
        table: Option<PathBuf>,
        /// Realization length, s.
        #[arg(long)]
        duration: Option<f64>,
    },
}

#[derive(Args)]
struct RangeArgs {
    #[arg(long, allow_negative_numbers = true)]
    min: Option<f64>,
    #[arg(long)]
    max: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    range: RangeArgs,
    /// Value of the variable that is not swept, km.
    #[arg(long, allow_negative_numbers = true)]
    fixed: Option<f64>,
    /// Comma-separated azimuths, degrees.
    #[arg(long, value_name = "LIST")]
    alphas: Option<String>,
    /// worst_case or monte_carlo.
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    environment: Option<String>,
    #[arg(long, value_name = "PATH")]
    table: Option<PathBuf>,
    /// mean or pNN.
    #[arg(long)]
    aggregation: Option<String>,
    /// Comma-separated plot styles: inr, rx, eirp, path_loss, elevation, theta.
    #[arg(long, value_name = "LIST")]
    figures: Option<String>,
}

const FIGURES: [&str; 6] = ["inr", "rx", "eirp", "path_loss", "elevation", "theta"];

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut s = match &cli.config {
        Some(p) => Settings::load(p)?,
        None => Settings::default(),
    };
    for kv in &cli.set {
        let (k, v) = kv
            .split_once('=')
            .with_context(|| format!("--set expects KEY=VALUE, got '{kv}'"))?;
        s.set(k.trim(), v.trim())
            .with_context(|| format!("--set {}", k.trim()))?;
    }
    if let Some(seed) = cli.seed {
        s.seed = seed;
    }
    if let Some(runs) = cli.runs {
        s.runs = runs;
    }
    if cli.svg && cli.out.is_none() {
        bail!("--svg needs --out to name the plot files");
    }

    match &cli.command {
        Command::Geometry {
            slant,
            separation,
            alpha,
        } => {
            s.slant_km = slant.unwrap_or(s.slant_km);
            s.separation_km = separation.unwrap_or(s.separation_km);
            s.alpha_deg = alpha.unwrap_or(s.alpha_deg);
            eprint!("{}", s.echo());
            cmd_geometry(&s, cli.out.as_deref())
        }
        Command::SweepSlant(args) => {
            apply_sweep_args(
                &mut s,
                args,
                (600.0, ScenarioConfig::MAX_STUDY_SLANT_KM, 5.0, 100.0),
            )?;
            eprint!("{}", s.echo());
            cmd_sweep(&s, SweepVariable::SlantRange, &cli)
        }
        Command::SweepSeparation(args) => {
            apply_sweep_args(
                &mut s,
                args,
                (0.0, 560.0, 1.0, ScenarioConfig::MEAN_SLANT_KM),
            )?;
            eprint!("{}", s.echo());
            cmd_sweep(&s, SweepVariable::Separation, &cli)
        }
        Command::MinSeparation {
            range,
            slants,
            crossover,
        } => {
            apply_range(
                &mut s,
                range,
                (600.0, ScenarioConfig::MAX_STUDY_SLANT_KM, 25.0),
            );
            eprint!("{}", s.echo());
            let list = slants.as_deref().map(parse_list).transpose()?;
            cmd_min_separation(&s, list, *crossover, &cli)
        }
        Command::ChannelStats {
            environment,
            elevation,
            table,
            duration,
        } => {
            if let Some(e) = environment {
                s.set("environment", e)?;
            }
            if elevation.is_some() {
                s.elevation_deg = *elevation;
            }
            if let Some(t) = table {
                s.channel_table = Some(t.clone());
            }
            s.duration_s = duration.unwrap_or(s.duration_s);
            eprint!("{}", s.echo());
            cmd_channel_stats(&s, &cli)
        }
    }
}

fn apply_range(s: &mut Settings, r: &RangeArgs, defaults: (f64, f64, f64)) {
    s.sweep_min_km = Some(r.min.or(s.sweep_min_km).unwrap_or(defaults.0));
    s.sweep_max_km = Some(r.max.or(s.sweep_max_km).unwrap_or(defaults.1));
    s.sweep_step_km = Some(r.step.or(s.sweep_step_km).unwrap_or(defaults.2));
}

fn apply_sweep_args(s: &mut Settings, a: &SweepArgs, defaults: (f64, f64, f64, f64)) -> Result<()> {
    apply_range(s, &a.range, (defaults.0, defaults.1, defaults.2));
    s.sweep_fixed_km = Some(a.fixed.or(s.sweep_fixed_km).unwrap_or(defaults.3));
    if let Some(list) = &a.alphas {
        s.alphas_deg = parse_list(list).context("--alphas")?;
    }
    if let Some(m) = &a.mode {
        s.channel_mode = parse_mode(m)?;
    }
    if let Some(e) = &a.environment {
        s.set("environment", e)?;
    }
    if let Some(t) = &a.table {
        s.channel_table = Some(t.clone());
    }
    if let Some(g) = &a.aggregation {
        s.aggregation = parse_aggregation(g)?;
    }
    if let Some(f) = &a.figures {
        s.set("figures", f)?;
    }
    Ok(())
}

fn load_table(s: &Settings) -> Result<LmsEnvironmentTable> {
    let table = match &s.channel_table {
        Some(p) => LmsEnvironmentTable::load(p)
            .with_context(|| format!("channel table {}", p.display()))?,
        None => LmsEnvironmentTable::synthetic(),
    };
    if table.is_synthetic() {
        eprintln!(
            "warning: channel parameters are SYNTHETIC placeholders, not recommendation data"
        );
    }
    Ok(table)
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn svg_path(out: &Path, figure: &str) -> PathBuf {
    let stem = out
        .file_stem()
        .map_or_else(|| "plot".into(), |s| s.to_string_lossy().into_owned());
    out.with_file_name(format!("{stem}_{figure}.svg"))
}

fn write_svg(out: &Path, figure: &str, plot: &LinePlot) -> Result<()> {
    let path = svg_path(out, figure);
    std::fs::write(&path, plot.render())
        .with_context(|| format!("cannot write {}", path.display()))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn cmd_geometry(s: &Settings, out: Option<&Path>) -> Result<ExitCode> {
    let sc = s.scenario()?;
    let (g, b) = link_at(
        &sc,
        s.slant_km,
        s.separation_km,
        s.alpha_deg,
        sc.worst_case_channel_gain_db,
    )?;
    let itu = check_itu_validity(&g, sc.carrier_hz, sc.receiver.prb_bandwidth_hz);
    let mut report = format!(
        "slant_km = {}\nseparation_km = {}\nalpha_deg = {}\n\
         gamma_b_deg = {:.6}\ngamma_bu_deg = {:.6}\ngamma_u_deg = {:.6}\n\
         ue_distance_km = {:.6}\nelevation_deg = {:.6}\ntheta_deg = {:.6}\n\
         eirp_dbw = {:.6}\npath_loss_db = {:.6}\nrx_dbm = {:.6}\nnoise_dbm = {:.6}\ninr_db = {:.6}\n\
         itu_valid = {}\n",
        s.slant_km,
        s.separation_km,
        s.alpha_deg,
        g.gamma_b.to_degrees(),
        g.gamma_bu.to_degrees(),
        g.gamma_u.to_degrees(),
        g.d_u_km,
        g.elevation_deg,
        g.theta_deg,
        b.eirp_toward_dbw(),
        b.path_loss.total,
        b.rx_power_dbm,
        b.noise_dbm,
        b.inr_db,
        itu.valid,
    );
    for c in &itu.violated_conditions {
        report.push_str(&format!("violated = {c}\n"));
    }
    write_output(out, &report)?;
    Ok(if itu.valid {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn cmd_sweep(s: &Settings, variable: SweepVariable, cli: &Cli) -> Result<ExitCode> {
    let sc = s.scenario()?;
    if cli.svg {
        if let Some(f) = s.figures.iter().find(|f| !FIGURES.contains(&f.as_str())) {
            bail!("unknown figure '{f}' (known: {})", FIGURES.join(", "));
        }
    }
    let range = SweepRange::new(
        s.sweep_min_km.expect("resolved"),
        s.sweep_max_km.expect("resolved"),
        s.sweep_step_km.expect("resolved"),
    )?;
    let (channel_mode, table) = match s.channel_mode {
        ModeSetting::WorstCase => (ChannelMode::WorstCase, None),
        ModeSetting::MonteCarlo => {
            let environment = s
                .environment
                .context("monte_carlo mode needs a single environment")?;
            let mc = MonteCarloSpec {
                seed: s.seed,
                runs: s.runs,
                environment,
                duration: s.duration_s,
                aggregation: s.aggregation,
            };
            (ChannelMode::MonteCarlo(mc), Some(load_table(s)?))
        }
    };
    let spec = SweepSpec {
        variable,
        range,
        fixed: s.sweep_fixed_km.expect("resolved"),
        alphas_deg: s.alphas_deg.clone(),
        channel_mode,
    };
    let result = run_sweep(&spec, &sc, table.as_ref())?;
    let invalid = result.rows.iter().filter(|r| !r.itu.valid).count();
    if invalid > 0 {
        eprintln!(
            "note: {invalid} of {} rows fall outside the channel model's validity range",
            result.rows.len()
        );
    }
    write_output(cli.out.as_deref(), &output::sweep_csv(&result))?;
    if let (true, Some(out)) = (cli.svg, cli.out.as_deref()) {
        for f in &s.figures {
            write_svg(out, f, &sweep_plot(&result, f))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn sweep_plot(result: &SweepResult, figure: &str) -> LinePlot {
    let (name, pick): (&str, fn(&ntnsim::SweepRow) -> f64) = match figure {
        "inr" => ("INR [dB]", |r| r.budget.inr_db),
        "rx" => ("RX power [dBm]", |r| r.budget.rx_power_dbm),
        "eirp" => ("EIRP toward UE [dBW]", |r| r.budget.eirp_toward_dbw()),
        "path_loss" => ("Path loss [dB]", |r| r.budget.path_loss.total),
        "elevation" => ("UE elevation [deg]", |r| r.geometry.elevation_deg),
        _ => ("Misalignment angle [deg]", |r| r.geometry.theta_deg),
    };
    let mut alphas: Vec<f64> = result.rows.iter().map(|r| r.alpha_deg).collect();
    alphas.dedup();
    let x_label = match result.variable {
        SweepVariable::SlantRange => format!("Slant range [km] (separation {} km)", result.fixed),
        SweepVariable::Separation => {
            format!("Separation distance [km] (slant range {} km)", result.fixed)
        }
    };
    LinePlot {
        title: name.split(" [").next().unwrap_or(name).to_string(),
        x_label,
        y_label: name.into(),
        series: alphas
            .iter()
            .map(|&a| Series {
                label: format!("alpha = {a} deg"),
                points: result
                    .rows_for_alpha(a)
                    .map(|r| (r.value, pick(r)))
                    .collect(),
            })
            .collect(),
    }
}

fn cmd_min_separation(
    s: &Settings,
    list: Option<Vec<f64>>,
    crossover: bool,
    cli: &Cli,
) -> Result<ExitCode> {
    let sc = s.scenario()?;
    let slants = match list {
        Some(v) if v.is_empty() => bail!("--slants is empty"),
        Some(v) => v,
        None => SweepRange::new(
            s.sweep_min_km.expect("resolved"),
            s.sweep_max_km.expect("resolved"),
            s.sweep_step_km.expect("resolved"),
        )?
        .values(),
    };
    let opts = SolverOptions {
        alphas_deg: s.solver_alphas()?,
        coarse_step_km: s.solver_coarse_step_km,
        tolerance_km: s.solver_tolerance_km,
        min_elevation_deg: s.min_elevation_deg,
    };
    let profile = separation_profile(&slants, &sc, &opts)?;
    for w in profile.windows(2) {
        let side = |z: &ZeroDbSeparation| match z {
            ZeroDbSeparation::Resolved {
                binding_alpha_deg: Some(a),
                ..
            } => Some(*a > 90.0),
            _ => None,
        };
        if side(&w[0].1) == Some(true) && side(&w[1].1) == Some(false) {
            eprintln!(
                "binding direction switches from far side to near side between {} and {} km",
                w[0].0, w[1].0
            );
        }
    }
    if crossover {
        let copts = CrossoverOptions {
            solver: opts.clone(),
            ..CrossoverOptions::default()
        };
        match dominant_alpha_crossover(&sc, &copts)? {
            Crossover::At { slant_km, .. } => eprintln!("crossover at {slant_km:.1} km"),
            Crossover::None => eprintln!("no crossover"),
        }
    }
    write_output(cli.out.as_deref(), &output::min_separation_csv(&profile))?;
    if let (true, Some(out)) = (cli.svg, cli.out.as_deref()) {
        let points = profile
            .iter()
            .filter_map(|(sl, z)| z.separation_km().map(|d| (*sl, d)))
            .collect();
        let plot = LinePlot {
            title: "0 dB INR separation distance".into(),
            x_label: "Slant range [km]".into(),
            y_label: "Separation distance [km]".into(),
            series: vec![Series {
                label: "worst case".into(),
                points,
            }],
        };
        write_svg(out, "min_separation", &plot)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_channel_stats(s: &Settings, cli: &Cli) -> Result<ExitCode> {
    let sc = s.scenario()?;
    let table = load_table(s)?;
    if s.runs < 2 {
        bail!("--runs must be at least 2 for a confidence interval");
    }
    let environments: Vec<Environment> = match s.environment {
        Some(e) => vec![e],
        None => Environment::ALL.to_vec(),
    };
    let mut csv =
        String::from("environment,elevation_deg,runs,mean_gain_db,ci95_low_db,ci95_high_db\n");
    let mut series = Vec::new();
    for env in environments {
        let elevations: Vec<f64> = match s.elevation_deg {
            Some(e) => vec![e],
            None => env
                .available_elevations()
                .iter()
                .map(|&e| f64::from(e))
                .collect(),
        };
        let mut points = Vec::new();
        for el in elevations {
            let pair = table.get(env, el, "S")?;
            let doppler = DopplerConfig {
                satellite_altitude_km: sc.altitude_km,
                earth: sc.earth,
                elevation_deg: el,
                carrier_hz: sc.carrier_hz,
                ue_speed_mps: sc.ue_speed_mps,
                ue_azimuth_deg: sc.ue_azimuth_deg,
            };
            let env_index = Environment::ALL.iter().position(|e| *e == env).unwrap_or(0) as u64;
            let experiment = GainExperiment {
                duration: s.duration_s,
                runs: s.runs,
                seed: derive_seed(s.seed, &[env_index, el.to_bits()]),
                sample_rate_hz: None,
                options: None,
            };
            let stats = simulate_gain(&pair, &doppler, &experiment)
                .with_context(|| format!("{} at {el} deg", env.name()))?;
            eprintln!(
                "{:<13} {:>4} deg  mean {:>8.3} dB  95% CI [{:.3}, {:.3}] dB",
                env.name(),
                el,
                stats.mean_db,
                stats.ci95_low_db,
                stats.ci95_high_db
            );
            csv.push_str(&format!(
                "{},{},{},{},{},{}\n",
                env.name(),
                output::sig6(el),
                s.runs,
                output::sig6(stats.mean_db),
                output::sig6(stats.ci95_low_db),
                output::sig6(stats.ci95_high_db)
            ));
            points.push((el, stats.mean_db));
        }
        series.push(Series {
            label: env.name().into(),
            points,
        });
    }
    write_output(cli.out.as_deref(), &csv)?;
    if let (true, Some(out)) = (cli.svg, cli.out.as_deref()) {
        let plot = LinePlot {
            title: "Mean channel gain".into(),
            x_label: "Elevation [deg]".into(),
            y_label: "Channel gain [dB]".into(),
            series,
        };
        write_svg(out, "channel_gain", &plot)?;
    }
    Ok(ExitCode::SUCCESS)
}
