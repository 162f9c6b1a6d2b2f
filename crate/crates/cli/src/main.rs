//! Experiments on affine deformations of Schottky groups: Margulis spectra,
//! limit-set plots, recurrence probes, and the periodic orbit
//! correspondence. Outputs are deterministic functions of the presentation,
//! the flags, and the seed.
//!
//! Exit codes: 0 success, 2 configuration error, 3 presentation
//! verification failure, 4 numerical guard tripped.

mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use margulis::affine::{invariant_axis, AffinePoint, FlowState};
use margulis::error::Error as CoreError;
use margulis::frames::BoundaryPoint;
use margulis::schottky::{probe_batch, ProbeParams, RecurrenceReport, Word};
use margulis::sections::{orbit_equivalence_periodic, sign_verdict, spectrum, SignVerdict};
use margulis::{GroupPresentation, LorentzVector};

#[derive(Parser)]
#[command(name = "margulis", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Presentation JSON (generators with row-major 3x3 linear parts and
    /// translations, one boundary disk per letter).
    #[arg(long)]
    presentation: PathBuf,
    /// Output directory (created if missing).
    #[arg(long)]
    out: PathBuf,
    /// Seed for every randomized choice.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Margulis spectrum over conjugacy classes, with a sign-uniformity
    /// verdict. Writes spectrum.csv and spectrum.json.
    Spectrum {
        #[command(flatten)]
        common: CommonArgs,
        /// Longest class length to enumerate.
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Limit-set and geodesic plots in the Klein disk. Writes
    /// limit_set.svg and geodesics.svg.
    Plot {
        #[command(flatten)]
        common: CommonArgs,
        /// Longest class length for the limit-set approximation.
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        /// Longest class length whose geodesics and axis projections are drawn.
        #[arg(long, default_value_t = 2)]
        axes_len: usize,
    },
    /// Recurrence probes of the flat geodesic flow. Writes recurrence.json.
    Recurrence {
        #[command(flatten)]
        common: CommonArgs,
        /// Return threshold on the state distance.
        #[arg(long, default_value_t = 1e-2)]
        eps: f64,
        /// Horizon per time direction.
        #[arg(long, default_value_t = 200.0)]
        t_max: f64,
        /// Sampling interval.
        #[arg(long, default_value_t = 0.01)]
        dt: f64,
        /// Number of random timelike probes.
        #[arg(long, default_value_t = 0)]
        timelike: usize,
        /// Number of random null probes aimed off the limit set.
        #[arg(long, default_value_t = 0)]
        null: usize,
        /// Number of spacelike probes seeded on invariant axes of short
        /// primitive classes.
        #[arg(long, default_value_t = 0)]
        axes: usize,
        /// Explicit probe list: JSON array of {"point": [..], "velocity": [..]}.
        #[arg(long)]
        probes: Option<PathBuf>,
    },
    /// Periodic orbit correspondence table: surface period, spacetime
    /// period, and invariant axis per class. Writes equivalence.csv/.json.
    Equivalence {
        #[command(flatten)]
        common: CommonArgs,
        /// Longest class length to tabulate.
        #[arg(long, default_value_t = 5)]
        max_len: usize,
    },
}

enum CliError {
    Config(String),
    Verification(String),
    Numerical(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Verification(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Verification(m) | CliError::Numerical(m) => m,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidPresentation(_)
            | CoreError::DisksOverlap { .. }
            | CoreError::ContainmentViolated { .. } => CliError::Verification(e.to_string()),
            CoreError::MalformedData(_) => CliError::Config(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(format!("I/O error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Spectrum { common, max_len } => cmd_spectrum(&common, max_len),
        Command::Plot {
            common,
            max_len,
            axes_len,
        } => cmd_plot(&common, max_len, axes_len),
        Command::Recurrence {
            common,
            eps,
            t_max,
            dt,
            timelike,
            null,
            axes,
            probes,
        } => cmd_recurrence(
            &common,
            eps,
            t_max,
            dt,
            timelike,
            null,
            axes,
            probes.as_deref(),
        ),
        Command::Equivalence { common, max_len } => cmd_equivalence(&common, max_len),
    }
}

/// Loads and ping-pong-verifies a presentation.
fn load_presentation(path: &Path) -> Result<GroupPresentation, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let group = GroupPresentation::from_json(&text)
        .map_err(|e| CliError::Verification(format!("{}: {e}", path.display())))?;
    group
        .verify_ping_pong()
        .map_err(|e| CliError::Verification(format!("ping-pong verification failed: {e}")))?;
    Ok(group)
}

fn ensure_out_dir(common: &CommonArgs) -> Result<(), CliError> {
    fs::create_dir_all(&common.out)?;
    Ok(())
}

fn require(cond: bool, message: &str) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Config(message.into()))
    }
}

/// Shortest exact decimal for CSV cells, with an exponent when that is
/// shorter (plain `{}` would expand 1e-32 into thirty zeros).
fn csv_num(x: f64) -> String {
    serde_json::to_string(&x).expect("finite floats serialize")
}

#[derive(Serialize)]
struct SpectrumOutput {
    max_len: usize,
    rows: Vec<SpectrumJsonRow>,
    verdict: SignVerdict,
}

#[derive(Serialize)]
struct SpectrumJsonRow {
    word: String,
    ell: f64,
    alpha: f64,
    ratio: f64,
}

fn cmd_spectrum(common: &CommonArgs, max_len: usize) -> Result<(), CliError> {
    require(max_len >= 1, "--max-len must be at least 1")?;
    let group = load_presentation(&common.presentation)?;
    ensure_out_dir(common)?;

    let rows = spectrum(&group, max_len)?;
    let verdict = sign_verdict(&rows);

    let mut csv = String::from("word,ell,alpha,alpha_over_ell\n");
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            r.word,
            csv_num(r.ell),
            csv_num(r.alpha),
            csv_num(r.ratio())
        ));
    }
    fs::write(common.out.join("spectrum.csv"), csv)?;

    let output = SpectrumOutput {
        max_len,
        rows: rows
            .iter()
            .map(|r| SpectrumJsonRow {
                word: r.word.to_string(),
                ell: r.ell,
                alpha: r.alpha,
                ratio: r.ratio(),
            })
            .collect(),
        verdict: verdict.clone(),
    };
    fs::write(
        common.out.join("spectrum.json"),
        serde_json::to_string_pretty(&output).expect("plain data serializes"),
    )?;

    if verdict.uniform {
        println!(
            "sign uniformity: PASS ({} classes, sign {:+}, margin {:.6})",
            rows.len(),
            verdict.sign.unwrap_or(0.0),
            verdict.margin
        );
    } else {
        let witnesses: Vec<String> = verdict.witnesses.iter().map(|w| w.to_string()).collect();
        println!(
            "sign uniformity: FAIL (witnesses: {})",
            witnesses.join(", ")
        );
    }
    Ok(())
}

fn cmd_plot(common: &CommonArgs, max_len: usize, axes_len: usize) -> Result<(), CliError> {
    require(max_len >= 1, "--max-len must be at least 1")?;
    let group = load_presentation(&common.presentation)?;
    ensure_out_dir(common)?;

    let limit = group.limit_set(max_len);
    fs::write(
        common.out.join("limit_set.svg"),
        svg::limit_set_svg(&group, &limit),
    )?;

    let mut chords = Vec::new();
    for w in group.conjugacy_classes(axes_len) {
        let frame = group.word_linear(&w).eigen_frame()?;
        chords.push((
            BoundaryPoint::from_null(frame.x_minus)?,
            BoundaryPoint::from_null(frame.x_plus)?,
        ));
    }
    fs::write(
        common.out.join("geodesics.svg"),
        svg::geodesics_svg(&group, &chords),
    )?;
    println!(
        "plotted {} limit points and {} geodesics",
        limit.points.len(),
        chords.len()
    );
    Ok(())
}

#[derive(Deserialize)]
struct ProbeSpec {
    point: [f64; 3],
    velocity: [f64; 3],
}

#[derive(Serialize)]
struct RecurrenceOutput {
    params: ProbeParams,
    seed: u64,
    probes: Vec<ProbeRecord>,
    summary: Summary,
}

#[derive(Serialize)]
struct ProbeRecord {
    point: [f64; 3],
    velocity: [f64; 3],
    report: RecurrenceReport,
}

#[derive(Serialize, Default)]
struct Summary {
    total: usize,
    returned: usize,
    timelike: usize,
    spacelike: usize,
    null: usize,
}

#[allow(clippy::too_many_arguments)]
fn cmd_recurrence(
    common: &CommonArgs,
    eps: f64,
    t_max: f64,
    dt: f64,
    timelike: usize,
    null: usize,
    axes: usize,
    probes_path: Option<&Path>,
) -> Result<(), CliError> {
    require(eps > 0.0, "--eps must be positive")?;
    require(
        t_max > 0.0 && dt > 0.0 && dt < t_max,
        "need 0 < --dt < --t-max",
    )?;
    let group = load_presentation(&common.presentation)?;
    ensure_out_dir(common)?;

    let mut starts: Vec<FlowState> = Vec::new();
    if let Some(path) = probes_path {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let specs: Vec<ProbeSpec> = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("malformed probe spec: {e}")))?;
        for s in specs {
            let velocity = LorentzVector::from_array(s.velocity);
            require(
                velocity != LorentzVector::ZERO,
                "probe velocity must be nonzero",
            )?;
            starts.push(FlowState::new(
                AffinePoint::new(s.point[0], s.point[1], s.point[2]),
                velocity,
            ));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
    for _ in 0..timelike {
        starts.push(random_timelike(&mut rng));
    }
    for _ in 0..null {
        starts.push(random_null_off_disks(&mut rng, &group));
    }
    if axes > 0 {
        let classes: Vec<Word> = group
            .conjugacy_classes(4)
            .into_iter()
            .filter(Word::is_primitive)
            .take(axes)
            .collect();
        require(
            classes.len() == axes,
            "not enough primitive classes of length <= 4 for --axes",
        )?;
        for w in &classes {
            let axis = invariant_axis(&group.word_isometry(w))?;
            starts.push(FlowState::new(axis.base, axis.direction));
        }
    }

    let params = ProbeParams {
        eps,
        t_max,
        dt,
        t_min: 1.0,
        profile_len: 200,
    };
    let reports = probe_batch(&group, &starts, &params);

    let mut summary = Summary {
        total: reports.len(),
        ..Summary::default()
    };
    for r in &reports {
        if r.returned {
            summary.returned += 1;
        }
        match r.kind {
            margulis::CausalType::Timelike => summary.timelike += 1,
            margulis::CausalType::Spacelike => summary.spacelike += 1,
            margulis::CausalType::Null | margulis::CausalType::Zero => summary.null += 1,
        }
    }

    let output = RecurrenceOutput {
        params,
        seed: common.seed,
        probes: starts
            .iter()
            .zip(reports)
            .map(|(s, report)| ProbeRecord {
                point: [s.point.x, s.point.y, s.point.t],
                velocity: s.velocity.as_array(),
                report,
            })
            .collect(),
        summary,
    };
    fs::write(
        common.out.join("recurrence.json"),
        serde_json::to_string_pretty(&output).expect("plain data serializes"),
    )?;
    println!(
        "{} probes, {} returned",
        output.summary.total, output.summary.returned
    );
    Ok(())
}

fn random_timelike(rng: &mut impl Rng) -> FlowState {
    let p = AffinePoint::new(
        rng.gen_range(-0.5..0.5),
        rng.gen_range(-0.5..0.5),
        rng.gen_range(-0.5..0.5),
    );
    let r = margulis::LorentzTransform::rotation(rng.gen_range(0.0..std::f64::consts::TAU));
    let b = margulis::LorentzTransform::boost(rng.gen_range(-1.5..1.5));
    let dir = r.compose(&b).apply(LorentzVector::E_T);
    let speed = rng.gen_range(0.5..1.5);
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    FlowState::new(p, (sign * speed) * dir)
}

/// A null state whose boundary direction avoids every ping-pong disk, and
/// with it the limit set.
fn random_null_off_disks(rng: &mut impl Rng, group: &GroupPresentation) -> FlowState {
    let p = AffinePoint::new(
        rng.gen_range(-0.3..0.3),
        rng.gen_range(-0.3..0.3),
        rng.gen_range(-0.3..0.3),
    );
    loop {
        let angle = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let clear = group
            .disks()
            .iter()
            .all(|d| !d.contains(angle) && d.depth(angle) < -0.05);
        if clear {
            return FlowState::new(p, LorentzVector::new(angle.cos(), angle.sin(), 1.0));
        }
    }
}

#[derive(Serialize)]
struct EquivalenceOutput {
    max_len: usize,
    rows: Vec<EquivalenceRow>,
}

#[derive(Serialize)]
struct EquivalenceRow {
    word: String,
    surface_period: f64,
    spacetime_period: f64,
    time_scale: f64,
    axis_base: [f64; 3],
    axis_direction: [f64; 3],
}

fn cmd_equivalence(common: &CommonArgs, max_len: usize) -> Result<(), CliError> {
    require(max_len >= 1, "--max-len must be at least 1")?;
    let group = load_presentation(&common.presentation)?;
    ensure_out_dir(common)?;

    let mut rows = Vec::new();
    for w in group.conjugacy_classes(max_len) {
        let corr = orbit_equivalence_periodic(&group, &w)?;
        let base = corr.axis.canonical_base();
        rows.push(EquivalenceRow {
            word: w.to_string(),
            surface_period: corr.surface_period,
            spacetime_period: corr.spacetime_period,
            time_scale: corr.time_scale,
            axis_base: [base.x, base.y, base.t],
            axis_direction: corr.axis.direction().as_array(),
        });
    }
    rows.sort_by(|a, b| {
        a.surface_period
            .total_cmp(&b.surface_period)
            .then_with(|| a.word.cmp(&b.word))
    });

    let mut csv =
        String::from("word,ell,alpha,alpha_over_ell,base_x,base_y,base_t,dir_x,dir_y,dir_t\n");
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.word,
            csv_num(r.surface_period),
            csv_num(r.spacetime_period),
            csv_num(r.time_scale),
            csv_num(r.axis_base[0]),
            csv_num(r.axis_base[1]),
            csv_num(r.axis_base[2]),
            csv_num(r.axis_direction[0]),
            csv_num(r.axis_direction[1]),
            csv_num(r.axis_direction[2]),
        ));
    }
    fs::write(common.out.join("equivalence.csv"), csv)?;
    let output = EquivalenceOutput { max_len, rows };
    fs::write(
        common.out.join("equivalence.json"),
        serde_json::to_string_pretty(&output).expect("plain data serializes"),
    )?;
    println!("tabulated {} classes", output.rows.len());
    Ok(())
}
