mod cylinder_cmd;
mod init;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use pcasim::analytics::{
    asymptotic_ratio, density_log, exact_density, hitting_time_oracle, interface_walk_oracle, mc_density,
    mc_pair_statistic_a, McParams,
};
use pcasim::cylinder::{lift_model, model_a_rule, parse_rule, LiftedModel, TransitionFunction};
use pcasim::io::{render, write_report, DiagramFormat, DiagramStyle, Genealogy, ReportFormat, ReportRow};
use pcasim::lattice::{evolve, Boundary, Model, UpdateStream};
use pcasim::verify::{self, CaseReport};
use pcasim::Rational;

use crate::cylinder_cmd::CylinderRun;
use crate::init::InitSpec;

#[derive(Parser)]
#[command(name = "pcasim", version, about = "Probabilistic cellular automata on a one-dimensional lattice")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one trajectory and report the final window
    Simulate(SimulateArgs),
    /// Monte Carlo density estimates next to the exact values
    Density(DensityArgs),
    /// Evaluate one of the exact or asymptotic density formulas
    Oracle(OracleArgs),
    /// Run the finite case checks
    Verify(VerifyArgs),
    /// Draw a space-time diagram
    Render(RenderArgs),
    /// Push a cylinder measure through a transition table
    EvolveCylinder(CylinderArgs),
}

#[derive(Args)]
struct Common {
    /// Defaults to $PCASIM_SEED, then 1
    #[arg(long, env = "PCASIM_SEED", default_value_t = 1)]
    seed: u64,
    /// Write here instead of standard output
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Lattice {
    #[arg(long, value_parser = clap::value_parser!(Model))]
    model: Model,
    /// full, uniform, alternating, ones, zeros, iid:P or custom:WORD
    #[arg(long, default_value = "full")]
    init: InitSpec,
    #[arg(long)]
    steps: u64,
    /// Defaults to steps + 65
    #[arg(long)]
    width: Option<usize>,
    #[arg(long, default_value = "line", value_parser = clap::value_parser!(Boundary))]
    boundary: Boundary,
    /// Index of the update field drawn from the seed
    #[arg(long, default_value_t = 0)]
    trial: u64,
}

impl Lattice {
    fn width(&self) -> usize {
        self.width.unwrap_or(self.steps as usize + 65)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SimFormat {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    lattice: Lattice,
    #[arg(long, value_enum, default_value = "text")]
    format: SimFormat,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportArg {
    Csv,
    Json,
}

#[derive(Args)]
struct DensityArgs {
    #[arg(long, value_parser = clap::value_parser!(Model))]
    model: Model,
    /// full, uniform or iid:P for models b and c; uniform, ones, zeros, alternating or custom:WORD for a
    #[arg(long, default_value = "full")]
    init: InitSpec,
    /// Step counts, comma-separated
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<u64>,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 64)]
    sites: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: ReportArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    ClosedForm,
    HittingTime,
    InterfaceWalk,
    Log,
    Asymptotic,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, value_enum)]
    which: Which,
    #[arg(long)]
    n: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Commutation,
    Domination,
    Monotonicity,
    Projection,
    PeriodicOrbit,
    Color,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    /// Cycle width for the periodic orbit
    #[arg(long, default_value_t = 8)]
    width: usize,
    /// Step count for the color suite
    #[arg(long, default_value_t = 3)]
    n: u64,
    /// Trials for the color suite
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum DrawFormat {
    Text,
    Svg,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    lattice: Lattice,
    #[arg(long, value_enum, default_value = "text")]
    format: DrawFormat,
    /// Draw the update arrows under each row
    #[arg(long)]
    arrows: bool,
    /// Highlight the ancestry of a survivor: `leftmost` or a site index
    #[arg(long, allow_hyphen_values = true)]
    genealogy: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum CylModel {
    A,
    B,
    C,
}

#[derive(Args)]
struct CylinderArgs {
    /// Transition table file; overrides --model
    #[arg(long)]
    rule_file: Option<PathBuf>,
    /// Built-in table; b and c act on (occupancy, arrow) pairs
    #[arg(long, value_enum, default_value = "a")]
    model: CylModel,
    /// uniform, alternating, dirac:WORD or iid:P,P,...
    #[arg(long, default_value = "uniform")]
    init: String,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    start: i64,
    #[arg(long)]
    len: usize,
    #[arg(long, default_value_t = 1)]
    steps: u64,
    /// Restrict the result to START:LEN
    #[arg(long, allow_hyphen_values = true)]
    marginal: Option<String>,
    /// Use floating point instead of exact rationals
    #[arg(long)]
    float: bool,
    #[arg(long)]
    json: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn emit(output: Option<&Path>, content: &[u8]) -> Result<()> {
    match output {
        Some(path) => fs::write(path, content).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn simulate(a: &SimulateArgs) -> Result<ExitCode> {
    let l = &a.lattice;
    let stream = UpdateStream::new(a.common.seed, l.trial);
    let x0 = l.init.configuration(l.model, &stream, l.width())?;
    let traj = evolve(l.model, &x0, &stream, l.steps as usize, l.boundary)?;
    let last = traj.last().expect("trajectory has a start");
    let counts = traj.particle_counts();
    let body = match a.format {
        SimFormat::Text => format!("{last}\n"),
        SimFormat::Csv => {
            let mut s = String::from("step,offset,len,count\n");
            for (t, (x, c)) in traj.configs.iter().zip(&counts).enumerate() {
                s.push_str(&format!("{t},{},{},{c}\n", x.offset(), x.len()));
            }
            s
        }
        SimFormat::Json => {
            let doc = json!({
                "model": l.model.to_string(),
                "boundary": format!("{:?}", l.boundary).to_lowercase(),
                "seed": a.common.seed,
                "trial": l.trial,
                "steps": l.steps,
                "offset": last.offset(),
                "final": last.to_glyphs(),
                "counts": counts,
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
    };
    emit(a.common.output.as_deref(), body.as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

fn density(a: &DensityArgs) -> Result<ExitCode> {
    let params = McParams::new(a.trials, a.common.seed, a.sites);
    let rows = a
        .n
        .iter()
        .map(|&n| {
            let report = match a.model {
                Model::A => mc_pair_statistic_a(&a.init.binary()?, n, &params)?,
                Model::B | Model::C => mc_density(a.model, a.init.particle()?, n, &params)?,
                Model::D => bail!("density supports models a, b and c"),
            };
            Ok(ReportRow::from(&report))
        })
        .collect::<Result<Vec<_>>>()?;
    let format = match a.format {
        ReportArg::Csv => ReportFormat::Csv,
        ReportArg::Json => ReportFormat::Json,
    };
    let mut buf = Vec::new();
    write_report(&rows, format, &mut buf)?;
    emit(a.common.output.as_deref(), &buf)?;
    Ok(ExitCode::SUCCESS)
}

fn oracle(a: &OracleArgs) -> Result<ExitCode> {
    let line = match a.which {
        Which::ClosedForm => exact_density(a.n)?.to_string(),
        Which::HittingTime => hitting_time_oracle::<Rational>(a.n).to_string(),
        Which::InterfaceWalk => interface_walk_oracle::<Rational>(a.n).to_string(),
        Which::Log => format!("{:?}", density_log(a.n)),
        Which::Asymptotic => format!("{:?}", asymptotic_ratio(a.n)),
    };
    emit(None, format!("{line}\n").as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

fn run_verify(a: &VerifyArgs) -> Result<ExitCode> {
    let reports: Vec<CaseReport> = match a.suite {
        Suite::All => vec![
            verify::verify_commutation(),
            verify::verify_domination(),
            verify::verify_monotonicity(),
            verify::verify_projection(),
            verify::verify_periodic_orbit(a.width)?,
        ],
        Suite::Commutation => vec![verify::verify_commutation()],
        Suite::Domination => vec![verify::verify_domination()],
        Suite::Monotonicity => vec![verify::verify_monotonicity()],
        Suite::Projection => vec![verify::verify_projection()],
        Suite::PeriodicOrbit => vec![verify::verify_periodic_orbit(a.width)?],
        Suite::Color => vec![verify::verify_color_uniformity(a.n, a.trials, a.common.seed)?],
    };
    let passed = reports.iter().all(CaseReport::passed);
    let doc = json!({ "passed": passed, "suites": reports });
    emit(a.common.output.as_deref(), (serde_json::to_string_pretty(&doc)? + "\n").as_bytes())?;
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run_render(a: &RenderArgs) -> Result<ExitCode> {
    let l = &a.lattice;
    let genealogy = match a.genealogy.as_deref() {
        None => Genealogy::Off,
        Some("leftmost") => Genealogy::Leftmost,
        Some(site) => Genealogy::At(site.parse().with_context(|| format!("bad survivor site `{site}`"))?),
    };
    let stream = UpdateStream::new(a.common.seed, l.trial);
    let x0 = l.init.configuration(l.model, &stream, l.width())?;
    let traj = evolve(l.model, &x0, &stream, l.steps as usize, l.boundary)?;
    let style = DiagramStyle {
        arrows: a.arrows,
        genealogy,
        ..DiagramStyle::default()
    };
    let format = match a.format {
        DrawFormat::Text => DiagramFormat::Text,
        DrawFormat::Svg => DiagramFormat::Svg,
    };
    emit(a.common.output.as_deref(), render(&traj, &style, format)?.as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

fn evolve_cylinder(a: &CylinderArgs) -> Result<ExitCode> {
    let marginal = match a.marginal.as_deref() {
        None => None,
        Some(m) => {
            let (s, l) = m.split_once(':').context("--marginal takes START:LEN")?;
            Some((s.parse().context("bad marginal start")?, l.parse().context("bad marginal length")?))
        }
    };
    let run = CylinderRun {
        measure: a.init.clone(),
        start: a.start,
        len: a.len,
        steps: a.steps,
        marginal,
        json: a.json,
    };
    let exact: TransitionFunction<Rational> = match &a.rule_file {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_rule(&text)?
        }
        None => match a.model {
            CylModel::A => model_a_rule(),
            CylModel::B => lift_model(LiftedModel::B),
            CylModel::C => lift_model(LiftedModel::C),
        },
    };
    let body = if a.float {
        cylinder_cmd::run(&exact.to_float(), &run)?
    } else {
        cylinder_cmd::run(&exact, &run)?
    };
    emit(a.output.as_deref(), body.as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Density(a) => density(a),
        Command::Oracle(a) => oracle(a),
        Command::Verify(a) => run_verify(a),
        Command::Render(a) => run_render(a),
        Command::EvolveCylinder(a) => evolve_cylinder(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
