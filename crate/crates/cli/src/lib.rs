//! Command-line front end: single-point evaluation, sweeps, DOS profiles and figure data.
//!
//! Settings come from an optional `key=value` config file (`--config` or `$CASIMIR_CONFIG`)
//! overlaid by command-line flags.

pub mod error;
pub mod figure;
pub mod model;
pub mod record;
pub mod settings;
pub mod sweep;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use casimir_core::dos::{dos_difference, uniform_grid};
use casimir_core::energy::beyond_nonretarded_limit;
use casimir_core::spectral::modes_for;
use casimir_core::units::retardation_length_nm;
use casimir_core::Geometry;
use clap::{Args, Parser, Subcommand};

use crate::error::{exit, CliError, Result};
use crate::model::{model, options_echo, GapSpec};
use crate::record::{Inputs, Outputs, RunRecord};
use crate::settings::{Settings, CONFIG_ENV};
use crate::sweep::{
    evaluate_point, retarded_points, run_points, sweep_geometries, write_table, SweepSpec,
    SWEEP_HEADER,
};

#[derive(Debug, Parser)]
#[command(
    name = "casimir",
    version,
    about = "Non-retarded Casimir energy and force between a Drude sphere and a flat substrate"
)]
pub struct Cli {
    /// Config file with key=value lines (defaults to $CASIMIR_CONFIG).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energy and force at one geometry; prints a JSON run record.
    Eval {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        geometry: GeometryArgs,
        #[command(flatten)]
        numerics: NumericArgs,
        /// Output file, `-` for stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Energy and force over a grid of z, z/R or R; prints CSV.
    Sweep {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        geometry: GeometryArgs,
        #[command(flatten)]
        numerics: NumericArgs,
        /// z, z_over_R or R.
        #[arg(long)]
        variable: Option<String>,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        #[arg(long)]
        points: Option<String>,
        /// linear or log.
        #[arg(long)]
        spacing: Option<String>,
        /// Output file, `-` for stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Density-of-states difference between the coupled and the isolated sphere; prints CSV.
    Dos {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        geometry: GeometryArgs,
        #[command(flatten)]
        numerics: NumericArgs,
        #[arg(long = "omega-min-eV")]
        omega_min_ev: Option<String>,
        /// Defaults to twice the plasma energy.
        #[arg(long = "omega-max-eV")]
        omega_max_ev: Option<String>,
        #[arg(long = "omega-points")]
        omega_points: Option<String>,
        /// Output file, `-` for stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Writes the CSV data of figure 1, 2, 3 or 4 into a directory.
    Figure {
        number: u32,
        #[command(flatten)]
        numerics: NumericArgs,
        /// Output directory.
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// K, Au or drude:<wp_eV>,<gamma>.
    #[arg(long)]
    sphere: Option<String>,
    /// tio2, sapphire, perfect, vacuum or eps:<value>.
    #[arg(long)]
    substrate: Option<String>,
    /// Permittivity of the surrounding medium (default 1).
    #[arg(long = "ambient-eps")]
    ambient_eps: Option<String>,
}

#[derive(Debug, Args)]
struct GeometryArgs {
    #[arg(long = "radius-nm")]
    radius_nm: Option<String>,
    /// Gap between sphere bottom and substrate, nm.
    #[arg(long = "z-nm")]
    z_nm: Option<String>,
    /// Gap in units of the radius.
    #[arg(long = "z-over-r", alias = "z-over-R")]
    z_over_r: Option<String>,
}

#[derive(Debug, Args)]
struct NumericArgs {
    /// Relative quadrature tolerance (default 1e-8).
    #[arg(long = "quad-tol")]
    quad_tol: Option<String>,
    /// Quadrature cutoff in units of the plasma energy (default 50).
    #[arg(long = "omega-max")]
    omega_max: Option<String>,
    /// true or false (default true).
    #[arg(long = "tail-correction")]
    tail_correction: Option<String>,
    #[arg(long = "max-subdivisions")]
    max_subdivisions: Option<String>,
    /// unity or verbatim.
    #[arg(long)]
    normalization: Option<String>,
    /// fd or analytic.
    #[arg(long = "force-method")]
    force_method: Option<String>,
    /// axial or literal.
    #[arg(long)]
    coupling: Option<String>,
}

fn put(settings: &mut Settings, key: &str, value: &Option<String>) {
    if let Some(v) = value {
        settings.set(key, v.clone());
    }
}

impl ModelArgs {
    fn apply(&self, s: &mut Settings) {
        put(s, "sphere", &self.sphere);
        put(s, "substrate", &self.substrate);
        put(s, "ambient-eps", &self.ambient_eps);
    }
}

impl GeometryArgs {
    fn apply(&self, s: &mut Settings) {
        put(s, "radius-nm", &self.radius_nm);
        put(s, "z-nm", &self.z_nm);
        put(s, "z-over-r", &self.z_over_r);
    }
}

impl NumericArgs {
    fn apply(&self, s: &mut Settings) {
        put(s, "quad-tol", &self.quad_tol);
        put(s, "omega-max", &self.omega_max);
        put(s, "tail-correction", &self.tail_correction);
        put(s, "max-subdivisions", &self.max_subdivisions);
        put(s, "normalization", &self.normalization);
        put(s, "force-method", &self.force_method);
        put(s, "coupling", &self.coupling);
    }
}

fn base_settings(config: Option<&Path>) -> Result<Settings> {
    match config {
        Some(path) => Settings::from_file(path),
        None => match std::env::var_os(CONFIG_ENV) {
            Some(path) if !path.is_empty() => Settings::from_file(Path::new(&path)),
            _ => Ok(Settings::default()),
        },
    }
}

/// Writes to the `out` setting, or to `stdout` when it is absent or `-`.
fn emit(settings: &Settings, stdout: &mut dyn Write, text: &str) -> Result<()> {
    match settings.raw("out") {
        None | Some("-") => stdout.write_all(text.as_bytes())?,
        Some(path) => fs::write(path, text)?,
    }
    Ok(())
}

fn warn_retardation(stderr: &mut dyn Write, environment: &casimir_core::Environment, count: usize) {
    if count == 0 {
        return;
    }
    if let Some(drude) = environment.sphere().as_drude() {
        let _ = writeln!(
            stderr,
            "warning: {count} point(s) have R or z above c/omega_p = {:.1} nm; retardation is neglected",
            retardation_length_nm(drude.plasma_energy)
        );
    }
}

fn eval(settings: &Settings, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let setup = model(settings)?;
    let radius = settings
        .positive("radius-nm")?
        .ok_or(CliError::Missing("radius-nm"))?;
    let gap = GapSpec::from_settings(settings)?.ok_or(CliError::Missing("z-nm"))?;
    let geometry = Geometry::new(radius, gap.gap_nm(radius))?;
    let env = &setup.environment;
    let contrast = env.contrast_factor()?;
    let modes = modes_for(contrast, geometry.d_over_r(), setup.solver.coupling)?;
    let retarded = beyond_nonretarded_limit(env, &geometry);
    warn_retardation(stderr, env, usize::from(retarded));

    let mut outputs = Outputs {
        contrast_factor: contrast,
        d_over_r: geometry.d_over_r(),
        depolarization_factors: modes.factors().to_vec(),
        retardation_warning: retarded,
        ..Outputs::default()
    };
    let code = match evaluate_point(env, &setup.solver, setup.force_method, &geometry) {
        Ok(v) => {
            outputs.valid = true;
            outputs.energy_ev = Some(v.energy);
            outputs.energy_error_ev = Some(v.energy_error);
            outputs.force_ev_per_nm = Some(v.force);
            outputs.force_error_ev_per_nm = Some(v.force_error);
            outputs.force_pn = Some(v.force_pn);
            outputs.one_sided = Some(v.one_sided);
            exit::SUCCESS
        }
        Err(e) if e.is_breakdown() => {
            let _ = writeln!(stderr, "error: {e}");
            outputs.error = Some(e.to_string());
            exit::BREAKDOWN
        }
        Err(e) => return Err(e.into()),
    };
    let inputs = Inputs {
        sphere: setup.sphere.label.clone(),
        substrate: setup.substrate.label.clone(),
        ambient_eps: setup.ambient_eps,
        radius_nm: geometry.radius(),
        z_nm: geometry.gap(),
        z_over_r: geometry.gap() / geometry.radius(),
    };
    let record = RunRecord::new(
        inputs,
        options_echo(&setup.solver, setup.force_method),
        outputs,
    );
    emit(settings, stdout, &(record.to_json() + "\n"))?;
    Ok(code)
}

fn sweep(settings: &Settings, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let setup = model(settings)?;
    let spec = SweepSpec::from_settings(settings)?;
    let geometries = sweep_geometries(&spec, settings)?;
    warn_retardation(
        stderr,
        &setup.environment,
        retarded_points(&setup.environment, &geometries),
    );
    let rows = run_points(
        &setup.environment,
        &setup.solver,
        setup.force_method,
        &geometries,
    )?;
    let mut text = Vec::new();
    write_table(&mut text, SWEEP_HEADER, &rows)?;
    emit(
        settings,
        stdout,
        &String::from_utf8(text).expect("ascii table"),
    )?;
    Ok(exit::SUCCESS)
}

fn dos(settings: &Settings, stdout: &mut dyn Write) -> Result<i32> {
    let setup = model(settings)?;
    let drude = *setup.environment.sphere_drude()?;
    let gap = GapSpec::from_settings(settings)?.ok_or(CliError::Missing("z-over-r"))?;
    let geometry = match gap {
        GapSpec::OverRadius(ratio) => {
            // the profile depends on z/R only
            let radius = settings.positive("radius-nm")?.unwrap_or(1.0);
            Geometry::new(radius, ratio * radius)?
        }
        GapSpec::Nm(z) => {
            let radius = settings
                .positive("radius-nm")?
                .ok_or(CliError::Missing("radius-nm"))?;
            Geometry::new(radius, z)?
        }
    };
    let lo = settings.non_negative("omega-min-eV")?.unwrap_or(0.0);
    let hi = settings
        .positive("omega-max-eV")?
        .unwrap_or(2.0 * drude.plasma_energy);
    if hi <= lo {
        return Err(CliError::invalid(
            "omega-max-eV",
            format!("must exceed omega-min-eV ({lo})"),
        ));
    }
    let points = settings.get::<usize>("omega-points")?.unwrap_or(2000);
    if points < 2 {
        return Err(CliError::invalid("omega-points", "need at least 2"));
    }
    let grid = uniform_grid(lo, hi, points)?;
    let profile = dos_difference(
        &setup.environment,
        &geometry,
        &grid,
        setup.solver.coupling,
        setup.solver.normalization,
    )?;
    let mut text = Vec::new();
    profile.write_csv(&mut text)?;
    emit(
        settings,
        stdout,
        &String::from_utf8(text).expect("ascii table"),
    )?;
    Ok(exit::SUCCESS)
}

fn figure(number: u32, settings: &Settings, stdout: &mut dyn Write) -> Result<i32> {
    let (solver, method) = model::numerics(settings)?;
    let files = figure::figure(number, &solver, method)?;
    let dir = PathBuf::from(settings.raw("out").unwrap_or("."));
    fs::create_dir_all(&dir)?;
    for f in files {
        let path = dir.join(&f.name);
        fs::write(&path, f.contents)?;
        writeln!(stdout, "{}", path.display())?;
    }
    Ok(exit::SUCCESS)
}

fn dispatch(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let mut flags = Settings::default();
    let command = cli.command;
    match &command {
        Command::Eval {
            model,
            geometry,
            numerics,
            out,
        } => {
            model.apply(&mut flags);
            geometry.apply(&mut flags);
            numerics.apply(&mut flags);
            put(&mut flags, "out", out);
        }
        Command::Sweep {
            model,
            geometry,
            numerics,
            variable,
            from,
            to,
            points,
            spacing,
            out,
        } => {
            model.apply(&mut flags);
            geometry.apply(&mut flags);
            numerics.apply(&mut flags);
            put(&mut flags, "variable", variable);
            put(&mut flags, "from", from);
            put(&mut flags, "to", to);
            put(&mut flags, "points", points);
            put(&mut flags, "spacing", spacing);
            put(&mut flags, "out", out);
        }
        Command::Dos {
            model,
            geometry,
            numerics,
            omega_min_ev,
            omega_max_ev,
            omega_points,
            out,
        } => {
            model.apply(&mut flags);
            geometry.apply(&mut flags);
            numerics.apply(&mut flags);
            put(&mut flags, "omega-min-eV", omega_min_ev);
            put(&mut flags, "omega-max-eV", omega_max_ev);
            put(&mut flags, "omega-points", omega_points);
            put(&mut flags, "out", out);
        }
        Command::Figure { numerics, out, .. } => {
            numerics.apply(&mut flags);
            put(&mut flags, "out", out);
        }
    }
    let settings = base_settings(cli.config.as_deref())?.merge(flags);
    match command {
        Command::Eval { .. } => eval(&settings, stdout, stderr),
        Command::Sweep { .. } => sweep(&settings, stdout, stderr),
        Command::Dos { .. } => dos(&settings, stdout),
        Command::Figure { number, .. } => figure(number, &settings, stdout),
    }
}

/// Runs the tool with `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    exit::SUCCESS
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    exit::INVALID_INPUT
                }
            };
        }
    };
    match dispatch(cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
