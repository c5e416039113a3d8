//! Data behind the four standard figures, one CSV per material pair.

use casimir_core::dos::{default_grid, sample_profiles};
use casimir_core::output::sci;
use casimir_core::{Environment, ForceMethod, Geometry, Material, Solver};

use crate::error::{CliError, Result};
use crate::sweep::{run_points, Spacing, SweepSpec, SweepVariable, SWEEP_HEADER};

const FIG1_RADIUS_NM: f64 = 10.0;
const FIG2_RADII_NM: [f64; 3] = [10.0, 100.0, 1000.0];
const FIG3_RADIUS_NM: f64 = 10.0;
const FIG4_RATIOS: [f64; 5] = [0.0, 0.5, 1.0, 2.0, 4.0];
pub const FIG4_HEADER: &str = "z_over_R,omega_eV,rho_sp,rho_s,diff,valid";

type Preset = (&'static str, fn() -> Material);

const SPHERES: [Preset; 2] = [("K", Material::potassium), ("Au", Material::gold)];

fn substrate(label: &str) -> Material {
    match label {
        "sapphire" => Material::sapphire(),
        "tio2" => Material::titanium_dioxide(),
        _ => Material::PerfectConductor,
    }
}

/// A named CSV file.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureFile {
    pub name: String,
    pub contents: String,
}

fn file(figure: u32, sphere: &str, substrate: &str, header: &str, rows: &[String]) -> FigureFile {
    let mut contents = String::with_capacity(64 * (rows.len() + 1));
    contents.push_str(header);
    contents.push('\n');
    for row in rows {
        contents.push_str(row);
        contents.push('\n');
    }
    FigureFile {
        name: format!("fig{figure}_{sphere}_{substrate}.csv"),
        contents,
    }
}

fn geometries(spec: &SweepSpec, radius: f64) -> Result<Vec<(f64, Geometry)>> {
    spec.grid()
        .into_iter()
        .map(|x| {
            let gap = match spec.variable {
                SweepVariable::GapOverRadius => x * radius,
                _ => x,
            };
            Ok((x, Geometry::new(radius, gap)?))
        })
        .collect()
}

fn sweep_figure(
    figure: u32,
    substrates: &[&str],
    spec: &SweepSpec,
    radius: f64,
    solver: &Solver,
    method: ForceMethod,
) -> Result<Vec<FigureFile>> {
    let mut files = Vec::new();
    for (sphere_label, sphere) in SPHERES {
        for &substrate_label in substrates {
            let env = Environment::in_air(sphere(), substrate(substrate_label));
            let rows = run_points(&env, solver, method, &geometries(spec, radius)?)?;
            files.push(file(
                figure,
                sphere_label,
                substrate_label,
                SWEEP_HEADER,
                &rows,
            ));
        }
    }
    Ok(files)
}

fn fig2(solver: &Solver, method: ForceMethod) -> Result<Vec<FigureFile>> {
    let spec = SweepSpec::new(SweepVariable::Gap, 0.0, 40.0, 41, Spacing::Linear)?;
    let header = format!("radius_nm,{SWEEP_HEADER}");
    let mut files = Vec::new();
    for (sphere_label, sphere) in SPHERES {
        let env = Environment::in_air(sphere(), Material::PerfectConductor);
        let mut rows = Vec::new();
        for radius in FIG2_RADII_NM {
            let block = run_points(&env, solver, method, &geometries(&spec, radius)?)?;
            rows.extend(
                block
                    .into_iter()
                    .map(|row| format!("{},{row}", sci(radius))),
            );
        }
        files.push(file(2, sphere_label, "perfect", &header, &rows));
    }
    Ok(files)
}

fn fig4(solver: &Solver) -> Result<Vec<FigureFile>> {
    let mut files = Vec::new();
    for (sphere_label, sphere) in SPHERES {
        for substrate_label in ["sapphire", "perfect"] {
            let env = Environment::in_air(sphere(), substrate(substrate_label));
            let grid = default_grid(env.sphere_drude()?);
            let profiles = sample_profiles(
                &env,
                &FIG4_RATIOS,
                &grid,
                solver.coupling,
                solver.normalization,
            )?;
            let mut rows = Vec::new();
            for (ratio, profile) in profiles {
                match profile {
                    Ok(p) => {
                        for i in 0..p.omegas.len() {
                            rows.push(format!(
                                "{},{},{},{},{},true",
                                sci(ratio),
                                sci(p.omegas[i]),
                                sci(p.rho_sp[i]),
                                sci(p.rho_s[i]),
                                sci(p.diff[i])
                            ));
                        }
                    }
                    Err(e) if e.is_breakdown() => rows.push(format!("{},,,,,false", sci(ratio))),
                    Err(e) => return Err(CliError::Model(e)),
                }
            }
            files.push(file(4, sphere_label, substrate_label, FIG4_HEADER, &rows));
        }
    }
    Ok(files)
}

/// Computes every file of figure `number` (1 to 4).
pub fn figure(number: u32, solver: &Solver, method: ForceMethod) -> Result<Vec<FigureFile>> {
    match number {
        1 => {
            let spec = SweepSpec::new(SweepVariable::GapOverRadius, 0.0, 4.0, 81, Spacing::Linear)?;
            sweep_figure(
                1,
                &["sapphire", "tio2", "perfect"],
                &spec,
                FIG1_RADIUS_NM,
                solver,
                method,
            )
        }
        2 => fig2(solver, method),
        3 => {
            let spec = SweepSpec::new(SweepVariable::Gap, 0.0, 40.0, 41, Spacing::Linear)?;
            sweep_figure(
                3,
                &["sapphire", "perfect"],
                &spec,
                FIG3_RADIUS_NM,
                solver,
                method,
            )
        }
        4 => fig4(solver),
        other => Err(CliError::invalid(
            "figure",
            format!("no figure {other} (expected 1 to 4)"),
        )),
    }
}
