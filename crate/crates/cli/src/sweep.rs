//! Parameter sweeps producing `x,U_eV,F_eV_per_nm,F_pN,valid` tables.

use std::io::Write;

use casimir_core::energy::beyond_nonretarded_limit;
use casimir_core::output::{quantize, sci};
use casimir_core::{Environment, ForceMethod, Geometry, Solver};
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::model::GapSpec;
use crate::settings::Settings;

pub const SWEEP_HEADER: &str = "x,U_eV,F_eV_per_nm,F_pN,valid";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    Gap,
    GapOverRadius,
    Radius,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub from: f64,
    pub to: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl SweepSpec {
    pub fn new(
        variable: SweepVariable,
        from: f64,
        to: f64,
        points: usize,
        spacing: Spacing,
    ) -> Result<Self> {
        if points < 2 {
            return Err(CliError::invalid(
                "points",
                format!("need at least 2, got {points}"),
            ));
        }
        if !(from.is_finite() && to.is_finite()) {
            return Err(CliError::invalid("from", "sweep bounds must be finite"));
        }
        if from >= to {
            return Err(CliError::invalid(
                "to",
                format!("must exceed from ({from})"),
            ));
        }
        if from < 0.0 {
            return Err(CliError::invalid("from", "must be >= 0"));
        }
        if variable == SweepVariable::Radius && from <= 0.0 {
            return Err(CliError::invalid("from", "radius sweep must start above 0"));
        }
        if spacing == Spacing::Log && from <= 0.0 {
            return Err(CliError::invalid("from", "log spacing needs from > 0"));
        }
        Ok(Self {
            variable,
            from,
            to,
            points,
            spacing,
        })
    }

    pub fn from_settings(settings: &Settings) -> Result<Self> {
        let variable = match settings
            .raw("variable")
            .ok_or(CliError::Missing("variable"))?
        {
            "z" => SweepVariable::Gap,
            "z_over_R" | "z_over_r" => SweepVariable::GapOverRadius,
            "R" | "r" => SweepVariable::Radius,
            other => {
                return Err(CliError::invalid(
                    "variable",
                    format!("`{other}` is not z|z_over_R|R"),
                ))
            }
        };
        let spacing = match settings.raw("spacing").unwrap_or("linear") {
            "linear" => Spacing::Linear,
            "log" => Spacing::Log,
            other => {
                return Err(CliError::invalid(
                    "spacing",
                    format!("`{other}` is not linear|log"),
                ))
            }
        };
        let from = settings.float("from")?.ok_or(CliError::Missing("from"))?;
        let to = settings.float("to")?.ok_or(CliError::Missing("to"))?;
        let points = settings.require::<usize>("points")?;
        Self::new(variable, from, to, points, spacing)
    }

    /// Grid values rounded to their printed form, so every `x` in the output is the
    /// exact input that produced its row.
    pub fn grid(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                let t = i as f64 / last;
                let x = match self.spacing {
                    Spacing::Linear => self.from + (self.to - self.from) * t,
                    Spacing::Log => (self.from.ln() + (self.to.ln() - self.from.ln()) * t).exp(),
                };
                let x = if i == 0 {
                    self.from
                } else if i == self.points - 1 {
                    self.to
                } else {
                    x
                };
                quantize(x)
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointValues {
    pub energy: f64,
    pub energy_error: f64,
    pub force: f64,
    pub force_pn: f64,
    pub force_error: f64,
    pub one_sided: bool,
}

pub fn evaluate_point(
    environment: &Environment,
    solver: &Solver,
    method: ForceMethod,
    geometry: &Geometry,
) -> casimir_core::Result<PointValues> {
    let energy = solver.energy(environment, geometry)?;
    let force = solver.force(environment, geometry, method)?;
    Ok(PointValues {
        energy: energy.energy,
        energy_error: energy.estimated_error,
        force: force.force,
        force_pn: force.force_pn(),
        force_error: force.estimated_error,
        one_sided: force.one_sided,
    })
}

/// One CSV row: numbers on success, empty numeric fields on breakdown.
pub fn format_row(x: f64, outcome: &casimir_core::Result<PointValues>) -> Result<String> {
    match outcome {
        Ok(v) => Ok(format!(
            "{},{},{},{},true",
            sci(x),
            sci(v.energy),
            sci(v.force),
            sci(v.force_pn)
        )),
        Err(e) if e.is_breakdown() => Ok(format!("{},,,,false", sci(x))),
        Err(e) => Err(CliError::Model(e.clone())),
    }
}

/// Evaluates every point (in parallel) and returns rows in grid order.
pub fn run_points(
    environment: &Environment,
    solver: &Solver,
    method: ForceMethod,
    geometries: &[(f64, Geometry)],
) -> Result<Vec<String>> {
    let outcomes: Vec<_> = geometries
        .par_iter()
        .map(|(x, geometry)| (*x, evaluate_point(environment, solver, method, geometry)))
        .collect();
    outcomes
        .iter()
        .map(|(x, outcome)| format_row(*x, outcome))
        .collect()
}

/// `(x, geometry)` pairs for a sweep with the non-swept quantities from settings.
pub fn sweep_geometries(spec: &SweepSpec, settings: &Settings) -> Result<Vec<(f64, Geometry)>> {
    let grid = spec.grid();
    let geometry = |radius: f64, gap: f64| Geometry::new(radius, gap).map_err(CliError::Model);
    match spec.variable {
        SweepVariable::Gap | SweepVariable::GapOverRadius => {
            let radius = settings
                .positive("radius-nm")?
                .ok_or(CliError::Missing("radius-nm"))?;
            grid.into_iter()
                .map(|x| {
                    let gap = match spec.variable {
                        SweepVariable::Gap => GapSpec::Nm(x),
                        _ => GapSpec::OverRadius(x),
                    };
                    Ok((x, geometry(radius, gap.gap_nm(radius))?))
                })
                .collect()
        }
        SweepVariable::Radius => {
            let gap = GapSpec::from_settings(settings)?.ok_or(CliError::Missing("z-nm"))?;
            grid.into_iter()
                .map(|x| Ok((x, geometry(x, gap.gap_nm(x))?)))
                .collect()
        }
    }
}

pub fn write_table<W: Write>(out: &mut W, header: &str, rows: &[String]) -> Result<()> {
    writeln!(out, "{header}")?;
    for row in rows {
        writeln!(out, "{row}")?;
    }
    Ok(())
}

/// Number of points that lie beyond the non-retarded regime.
pub fn retarded_points(environment: &Environment, geometries: &[(f64, Geometry)]) -> usize {
    geometries
        .iter()
        .filter(|(_, g)| beyond_nonretarded_limit(environment, g))
        .count()
}
