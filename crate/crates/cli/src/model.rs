//! Typed model inputs built from [`Settings`].

use casimir_core::{
    Coupling, Environment, ForceMethod, Material, Normalization, QuadratureConfig, Solver,
};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::settings::Settings;

/// A material together with the label it was selected by.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedMaterial {
    pub label: String,
    pub material: Material,
}

fn parse_pair(key: &'static str, text: &str) -> Result<(f64, f64)> {
    let (a, b) = text.split_once(',').ok_or_else(|| {
        CliError::invalid(key, format!("expected drude:<wp_eV>,<gamma>, got `{text}`"))
    })?;
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| CliError::invalid(key, format!("cannot parse `{s}`")))
    };
    Ok((parse(a)?, parse(b)?))
}

pub fn parse_sphere(text: &str) -> Result<NamedMaterial> {
    let key = "sphere";
    let (label, material) = match text {
        "K" | "k" => ("K".to_owned(), Material::potassium()),
        "Au" | "au" | "AU" => ("Au".to_owned(), Material::gold()),
        other => match other.strip_prefix("drude:") {
            Some(rest) => {
                let (wp, gamma) = parse_pair(key, rest)?;
                let material = Material::drude(wp, gamma)
                    .map_err(|e| CliError::invalid(key, e.to_string()))?;
                (format!("drude:{wp},{gamma}"), material)
            }
            None => {
                return Err(CliError::invalid(
                    key,
                    format!("unknown sphere `{other}` (K, Au or drude:<wp_eV>,<gamma>)"),
                ))
            }
        },
    };
    Ok(NamedMaterial { label, material })
}

pub fn parse_substrate(text: &str) -> Result<NamedMaterial> {
    let key = "substrate";
    let (label, material) = match text.to_ascii_lowercase().as_str() {
        "tio2" => ("tio2".to_owned(), Material::titanium_dioxide()),
        "sapphire" | "al2o3" => ("sapphire".to_owned(), Material::sapphire()),
        "perfect" => ("perfect".to_owned(), Material::PerfectConductor),
        "vacuum" => ("vacuum".to_owned(), Material::vacuum()),
        other => match other.strip_prefix("eps:") {
            Some(rest) => {
                let eps: f64 = rest
                    .trim()
                    .parse()
                    .map_err(|_| CliError::invalid(key, format!("cannot parse `{rest}`")))?;
                let material =
                    Material::constant(eps).map_err(|e| CliError::invalid(key, e.to_string()))?;
                (format!("eps:{eps}"), material)
            }
            None => return Err(CliError::invalid(
                key,
                format!(
                    "unknown substrate `{text}` (tio2, sapphire, perfect, vacuum or eps:<value>)"
                ),
            )),
        },
    };
    Ok(NamedMaterial { label, material })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelSetup {
    pub sphere: NamedMaterial,
    pub substrate: NamedMaterial,
    pub ambient_eps: f64,
    pub environment: Environment,
    pub solver: Solver,
    pub force_method: ForceMethod,
}

/// Echo of the numerical options, as written to run records.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct OptionsEcho {
    pub quad_tol: f64,
    pub omega_max: f64,
    pub tail_correction: bool,
    pub max_subdivisions: usize,
    pub normalization: &'static str,
    pub force_method: &'static str,
    pub coupling: &'static str,
}

pub fn normalization_label(n: Normalization) -> &'static str {
    match n {
        Normalization::PerModeUnity => "unity",
        Normalization::Verbatim => "verbatim",
    }
}

pub fn force_method_label(m: ForceMethod) -> &'static str {
    match m {
        ForceMethod::FiniteDifference => "fd",
        ForceMethod::SemiAnalytic => "analytic",
    }
}

pub fn coupling_label(c: Coupling) -> &'static str {
    match c {
        Coupling::AxialSymmetry => "axial",
        Coupling::Literal => "literal",
    }
}

/// Quadrature, normalization, coupling and force method; all have defaults.
pub fn numerics(settings: &Settings) -> Result<(Solver, ForceMethod)> {
    let defaults = QuadratureConfig::default();
    let quadrature = QuadratureConfig {
        rel_tol: settings.positive("quad-tol")?.unwrap_or(defaults.rel_tol),
        omega_max: settings
            .positive("omega-max")?
            .unwrap_or(defaults.omega_max),
        tail_correction: settings
            .get("tail-correction")?
            .unwrap_or(defaults.tail_correction),
        max_subdivisions: settings
            .get("max-subdivisions")?
            .unwrap_or(defaults.max_subdivisions),
    };
    quadrature.validate().map_err(|e| match e {
        casimir_core::Error::InvalidParameter { name, reason } => {
            let key = match name {
                "rel_tol" => "quad-tol",
                "omega_max" => "omega-max",
                _ => "max-subdivisions",
            };
            CliError::invalid(key, reason)
        }
        other => CliError::Model(other),
    })?;

    let normalization = match settings.raw("normalization").unwrap_or("unity") {
        "unity" => Normalization::PerModeUnity,
        "verbatim" => Normalization::Verbatim,
        other => {
            return Err(CliError::invalid(
                "normalization",
                format!("`{other}` is not unity|verbatim"),
            ))
        }
    };
    let force_method = match settings.raw("force-method").unwrap_or("fd") {
        "fd" => ForceMethod::FiniteDifference,
        "analytic" => ForceMethod::SemiAnalytic,
        other => {
            return Err(CliError::invalid(
                "force-method",
                format!("`{other}` is not fd|analytic"),
            ))
        }
    };
    let coupling = match settings.raw("coupling").unwrap_or("axial") {
        "axial" => Coupling::AxialSymmetry,
        "literal" => Coupling::Literal,
        other => {
            return Err(CliError::invalid(
                "coupling",
                format!("`{other}` is not axial|literal"),
            ))
        }
    };
    Ok((
        Solver {
            quadrature,
            coupling,
            normalization,
        },
        force_method,
    ))
}

pub fn options_echo(solver: &Solver, force_method: ForceMethod) -> OptionsEcho {
    OptionsEcho {
        quad_tol: solver.quadrature.rel_tol,
        omega_max: solver.quadrature.omega_max,
        tail_correction: solver.quadrature.tail_correction,
        max_subdivisions: solver.quadrature.max_subdivisions,
        normalization: normalization_label(solver.normalization),
        force_method: force_method_label(force_method),
        coupling: coupling_label(solver.coupling),
    }
}

pub fn build_environment(
    sphere: &NamedMaterial,
    substrate: &NamedMaterial,
    ambient_eps: f64,
) -> Result<Environment> {
    let ambient = Material::constant(ambient_eps)
        .map_err(|e| CliError::invalid("ambient-eps", e.to_string()))?;
    Environment::new(sphere.material, substrate.material, ambient)
        .map_err(|e| CliError::invalid("ambient-eps", e.to_string()))
}

pub fn model(settings: &Settings) -> Result<ModelSetup> {
    let sphere = parse_sphere(settings.raw("sphere").ok_or(CliError::Missing("sphere"))?)?;
    let substrate = parse_substrate(
        settings
            .raw("substrate")
            .ok_or(CliError::Missing("substrate"))?,
    )?;
    let ambient_eps = settings.positive("ambient-eps")?.unwrap_or(1.0);
    let environment = build_environment(&sphere, &substrate, ambient_eps)?;
    let (solver, force_method) = numerics(settings)?;
    Ok(ModelSetup {
        sphere,
        substrate,
        ambient_eps,
        environment,
        solver,
        force_method,
    })
}

/// Gap selection: absolute in nm or relative to the radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GapSpec {
    Nm(f64),
    OverRadius(f64),
}

impl GapSpec {
    pub fn from_settings(settings: &Settings) -> Result<Option<Self>> {
        let nm = settings.non_negative("z-nm")?;
        let ratio = settings.non_negative("z-over-r")?;
        match (nm, ratio) {
            (Some(_), Some(_)) => Err(CliError::invalid(
                "z-over-r",
                "give either z-nm or z-over-r, not both",
            )),
            (Some(z), None) => Ok(Some(GapSpec::Nm(z))),
            (None, Some(r)) => Ok(Some(GapSpec::OverRadius(r))),
            (None, None) => Ok(None),
        }
    }

    pub fn gap_nm(self, radius: f64) -> f64 {
        match self {
            GapSpec::Nm(z) => z,
            GapSpec::OverRadius(r) => r * radius,
        }
    }
}
