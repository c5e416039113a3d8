//! Zero-point interaction energy and the Casimir force `F = -dU/dz`.
//!
//! `U = int_0^inf (omega / 2) [rho_sp(omega) - rho_s(omega)] d omega`. The integrand
//! decays like `omega^-2`, so the integral is cut at `omega_max * omega_p` and the
//! remaining tail is added from an asymptotic fit.

use crate::dos::{
    line_shape_slope, mode_frequency, mode_frequency_slope, DrudeSpectrum, Normalization,
};
use crate::error::{Error, Result};
use crate::materials::Environment;
use crate::quadrature::integrate;
use crate::spectral::{modes_for, Coupling, Geometry, SpectralModes, ISOLATED_FACTOR};
use crate::units::{ev_per_nm_to_pn, retardation_length_nm};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    /// Cutoff in units of `omega_p`.
    pub omega_max: f64,
    pub tail_correction: bool,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            omega_max: 50.0,
            tail_correction: true,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-2) {
            return Err(Error::invalid("rel_tol", "must lie in (0, 1e-2]"));
        }
        if !(self.omega_max.is_finite() && self.omega_max >= 10.0) {
            return Err(Error::invalid(
                "omega_max",
                "must be >= 10 (units of omega_p)",
            ));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::invalid("max_subdivisions", "must be > 0"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyResult {
    /// eV in per-mode-unity normalization, eV * omega_p[eV] in verbatim.
    pub energy: f64,
    pub estimated_error: f64,
    /// Upper limit of the explicit quadrature, eV.
    pub cutoff: f64,
    /// Analytic tail beyond the cutoff (included in `energy` when tail correction is on).
    pub tail: f64,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ForceMethod {
    /// Central differences of the energy with one Richardson step.
    #[default]
    FiniteDifference,
    /// Differentiates under the integral through `d omega_s / d z`.
    SemiAnalytic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceResult {
    /// eV/nm; negative is attractive.
    pub force: f64,
    pub estimated_error: f64,
    pub method: ForceMethod,
    /// The stencil could not reach below `z` and a forward difference was used.
    pub one_sided: bool,
}

impl ForceResult {
    pub fn force_pn(&self) -> f64 {
        ev_per_nm_to_pn(self.force)
    }
}

/// Model and numerical settings for energy and force evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Solver {
    pub quadrature: QuadratureConfig,
    pub coupling: Coupling,
    pub normalization: Normalization,
}

struct Spectra {
    coupled: DrudeSpectrum,
    isolated: DrudeSpectrum,
    coupled_modes: SpectralModes,
}

/// Tail of `int_cutoff^inf f` from `f(w) w^2 = A + B/w^2 + C/w^4` fitted on the last
/// decade below the cutoff. Returns `(tail, uncertainty)`.
fn fitted_tail<F: Fn(f64) -> f64>(f: &F, cutoff: f64) -> (f64, f64) {
    let nodes = [cutoff / 10.0, cutoff / 10.0_f64.sqrt(), cutoff];
    let t: Vec<f64> = nodes.iter().map(|w| 1.0 / (w * w)).collect();
    let g: Vec<f64> = nodes.iter().map(|&w| f(w) * w * w).collect();

    // quadratic through three points in t (Newton form)
    let d01 = (g[1] - g[0]) / (t[1] - t[0]);
    let d12 = (g[2] - g[1]) / (t[2] - t[1]);
    let c = (d12 - d01) / (t[2] - t[0]);
    let b = d01 - c * (t[0] + t[1]);
    let a = g[0] - b * t[0] - c * t[0] * t[0];
    let three = a / cutoff + b / (3.0 * cutoff.powi(3)) + c / (5.0 * cutoff.powi(5));

    // two-term fit on the upper pair for the uncertainty
    let b2 = d12;
    let a2 = g[2] - b2 * t[2];
    let two = a2 / cutoff + b2 / (3.0 * cutoff.powi(3));
    (three, (three - two).abs())
}

fn breakpoints(spectra: &Spectra, plasma: f64, cutoff: f64) -> Vec<f64> {
    let damping = spectra.coupled.damping;
    let mut points = vec![0.0, cutoff];
    for r in spectra
        .coupled
        .resonances
        .iter()
        .chain(&spectra.isolated.resonances)
    {
        points.push(r.frequency);
        for k in [1.0, 4.0, 16.0] {
            points.push(r.frequency - k * damping);
            points.push(r.frequency + k * damping);
        }
    }
    for k in [2.0, 5.0, 10.0, 20.0] {
        points.push(k * plasma);
    }
    points.retain(|w| *w >= 0.0 && *w <= cutoff);
    points.sort_by(f64::total_cmp);
    points.dedup_by(|b, a| *b - *a <= 1e-12 * cutoff);
    points
}

impl Solver {
    fn spectra(&self, environment: &Environment, geometry: &Geometry) -> Result<Spectra> {
        let contrast = environment.contrast_factor()?;
        let drude = environment.sphere_drude()?;
        let ambient = environment.ambient_epsilon();
        let coupled_modes = modes_for(contrast, geometry.d_over_r(), self.coupling)?;
        coupled_modes.require_valid()?;
        let isolated_modes = modes_for(0.0, geometry.d_over_r(), self.coupling)?;
        Ok(Spectra {
            coupled: DrudeSpectrum::new(&coupled_modes, drude, ambient, self.normalization)?,
            isolated: DrudeSpectrum::new(&isolated_modes, drude, ambient, self.normalization)?,
            coupled_modes,
        })
    }

    fn integrate_with_tail<F: Fn(f64) -> f64>(
        &self,
        integrand: F,
        points: &[f64],
        rel_tol: f64,
    ) -> Result<EnergyResult> {
        let q = &self.quadrature;
        let cutoff = *points.last().expect("cutoff present");
        let body = integrate(&integrand, points, rel_tol, q.max_subdivisions)?;
        let (tail, tail_error) = fitted_tail(&integrand, cutoff);
        let (energy, estimated_error) = if q.tail_correction {
            (body.value + tail, body.error + tail_error)
        } else {
            (body.value, body.error + tail.abs())
        };
        Ok(EnergyResult {
            energy,
            estimated_error,
            cutoff,
            tail,
            subdivisions: body.subdivisions,
        })
    }

    fn energy_with_tolerance(
        &self,
        environment: &Environment,
        geometry: &Geometry,
        rel_tol: f64,
    ) -> Result<EnergyResult> {
        self.quadrature.validate()?;
        let spectra = self.spectra(environment, geometry)?;
        let plasma = spectra.coupled.plasma_energy;
        let cutoff = self.quadrature.omega_max * plasma;
        let points = breakpoints(&spectra, plasma, cutoff);
        let integrand = |w: f64| 0.5 * w * (spectra.coupled.total(w) - spectra.isolated.total(w));
        self.integrate_with_tail(integrand, &points, rel_tol)
    }

    /// Interaction energy by adaptive quadrature over frequency.
    pub fn energy(&self, environment: &Environment, geometry: &Geometry) -> Result<EnergyResult> {
        self.energy_with_tolerance(environment, geometry, self.quadrature.rel_tol)
    }

    /// `gamma -> 0` limit: every mode contributes `omega_s / 2`.
    pub fn sharp_limit_energy(
        &self,
        environment: &Environment,
        geometry: &Geometry,
    ) -> Result<f64> {
        let contrast = environment.contrast_factor()?;
        let drude = environment.sphere_drude()?;
        let ambient = environment.ambient_epsilon();
        let modes = modes_for(contrast, geometry.d_over_r(), self.coupling)?;
        modes.require_valid()?;
        let half_sum = |modes: &SpectralModes| -> f64 {
            modes
                .entries
                .iter()
                .map(|e| {
                    e.multiplicity() * 0.5 * mode_frequency(e.factor, drude.plasma_energy, ambient)
                })
                .sum()
        };
        let isolated = modes_for(0.0, geometry.d_over_r(), self.coupling)?;
        let scale = self.normalization.scale(drude.plasma_energy);
        Ok(scale * (half_sum(&modes) - half_sum(&isolated)))
    }

    pub fn force(
        &self,
        environment: &Environment,
        geometry: &Geometry,
        method: ForceMethod,
    ) -> Result<ForceResult> {
        match method {
            ForceMethod::FiniteDifference => self.force_finite_difference(environment, geometry),
            ForceMethod::SemiAnalytic => self.force_semi_analytic(environment, geometry),
        }
    }

    fn force_finite_difference(
        &self,
        environment: &Environment,
        geometry: &Geometry,
    ) -> Result<ForceResult> {
        let radius = geometry.radius();
        let z = geometry.gap();
        let h = (1e-3 * radius).max(1e-3);
        // Differencing divides quadrature error by h; integrate the stencil tighter.
        let rel_tol = (self.quadrature.rel_tol * 1e-2).max(1e-13);
        let energy_at = |gap: f64| -> Result<EnergyResult> {
            self.energy_with_tolerance(environment, &Geometry::new(radius, gap)?, rel_tol)
        };

        let center = energy_at(z)?;
        let plus1 = energy_at(z + h)?;
        let plus2 = energy_at(z + 2.0 * h)?;

        let backward = if z - 2.0 * h >= 0.0 {
            match (energy_at(z - h), energy_at(z - 2.0 * h)) {
                (Ok(m1), Ok(m2)) => Some((m1, m2)),
                (Err(e), _) | (_, Err(e)) if e.is_breakdown() => None,
                (Err(e), _) | (_, Err(e)) => return Err(e),
            }
        } else {
            None
        };

        let (derivative, coarse, noise, one_sided) = match backward {
            Some((m1, m2)) => {
                let d1 = (plus1.energy - m1.energy) / (2.0 * h);
                let d2 = (plus2.energy - m2.energy) / (4.0 * h);
                let noise = (plus1.estimated_error + m1.estimated_error) / (2.0 * h);
                ((4.0 * d1 - d2) / 3.0, d1, noise, false)
            }
            None => {
                let plus4 = energy_at(z + 4.0 * h)?;
                let d1 = (-3.0 * center.energy + 4.0 * plus1.energy - plus2.energy) / (2.0 * h);
                let d2 = (-3.0 * center.energy + 4.0 * plus2.energy - plus4.energy) / (4.0 * h);
                let noise = (3.0 * center.estimated_error
                    + 4.0 * plus1.estimated_error
                    + plus2.estimated_error)
                    / (2.0 * h);
                ((4.0 * d1 - d2) / 3.0, d1, noise, true)
            }
        };
        Ok(ForceResult {
            force: -derivative,
            estimated_error: (derivative - coarse).abs() + noise,
            method: ForceMethod::FiniteDifference,
            one_sided,
        })
    }

    fn force_semi_analytic(
        &self,
        environment: &Environment,
        geometry: &Geometry,
    ) -> Result<ForceResult> {
        self.quadrature.validate()?;
        let spectra = self.spectra(environment, geometry)?;
        let plasma = spectra.coupled.plasma_energy;
        let cutoff = self.quadrature.omega_max * plasma;
        let points = breakpoints(&spectra, plasma, cutoff);
        let distance = geometry.center_distance();
        let ambient = spectra.coupled.ambient_epsilon;
        let damping = spectra.coupled.damping;
        let scale = self.normalization.scale(plasma);

        // H - 1/3 scales as (R/d)^3 with fixed eigenvectors, so dn_s/dd = -3 (n_s - 1/3) / d.
        let shifts: Vec<(f64, f64, f64)> = spectra
            .coupled_modes
            .entries
            .iter()
            .map(|e| {
                let dn_dd = -3.0 * (e.factor - ISOLATED_FACTOR) / distance;
                let center = mode_frequency(e.factor, plasma, ambient);
                let dw_dd = mode_frequency_slope(e.factor, plasma, ambient) * dn_dd;
                (e.multiplicity(), center, dw_dd)
            })
            .collect();
        let integrand = |w: f64| -> f64 {
            0.5 * w
                * scale
                * shifts
                    .iter()
                    .map(|(mult, center, dw_dd)| {
                        mult * line_shape_slope(w, *center, damping) * dw_dd
                    })
                    .sum::<f64>()
        };
        let derivative = self.integrate_with_tail(integrand, &points, self.quadrature.rel_tol)?;
        Ok(ForceResult {
            force: -derivative.energy,
            estimated_error: derivative.estimated_error,
            method: ForceMethod::SemiAnalytic,
            one_sided: false,
        })
    }
}

pub fn casimir_energy(
    environment: &Environment,
    geometry: &Geometry,
    quadrature: &QuadratureConfig,
) -> Result<EnergyResult> {
    Solver {
        quadrature: *quadrature,
        ..Solver::default()
    }
    .energy(environment, geometry)
}

pub fn casimir_force(
    environment: &Environment,
    geometry: &Geometry,
    quadrature: &QuadratureConfig,
    method: ForceMethod,
) -> Result<ForceResult> {
    Solver {
        quadrature: *quadrature,
        ..Solver::default()
    }
    .force(environment, geometry, method)
}

pub fn sharp_limit_energy(environment: &Environment, geometry: &Geometry) -> Result<f64> {
    Solver::default().sharp_limit_energy(environment, geometry)
}

/// True when the radius or gap exceeds `c / omega_p`, where retardation matters.
pub fn beyond_nonretarded_limit(environment: &Environment, geometry: &Geometry) -> bool {
    environment.sphere().as_drude().is_some_and(|drude| {
        let limit = retardation_length_nm(drude.plasma_energy);
        geometry.radius() > limit || geometry.gap() > limit
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::Material;
    use approx::assert_relative_eq;

    fn env(sphere: Material, substrate: Material) -> Environment {
        Environment::in_air(sphere, substrate)
    }

    #[test]
    fn null_coupling_is_exactly_zero() {
        let e = env(Material::gold(), Material::vacuum());
        let g = Geometry::from_ratio(10.0, 0.0).unwrap();
        let result = casimir_energy(&e, &g, &QuadratureConfig::default()).unwrap();
        assert_eq!(result.energy, 0.0);
        for method in [ForceMethod::FiniteDifference, ForceMethod::SemiAnalytic] {
            let f = casimir_force(&e, &g, &QuadratureConfig::default(), method).unwrap();
            assert_eq!(f.force, 0.0);
        }
        assert_eq!(sharp_limit_energy(&e, &g).unwrap(), 0.0);
    }

    #[test]
    fn sharp_limit_closed_form() {
        // mpmath, 40 digits
        let e = env(Material::gold(), Material::PerfectConductor);
        let g = Geometry::from_ratio(10.0, 1.0).unwrap();
        assert_relative_eq!(
            sharp_limit_energy(&e, &g).unwrap(),
            -0.649_489_454_741_35,
            max_relative = 1e-14
        );
        let verbatim = Solver {
            normalization: Normalization::Verbatim,
            ..Solver::default()
        };
        assert_relative_eq!(
            verbatim.sharp_limit_energy(&e, &g).unwrap(),
            -0.649_489_454_741_35 * 8.55,
            max_relative = 1e-14
        );
    }

    #[test]
    fn quadrature_reproduces_sum_rule() {
        // The full integral of (w/2) L_s equals omega_s / 2 for any damping.
        let e = env(Material::gold(), Material::PerfectConductor);
        let g = Geometry::from_ratio(10.0, 1.0).unwrap();
        let result = casimir_energy(&e, &g, &QuadratureConfig::default()).unwrap();
        assert_relative_eq!(result.energy, -0.649_489_454_741_35, max_relative = 1e-7);
        assert!(result.estimated_error < 1e-7);
        assert!(result.tail < 0.0);

        let raw = casimir_energy(
            &e,
            &g,
            &QuadratureConfig {
                tail_correction: false,
                ..QuadratureConfig::default()
            },
        )
        .unwrap();
        // cut-off alone misses ~2 gamma / (50 pi) of the energy
        let missing = (raw.energy - result.energy) / result.energy;
        assert!(
            missing < 0.0 && missing.abs() > 1e-4 && missing.abs() < 2e-4,
            "{missing}"
        );
    }

    #[test]
    fn breakdown_is_typed() {
        let e = env(Material::gold(), Material::PerfectConductor);
        let g = Geometry::from_ratio(10.0, 0.0).unwrap();
        let err = casimir_energy(&e, &g, &QuadratureConfig::default()).unwrap_err();
        match err {
            Error::Breakdown { factor, .. } => {
                assert_relative_eq!(factor, -1.0 / 3.0, epsilon = 1e-15)
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(sharp_limit_energy(&e, &g).unwrap_err().is_breakdown());
    }

    #[test]
    fn dispersive_substrate_and_constant_sphere_are_rejected() {
        let g = Geometry::from_ratio(10.0, 1.0).unwrap();
        let q = QuadratureConfig::default();
        assert!(casimir_energy(&env(Material::gold(), Material::potassium()), &g, &q).is_err());
        assert!(casimir_energy(
            &env(Material::sapphire(), Material::PerfectConductor),
            &g,
            &q
        )
        .is_err());
        let undamped = Material::drude(8.55, 0.0).unwrap();
        assert!(casimir_energy(&env(undamped, Material::PerfectConductor), &g, &q).is_err());
        assert!(sharp_limit_energy(&env(undamped, Material::PerfectConductor), &g).is_ok());
    }

    #[test]
    fn quadrature_config_validation() {
        let bad = [
            QuadratureConfig {
                rel_tol: 0.0,
                ..Default::default()
            },
            QuadratureConfig {
                rel_tol: 0.1,
                ..Default::default()
            },
            QuadratureConfig {
                omega_max: 5.0,
                ..Default::default()
            },
            QuadratureConfig {
                max_subdivisions: 0,
                ..Default::default()
            },
        ];
        for config in bad {
            assert!(config.validate().is_err());
        }
    }

    #[test]
    fn force_methods_agree_and_attract() {
        let e = env(Material::potassium(), Material::PerfectConductor);
        let g = Geometry::from_ratio(10.0, 1.0).unwrap();
        let q = QuadratureConfig::default();
        let fd = casimir_force(&e, &g, &q, ForceMethod::FiniteDifference).unwrap();
        let sa = casimir_force(&e, &g, &q, ForceMethod::SemiAnalytic).unwrap();
        assert!(fd.force < 0.0 && !fd.one_sided);
        assert_relative_eq!(fd.force, sa.force, max_relative = 1e-4);
    }

    #[test]
    fn sharp_force_oracle() {
        // F = -(omega_p / 2) sum mult (1 / (2 sqrt n)) dn/dd in air
        let e = env(Material::gold(), Material::sapphire());
        let g = Geometry::from_ratio(10.0, 0.8).unwrap();
        let fc = e.contrast_factor().unwrap();
        let d = g.center_distance();
        let k = g.d_over_r().powi(-3);
        let terms = [(1.0, 2.0 / 3.0), (2.0, 1.0 / 3.0)];
        let expected: f64 = -terms
            .iter()
            .map(|(deg, c)| {
                let n = 1.0 / 3.0 + c * fc * k;
                let dn_dd = -3.0 * c * fc * k / d;
                deg * 8.55 / 2.0 * dn_dd / (2.0 * n.sqrt())
            })
            .sum::<f64>();
        let sa = casimir_force(
            &e,
            &g,
            &QuadratureConfig::default(),
            ForceMethod::SemiAnalytic,
        )
        .unwrap();
        assert_relative_eq!(sa.force, expected, max_relative = 1e-6);
    }

    #[test]
    fn near_contact_uses_forward_stencil() {
        let e = env(Material::gold(), Material::vacuum());
        let weak = env(Material::gold(), Material::constant(1.5).unwrap());
        let g = Geometry::new(10.0, 0.0).unwrap();
        let f = casimir_force(
            &weak,
            &g,
            &QuadratureConfig::default(),
            ForceMethod::FiniteDifference,
        )
        .unwrap();
        assert!(f.one_sided);
        let sa = casimir_force(
            &weak,
            &g,
            &QuadratureConfig::default(),
            ForceMethod::SemiAnalytic,
        )
        .unwrap();
        assert_relative_eq!(f.force, sa.force, max_relative = 1e-4);
        assert!(casimir_force(
            &e,
            &g,
            &QuadratureConfig::default(),
            ForceMethod::FiniteDifference
        )
        .is_ok());
    }

    #[test]
    fn retardation_limit() {
        let e = env(Material::gold(), Material::PerfectConductor);
        assert!(!beyond_nonretarded_limit(
            &e,
            &Geometry::new(10.0, 5.0).unwrap()
        ));
        assert!(beyond_nonretarded_limit(
            &e,
            &Geometry::new(100.0, 5.0).unwrap()
        ));
        assert!(beyond_nonretarded_limit(
            &e,
            &Geometry::new(10.0, 40.0).unwrap()
        ));
    }
}
