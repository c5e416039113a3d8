//! Electromagnetic density of states in frequency for a Drude sphere near a substrate.
//!
//! With `u = 1 / (1 - eps_s / eps_a)` and a Drude sphere, each pole `1 / (u - n_s)`
//! becomes a damped oscillator at the mode energy
//! `omega_s = omega_p sqrt(n_s / (n_s + eps_a (1 - n_s)))` (that is `sqrt(n_s) omega_p`
//! in air), with line shape
//!
//! ```text
//! L_s(w) = (2 omega_s / pi) w Gamma / ((w^2 - omega_s^2)^2 + (w Gamma)^2),   Gamma = gamma omega_p
//! ```
//!
//! `L_s` integrates to one over `w` in the sharp limit. The verbatim normalization
//! multiplies every line by `omega_p`, which in air is the textbook expression
//! `(2 omega_p^2 / pi) sqrt(n_s) w Gamma / (...)` term for term.

use std::f64::consts::PI;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::materials::{Drude, Environment};
use crate::output::sci;
use crate::spectral::{modes_for, Coupling, Geometry, ModeDensity, SpectralModes, ISOLATED_FACTOR};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Every mode integrates to one over frequency; densities in 1/eV, energies in eV.
    #[default]
    PerModeUnity,
    /// Lines scaled by `omega_p`; energies in eV times `omega_p` (eV).
    Verbatim,
}

impl Normalization {
    pub fn scale(self, plasma_energy: f64) -> f64 {
        match self {
            Normalization::PerModeUnity => 1.0,
            Normalization::Verbatim => plasma_energy,
        }
    }
}

/// Resonance energy of a mode with depolarization factor `factor`.
pub fn mode_frequency(factor: f64, plasma_energy: f64, ambient_epsilon: f64) -> f64 {
    plasma_energy * (factor / (factor + ambient_epsilon * (1.0 - factor))).sqrt()
}

/// `d omega_s / d n_s`.
pub fn mode_frequency_slope(factor: f64, plasma_energy: f64, ambient_epsilon: f64) -> f64 {
    let b = factor + ambient_epsilon * (1.0 - factor);
    0.5 * plasma_energy * (b / factor).sqrt() * ambient_epsilon / (b * b)
}

/// Unit-area damped-oscillator line centred on `center`.
pub fn line_shape(omega: f64, center: f64, damping: f64) -> f64 {
    let detuning = omega * omega - center * center;
    let width = omega * damping;
    2.0 * center / PI * width / (detuning * detuning + width * width)
}

/// `d line_shape / d center`.
pub fn line_shape_slope(omega: f64, center: f64, damping: f64) -> f64 {
    let detuning = omega * omega - center * center;
    let width = omega * damping;
    let denominator = detuning * detuning + width * width;
    2.0 / PI * width / denominator * (1.0 + 4.0 * center * center * detuning / denominator)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    pub m: i32,
    pub factor: f64,
    /// Mode energy in eV.
    pub frequency: f64,
    /// Spectral weight times degeneracy.
    pub multiplicity: f64,
}

/// Resonances of a valid mode set for a given Drude sphere and ambient.
#[derive(Debug, Clone, PartialEq)]
pub struct DrudeSpectrum {
    pub resonances: Vec<Resonance>,
    pub plasma_energy: f64,
    /// `hbar / tau` in eV.
    pub damping: f64,
    pub ambient_epsilon: f64,
    pub normalization: Normalization,
}

impl DrudeSpectrum {
    pub fn new(
        modes: &SpectralModes,
        drude: &Drude,
        ambient_epsilon: f64,
        normalization: Normalization,
    ) -> Result<Self> {
        modes.require_valid()?;
        if !(drude.damping_ratio > 0.0) {
            return Err(Error::invalid(
                "damping_ratio",
                "must be > 0 for a frequency-domain density of states",
            ));
        }
        let resonances = modes
            .entries
            .iter()
            .map(|e| Resonance {
                m: e.m,
                factor: e.factor,
                frequency: mode_frequency(e.factor, drude.plasma_energy, ambient_epsilon),
                multiplicity: e.multiplicity(),
            })
            .collect();
        Ok(Self {
            resonances,
            plasma_energy: drude.plasma_energy,
            damping: drude.damping_energy(),
            ambient_epsilon,
            normalization,
        })
    }

    fn scale(&self) -> f64 {
        self.normalization.scale(self.plasma_energy)
    }

    pub fn density(&self, omega: f64) -> ModeDensity {
        let component = |m: i32| -> f64 {
            // multiplicity carries the degeneracy; ModeDensity applies it to the total
            let degeneracy = if m == 0 { 1.0 } else { 2.0 };
            self.resonances
                .iter()
                .filter(|r| r.m == m)
                .map(|r| r.multiplicity / degeneracy * line_shape(omega, r.frequency, self.damping))
                .sum::<f64>()
                * self.scale()
        };
        ModeDensity::from_components(component(0), component(1))
    }

    /// Total density summed straight over resonances.
    pub fn total(&self, omega: f64) -> f64 {
        self.resonances
            .iter()
            .map(|r| r.multiplicity * line_shape(omega, r.frequency, self.damping))
            .sum::<f64>()
            * self.scale()
    }
}

/// `rho_m(omega)` for the given modes, per polarization and degeneracy-weighted total.
pub fn dos_omega(
    modes: &SpectralModes,
    omega: f64,
    drude: &Drude,
    ambient_epsilon: f64,
    normalization: Normalization,
) -> Result<ModeDensity> {
    if !(omega.is_finite() && omega >= 0.0) {
        return Err(Error::invalid("omega", "must be finite and >= 0"));
    }
    Ok(DrudeSpectrum::new(modes, drude, ambient_epsilon, normalization)?.density(omega))
}

/// `points` equally spaced energies on `[start, end]`.
pub fn uniform_grid(start: f64, end: f64, points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::invalid("points", "need at least 2 grid points"));
    }
    if !(start.is_finite() && end.is_finite() && start >= 0.0 && end > start) {
        return Err(Error::invalid("grid", "need 0 <= start < end"));
    }
    let step = (end - start) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            if i == points - 1 {
                end
            } else {
                start + step * i as f64
            }
        })
        .collect())
}

/// 2000 points on `[0, 2 omega_p]`.
pub fn default_grid(drude: &Drude) -> Vec<f64> {
    uniform_grid(0.0, 2.0 * drude.plasma_energy, 2000).expect("valid default grid")
}

/// Coupled and isolated-sphere densities sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DosProfile {
    pub omegas: Vec<f64>,
    pub rho_sp: Vec<f64>,
    pub rho_s: Vec<f64>,
    pub diff: Vec<f64>,
    pub normalization: Normalization,
}

pub const PROFILE_HEADER: &str = "omega_eV,rho_sp,rho_s,diff";

impl DosProfile {
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{PROFILE_HEADER}")?;
        for i in 0..self.omegas.len() {
            writeln!(
                out,
                "{},{},{},{}",
                sci(self.omegas[i]),
                sci(self.rho_sp[i]),
                sci(self.rho_s[i]),
                sci(self.diff[i])
            )?;
        }
        Ok(())
    }

    pub fn max_abs_diff(&self) -> f64 {
        self.diff.iter().fold(0.0, |acc, d| acc.max(d.abs()))
    }

    /// Energies of the maxima of `diff` that lie above zero (see [`find_peaks`]).
    pub fn positive_peaks(&self) -> Vec<f64> {
        let threshold = PEAK_PROMINENCE * self.max_abs_diff();
        find_peaks(&self.diff, threshold)
            .into_iter()
            .filter(|&i| self.diff[i] > 0.0)
            .map(|i| self.omegas[i])
            .collect()
    }

    /// Energies of the minima of `diff` that lie below zero.
    pub fn negative_peaks(&self) -> Vec<f64> {
        let threshold = PEAK_PROMINENCE * self.max_abs_diff();
        let flipped: Vec<f64> = self.diff.iter().map(|d| -d).collect();
        find_peaks(&flipped, threshold)
            .into_iter()
            .filter(|&i| self.diff[i] < 0.0)
            .map(|i| self.omegas[i])
            .collect()
    }
}

/// Peaks must stand out by this fraction of `max |diff|`.
pub const PEAK_PROMINENCE: f64 = 0.01;

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::invalid("grid", "need at least 2 points"));
    }
    if grid.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
        return Err(Error::invalid("grid", "energies must be finite and >= 0"));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::invalid(
            "grid",
            "energies must be strictly increasing",
        ));
    }
    Ok(())
}

/// `rho^sp - rho^s` on `grid`; the isolated sphere is the same machinery at `f_c = 0`.
pub fn dos_difference(
    environment: &Environment,
    geometry: &Geometry,
    grid: &[f64],
    coupling: Coupling,
    normalization: Normalization,
) -> Result<DosProfile> {
    check_grid(grid)?;
    let drude = environment.sphere_drude()?;
    let ambient = environment.ambient_epsilon();
    let coupled = modes_for(
        environment.contrast_factor()?,
        geometry.d_over_r(),
        coupling,
    )?;
    let isolated = modes_for(0.0, geometry.d_over_r(), coupling)?;
    let coupled = DrudeSpectrum::new(&coupled, drude, ambient, normalization)?;
    let isolated = DrudeSpectrum::new(&isolated, drude, ambient, normalization)?;

    let rho_sp: Vec<f64> = grid.iter().map(|&w| coupled.density(w).total).collect();
    let rho_s: Vec<f64> = grid.iter().map(|&w| isolated.density(w).total).collect();
    let diff = rho_sp.iter().zip(&rho_s).map(|(a, b)| a - b).collect();
    Ok(DosProfile {
        omegas: grid.to_vec(),
        rho_sp,
        rho_s,
        diff,
        normalization,
    })
}

/// Isolated-sphere resonance energy.
pub fn isolated_resonance(drude: &Drude, ambient_epsilon: f64) -> f64 {
    mode_frequency(ISOLATED_FACTOR, drude.plasma_energy, ambient_epsilon)
}

/// One DOS-difference curve per `z/R`; breakdown geometries keep their error.
pub fn sample_profiles(
    environment: &Environment,
    z_over_r: &[f64],
    grid: &[f64],
    coupling: Coupling,
    normalization: Normalization,
) -> Result<Vec<(f64, Result<DosProfile>)>> {
    check_grid(grid)?;
    environment.sphere_drude()?;
    environment.contrast_factor()?;
    z_over_r
        .iter()
        .map(|&ratio| {
            // profiles depend on z/R only
            let geometry = Geometry::from_ratio(1.0, ratio)?;
            Ok((
                ratio,
                dos_difference(environment, &geometry, grid, coupling, normalization),
            ))
        })
        .collect()
}

/// Three-point moving average; endpoints are kept.
pub fn smooth3(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    (0..n)
        .map(|i| {
            if i == 0 || i + 1 == n {
                values[i]
            } else {
                (values[i - 1] + values[i] + values[i + 1]) / 3.0
            }
        })
        .collect()
}

/// Indices of interior local maxima of the smoothed signal whose topographic
/// prominence is at least `min_prominence`.
pub fn find_peaks(values: &[f64], min_prominence: f64) -> Vec<usize> {
    let s = smooth3(values);
    let n = s.len();
    let mut peaks = Vec::new();
    let mut i = 1;
    while i + 1 < n {
        if s[i] > s[i - 1] {
            // walk across a plateau
            let mut j = i;
            while j + 1 < n && s[j + 1] == s[i] {
                j += 1;
            }
            if j + 1 < n && s[j + 1] < s[i] {
                let peak = s[i];
                let mut left_min = peak;
                for k in (0..i).rev() {
                    if s[k] > peak {
                        break;
                    }
                    left_min = left_min.min(s[k]);
                }
                let mut right_min = peak;
                for value in s.iter().skip(j + 1) {
                    if *value > peak {
                        break;
                    }
                    right_min = right_min.min(*value);
                }
                if peak - left_min.max(right_min) >= min_prominence {
                    peaks.push(i);
                }
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    peaks
}
