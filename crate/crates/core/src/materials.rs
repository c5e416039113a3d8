//! Dielectric models for the sphere, the substrate and the ambient medium.
//!
//! Frequencies are photon energies `hbar * omega` in eV. The Drude relaxation rate
//! is stored as the dimensionless ratio `gamma = 1 / (tau * omega_p)`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Free-electron permittivity `eps(w) = 1 - wp^2 / (w (w + i gamma wp))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Drude {
    /// Plasma energy `hbar * omega_p` in eV.
    pub plasma_energy: f64,
    /// Damping ratio `1 / (tau * omega_p)`.
    pub damping_ratio: f64,
}

impl Drude {
    pub fn new(plasma_energy: f64, damping_ratio: f64) -> Result<Self> {
        if !(plasma_energy.is_finite() && plasma_energy > 0.0) {
            return Err(Error::invalid("plasma_energy", "must be finite and > 0"));
        }
        if !(damping_ratio.is_finite() && damping_ratio >= 0.0) {
            return Err(Error::invalid("damping_ratio", "must be finite and >= 0"));
        }
        Ok(Self {
            plasma_energy,
            damping_ratio,
        })
    }

    /// Damping energy `hbar / tau` in eV.
    pub fn damping_energy(&self) -> f64 {
        self.damping_ratio * self.plasma_energy
    }

    pub fn epsilon(&self, omega: f64) -> Result<Complex64> {
        if !(omega.is_finite() && omega >= 0.0) {
            return Err(Error::invalid("omega", "must be finite and >= 0"));
        }
        if omega == 0.0 {
            return Err(Error::DrudePole);
        }
        let denominator = Complex64::new(omega * omega, omega * self.damping_energy());
        Ok(Complex64::new(1.0, 0.0) - self.plasma_energy * self.plasma_energy / denominator)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Material {
    Drude(Drude),
    /// Real, frequency-independent permittivity.
    Constant(f64),
    /// The `eps -> infinity` limit, kept separate so that `f_c = -1` exactly.
    PerfectConductor,
}

impl Material {
    pub fn drude(plasma_energy: f64, damping_ratio: f64) -> Result<Self> {
        Drude::new(plasma_energy, damping_ratio).map(Material::Drude)
    }

    pub fn constant(epsilon: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::invalid("epsilon", "must be finite and > 0"));
        }
        Ok(Material::Constant(epsilon))
    }

    /// Potassium: `hbar omega_p = 3.8 eV`, `1/tau = 0.105 omega_p`.
    pub fn potassium() -> Self {
        Material::Drude(Drude {
            plasma_energy: 3.8,
            damping_ratio: 0.105,
        })
    }

    /// Gold: `hbar omega_p = 8.55 eV`, `1/tau = 0.0126 omega_p`.
    pub fn gold() -> Self {
        Material::Drude(Drude {
            plasma_energy: 8.55,
            damping_ratio: 0.0126,
        })
    }

    /// TiO2 with the permittivity that gives `f_c = -0.773` in air.
    pub fn titanium_dioxide() -> Self {
        Material::Constant(7.8106)
    }

    /// Sapphire with the permittivity that gives `f_c = -0.516` in air.
    pub fn sapphire() -> Self {
        Material::Constant(3.1322)
    }

    pub fn vacuum() -> Self {
        Material::Constant(1.0)
    }

    pub fn epsilon_at(&self, omega: f64) -> Result<Complex64> {
        match self {
            Material::Drude(drude) => drude.epsilon(omega),
            Material::Constant(eps) => {
                if !(omega.is_finite() && omega >= 0.0) {
                    return Err(Error::invalid("omega", "must be finite and >= 0"));
                }
                Ok(Complex64::new(*eps, 0.0))
            }
            Material::PerfectConductor => Err(Error::NoFinitePermittivity),
        }
    }

    pub fn as_drude(&self) -> Option<&Drude> {
        match self {
            Material::Drude(drude) => Some(drude),
            _ => None,
        }
    }
}

/// Sphere, substrate and the (real, constant) ambient medium around the sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Environment {
    sphere: Material,
    substrate: Material,
    ambient: f64,
}

impl Environment {
    pub fn new(sphere: Material, substrate: Material, ambient: Material) -> Result<Self> {
        match ambient {
            Material::Constant(eps) if eps.is_finite() && eps > 0.0 => Ok(Self {
                sphere,
                substrate,
                ambient: eps,
            }),
            _ => Err(Error::UnsupportedMaterial {
                role: "ambient",
                expected: "constant positive permittivity",
            }),
        }
    }

    /// Sphere and substrate in air (`eps_a = 1`).
    pub fn in_air(sphere: Material, substrate: Material) -> Self {
        Self {
            sphere,
            substrate,
            ambient: 1.0,
        }
    }

    pub fn sphere(&self) -> &Material {
        &self.sphere
    }

    pub fn substrate(&self) -> &Material {
        &self.substrate
    }

    pub fn ambient_epsilon(&self) -> f64 {
        self.ambient
    }

    /// Drude parameters of the sphere; the frequency-domain density of states needs them.
    pub fn sphere_drude(&self) -> Result<&Drude> {
        self.sphere.as_drude().ok_or(Error::UnsupportedMaterial {
            role: "sphere",
            expected: "Drude",
        })
    }

    /// Image-dipole contrast `f_c = (eps_a - eps_p) / (eps_a + eps_p)`.
    ///
    /// Only non-dispersive substrates are accepted, which keeps `f_c` real and the
    /// mode matrix Hermitian.
    pub fn contrast_factor(&self) -> Result<f64> {
        match self.substrate {
            Material::PerfectConductor => Ok(-1.0),
            Material::Constant(eps_p) => Ok((self.ambient - eps_p) / (self.ambient + eps_p)),
            Material::Drude(_) => Err(Error::UnsupportedMaterial {
                role: "substrate",
                expected: "constant or perfect-conductor",
            }),
        }
    }

    /// Spectral variable `u = 1 / (1 - eps_s / eps_a)`.
    pub fn spectral_u(&self, omega: f64) -> Result<Complex64> {
        let eps_s = self.sphere.epsilon_at(omega)?;
        let denominator = 1.0 - eps_s / self.ambient;
        if denominator == Complex64::new(0.0, 0.0) {
            return Err(Error::SpectralPole);
        }
        Ok(denominator.inv())
    }

    /// Quasi-static sphere polarizability `R^3 (eps_s - 1) / (eps_s + 2)` in nm^3.
    pub fn polarizability(&self, radius: f64, omega: f64) -> Result<Complex64> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::invalid("radius", "must be finite and > 0"));
        }
        let volume = radius.powi(3);
        if let Material::PerfectConductor = self.sphere {
            return Ok(Complex64::new(volume, 0.0));
        }
        let eps_s = self.sphere.epsilon_at(omega)?;
        let denominator = eps_s + 2.0;
        if denominator == Complex64::new(0.0, 0.0) {
            return Err(Error::PolarizabilityPole);
        }
        Ok(volume * (eps_s - 1.0) / denominator)
    }
}
