use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("Drude permittivity has a pole at omega = 0")]
    DrudePole,

    #[error("a perfect conductor has no finite permittivity")]
    NoFinitePermittivity,

    #[error("{role} must be a {expected} material")]
    UnsupportedMaterial {
        role: &'static str,
        expected: &'static str,
    },

    #[error("spectral variable is undefined where the sphere permittivity equals the ambient one")]
    SpectralPole,

    #[error("polarizability has a pole at eps_s = -2")]
    PolarizabilityPole,

    #[error("sphere intersects the substrate (d/R = {0} < 1)")]
    Overlap(f64),

    #[error("mode matrix is not symmetric (|H_ij - H_ji| = {0:e})")]
    NotSymmetric(f64),

    #[error(
        "dipolar approximation breakdown at d/R = {d_over_r}, f_c = {contrast}: \
         depolarization factor {factor} outside (0, 1)"
    )]
    Breakdown {
        d_over_r: f64,
        contrast: f64,
        factor: f64,
    },

    #[error("response system is singular at u = {0}")]
    Singular(f64),

    #[error("quadrature did not converge: error {error:e} after {subdivisions} subdivisions")]
    NoConvergence { error: f64, subdivisions: usize },
}

impl Error {
    pub fn is_breakdown(&self) -> bool {
        matches!(self, Error::Breakdown { .. })
    }

    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
