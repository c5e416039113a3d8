//! Sphere/image-dipole mode matrix and its spectral decomposition.
//!
//! The dipole components `m = -1, 0, 1` of the sphere couple to their image in the
//! substrate. The mode matrix `H` depends on the geometry only through `d/R`, where `d`
//! is the distance from the sphere centre to the substrate surface. Its eigenvalues
//! are the depolarization factors `n_s` (1/3 for an isolated sphere), and the squared
//! eigenvector components are the spectral weights of each polarization.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::eigen::jacobi;
use crate::error::{Error, Result};

/// Depolarization factor of an isolated sphere.
pub const ISOLATED_FACTOR: f64 = 1.0 / 3.0;

/// Default Lorentzian broadening for densities in `u`.
pub const DEFAULT_ETA: f64 = 1e-3;

/// Sphere radius and surface-to-substrate gap, both in nm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    radius: f64,
    gap: f64,
}

impl Geometry {
    pub fn new(radius: f64, gap: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::invalid("radius", "must be finite and > 0"));
        }
        if !(gap.is_finite() && gap >= 0.0) {
            return Err(Error::invalid("gap", "must be finite and >= 0"));
        }
        Ok(Self { radius, gap })
    }

    /// Geometry with gap `z_over_r * radius`.
    pub fn from_ratio(radius: f64, z_over_r: f64) -> Result<Self> {
        Self::new(radius, z_over_r * radius)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    /// Centre-to-substrate distance `d = z + R`.
    pub fn center_distance(&self) -> f64 {
        self.gap + self.radius
    }

    pub fn d_over_r(&self) -> f64 {
        1.0 + self.gap / self.radius
    }
}

/// How the dipole components couple to the image dipole.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Coupling {
    /// Only `m = m'` elements survive, as required by rotational symmetry about the normal.
    #[default]
    AxialSymmetry,
    /// Every `(m, m')` element of the dipole-dipole matrix, as printed.
    Literal,
}

fn factorial(k: i32) -> f64 {
    (1..=k).map(f64::from).product()
}

fn check_index(m: i32) -> Result<()> {
    if (-1..=1).contains(&m) {
        Ok(())
    } else {
        Err(Error::invalid(
            "m",
            format!("dipole index {m} not in -1..=1"),
        ))
    }
}

fn check_distance(d_over_r: f64) -> Result<()> {
    if d_over_r.is_nan() || d_over_r < 1.0 {
        Err(Error::Overlap(d_over_r))
    } else {
        Ok(())
    }
}

/// Dipole-dipole interaction element
/// `A = 4 pi (-1)^m (d/R)^-3 (2/3) [(1+m)! (1-m)! (1+m')! (1-m')!]^(-1/2)`.
pub fn interaction_element(d_over_r: f64, m: i32, m_prime: i32, coupling: Coupling) -> Result<f64> {
    check_distance(d_over_r)?;
    check_index(m)?;
    check_index(m_prime)?;
    if coupling == Coupling::AxialSymmetry && m != m_prime {
        return Ok(0.0);
    }
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let norm =
        factorial(1 + m) * factorial(1 - m) * factorial(1 + m_prime) * factorial(1 - m_prime);
    Ok(4.0 * PI * sign * d_over_r.powi(-3) * (2.0 / 3.0) / norm.sqrt())
}

/// Mode matrix `H` over the dipole components ordered `m = -1, 0, 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeMatrix {
    matrix: DMatrix<f64>,
    contrast: f64,
    d_over_r: f64,
}

/// Row of `H` that holds dipole component `m`.
fn row(m: i32) -> usize {
    (m + 1) as usize
}

impl ModeMatrix {
    /// Wraps an arbitrary 3x3 matrix; [`eigenmodes`] checks it for symmetry.
    pub fn from_matrix(matrix: DMatrix<f64>, contrast: f64, d_over_r: f64) -> Result<Self> {
        if matrix.shape() != (3, 3) {
            return Err(Error::invalid("matrix", "mode matrix must be 3x3"));
        }
        Ok(Self {
            matrix,
            contrast,
            d_over_r,
        })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn element(&self, m: i32, m_prime: i32) -> f64 {
        self.matrix[(row(m), row(m_prime))]
    }

    pub fn contrast(&self) -> f64 {
        self.contrast
    }

    pub fn d_over_r(&self) -> f64 {
        self.d_over_r
    }
}

/// `H = (1/3) delta + f_c (1/4pi) (-1)^m A`.
///
/// The `R^3` prefactor cancels the `R^-3` hidden in `(d/R)^-3`, so `H` is a function of
/// `d/R` alone. Under axial symmetry this gives `H_00 = 1/3 + (2/3) f_c (R/d)^3` and
/// `H_11 = 1/3 + (1/3) f_c (R/d)^3`.
pub fn h_matrix(contrast: f64, d_over_r: f64, coupling: Coupling) -> Result<ModeMatrix> {
    if !(contrast.is_finite() && contrast.abs() <= 1.0) {
        return Err(Error::invalid("f_c", "must satisfy |f_c| <= 1"));
    }
    check_distance(d_over_r)?;
    let mut matrix = DMatrix::zeros(3, 3);
    for m in -1..=1 {
        for m_prime in -1..=1 {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let coupling_term =
                contrast / (4.0 * PI) * sign * interaction_element(d_over_r, m, m_prime, coupling)?;
            let diagonal = if m == m_prime { ISOLATED_FACTOR } else { 0.0 };
            matrix[(row(m), row(m_prime))] = diagonal + coupling_term;
        }
    }
    Ok(ModeMatrix {
        matrix,
        contrast,
        d_over_r,
    })
}

/// One surface mode seen by polarization `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeEntry {
    /// 0 for the component normal to the substrate, 1 for the parallel pair.
    pub m: i32,
    /// Depolarization factor `n_s`.
    pub factor: f64,
    /// Spectral weight `C_s = (U_1s U^-1_s1)_m`.
    pub weight: f64,
    /// 1 for `m = 0`, 2 for `m = +-1`.
    pub degeneracy: u32,
}

impl ModeEntry {
    pub fn multiplicity(&self) -> f64 {
        self.weight * f64::from(self.degeneracy)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralModes {
    pub entries: Vec<ModeEntry>,
    pub contrast: f64,
    pub d_over_r: f64,
    /// True when every depolarization factor lies in `(0, 1)`.
    pub valid: bool,
    factors: Vec<f64>,
}

impl SpectralModes {
    /// All eigenvalues of `H`, ascending.
    pub fn factors(&self) -> &[f64] {
        &self.factors
    }

    /// Fails with [`Error::Breakdown`] unless every factor lies in `(0, 1)`.
    pub fn require_valid(&self) -> Result<&Self> {
        match self.factors.iter().find(|n| !(**n > 0.0 && **n < 1.0)) {
            None => Ok(self),
            Some(&factor) => Err(Error::Breakdown {
                d_over_r: self.d_over_r,
                contrast: self.contrast,
                factor,
            }),
        }
    }

    pub fn entries_for(&self, m: i32) -> impl Iterator<Item = &ModeEntry> + '_ {
        self.entries.iter().filter(move |e| e.m == m)
    }

    /// Sum of weights for polarization `m`; 1 by completeness of the eigenbasis.
    pub fn weight_sum(&self, m: i32) -> f64 {
        self.entries_for(m).map(|e| e.weight).sum()
    }
}

/// Connected components of the nonzero off-diagonal pattern.
fn blocks(matrix: &DMatrix<f64>) -> Vec<Vec<usize>> {
    let n = matrix.nrows();
    let mut label: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in i + 1..n {
            if matrix[(i, j)] != 0.0 {
                let (from, to) = (label[j], label[i]);
                for l in label.iter_mut() {
                    if *l == from {
                        *l = to;
                    }
                }
            }
        }
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        match out.iter_mut().find(|b| label[b[0]] == label[i]) {
            Some(block) => block.push(i),
            None => out.push(vec![i]),
        }
    }
    out
}

/// Diagonalizes `H` block by block.
///
/// Weights for the parallel polarization average the `m = +1` and `m = -1` rows, which
/// carry identical totals but may split a degenerate eigenspace differently.
pub fn eigenmodes(h: &ModeMatrix) -> Result<SpectralModes> {
    let matrix = &h.matrix;
    let asymmetry = (matrix - matrix.transpose()).amax();
    if !(asymmetry <= 1e-12) {
        return Err(Error::NotSymmetric(asymmetry));
    }

    let mut entries: Vec<ModeEntry> = Vec::new();
    let mut push = |m: i32, factor: f64, weight: f64| {
        if weight == 0.0 {
            return;
        }
        match entries.iter_mut().find(|e| e.m == m && e.factor == factor) {
            Some(entry) => entry.weight += weight,
            None => entries.push(ModeEntry {
                m,
                factor,
                weight,
                degeneracy: if m == 0 { 1 } else { 2 },
            }),
        }
    };
    let mut factors = Vec::with_capacity(3);
    for block in blocks(matrix) {
        let sub = DMatrix::from_fn(block.len(), block.len(), |i, j| {
            matrix[(block[i], block[j])]
        });
        let eig = jacobi(&sub);
        for s in 0..block.len() {
            let factor = eig.values[s];
            factors.push(factor);
            let weight_of = |m: i32| -> f64 {
                block
                    .iter()
                    .position(|&r| r == row(m))
                    .map_or(0.0, |local| eig.vectors[(local, s)].powi(2))
            };
            push(0, factor, weight_of(0));
            push(1, factor, 0.5 * (weight_of(1) + weight_of(-1)));
        }
    }
    factors.sort_by(f64::total_cmp);
    entries.sort_by(|a, b| a.m.cmp(&b.m).then(a.factor.total_cmp(&b.factor)));

    let valid = factors.iter().all(|n| *n > 0.0 && *n < 1.0);
    Ok(SpectralModes {
        entries,
        contrast: h.contrast,
        d_over_r: h.d_over_r,
        valid,
        factors,
    })
}

/// Modes of the sphere/substrate system described by `contrast` and `d_over_r`.
pub fn modes_for(contrast: f64, d_over_r: f64, coupling: Coupling) -> Result<SpectralModes> {
    eigenmodes(&h_matrix(contrast, d_over_r, coupling)?)
}

/// Per-polarization densities and the degeneracy-weighted total `rho_0 + 2 rho_1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeDensity {
    pub perpendicular: f64,
    pub parallel: f64,
    pub total: f64,
}

impl ModeDensity {
    pub(crate) fn from_components(perpendicular: f64, parallel: f64) -> Self {
        Self {
            perpendicular,
            parallel,
            total: perpendicular + 2.0 * parallel,
        }
    }
}

/// `rho_m(u) = -(1/pi) Im sum_s C_s / (u + i eta - n_s)`.
pub fn dos_u(modes: &SpectralModes, u: f64, eta: f64) -> Result<ModeDensity> {
    if !(eta.is_finite() && eta > 0.0) {
        return Err(Error::invalid("eta", "must be finite and > 0"));
    }
    let component = |m: i32| -> f64 {
        modes
            .entries_for(m)
            .map(|e| {
                let resolvent = e.weight / Complex64::new(u - e.factor, eta);
                -resolvent.im / PI
            })
            .sum()
    };
    Ok(ModeDensity::from_components(component(0), component(1)))
}

/// Solves `[-u I + H] x = g`.
pub fn solve_response(
    h: &ModeMatrix,
    u: Complex64,
    g: &DVector<Complex64>,
) -> Result<DVector<Complex64>> {
    if g.len() != 3 {
        return Err(Error::invalid("g", "source vector must have 3 components"));
    }
    let system =
        h.matrix.map(|x| Complex64::new(x, 0.0)) - DMatrix::<Complex64>::identity(3, 3) * u;
    let lu = system.lu();
    let pivots = lu.u().diagonal();
    let largest = pivots.iter().map(|p| p.norm()).fold(0.0, f64::max);
    let smallest = pivots
        .iter()
        .map(|p| p.norm())
        .fold(f64::INFINITY, f64::min);
    if !(smallest > 1e-14 * largest.max(f64::MIN_POSITIVE)) {
        return Err(Error::Singular(u.re));
    }
    lu.solve(g).ok_or(Error::Singular(u.re))
}

/// Density in `u` obtained from the diagonal of `[-(u + i eta) I + H]^-1`.
///
/// Since the resolvent of the density is `(u - H)^-1 = -x`, `rho_m = (1/pi) Im x_m`.
pub fn resolvent_density(h: &ModeMatrix, u: f64, eta: f64) -> Result<ModeDensity> {
    if !(eta.is_finite() && eta > 0.0) {
        return Err(Error::invalid("eta", "must be finite and > 0"));
    }
    let z = Complex64::new(u, eta);
    let diagonal = |m: i32| -> Result<f64> {
        let mut g = DVector::from_element(3, Complex64::new(0.0, 0.0));
        g[row(m)] = Complex64::new(1.0, 0.0);
        let x = solve_response(h, z, &g)?;
        Ok(x[row(m)].im / PI)
    };
    let parallel = 0.5 * (diagonal(1)? + diagonal(-1)?);
    Ok(ModeDensity::from_components(diagonal(0)?, parallel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn interaction_examples() {
        let a = |d, m, mp| interaction_element(d, m, mp, Coupling::AxialSymmetry).unwrap();
        assert_relative_eq!(a(1.0, 0, 0), 8.377_580_409_572_781, max_relative = 1e-15);
        assert_relative_eq!(a(1.0, 1, 1), -4.188_790_204_786_391, max_relative = 1e-15);
        assert_relative_eq!(a(1.0, -1, -1), -4.188_790_204_786_391, max_relative = 1e-15);
        assert_relative_eq!(a(2.0, 0, 0), 1.047_197_551_196_597_7, max_relative = 1e-15);
        assert_eq!(a(2.0, 0, 1), 0.0);
        let literal = interaction_element(2.0, 0, 1, Coupling::Literal).unwrap();
        assert_relative_eq!(literal, PI / 3.0 / 2.0_f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn interaction_rejects_overlap_and_bad_index() {
        assert_eq!(
            interaction_element(0.9, 0, 0, Coupling::AxialSymmetry),
            Err(Error::Overlap(0.9))
        );
        assert!(interaction_element(2.0, 2, 0, Coupling::AxialSymmetry).is_err());
        assert!(h_matrix(-1.5, 2.0, Coupling::AxialSymmetry).is_err());
    }

    #[test]
    fn h_matrix_examples() {
        for d in [1.0, 2.0, 37.0] {
            let h = h_matrix(0.0, d, Coupling::AxialSymmetry).unwrap();
            assert_eq!(
                h.matrix(),
                &DMatrix::from_diagonal_element(3, 3, ISOLATED_FACTOR)
            );
        }
        let h = h_matrix(-1.0, 2.0, Coupling::AxialSymmetry).unwrap();
        assert_relative_eq!(h.element(0, 0), 0.25, epsilon = 1e-15);
        assert_relative_eq!(h.element(1, 1), 7.0 / 24.0, epsilon = 1e-15);
        assert_relative_eq!(h.element(-1, -1), 7.0 / 24.0, epsilon = 1e-15);
        let h = h_matrix(-0.516, 2.0, Coupling::AxialSymmetry).unwrap();
        assert_relative_eq!(h.element(0, 0), 0.290_333_333_333_333_3, epsilon = 1e-15);
    }

    #[test]
    fn eigenmodes_isolated_sphere() {
        let modes = modes_for(0.0, 3.0, Coupling::AxialSymmetry).unwrap();
        assert!(modes.valid);
        assert_eq!(modes.entries.len(), 2);
        for e in &modes.entries {
            assert_eq!(e.factor, ISOLATED_FACTOR);
            assert_eq!(e.weight, 1.0);
        }
        assert_eq!(modes.entries_for(1).next().unwrap().degeneracy, 2);
    }

    #[test]
    fn eigenmodes_perfect_conductor() {
        let modes = modes_for(-1.0, 2.0, Coupling::AxialSymmetry).unwrap();
        assert!(modes.valid);
        let perp = modes.entries_for(0).next().unwrap();
        let par = modes.entries_for(1).next().unwrap();
        assert_relative_eq!(perp.factor, 0.25, epsilon = 1e-15);
        assert_relative_eq!(par.factor, 7.0 / 24.0, epsilon = 1e-15);
        assert_eq!((perp.weight, par.weight), (1.0, 1.0));

        let contact = modes_for(-1.0, 1.0, Coupling::AxialSymmetry).unwrap();
        assert!(!contact.valid);
        assert_relative_eq!(contact.factors()[0], -1.0 / 3.0, epsilon = 1e-15);
        assert!(contact.require_valid().unwrap_err().is_breakdown());
    }

    #[test]
    fn literal_coupling_is_rank_one_shift() {
        // H = I/3 + (2/3) f_c k v v^T with |v|^2 = 2, so one factor moves by (4/3) f_c k.
        let modes = modes_for(-1.0, 2.0, Coupling::Literal).unwrap();
        let f = modes.factors();
        assert_relative_eq!(f[0], 1.0 / 3.0 - 4.0 / 3.0 / 8.0, epsilon = 1e-14);
        assert_relative_eq!(f[1], 1.0 / 3.0, epsilon = 1e-14);
        assert_relative_eq!(f[2], 1.0 / 3.0, epsilon = 1e-14);
        assert_relative_eq!(modes.weight_sum(0), 1.0, epsilon = 1e-12);
        assert_relative_eq!(modes.weight_sum(1), 1.0, epsilon = 1e-12);
        let total: f64 = modes.entries.iter().map(ModeEntry::multiplicity).sum();
        assert_relative_eq!(total, 3.0, epsilon = 1e-12);
    }

    #[test]
    fn asymmetric_matrix_is_rejected() {
        let mut m = DMatrix::from_diagonal_element(3, 3, 0.3);
        m[(0, 1)] = 0.1;
        let h = ModeMatrix::from_matrix(m, -1.0, 2.0).unwrap();
        assert!(matches!(eigenmodes(&h), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn dos_u_examples() {
        let modes = modes_for(-1.0, 2.0, Coupling::AxialSymmetry).unwrap();
        let rho = dos_u(&modes, 0.25, 0.01).unwrap();
        assert_relative_eq!(rho.perpendicular, 1.0 / (PI * 0.01), max_relative = 1e-12);

        let isolated = modes_for(0.0, 2.0, Coupling::AxialSymmetry).unwrap();
        let rho = dos_u(&isolated, 1.0 / 3.0, 1e-3).unwrap();
        assert_relative_eq!(rho.total, 3.0 / (PI * 1e-3), max_relative = 1e-12);

        assert!(dos_u(&modes, 0.25, 0.0).is_err());
    }

    #[test]
    fn dos_u_is_normalized() {
        // Lorentzian of half-width eta: integral over [-L, L] around the peak is
        // (2/pi) atan(L / eta); L = 1e6 leaves 6.4e-10.
        let modes = modes_for(-0.773, 1.7, Coupling::AxialSymmetry).unwrap();
        let eta = 1e-3;
        for m in [0, 1] {
            let closed: f64 = modes
                .entries_for(m)
                .map(|e| {
                    e.weight * ((1e6 - e.factor) / eta).atan() / PI
                        + e.weight * ((1e6 + e.factor) / eta).atan() / PI
                })
                .sum();
            assert!((closed - 1.0).abs() < 1e-6);
            let numeric = crate::quadrature::integrate(
                |u| {
                    let rho = dos_u(&modes, u, eta).unwrap();
                    if m == 0 {
                        rho.perpendicular
                    } else {
                        rho.parallel
                    }
                },
                &[-1e6, -1.0, 0.0, 0.2, 0.25, 0.3, 0.35, 1.0, 1e6],
                1e-10,
                5000,
            )
            .unwrap();
            assert!(
                (numeric.value - 1.0).abs() < 1e-6,
                "m={m}: {}",
                numeric.value
            );
        }
    }

    #[test]
    fn solve_response_scalar_resolvent() {
        let h = h_matrix(0.0, 2.0, Coupling::AxialSymmetry).unwrap();
        let mut g = DVector::from_element(3, Complex64::new(0.0, 0.0));
        g[row(0)] = Complex64::new(1.0, 0.0);
        let u = Complex64::new(1.0 / 3.0, 1e-3);
        let x = solve_response(&h, u, &g).unwrap();
        // [-u + 1/3] x = 1, so x = 1 / (-i 1e-3) = i 1e3
        assert_relative_eq!(x[row(0)].re, 0.0, epsilon = 1e-9);
        assert_relative_eq!(x[row(0)].im, 1e3, max_relative = 1e-12);
        let rho = resolvent_density(&h, 1.0 / 3.0, 1e-3).unwrap();
        assert_relative_eq!(rho.perpendicular, 1.0 / (PI * 1e-3), max_relative = 1e-12);
    }

    #[test]
    fn solve_response_off_resonance_and_singular() {
        let h = h_matrix(-1.0, 2.0, Coupling::AxialSymmetry).unwrap();
        let rho = resolvent_density(&h, 10.0, 1e-12).unwrap();
        assert!(rho.total.abs() < 1e-3);
        let g = DVector::from_element(3, Complex64::new(1.0, 0.0));
        let x = solve_response(&h, Complex64::new(10.0, 0.0), &g).unwrap();
        assert!(x.iter().all(|v| v.re.is_finite() && v.im == 0.0));

        let isolated = h_matrix(0.0, 2.0, Coupling::AxialSymmetry).unwrap();
        assert!(matches!(
            solve_response(&isolated, Complex64::new(1.0 / 3.0, 0.0), &g),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn resolvent_matches_eigen_path() {
        let h = h_matrix(-1.0, 2.0, Coupling::AxialSymmetry).unwrap();
        let modes = eigenmodes(&h).unwrap();
        let via_eigen = dos_u(&modes, 0.25, 1e-3).unwrap();
        let via_solve = resolvent_density(&h, 0.25, 1e-3).unwrap();
        assert!((via_eigen.perpendicular - via_solve.perpendicular).abs() < 1e-9);
    }

    #[test]
    fn scale_invariance_of_modes() {
        let a = Geometry::new(10.0, 5.0).unwrap();
        let b = Geometry::new(100.0, 50.0).unwrap();
        assert_eq!(a.d_over_r(), b.d_over_r());
        let ma = modes_for(-0.516, a.d_over_r(), Coupling::AxialSymmetry).unwrap();
        let mb = modes_for(-0.516, b.d_over_r(), Coupling::AxialSymmetry).unwrap();
        assert_eq!(ma, mb);
    }

    #[test]
    fn far_field_shift_decays_as_inverse_cube() {
        let shift = |d: f64| {
            let m = modes_for(-1.0, d, Coupling::AxialSymmetry).unwrap();
            (m.factors()[0] - ISOLATED_FACTOR).abs()
        };
        let slope = (shift(100.0).ln() - shift(10.0).ln()) / (100.0_f64.ln() - 10.0_f64.ln());
        assert!((slope + 3.0).abs() < 1e-3, "slope {slope}");
    }

    #[test]
    fn geometry_validation() {
        assert!(Geometry::new(0.0, 1.0).is_err());
        assert!(Geometry::new(1.0, -1.0).is_err());
        let g = Geometry::from_ratio(10.0, 0.5).unwrap();
        assert_eq!(g.center_distance(), 15.0);
        assert_eq!(g.d_over_r(), 1.5);
    }

    proptest! {
        #[test]
        fn weights_are_complete(fc in -1.0f64..=0.0, d in 1.0f64..50.0, literal in any::<bool>()) {
            let coupling = if literal { Coupling::Literal } else { Coupling::AxialSymmetry };
            let modes = modes_for(fc, d, coupling).unwrap();
            prop_assert!((modes.weight_sum(0) - 1.0).abs() < 1e-12);
            prop_assert!((modes.weight_sum(1) - 1.0).abs() < 1e-12);
            prop_assert_eq!(modes.entries.iter().filter(|e| e.m == 0).all(|e| e.degeneracy == 1), true);
        }

        #[test]
        fn perpendicular_mode_shifts_furthest(fc in -1.0f64..-1e-3, d in 1.0001f64..100.0) {
            let modes = modes_for(fc, d, Coupling::AxialSymmetry).unwrap();
            let n0 = modes.entries_for(0).next().unwrap().factor;
            let n1 = modes.entries_for(1).next().unwrap().factor;
            prop_assert!(n0 < n1 && n1 < ISOLATED_FACTOR);
        }

        #[test]
        fn resolvent_agrees_on_grid(fc in -1.0f64..0.0, d in 1.3f64..10.0, literal in any::<bool>()) {
            let coupling = if literal { Coupling::Literal } else { Coupling::AxialSymmetry };
            let h = h_matrix(fc, d, coupling).unwrap();
            let modes = eigenmodes(&h).unwrap();
            for i in 0..100 {
                let u = -0.2 + 0.8 * f64::from(i) / 99.0;
                let a = dos_u(&modes, u, DEFAULT_ETA).unwrap();
                let b = resolvent_density(&h, u, DEFAULT_ETA).unwrap();
                prop_assert!((a.perpendicular - b.perpendicular).abs() < 1e-9);
                prop_assert!((a.parallel - b.parallel).abs() < 1e-9);
                prop_assert!((a.total - b.total).abs() < 1e-9);
            }
        }
    }
}
