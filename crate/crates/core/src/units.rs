//! Unit conventions and conversion constants.

/// 1 eV/nm expressed in piconewtons.
pub const PN_PER_EV_PER_NM: f64 = 160.217_663_4;

/// hbar * c in eV nm.
pub const HBAR_C_EV_NM: f64 = 197.326_980_4;

pub fn ev_per_nm_to_pn(force: f64) -> f64 {
    force * PN_PER_EV_PER_NM
}

/// Length scale c / omega_p in nm below which retardation can be neglected.
pub fn retardation_length_nm(plasma_energy_ev: f64) -> f64 {
    HBAR_C_EV_NM / plasma_energy_ev
}
