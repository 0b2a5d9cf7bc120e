//! Scalar special functions used by every other module: Kummer's
//! confluent hypergeometric M, Bessel J and its zeros, associated
//! Legendre functions and real spherical harmonics.
//!
//! All operations are pure and reentrant.

mod bessel;
mod bigfloat;
mod dd;
mod harmonics;
mod kummer;
mod legendre;

pub use bessel::{bessel_j, bessel_j_zero};
pub use harmonics::{real_sph_harm, HarmonicBasis};
pub(crate) use kummer::kummer_m_weighted_rootfind;
pub use kummer::{
    kummer_m, kummer_m_weighted, kummer_m_weighted_with, kummer_m_with, SpecFunAccuracy,
    KUMMER_A_MAX, KUMMER_Z_MAX,
};
pub use legendre::assoc_legendre;

/// First positive zero of J_0, cached for the disk and cylinder formulas.
pub fn j01() -> f64 {
    // bessel_j_zero(0, 1) to machine precision
    2.404825557695772768621631879326454643124
}
