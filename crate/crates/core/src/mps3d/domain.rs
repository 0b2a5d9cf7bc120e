//! Geometry snapshot a solve works on: boundary collocation points,
//! quasi-random interior points, the axial extent (for the rigorous
//! window floor) and the centering shift applied before basis evaluation.
//! Centering moves the centroid to the origin; eigenvalues are
//! translation invariant but the Kummer argument B r^2/2 (and with it the
//! conditioning of the collocation matrix) is not.

use crate::error::Result;
use crate::geometry::{CollocationSet, ShapeCoefficients};

#[derive(Debug, Clone)]
pub struct SolveDomain {
    pub colloc: CollocationSet,
    pub interior: Vec<[f64; 3]>,
    /// h(Omega): sup |x_3 - y_3| over the domain
    pub h_extent: f64,
    /// subtracted from every point before basis evaluation
    pub center: [f64; 3],
    /// largest |x - center| over the boundary (B = 0 switch heuristic)
    pub max_radius_centered: f64,
    /// volume of a ball with the same volume (search-window span)
    pub equal_volume_ball_radius: f64,
}

impl SolveDomain {
    pub fn from_shape(
        shape: &ShapeCoefficients,
        n_target: usize,
        axisym_colloc: bool,
        n_interior: usize,
    ) -> Result<SolveDomain> {
        let colloc = CollocationSet::from_shape(shape, n_target, axisym_colloc)?;
        let mut center = shape.centroid()?;
        if shape.axisymmetric() || axisym_colloc {
            center[0] = 0.0;
            center[1] = 0.0;
        }
        let interior = halton_interior(|t, p| shape.radius(t, p), n_interior);
        let volume = shape.volume();
        Ok(Self::assemble(colloc, interior, center, volume))
    }

    /// Exact non-harmonic surfaces (cylinders in the oracle tests): the
    /// same collocation construction over an arbitrary radius function.
    pub fn from_radius_fn(
        radius: impl Fn(f64, f64) -> f64 + Copy,
        n_target: usize,
        axisym_colloc: bool,
        n_interior: usize,
        center: [f64; 3],
        volume: f64,
    ) -> Result<SolveDomain> {
        let colloc = CollocationSet::from_radius_fn(radius, n_target, axisym_colloc)?;
        let interior = halton_interior(radius, n_interior);
        Ok(Self::assemble(colloc, interior, center, volume))
    }

    fn assemble(
        colloc: CollocationSet,
        interior: Vec<[f64; 3]>,
        center: [f64; 3],
        volume: f64,
    ) -> SolveDomain {
        let mut zmin = f64::INFINITY;
        let mut zmax = f64::NEG_INFINITY;
        let mut max_r2: f64 = 0.0;
        for p in &colloc.points {
            zmin = zmin.min(p[2]);
            zmax = zmax.max(p[2]);
            let d = [p[0] - center[0], p[1] - center[1], p[2] - center[2]];
            max_r2 = max_r2.max(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
        }
        SolveDomain {
            colloc,
            interior,
            h_extent: zmax - zmin,
            center,
            max_radius_centered: max_r2.sqrt(),
            equal_volume_ball_radius: (3.0 * volume / (4.0 * std::f64::consts::PI)).powf(1.0 / 3.0),
        }
    }

    /// Centered cylindrical coordinates of a point.
    pub fn centered_cyl(&self, x: &[f64; 3]) -> (f64, f64, f64) {
        let d = [x[0] - self.center[0], x[1] - self.center[1], x[2] - self.center[2]];
        let r = (d[0] * d[0] + d[1] * d[1]).sqrt();
        (r, d[1].atan2(d[0]), d[2])
    }
}

/// Quasi-random interior points: Halton samples in (theta, phi, rho) with
/// rho scaled into [0.2, 0.9] r(theta, phi) to stay clear of both the
/// boundary layer and the origin.
fn halton_interior(radius: impl Fn(f64, f64) -> f64, n: usize) -> Vec<[f64; 3]> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let u = halton(i as u64 + 1, 2);
        let v = halton(i as u64 + 1, 3);
        let w = halton(i as u64 + 1, 5);
        let theta = (1.0 - 2.0 * u).clamp(-1.0, 1.0).acos();
        let phi = 2.0 * std::f64::consts::PI * v;
        let rho = (0.2 + 0.7 * w) * radius(theta, phi);
        let st = theta.sin();
        out.push([rho * st * phi.cos(), rho * st * phi.sin(), rho * theta.cos()]);
    }
    out
}

fn halton(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_domain_extents() {
        let shape = ShapeCoefficients::ball(1.0, 4).unwrap();
        let d = SolveDomain::from_shape(&shape, 400, false, 100).unwrap();
        assert!((d.h_extent - 2.0).abs() < 1e-10);
        assert!(d.center.iter().all(|c| c.abs() < 1e-9));
        assert!((d.max_radius_centered - 1.0).abs() < 1e-9);
        assert_eq!(d.interior.len(), 100);
        // all interior points strictly inside
        for p in &d.interior {
            let rho = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            assert!(rho < 0.95 && rho > 0.1);
        }
    }

    #[test]
    fn centering_of_shifted_shape() {
        let shape = ShapeCoefficients::ball_axisym(1.0, 40).unwrap().translated_z(0.25).unwrap();
        let d = SolveDomain::from_shape(&shape, 400, true, 50).unwrap();
        assert!((d.center[2] - 0.25).abs() < 1e-4, "centroid z = {}", d.center[2]);
        assert!((d.max_radius_centered - 1.0).abs() < 1e-3);
    }
}
