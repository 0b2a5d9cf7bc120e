//! Particular solutions of the eigenvalue equation, indexed by the
//! angular momentum l around the field axis and the axial momentum p:
//!
//!   psi_{l,p}(r, phi, z; lambda) = e^{-q/2} q^{|l|/2} M(a, b, q)
//!                                  e^{i l phi} e^{i p z}
//!
//! with q = B r^2/2, a = (l + |l| + 1 - (lambda - p^2)/B)/2, b = |l| + 1.
//! At B = 0 the basis degenerates to J_{|l|}(sqrt(lambda - p^2) r)
//! e^{i l phi} e^{i p z}; modes with p^2 > lambda are skipped there.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{bessel_j, kummer_m_weighted_rootfind};

/// Basis layout: angular range {-n_l..n_l}, axial momenta
/// delta_p * {-n_p..n_p} with delta_p = multiplier * sqrt(lambda)/(n_p+1).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct BasisSpec {
    pub n_l: u32,
    pub n_p: u32,
    pub dp_multiplier: f64,
    pub axisymmetric: bool,
    pub b_zero_mode: bool,
}

impl BasisSpec {
    /// Full 3D defaults: n_l = 10, n_p = 8, delta_p = sqrt(lambda)/(n_p+1).
    pub fn general() -> Self {
        BasisSpec { n_l: 10, n_p: 8, dp_multiplier: 1.0, axisymmetric: false, b_zero_mode: false }
    }

    /// Axisymmetric defaults: l = 0 only, n_p = 60,
    /// delta_p = 10 sqrt(lambda)/(n_p+1).
    pub fn axisym() -> Self {
        BasisSpec { n_l: 10, n_p: 60, dp_multiplier: 10.0, axisymmetric: true, b_zero_mode: false }
    }

    pub fn with_bessel(mut self, on: bool) -> Self {
        self.b_zero_mode = on;
        self
    }

    pub fn delta_p(&self, lambda: f64) -> f64 {
        self.dp_multiplier * lambda.sqrt() / (self.n_p as f64 + 1.0)
    }

    /// Column modes (l, p) in fixed lexicographic order. In Bessel mode
    /// the construction skips p with p^2 > lambda (imaginary radial
    /// argument).
    pub fn modes(&self, lambda: f64) -> Vec<(i32, f64)> {
        let dp = self.delta_p(lambda);
        let ls: Vec<i32> = if self.axisymmetric {
            vec![0]
        } else {
            (-(self.n_l as i32)..=self.n_l as i32).collect()
        };
        let mut out = Vec::new();
        for &l in &ls {
            for k in -(self.n_p as i32)..=self.n_p as i32 {
                let p = k as f64 * dp;
                if self.b_zero_mode && p * p > lambda {
                    continue;
                }
                out.push((l, p));
            }
        }
        out
    }

    /// Column count of the full (non-skipping) layout.
    pub fn full_len(&self) -> usize {
        let nl = if self.axisymmetric { 1 } else { 2 * self.n_l as usize + 1 };
        nl * (2 * self.n_p as usize + 1)
    }
}

/// One particular solution at a point in cylindrical coordinates
/// (r, phi, z), for B > 0.
pub fn particular_solution(
    l: i32,
    p: f64,
    lambda: f64,
    b_field: f64,
    point: (f64, f64, f64),
) -> Result<Complex64> {
    let (r, phi, z) = point;
    if !(b_field > 0.0) {
        return Err(Error::Domain("particular solutions require B > 0; use the Bessel basis at B = 0".into()));
    }
    if r < 0.0 {
        return Err(Error::Domain(format!("cylindrical radius must be >= 0, got {r}")));
    }
    let radial = kummer_radial(l, p, lambda, b_field, r)?;
    Ok(radial * phase(l, p, phi, z))
}

/// The scalar radial profile e^{-q/2} q^{|l|/2} M(a, b, q).
pub(crate) fn kummer_radial(l: i32, p: f64, lambda: f64, b_field: f64, r: f64) -> Result<f64> {
    let q = b_field * r * r / 2.0;
    let la = l.unsigned_abs() as f64;
    let a = 0.5 * (l as f64 + la + 1.0 - (lambda - p * p) / b_field);
    let b = la + 1.0;
    kummer_m_weighted_rootfind(a, b, q, la / 2.0)
}

/// d/dr of [`kummer_radial`]:
/// B r e^{-q/2} [ (w/q - 1/2) q^w M(a,b,q) + q^w (a/b) M(a+1,b+1,q) ].
pub(crate) fn kummer_radial_deriv(l: i32, p: f64, lambda: f64, b_field: f64, r: f64) -> Result<f64> {
    let q = b_field * r * r / 2.0;
    let la = l.unsigned_abs() as f64;
    let a = 0.5 * (l as f64 + la + 1.0 - (lambda - p * p) / b_field);
    let b = la + 1.0;
    let w = la / 2.0;
    if q < 1e-280 {
        // leading order: F ~ (B/2)^w r^{2w}, F' ~ |l| (B/2)^w r^{|l|-1}
        return Ok(match l.unsigned_abs() {
            0 => 0.0,
            1 => (b_field / 2.0).sqrt(),
            _ => 0.0,
        });
    }
    let m_w = kummer_m_weighted_rootfind(a, b, q, w)?;
    let m_next_w = kummer_m_weighted_rootfind(a + 1.0, b + 1.0, q, w)?;
    let bracket = if w == 0.0 {
        -0.5 * m_w + (a / b) * m_next_w
    } else {
        // w/q * q^w M = w * q^{w-1} M, assembled through the weighted form
        let m_wm1 = kummer_m_weighted_rootfind(a, b, q, w - 1.0)?;
        w * m_wm1 - 0.5 * m_w + (a / b) * m_next_w
    };
    Ok(b_field * r * bracket)
}

/// Bessel-basis radial profile J_{|l|}(sqrt(lambda - p^2) r).
pub(crate) fn bessel_radial(l: i32, p: f64, lambda: f64, r: f64) -> Result<f64> {
    let q2 = lambda - p * p;
    if q2 < 0.0 {
        return Err(Error::Domain(format!(
            "bessel basis requires p^2 <= lambda (p = {p}, lambda = {lambda})"
        )));
    }
    bessel_j(l.unsigned_abs(), q2.sqrt() * r)
}

pub(crate) fn bessel_radial_deriv(l: i32, p: f64, lambda: f64, r: f64) -> Result<f64> {
    let q2 = lambda - p * p;
    if q2 < 0.0 {
        return Err(Error::Domain("bessel basis requires p^2 <= lambda".into()));
    }
    let qr = q2.sqrt();
    let x = qr * r;
    let la = l.unsigned_abs();
    let d = if la == 0 {
        -bessel_j(1, x)?
    } else {
        0.5 * (bessel_j(la - 1, x)? - bessel_j(la + 1, x)?)
    };
    Ok(qr * d)
}

/// The zero-field particular solution J_{|l|}(sqrt(lambda - p^2) r)
/// e^{i l phi} e^{i p z}.
pub fn bessel_basis(l: i32, p: f64, lambda: f64, point: (f64, f64, f64)) -> Result<Complex64> {
    let (r, phi, z) = point;
    Ok(bessel_radial(l, p, lambda, r)? * phase(l, p, phi, z))
}

fn phase(l: i32, p: f64, phi: f64, z: f64) -> Complex64 {
    Complex64::from_polar(1.0, l as f64 * phi + p * z)
}

/// Gradient in cylindrical components (d_r, (1/r) d_phi, d_z). The
/// angular component takes its finite limit at r = 0 (zero for |l| != 1).
pub fn particular_solution_gradient(
    l: i32,
    p: f64,
    lambda: f64,
    b_field: f64,
    point: (f64, f64, f64),
) -> Result<[Complex64; 3]> {
    let (r, phi, z) = point;
    let ph = phase(l, p, phi, z);
    let i = Complex64::new(0.0, 1.0);
    let (radial, dradial) = if b_field > 0.0 {
        (kummer_radial(l, p, lambda, b_field, r)?, kummer_radial_deriv(l, p, lambda, b_field, r)?)
    } else {
        (bessel_radial(l, p, lambda, r)?, bessel_radial_deriv(l, p, lambda, r)?)
    };
    let angular = if r > 1e-12 {
        i * (l as f64) * radial / r * ph
    } else if l.unsigned_abs() == 1 {
        // F ~ c r as r -> 0, so l F / r -> l c
        let c = if b_field > 0.0 { (b_field / 2.0).sqrt() } else { bessel_radial_deriv(l, p, lambda, 0.0)? };
        i * (l as f64) * c * ph
    } else {
        Complex64::new(0.0, 0.0)
    };
    Ok([
        dradial * ph,
        angular,
        i * p * radial * ph,
    ])
}

/// Convert a cylindrical-component gradient at azimuth phi to Cartesian.
pub fn gradient_to_cartesian(g: &[Complex64; 3], phi: f64) -> [Complex64; 3] {
    let (c, s) = (phi.cos(), phi.sin());
    [g[0] * c - g[1] * s, g[0] * s + g[1] * c, g[2]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn value_at_axis() {
        // l = 0, p = 0, r = 0: e^0 M(a, 1, 0) = 1
        let v = particular_solution(0, 0.0, 30.0, 10.0, (0.0, 0.3, 0.2)).unwrap();
        assert_relative_eq!(v.re, 1.0, max_relative = 1e-13);
        assert!(v.im.abs() < 1e-13);
        // |l| = 2 vanishes on the axis
        let v2 = particular_solution(2, 0.7, 30.0, 10.0, (0.0, 0.3, 0.2)).unwrap();
        assert_eq!(v2.norm(), 0.0);
    }

    #[test]
    fn operator_residual_by_finite_differences() {
        // apply (-i grad + A)^2 with second-order differences in Cartesian
        // coordinates; psi must satisfy H psi = lambda psi
        let (l, p, lambda, b_field) = (1, 0.5, 30.0, 10.0);
        let eval = |x: f64, y: f64, z: f64| -> Complex64 {
            let r = (x * x + y * y).sqrt();
            let phi = y.atan2(x);
            particular_solution(l, p, lambda, b_field, (r, phi, z)).unwrap()
        };
        // point (r, phi, z) = (0.4, 1.0, 0.2)
        let (r0, phi0, z0) = (0.4f64, 1.0f64, 0.2f64);
        let (x0, y0) = (r0 * phi0.cos(), r0 * phi0.sin());
        let h = 1e-4;
        let psi = eval(x0, y0, z0);
        let lap = (eval(x0 + h, y0, z0) + eval(x0 - h, y0, z0) + eval(x0, y0 + h, z0)
            + eval(x0, y0 - h, z0)
            + eval(x0, y0, z0 + h)
            + eval(x0, y0, z0 - h)
            - 6.0 * psi)
            / (h * h);
        let gx = (eval(x0 + h, y0, z0) - eval(x0 - h, y0, z0)) / (2.0 * h);
        let gy = (eval(x0, y0 + h, z0) - eval(x0, y0 - h, z0)) / (2.0 * h);
        // A = (B/2)(-y, x, 0); H = -lap - 2i A.grad + |A|^2 (div A = 0)
        let i = Complex64::new(0.0, 1.0);
        let ax = -b_field / 2.0 * y0;
        let ay = b_field / 2.0 * x0;
        let a2 = ax * ax + ay * ay;
        let h_psi = -lap - 2.0 * i * (ax * gx + ay * gy) + a2 * psi;
        let resid = (h_psi - lambda * psi).norm() / (lambda * psi.norm());
        assert!(resid < 1e-5, "operator residual {resid}");
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let (l, p, lambda, b_field) = (2, -0.8, 42.0, 7.0);
        for &(r, phi, z) in &[(0.5, 1.2, -0.3), (1.1, 4.0, 0.6), (0.05, 0.0, 0.0)] {
            let g = particular_solution_gradient(l, p, lambda, b_field, (r, phi, z)).unwrap();
            let h = 1e-6;
            let f = |r: f64, phi: f64, z: f64| particular_solution(l, p, lambda, b_field, (r, phi, z)).unwrap();
            let dr = (f(r + h, phi, z) - f(r - h, phi, z)) / (2.0 * h);
            let dphi = (f(r, phi + h, z) - f(r, phi - h, z)) / (2.0 * h) / r;
            let dz = (f(r, phi, z + h) - f(r, phi, z - h)) / (2.0 * h);
            assert_relative_eq!(g[0].re, dr.re, max_relative = 1e-6, epsilon = 1e-9);
            assert_relative_eq!(g[0].im, dr.im, max_relative = 1e-6, epsilon = 1e-9);
            assert_relative_eq!(g[1].re, dphi.re, max_relative = 1e-5, epsilon = 1e-8);
            assert_relative_eq!(g[1].im, dphi.im, max_relative = 1e-5, epsilon = 1e-8);
            assert_relative_eq!(g[2].re, dz.re, max_relative = 1e-6, epsilon = 1e-9);
            assert_relative_eq!(g[2].im, dz.im, max_relative = 1e-6, epsilon = 1e-9);
        }
    }

    #[test]
    fn gradient_structure() {
        let (l, p, lambda, b_field) = (0, 0.0, 25.0, 5.0);
        let g = particular_solution_gradient(l, p, lambda, b_field, (0.7, 2.0, 0.1)).unwrap();
        assert_eq!(g[1], Complex64::new(0.0, 0.0), "l = 0 has no angular component");
        // z component = i p psi = 0 for p = 0
        assert_eq!(g[2], Complex64::new(0.0, 0.0));
        let (l, p) = (3, 1.3);
        let psi = particular_solution(l, p, lambda, b_field, (0.7, 2.0, 0.1)).unwrap();
        let g = particular_solution_gradient(l, p, lambda, b_field, (0.7, 2.0, 0.1)).unwrap();
        let expected = Complex64::new(0.0, p) * psi;
        assert_relative_eq!(g[2].re, expected.re, max_relative = 1e-12);
        assert_relative_eq!(g[2].im, expected.im, max_relative = 1e-12);
    }

    #[test]
    fn bessel_basis_values() {
        let lambda = 9.0;
        let v = bessel_basis(0, 0.0, lambda, (0.4, 1.0, 0.0)).unwrap();
        let expected = crate::specfun::bessel_j(0, 3.0 * 0.4).unwrap();
        assert_relative_eq!(v.re, expected, max_relative = 1e-12);
        // r = 0, l != 0 vanishes
        assert_eq!(bessel_basis(2, 0.0, lambda, (0.0, 0.0, 0.0)).unwrap().norm(), 0.0);
        // p^2 > lambda rejected
        assert!(bessel_basis(0, 4.0, lambda, (0.4, 0.0, 0.0)).is_err());
    }

    #[test]
    fn mode_enumeration() {
        let spec = BasisSpec::general();
        let modes = spec.modes(30.0);
        assert_eq!(modes.len(), 21 * 17);
        assert_eq!(spec.full_len(), 357);
        // lexicographic: first column is (-10, -8 dp)
        let dp = spec.delta_p(30.0);
        assert_eq!(modes[0].0, -10);
        assert_relative_eq!(modes[0].1, -8.0 * dp, max_relative = 1e-14);

        let axi = BasisSpec::axisym();
        assert_eq!(axi.modes(30.0).len(), 121);
        assert_relative_eq!(axi.delta_p(100.0), 10.0 * 10.0 / 61.0, max_relative = 1e-14);

        // the general delta_p rule keeps every p below sqrt(lambda), so
        // nothing is skipped there; the axisymmetric rule overshoots and
        // the Bessel construction drops the imaginary-argument modes
        let bz = BasisSpec::general().with_bessel(true);
        assert_eq!(bz.modes(30.0).len(), 357);
        let bza = BasisSpec::axisym().with_bessel(true);
        let modes = bza.modes(30.0);
        assert!(modes.iter().all(|&(_, p)| p * p <= 30.0));
        assert!(modes.len() < 121);
    }
}
