//! Star-shaped domains described by a spherical-harmonic radius function
//! r(theta, phi) = c . Yt(theta, phi). The coefficient vector is the
//! optimizer's decision variable; everything else (boundary points,
//! normals, volumes, gradients) derives from it.

use serde::{Deserialize, Serialize};

use super::quadrature::{gauss_legendre, QuadratureRule};
use crate::error::{Error, Result};
use crate::specfun::HarmonicBasis;

/// Admissibility is checked on this (theta, phi) validation grid plus any
/// quadrature/collocation nodes generated later.
const ADMISSIBLE_N_THETA: usize = 181;
const ADMISSIBLE_N_PHI: usize = 360;
const MIN_RADIUS: f64 = 1e-9;

/// Default truncation degrees: l_max = 10 general, 60 axisymmetric.
pub const DEFAULT_L_MAX: u32 = 10;
pub const DEFAULT_L_MAX_AXISYM: u32 = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct ShapeCoefficients {
    coeffs: Vec<f64>,
    basis: HarmonicBasis,
}

/// On-disk schema: {"l_max": .., "axisymmetric": .., "coeffs": [..]}.
#[derive(Serialize, Deserialize)]
struct ShapeJson {
    l_max: u32,
    axisymmetric: bool,
    coeffs: Vec<f64>,
}

impl ShapeCoefficients {
    /// Validates the coefficient count and positivity of the radius on the
    /// dense validation grid.
    pub fn new(coeffs: Vec<f64>, l_max: u32, axisymmetric: bool) -> Result<Self> {
        let basis = HarmonicBasis::new(l_max, axisymmetric);
        if coeffs.len() != basis.len() {
            return Err(Error::Argument(format!(
                "expected {} coefficients for l_max={l_max} (axisymmetric={axisymmetric}), got {}",
                basis.len(),
                coeffs.len()
            )));
        }
        let shape = ShapeCoefficients { coeffs, basis };
        shape.check_admissible()?;
        Ok(shape)
    }

    /// Ball of the given radius (single Yt_0^0 coefficient), general mode.
    pub fn ball(radius: f64, l_max: u32) -> Result<Self> {
        let basis = HarmonicBasis::new(l_max, false);
        let mut coeffs = vec![0.0; basis.len()];
        coeffs[0] = radius * (4.0 * std::f64::consts::PI).sqrt();
        Self::new(coeffs, l_max, false)
    }

    pub fn ball_axisym(radius: f64, l_max: u32) -> Result<Self> {
        let basis = HarmonicBasis::new(l_max, true);
        let mut coeffs = vec![0.0; basis.len()];
        coeffs[0] = radius * (4.0 * std::f64::consts::PI).sqrt();
        Self::new(coeffs, l_max, true)
    }

    /// Radius of the ball with unit volume, (4 pi / 3)^(-1/3).
    pub fn unit_volume_ball_radius() -> f64 {
        (4.0 * std::f64::consts::PI / 3.0).powf(-1.0 / 3.0)
    }

    fn check_admissible(&self) -> Result<()> {
        let n_phi = if self.basis.axisymmetric { 1 } else { ADMISSIBLE_N_PHI };
        let mut row = vec![0.0; self.basis.len()];
        for i in 0..ADMISSIBLE_N_THETA {
            let theta = std::f64::consts::PI * i as f64 / (ADMISSIBLE_N_THETA - 1) as f64;
            for j in 0..n_phi {
                let phi = 2.0 * std::f64::consts::PI * j as f64 / ADMISSIBLE_N_PHI as f64;
                self.basis.eval_into(theta, phi, &mut row);
                let r: f64 = self.coeffs.iter().zip(&row).map(|(c, y)| c * y).sum();
                if !(r > MIN_RADIUS) {
                    return Err(Error::Geometry(format!(
                        "inadmissible shape: r({theta:.4}, {phi:.4}) = {r:.3e}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn l_max(&self) -> u32 {
        self.basis.l_max
    }

    pub fn axisymmetric(&self) -> bool {
        self.basis.axisymmetric
    }

    pub fn basis(&self) -> &HarmonicBasis {
        &self.basis
    }

    /// r(theta, phi) = c . Yt(theta, phi)
    pub fn radius(&self, theta: f64, phi: f64) -> f64 {
        let mut row = vec![0.0; self.basis.len()];
        self.basis.eval_into(theta, phi, &mut row);
        self.coeffs.iter().zip(&row).map(|(c, y)| c * y).sum()
    }

    /// (r, dr/dtheta, dr/dphi); valid away from the poles.
    pub fn radius_with_derivs(&self, theta: f64, phi: f64) -> (f64, f64, f64) {
        let n = self.basis.len();
        let (mut v, mut dt, mut dp) = (vec![0.0; n], vec![0.0; n], vec![0.0; n]);
        self.basis.eval_with_derivs_into(theta, phi, &mut v, &mut dt, &mut dp);
        let r = self.coeffs.iter().zip(&v).map(|(c, y)| c * y).sum();
        let rt = self.coeffs.iter().zip(&dt).map(|(c, y)| c * y).sum();
        let rp = self.coeffs.iter().zip(&dp).map(|(c, y)| c * y).sum();
        (r, rt, rp)
    }

    /// Boundary point gamma(theta, phi) = r * (sin t cos p, sin t sin p, cos t).
    pub fn surface_point(&self, theta: f64, phi: f64) -> [f64; 3] {
        let r = self.radius(theta, phi);
        let st = theta.sin();
        [r * st * phi.cos(), r * st * phi.sin(), r * theta.cos()]
    }

    /// Outward unit normal and area element d sigma = |d_theta gamma x
    /// d_phi gamma| (per d theta d phi). Requires theta in (0, pi).
    pub fn surface_frame(&self, theta: f64, phi: f64) -> Result<SurfaceFrame> {
        if theta <= 0.0 || theta >= std::f64::consts::PI {
            return Err(Error::Geometry(format!(
                "surface frame undefined at the poles (theta = {theta})"
            )));
        }
        let (r, rt, rp) = self.radius_with_derivs(theta, phi);
        let st = theta.sin();
        let ct = theta.cos();
        let (cp, sp) = (phi.cos(), phi.sin());
        // orthonormal spherical frame
        let e_r = [st * cp, st * sp, ct];
        let e_t = [ct * cp, ct * sp, -st];
        let e_p = [-sp, cp, 0.0];
        // d_theta gamma x d_phi gamma = r^2 sin t e_r - r r_t sin t e_t - r r_p e_p
        let w = [
            r * r * st * e_r[0] - r * rt * st * e_t[0] - r * rp * e_p[0],
            r * r * st * e_r[1] - r * rt * st * e_t[1] - r * rp * e_p[1],
            r * r * st * e_r[2] - r * rt * st * e_t[2] - r * rp * e_p[2],
        ];
        let norm = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
        if norm <= 0.0 || !norm.is_finite() {
            return Err(Error::Geometry(format!(
                "degenerate surface frame at theta={theta}, phi={phi}"
            )));
        }
        Ok(SurfaceFrame {
            point: [r * e_r[0], r * e_r[1], r * e_r[2]],
            normal: [w[0] / norm, w[1] / norm, w[2] / norm],
            area_element: norm,
            radial_area: r * r * st,
            radius: r,
        })
    }

    /// |Omega_c| = (1/3) int r^3 sin t dt dp.
    pub fn volume(&self) -> f64 {
        if self.basis.axisymmetric {
            let (xs, ws) = gauss_legendre(128);
            let s: f64 = xs
                .iter()
                .zip(&ws)
                .map(|(&x, &w)| {
                    let r = self.radius(x.acos(), 0.0);
                    w * r * r * r
                })
                .sum();
            return s * 2.0 * std::f64::consts::PI / 3.0;
        }
        let rule = QuadratureRule::surface_default();
        rule.integrate(|n| {
            let r = self.radius(n.theta, n.phi);
            r * r * r / 3.0
        })
    }

    /// d|Omega_c|/dc_i = int r^2 Yt_i sin t dt dp.
    pub fn volume_gradient(&self) -> Vec<f64> {
        let rule = QuadratureRule::surface_default();
        let n = self.basis.len();
        let mut grad = vec![0.0; n];
        let mut row = vec![0.0; n];
        for (node, &w) in rule.nodes.iter().zip(&rule.weights) {
            self.basis.eval_into(node.theta, node.phi, &mut row);
            let r: f64 = self.coeffs.iter().zip(&row).map(|(c, y)| c * y).sum();
            let f = w * r * r;
            for (g, y) in grad.iter_mut().zip(&row) {
                *g += f * y;
            }
        }
        grad
    }

    /// Rescale to unit volume: c / |Omega_c|^(1/3).
    pub fn normalize_unit_volume(&self) -> ShapeCoefficients {
        let v = self.volume();
        let s = v.powf(-1.0 / 3.0);
        self.scaled(s)
    }

    /// t * c (homothety by t > 0).
    pub fn scaled(&self, t: f64) -> ShapeCoefficients {
        assert!(t > 0.0, "scale factor must be positive");
        ShapeCoefficients {
            coeffs: self.coeffs.iter().map(|c| c * t).collect(),
            basis: self.basis,
        }
    }

    /// Exact rotation about the z-axis by `angle`: Yt_l^{+-m} pairs mix by
    /// a 2x2 rotation with angle m * `angle`.
    pub fn rotated_z(&self, angle: f64) -> ShapeCoefficients {
        if self.basis.axisymmetric {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        for l in 0..=self.basis.l_max {
            for m in 1..=l {
                let ip = self.basis.index_of(l, m as i32);
                let im = self.basis.index_of(l, -(m as i32));
                let (cm, sm) = ((m as f64 * angle).cos(), (m as f64 * angle).sin());
                let cp = self.coeffs[ip];
                let cn = self.coeffs[im];
                // r'(theta, phi) = r(theta, phi - angle)
                coeffs[ip] = cm * cp - sm * cn;
                coeffs[im] = sm * cp + cm * cn;
            }
        }
        ShapeCoefficients { coeffs, basis: self.basis }
    }

    /// Translate the domain by dz along the field axis and refit the
    /// radius function (the translate of a harmonic shape is generally not
    /// harmonic; the fit uses the same l_max).
    pub fn translated_z(&self, dz: f64) -> Result<ShapeCoefficients> {
        let max_r = self.max_radius();
        let f = |theta: f64, phi: f64| -> f64 {
            // find t > 0 with |t u - dz e_z| on the original boundary
            let u = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
            let g = |t: f64| {
                let q = [u[0] * t, u[1] * t, u[2] * t - dz];
                let qn = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]).sqrt();
                if qn == 0.0 {
                    return -1.0;
                }
                let th = (q[2] / qn).clamp(-1.0, 1.0).acos();
                let ph = q[1].atan2(q[0]);
                qn - self.radius(th, ph)
            };
            let (mut lo, mut hi) = (1e-9, max_r + 2.0 * dz.abs() + 1.0);
            debug_assert!(g(lo) < 0.0 && g(hi) > 0.0);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if g(mid) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        };
        Self::fit(f, self.basis.l_max, self.basis.axisymmetric)
    }

    /// Project a radius function onto the harmonic basis by surface
    /// quadrature (orthonormality of Yt).
    pub fn fit(f: impl Fn(f64, f64) -> f64, l_max: u32, axisymmetric: bool) -> Result<ShapeCoefficients> {
        let basis = HarmonicBasis::new(l_max, axisymmetric);
        let n_theta = (2 * l_max as usize + 32).max(64);
        let n_phi = (2 * l_max as usize + 16).max(64);
        let rule = QuadratureRule::surface(n_theta, n_phi);
        let n = basis.len();
        let mut coeffs = vec![0.0; n];
        let mut row = vec![0.0; n];
        for (node, &w) in rule.nodes.iter().zip(&rule.weights) {
            let r = f(node.theta, node.phi);
            basis.eval_into(node.theta, node.phi, &mut row);
            for (c, y) in coeffs.iter_mut().zip(&row) {
                *c += w * r * y;
            }
        }
        Self::new(coeffs, l_max, axisymmetric)
    }

    /// Largest radius over the validation grid.
    pub fn max_radius(&self) -> f64 {
        let n_phi = if self.basis.axisymmetric { 1 } else { 72 };
        let mut max_r: f64 = 0.0;
        for i in 0..=180 {
            let theta = std::f64::consts::PI * i as f64 / 180.0;
            for j in 0..n_phi {
                let phi = 2.0 * std::f64::consts::PI * j as f64 / n_phi as f64;
                max_r = max_r.max(self.radius(theta, phi));
            }
        }
        max_r
    }

    /// Centroid of the enclosed domain.
    pub fn centroid(&self) -> Result<[f64; 3]> {
        let rule = QuadratureRule::volume(self, 32, 64, 24)?;
        let vol: f64 = rule.total_weight();
        let mut c = [0.0; 3];
        for (node, &w) in rule.nodes.iter().zip(&rule.weights) {
            let p = rule.position(node);
            c[0] += w * p[0];
            c[1] += w * p[1];
            c[2] += w * p[2];
        }
        Ok([c[0] / vol, c[1] / vol, c[2] / vol])
    }

    /// Keep only m = 0 content, re-expressed on an axisymmetric basis of
    /// degree `l_max` (warm starts across the solver-mode switch).
    pub fn to_axisymmetric(&self, l_max: u32) -> Result<ShapeCoefficients> {
        if self.basis.axisymmetric {
            let mut coeffs = self.coeffs.clone();
            coeffs.resize(l_max as usize + 1, 0.0);
            return Self::new(coeffs, l_max, true);
        }
        let mut coeffs = vec![0.0; l_max as usize + 1];
        for l in 0..=l_max.min(self.basis.l_max) {
            coeffs[l as usize] = self.coeffs[self.basis.index_of(l, 0)];
        }
        Self::new(coeffs, l_max, true)
    }

    /// Embed an axisymmetric shape in the general basis.
    pub fn to_general(&self, l_max: u32) -> Result<ShapeCoefficients> {
        let basis = HarmonicBasis::new(l_max, false);
        let mut coeffs = vec![0.0; basis.len()];
        if self.basis.axisymmetric {
            for l in 0..=l_max.min(self.basis.l_max) {
                coeffs[basis.index_of(l, 0)] = self.coeffs[l as usize];
            }
        } else {
            for l in 0..=l_max.min(self.basis.l_max) {
                for m in -(l as i32)..=(l as i32) {
                    coeffs[basis.index_of(l, m)] = self.coeffs[self.basis.index_of(l, m)];
                }
            }
        }
        Self::new(coeffs, l_max, false)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&ShapeJson {
            l_max: self.basis.l_max,
            axisymmetric: self.basis.axisymmetric,
            coeffs: self.coeffs.clone(),
        })?)
    }

    pub fn from_json(s: &str) -> Result<ShapeCoefficients> {
        let j: ShapeJson = serde_json::from_str(s)?;
        Self::new(j.coeffs, j.l_max, j.axisymmetric)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<ShapeCoefficients> {
        let s = std::fs::read_to_string(path)?;
        Self::from_json(&s)
    }
}

/// Normal, area element and position at one boundary parameter point.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceFrame {
    pub point: [f64; 3],
    /// outward unit normal
    pub normal: [f64; 3],
    /// |d_theta gamma x d_phi gamma| (area per d theta d phi)
    pub area_element: f64,
    /// gamma . (w / |w|) * |w| = r^2 sin(theta); this is V . n d sigma for
    /// a purely radial unit field V = e_r, per d theta d phi
    pub radial_area: f64,
    pub radius: f64,
}
