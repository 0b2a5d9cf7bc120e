//! Quadrature rules on the parameter domains used by surface and volume
//! integrals: Gauss-Legendre in cos(theta), uniform trapezoid in phi
//! (spectrally accurate for periodic integrands), Gauss-Legendre in the
//! scaled radial variable for volume rules.

use super::shape::ShapeCoefficients;
use crate::error::{Error, Result};

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-like initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_poly(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// (P_n(x), P_n'(x))
fn legendre_poly(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (p0 - x * p1) / (1.0 - x * x);
    (p1, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadKind {
    Surface,
    Volume,
}

/// A quadrature node in spherical parameters. For surface rules `rho` is
/// fixed at 1; for volume rules it is the physical radial coordinate of
/// the node, already scaled into [0, r(theta, phi)].
#[derive(Debug, Clone, Copy)]
pub struct QuadNode {
    pub theta: f64,
    pub phi: f64,
    pub rho: f64,
}

/// Tensor quadrature rule, stored flat. Surface weights refer to the
/// reference domain d(cos theta) d(phi) (they sum to 4 pi); volume weights
/// include the rho^2 Jacobian and radial scaling so they sum to the
/// domain volume for a unit integrand.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub kind: QuadKind,
    pub nodes: Vec<QuadNode>,
    pub weights: Vec<f64>,
    pub n_theta: usize,
    pub n_phi: usize,
    pub n_rho: usize,
    /// unique theta values (Gauss-Legendre in cos theta)
    pub thetas: Vec<f64>,
    /// unique phi values (uniform)
    pub phis: Vec<f64>,
}

pub const DEFAULT_N_THETA: usize = 64;
pub const DEFAULT_N_PHI: usize = 128;
pub const DEFAULT_N_RHO: usize = 48;

impl QuadratureRule {
    /// Surface rule on the (cos theta, phi) parameter box. Independent of
    /// any particular shape; integrate f dsigma by supplying the area
    /// element ratio |w|/sin(theta) in the integrand.
    pub fn surface(n_theta: usize, n_phi: usize) -> QuadratureRule {
        let (xs, wx) = gauss_legendre(n_theta);
        let thetas: Vec<f64> = xs.iter().map(|&x| x.acos()).collect();
        let w_phi = 2.0 * std::f64::consts::PI / n_phi as f64;
        let phis: Vec<f64> = (0..n_phi).map(|j| j as f64 * w_phi).collect();
        let mut nodes = Vec::with_capacity(n_theta * n_phi);
        let mut weights = Vec::with_capacity(n_theta * n_phi);
        for (i, &theta) in thetas.iter().enumerate() {
            for &phi in &phis {
                nodes.push(QuadNode { theta, phi, rho: 1.0 });
                weights.push(wx[i] * w_phi);
            }
        }
        QuadratureRule {
            kind: QuadKind::Surface,
            nodes,
            weights,
            n_theta,
            n_phi,
            n_rho: 0,
            thetas,
            phis,
        }
    }

    pub fn surface_default() -> QuadratureRule {
        Self::surface(DEFAULT_N_THETA, DEFAULT_N_PHI)
    }

    /// Volume rule for a given shape: radial Gauss-Legendre nodes mapped
    /// onto [0, r(theta, phi)] under each surface node.
    pub fn volume(shape: &ShapeCoefficients, n_theta: usize, n_phi: usize, n_rho: usize) -> Result<QuadratureRule> {
        let (xs, wx) = gauss_legendre(n_theta);
        let thetas: Vec<f64> = xs.iter().map(|&x| x.acos()).collect();
        let w_phi = 2.0 * std::f64::consts::PI / n_phi as f64;
        let phis: Vec<f64> = (0..n_phi).map(|j| j as f64 * w_phi).collect();
        let (xr, wr) = gauss_legendre(n_rho);
        // map [-1,1] -> (0,1)
        let xi: Vec<f64> = xr.iter().map(|&x| 0.5 * (x + 1.0)).collect();
        let wi: Vec<f64> = wr.iter().map(|&w| 0.5 * w).collect();

        let mut nodes = Vec::with_capacity(n_theta * n_phi * n_rho);
        let mut weights = Vec::with_capacity(n_theta * n_phi * n_rho);
        for (i, &theta) in thetas.iter().enumerate() {
            for &phi in &phis {
                let r = shape.radius(theta, phi);
                if r <= 0.0 {
                    return Err(Error::Geometry(format!(
                        "non-positive radius {r} at theta={theta}, phi={phi}"
                    )));
                }
                for (k, &x) in xi.iter().enumerate() {
                    let rho = r * x;
                    nodes.push(QuadNode { theta, phi, rho });
                    weights.push(wx[i] * w_phi * r * wi[k] * rho * rho);
                }
            }
        }
        Ok(QuadratureRule {
            kind: QuadKind::Volume,
            nodes,
            weights,
            n_theta,
            n_phi,
            n_rho,
            thetas,
            phis,
        })
    }

    pub fn volume_default(shape: &ShapeCoefficients) -> Result<QuadratureRule> {
        Self::volume(shape, DEFAULT_N_THETA, DEFAULT_N_PHI, DEFAULT_N_RHO)
    }

    /// Sum of weights (reference measure for surface rules, volume for
    /// volume rules).
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Integrate a function of the node.
    pub fn integrate(&self, mut f: impl FnMut(&QuadNode) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(n, &w)| w * f(n)).sum()
    }

    /// Cartesian position of a node (volume rules).
    pub fn position(&self, node: &QuadNode) -> [f64; 3] {
        let st = node.theta.sin();
        [
            node.rho * st * node.phi.cos(),
            node.rho * st * node.phi.sin(),
            node.rho * node.theta.cos(),
        ]
    }
}
