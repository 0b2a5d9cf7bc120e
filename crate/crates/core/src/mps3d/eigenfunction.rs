//! Evaluation of the approximate eigenfunction u = sum alpha_j psi_j, its
//! L2 normalization over the domain, and |du/dn|^2 on the boundary (the
//! Hadamard shape-derivative density).

use num_complex::Complex64;
use rayon::prelude::*;

use super::basis::{
    bessel_radial, bessel_radial_deriv, gradient_to_cartesian, kummer_radial, kummer_radial_deriv,
};
use super::solve::EigenSolveResult;
use crate::error::{Error, Result};
use crate::geometry::{QuadKind, QuadratureRule, ShapeCoefficients};

/// Radial-slot cache shared by value and gradient evaluation: profiles
/// depend only on (|l|, |p|).
struct Slots {
    keys: Vec<(u32, f64)>,
    of_mode: Vec<usize>,
}

fn build_slots(modes: &[(i32, f64)]) -> Slots {
    let mut keys: Vec<(u32, f64)> = Vec::new();
    let mut of_mode = Vec::with_capacity(modes.len());
    for &(l, p) in modes {
        let key = (l.unsigned_abs(), p.abs());
        let idx = match keys.iter().position(|&k| k == key) {
            Some(i) => i,
            None => {
                keys.push(key);
                keys.len() - 1
            }
        };
        of_mode.push(idx);
    }
    Slots { keys, of_mode }
}

fn radial_values(res: &EigenSolveResult, slots: &Slots, r: f64) -> Result<Vec<f64>> {
    slots
        .keys
        .iter()
        .map(|&(la, pa)| {
            if res.used_bessel {
                bessel_radial(la as i32, pa, res.lambda, r)
            } else {
                kummer_radial(la as i32, pa, res.lambda, res.b_field, r)
            }
        })
        .collect()
}

fn radial_derivs(res: &EigenSolveResult, slots: &Slots, r: f64) -> Result<Vec<f64>> {
    slots
        .keys
        .iter()
        .map(|&(la, pa)| {
            if res.used_bessel {
                bessel_radial_deriv(la as i32, pa, res.lambda, r)
            } else {
                kummer_radial_deriv(la as i32, pa, res.lambda, res.b_field, r)
            }
        })
        .collect()
}

fn eval_at(res: &EigenSolveResult, slots: &Slots, point: &[f64; 3]) -> Result<Complex64> {
    let d = [point[0] - res.center[0], point[1] - res.center[1], point[2] - res.center[2]];
    let r = (d[0] * d[0] + d[1] * d[1]).sqrt();
    let (phi, z) = (d[1].atan2(d[0]), d[2]);
    let radial = radial_values(res, slots, r)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for ((&(l, p), &slot), &a) in res.modes.iter().zip(&slots.of_mode).zip(&res.alpha) {
        let ph = Complex64::from_polar(1.0, l as f64 * phi + p * z);
        acc += a * radial[slot] * ph;
    }
    Ok(acc)
}

fn grad_at(res: &EigenSolveResult, slots: &Slots, point: &[f64; 3]) -> Result<[Complex64; 3]> {
    let d = [point[0] - res.center[0], point[1] - res.center[1], point[2] - res.center[2]];
    let r = (d[0] * d[0] + d[1] * d[1]).sqrt();
    let (phi, z) = (d[1].atan2(d[0]), d[2]);
    let radial = radial_values(res, slots, r)?;
    let dradial = radial_derivs(res, slots, r)?;
    let i = Complex64::new(0.0, 1.0);
    let mut g = [Complex64::new(0.0, 0.0); 3];
    for ((&(l, p), &slot), &a) in res.modes.iter().zip(&slots.of_mode).zip(&res.alpha) {
        let ph = Complex64::from_polar(1.0, l as f64 * phi + p * z);
        let f = radial[slot];
        let df = dradial[slot];
        let angular = if r > 1e-12 {
            i * (l as f64) * f / r * ph
        } else if l.unsigned_abs() == 1 {
            let c = if res.used_bessel {
                bessel_radial_deriv(l, p, res.lambda, 0.0)?
            } else {
                (res.b_field / 2.0).sqrt()
            };
            i * (l as f64) * c * ph
        } else {
            Complex64::new(0.0, 0.0)
        };
        let cyl = [df * ph, angular, i * p * f * ph];
        let cart = gradient_to_cartesian(&cyl, phi);
        for (gi, ci) in g.iter_mut().zip(&cart) {
            *gi += a * ci;
        }
    }
    Ok(g)
}

/// u at a batch of points (coordinates of the original, uncentered shape).
pub fn eigenfunction_eval(res: &EigenSolveResult, points: &[[f64; 3]]) -> Result<Vec<Complex64>> {
    let slots = build_slots(&res.modes);
    points.par_iter().map(|p| eval_at(res, &slots, p)).collect()
}

/// grad u (Cartesian components) at a batch of points.
pub fn eigenfunction_grad_eval(
    res: &EigenSolveResult,
    points: &[[f64; 3]],
) -> Result<Vec<[Complex64; 3]>> {
    let slots = build_slots(&res.modes);
    points.par_iter().map(|p| grad_at(res, &slots, p)).collect()
}

/// Scale alpha so that int_Omega |u|^2 dx = 1 over the given volume rule.
/// Returns the norm that was divided out.
pub fn l2_normalize(res: &mut EigenSolveResult, rule: &QuadratureRule) -> Result<f64> {
    if rule.kind != QuadKind::Volume {
        return Err(Error::Argument("l2_normalize needs a volume quadrature rule".into()));
    }
    let points: Vec<[f64; 3]> = rule.nodes.iter().map(|n| rule.position(n)).collect();
    let vals = eigenfunction_eval(res, &points)?;
    let integral: f64 = vals.iter().zip(&rule.weights).map(|(v, &w)| w * v.norm_sqr()).sum();
    if !(integral > 0.0) {
        return Err(Error::Solver(format!("non-positive L2 mass {integral}")));
    }
    let s = integral.sqrt();
    for a in &mut res.alpha {
        *a /= s;
    }
    res.l2_normalized = true;
    Ok(s)
}

/// |du/dn|^2 on the boundary at the nodes of a surface rule, plus the
/// full |grad u|^2 and their integrated relative discrepancy (since u
/// vanishes on the boundary up to collocation error, the tangential part
/// measures solve quality).
#[derive(Debug, Clone)]
pub struct BoundaryDerivatives {
    /// |n . grad u|^2 per surface node
    pub normal_sq: Vec<f64>,
    /// |grad u|^2 per surface node
    pub full_grad_sq: Vec<f64>,
    /// integral of |full - normal| over the boundary, relative to the
    /// integral of the normal part
    pub tangential_discrepancy: f64,
}

pub fn normal_derivative(
    res: &EigenSolveResult,
    shape: &ShapeCoefficients,
    rule: &QuadratureRule,
) -> Result<BoundaryDerivatives> {
    if rule.kind != QuadKind::Surface {
        return Err(Error::Argument("normal_derivative needs a surface rule".into()));
    }
    let slots = build_slots(&res.modes);
    let per_node: Vec<Result<(f64, f64, f64, f64)>> = rule
        .nodes
        .par_iter()
        .zip(rule.weights.par_iter())
        .map(|(node, &w)| {
            let frame = shape.surface_frame(node.theta, node.phi)?;
            let g = grad_at(res, &slots, &frame.point)?;
            let ndot = g[0] * frame.normal[0] + g[1] * frame.normal[1] + g[2] * frame.normal[2];
            let nsq = ndot.norm_sqr();
            let fsq = g.iter().map(|c| c.norm_sqr()).sum::<f64>();
            let ds = w * frame.area_element / node.theta.sin();
            Ok((nsq, fsq, ds * (fsq - nsq).abs(), ds * nsq))
        })
        .collect();
    let mut normal_sq = Vec::with_capacity(rule.nodes.len());
    let mut full_grad_sq = Vec::with_capacity(rule.nodes.len());
    let mut tang = 0.0;
    let mut norm_int = 0.0;
    for item in per_node {
        let (nsq, fsq, t, ni) = item?;
        normal_sq.push(nsq);
        full_grad_sq.push(fsq);
        tang += t;
        norm_int += ni;
    }
    Ok(BoundaryDerivatives {
        normal_sq,
        full_grad_sq,
        tangential_discrepancy: if norm_int > 0.0 { tang / norm_int } else { f64::INFINITY },
    })
}
