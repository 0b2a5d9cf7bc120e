//! Sampled geometric descriptors of a star-shaped domain: axial extent
//! h(Omega), projected diameter R(Omega), diameter and inradius. These are
//! diagnostics (they feed trend checks and figures, never gradients), so
//! they are computed on dense boundary samples rather than certified.

use super::shape::ShapeCoefficients;

#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct Descriptors {
    /// sup |x_3 - y_3|: extent along the field axis
    pub h: f64,
    /// sup of pairwise distances of the xy-projection (projected diameter)
    pub r_proj: f64,
    /// sup |x - y|
    pub diam: f64,
    /// inradius (sampled approximation)
    pub r_in: f64,
}

pub fn descriptors(shape: &ShapeCoefficients) -> Descriptors {
    let pts = boundary_sample(shape, 90, 180);

    let mut zmin = f64::INFINITY;
    let mut zmax = f64::NEG_INFINITY;
    for p in &pts {
        zmin = zmin.min(p[2]);
        zmax = zmax.max(p[2]);
    }
    let h = zmax - zmin;

    let mut r_proj2: f64 = 0.0;
    let mut diam2: f64 = 0.0;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let dx = pts[i][0] - pts[j][0];
            let dy = pts[i][1] - pts[j][1];
            let dz = pts[i][2] - pts[j][2];
            r_proj2 = r_proj2.max(dx * dx + dy * dy);
            diam2 = diam2.max(dx * dx + dy * dy + dz * dz);
        }
    }

    Descriptors {
        h,
        r_proj: r_proj2.sqrt(),
        diam: diam2.sqrt(),
        r_in: inradius(shape, &pts, zmin, zmax),
    }
}

/// Maximize the distance to the boundary sample over interior candidates:
/// points on the symmetry axis plus a coarse interior grid.
fn inradius(shape: &ShapeCoefficients, boundary: &[[f64; 3]], zmin: f64, zmax: f64) -> f64 {
    let mut candidates: Vec<[f64; 3]> = Vec::new();
    for k in 0..60 {
        let z = zmin + (zmax - zmin) * (k as f64 + 0.5) / 60.0;
        candidates.push([0.0, 0.0, z]);
    }
    if !shape.axisymmetric() {
        let rmax = shape.max_radius();
        let n = 6;
        for ix in 0..n {
            for iy in 0..n {
                for iz in 0..12 {
                    let x = rmax * (2.0 * (ix as f64 + 0.5) / n as f64 - 1.0) * 0.7;
                    let y = rmax * (2.0 * (iy as f64 + 0.5) / n as f64 - 1.0) * 0.7;
                    let z = zmin + (zmax - zmin) * (iz as f64 + 0.5) / 12.0;
                    candidates.push([x, y, z]);
                }
            }
        }
    }
    let mut best: f64 = 0.0;
    for c in candidates {
        if !is_interior(shape, &c) {
            continue;
        }
        let mut d2 = f64::INFINITY;
        for b in boundary {
            let dx = c[0] - b[0];
            let dy = c[1] - b[1];
            let dz = c[2] - b[2];
            d2 = d2.min(dx * dx + dy * dy + dz * dz);
        }
        best = best.max(d2.sqrt());
    }
    best
}

fn is_interior(shape: &ShapeCoefficients, x: &[f64; 3]) -> bool {
    let rho = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    if rho == 0.0 {
        return true;
    }
    let theta = (x[2] / rho).clamp(-1.0, 1.0).acos();
    let phi = x[1].atan2(x[0]);
    rho < shape.radius(theta, phi)
}

pub(crate) fn boundary_sample(shape: &ShapeCoefficients, n_theta: usize, n_phi: usize) -> Vec<[f64; 3]> {
    let n_phi = if shape.axisymmetric() { n_phi.min(72) } else { n_phi };
    let mut pts = Vec::with_capacity(n_theta * n_phi);
    for i in 0..=n_theta {
        let theta = std::f64::consts::PI * i as f64 / n_theta as f64;
        let cols = if i == 0 || i == n_theta { 1 } else { n_phi };
        for j in 0..cols {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / n_phi as f64;
            pts.push(shape.surface_point(theta, phi));
        }
    }
    pts
}

/// Sampled convexity certificate: every boundary point must lie on the
/// inner side of the tangent plane at every other sampled point. Used only
/// to gate convexity-conditional checks; a `false` means "not certified",
/// not "certified non-convex".
pub fn is_convex_sampled(shape: &ShapeCoefficients) -> bool {
    let n_theta = 40;
    let n_phi = if shape.axisymmetric() { 8 } else { 80 };
    let mut frames = Vec::new();
    for i in 1..n_theta {
        let theta = std::f64::consts::PI * i as f64 / n_theta as f64;
        for j in 0..n_phi {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / n_phi as f64;
            match shape.surface_frame(theta, phi) {
                Ok(f) => frames.push(f),
                Err(_) => return false,
            }
        }
    }
    let scale = shape.max_radius();
    let tol = 1e-7 * scale;
    for fi in &frames {
        for fj in &frames {
            let d = [
                fj.point[0] - fi.point[0],
                fj.point[1] - fi.point[1],
                fj.point[2] - fi.point[2],
            ];
            let s = d[0] * fi.normal[0] + d[1] * fi.normal[1] + d[2] * fi.normal[2];
            if s > tol {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn unit_ball_descriptors() {
        let s = ShapeCoefficients::ball(1.0, 4).unwrap();
        let d = descriptors(&s);
        assert_relative_eq!(d.h, 2.0, max_relative = 1e-3);
        assert_relative_eq!(d.r_proj, 2.0, max_relative = 1e-3);
        assert_relative_eq!(d.diam, 2.0, max_relative = 1e-3);
        assert_relative_eq!(d.r_in, 1.0, max_relative = 2e-2);
    }

    #[test]
    fn descriptors_scale_linearly() {
        let s = ShapeCoefficients::ball_axisym(1.0, 20).unwrap();
        let t = 1.8;
        let d1 = descriptors(&s);
        let d2 = descriptors(&s.scaled(t));
        assert_relative_eq!(d2.h, t * d1.h, max_relative = 1e-6);
        assert_relative_eq!(d2.r_proj, t * d1.r_proj, max_relative = 1e-6);
        assert_relative_eq!(d2.diam, t * d1.diam, max_relative = 1e-6);
        assert_relative_eq!(d2.r_in, t * d1.r_in, max_relative = 1e-6);
    }

    #[test]
    fn ball_is_certified_convex() {
        let s = ShapeCoefficients::ball(1.0, 6).unwrap();
        assert!(is_convex_sampled(&s));
    }

    #[test]
    fn strong_dent_is_not_certified() {
        let mut c = vec![0.0; 121];
        c[0] = (4.0 * std::f64::consts::PI).sqrt();
        c[6] = -0.9; // strong (2,0) dent
        let s = ShapeCoefficients::new(c, 10, false).unwrap();
        assert!(!is_convex_sampled(&s));
    }
}
