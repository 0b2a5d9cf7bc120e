//! Ground-state eigenvalue of the magnetic Dirichlet Laplacian on planar
//! disks. For field B > 0 and radius R the l = 0 radial ansatz
//! e^{-z/2} M(a, 1, z) with z = B r^2 / 2, a = (1 - lambda/B)/2 vanishes
//! at the boundary exactly when M(a(lambda), 1, B R^2 / 2) = 0; the ground
//! state is the smallest such root.
//!
//! The root is located in the shifted variable mu = lambda - B: a(mu) =
//! -mu/(2B) is exact in floating point for tiny mu, and bisection on a
//! geometric grid keeps full *relative* precision of the gap mu even when
//! it is exponentially small (strong fields). [`disk_lambda1_gap`] exposes
//! that gap directly; summing B + mu only loses what f64 addition must.

use crate::error::{Error, Result};
use crate::specfun::{bessel_j_zero, j01, kummer_m_weighted_rootfind};

/// Fields below this (scaled by 1/R^2) are treated as zero and use the
/// Bessel closed form; the Kummer parameter a ~ -lambda/(2B) blows up.
pub const B_ZERO_THRESHOLD: f64 = 1e-4;

/// Beyond this Kummer argument the first root's gap is taken from the
/// large-z expansion of the tiny-root equation (relative error < 1e-10).
const Z_ASYMPTOTIC: f64 = 400.0;

/// First eigenvalue of the disk of radius `radius` at field `b_field`.
pub fn disk_lambda1(radius: f64, b_field: f64) -> Result<f64> {
    check_disk_args(radius, b_field)?;
    if effective_zero_field(radius, b_field) {
        let j = j01() / radius;
        return Ok(j * j);
    }
    Ok(b_field + disk_lambda1_gap(radius, b_field)?)
}

/// lambda_1(D_R, B) - B, accurate in relative terms even when tiny.
pub fn disk_lambda1_gap(radius: f64, b_field: f64) -> Result<f64> {
    check_disk_args(radius, b_field)?;
    if effective_zero_field(radius, b_field) {
        let j = j01() / radius;
        return Ok(j * j - b_field);
    }
    let z = b_field * radius * radius / 2.0;
    if z > Z_ASYMPTOTIC {
        return Ok(tiny_root_gap_asymptotic(b_field, z));
    }

    let j = j01() / radius;
    let lam0 = j * j;
    // the root lies above both the zero-field eigenvalue and B
    let mu_lo = (lam0 - b_field).max(0.0);
    let mut mu_hi = (lam0 - b_field).max(0.0) + 4.0 * lam0 + 10.0 / (radius * radius);
    let f = |mu: f64| kummer_m_weighted_rootfind(-mu / (2.0 * b_field), 1.0, z, 0.0);

    for _widen in 0..5 {
        if let Some(root) = scan_first_root(&f, mu_lo, mu_hi, 200)? {
            return Ok(root);
        }
        mu_hi *= 2.0;
    }
    Err(Error::Solver(format!(
        "disk ground state not bracketed for R={radius}, B={b_field} (window exhausted)"
    )))
}

/// Smallest eigenvalue in the angular-momentum-l sector:
/// M(a, |l|+1, B R^2/2) = 0 with a = (l + |l| + 1 - lambda/B)/2.
/// Used to verify that the ground state sits at l = 0.
pub fn disk_lambda1_l(radius: f64, b_field: f64, l: i32) -> Result<f64> {
    check_disk_args(radius, b_field)?;
    if b_field <= 0.0 {
        return Err(Error::Domain("sector eigenvalues require B > 0".into()));
    }
    if effective_zero_field(radius, b_field) {
        let j = bessel_j_zero(l.unsigned_abs(), 1)? / radius;
        return Ok(j * j);
    }
    let z = b_field * radius * radius / 2.0;
    let la = l.unsigned_abs();
    let b = la as f64 + 1.0;
    let shift = (l + la as i32 + 1) as f64 * b_field; // a = 0 at lambda = shift
    let f = |mu: f64| kummer_m_weighted_rootfind(-mu / (2.0 * b_field), b, z, 0.0);

    // mu here is lambda - shift; roots require a < 0, i.e. mu > 0
    let j_sector = bessel_j_zero(la, 1)? / radius;
    let mut mu_hi = 4.0 * j_sector * j_sector + 10.0 / (radius * radius) + b_field;
    for _widen in 0..5 {
        if let Some(root) = scan_first_root(&f, 0.0, mu_hi, 400)? {
            return Ok(shift + root);
        }
        mu_hi *= 2.0;
    }
    Err(Error::Solver(format!(
        "sector l={l} ground state not bracketed for R={radius}, B={b_field}"
    )))
}

/// Two-term strong-field expansion for the unit-area disk:
/// B + (1/pi) B^2 exp(-B/(2 pi)).
pub fn disk_lambda1_asym(b_field: f64) -> Result<f64> {
    if !(b_field > 0.0) {
        return Err(Error::Domain(format!("expansion requires B > 0, got {b_field}")));
    }
    Ok(b_field + disk_gap_asym(b_field))
}

/// The correction term of [`disk_lambda1_asym`] alone.
pub fn disk_gap_asym(b_field: f64) -> f64 {
    b_field * b_field / std::f64::consts::PI * (-b_field / (2.0 * std::f64::consts::PI)).exp()
}

fn check_disk_args(radius: f64, b_field: f64) -> Result<()> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Domain(format!("radius must be positive and finite, got {radius}")));
    }
    if !(b_field >= 0.0 && b_field.is_finite()) {
        return Err(Error::Domain(format!("field must be non-negative and finite, got {b_field}")));
    }
    Ok(())
}

fn effective_zero_field(radius: f64, b_field: f64) -> bool {
    b_field < B_ZERO_THRESHOLD / (radius * radius)
}

/// First root of f on (mu_lo, mu_hi]: sign scan on a linear grid, then
/// geometric bisection inside the bracketing cell (the first cell is
/// entered through a tiny positive floor so exponentially small roots
/// keep relative accuracy).
fn scan_first_root(
    f: &dyn Fn(f64) -> Result<f64>,
    mu_lo: f64,
    mu_hi: f64,
    n_scan: usize,
) -> Result<Option<f64>> {
    let floor = 1e-280;
    let lo_eff = mu_lo.max(floor);
    let mut prev_mu = lo_eff;
    let mut prev_f = f(prev_mu)?;
    if prev_f == 0.0 {
        return Ok(Some(prev_mu));
    }
    for i in 1..=n_scan {
        let mu = mu_lo + (mu_hi - mu_lo) * i as f64 / n_scan as f64;
        if mu <= lo_eff {
            continue;
        }
        let fv = f(mu)?;
        if fv == 0.0 || prev_f.signum() != fv.signum() {
            return Ok(Some(bisect_geometric(f, prev_mu, mu, prev_f)?));
        }
        prev_mu = mu;
        prev_f = fv;
    }
    Ok(None)
}

fn bisect_geometric(f: &dyn Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, mut flo: f64) -> Result<f64> {
    // sqrt before multiplying: lo * hi can underflow for tiny gaps
    let gmean = |a: f64, b: f64| a.sqrt() * b.sqrt();
    for _ in 0..2000 {
        if hi - lo <= 1e-13 * lo {
            break;
        }
        let mid = gmean(lo, hi);
        let fm = f(mid)?;
        if fm == 0.0 || flo.signum() != fm.signum() {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    Ok(gmean(lo, hi))
}

/// Root gap from the tiny-root equation mu = 2B / S(z),
/// S(z) = sum_{k>=1} z^k/(k k!) ~ (e^z/z)(1 + 1/z + 2/z^2 + ...).
fn tiny_root_gap_asymptotic(b_field: f64, z: f64) -> f64 {
    let corr = 1.0 + 1.0 / z + 2.0 / (z * z) + 6.0 / (z * z * z) + 24.0 / (z * z * z * z);
    let ln_s = z - z.ln() + corr.ln();
    let ln_mu = (2.0 * b_field).ln() - ln_s;
    ln_mu.exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const J01_SQ: f64 = 5.783185962946784521175995758455807035071;
    // 40-digit reference for the (R=1, B=5) ground state
    const DISK_1_5: f64 = 7.098769677094516571721734714335094449355;

    #[test]
    fn zero_field_is_bessel() {
        assert_relative_eq!(disk_lambda1(1.0, 0.0).unwrap(), J01_SQ, max_relative = 1e-13);
        assert_relative_eq!(disk_lambda1(0.5, 0.0).unwrap(), 4.0 * J01_SQ, max_relative = 1e-13);
    }

    #[test]
    fn reference_value_at_b5() {
        assert_relative_eq!(disk_lambda1(1.0, 5.0).unwrap(), DISK_1_5, max_relative = 1e-10);
    }

    /// Independent oracle: shooting on the radial ODE
    /// -u'' - u'/r + (B r / 2)^2 u = lambda u, u regular at 0, u(R) = 0.
    fn shoot_u_at_boundary(radius: f64, b_field: f64, lambda: f64) -> f64 {
        let n = 6000;
        let r0 = 1e-8;
        let h = (radius - r0) / n as f64;
        // regular start: u = 1 - lambda r^2/4
        let mut u = 1.0 - lambda * r0 * r0 / 4.0;
        let mut v = -lambda * r0 / 2.0; // u'
        let deriv = |r: f64, u: f64, v: f64| {
            let w = b_field * r / 2.0;
            (v, -v / r + (w * w - lambda) * u)
        };
        let mut r = r0;
        for _ in 0..n {
            let (k1u, k1v) = deriv(r, u, v);
            let (k2u, k2v) = deriv(r + h / 2.0, u + h / 2.0 * k1u, v + h / 2.0 * k1v);
            let (k3u, k3v) = deriv(r + h / 2.0, u + h / 2.0 * k2u, v + h / 2.0 * k2v);
            let (k4u, k4v) = deriv(r + h, u + h * k3u, v + h * k3v);
            u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
            v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            r += h;
        }
        u
    }

    #[test]
    fn shooting_oracle_agrees() {
        let (radius, b_field) = (1.0, 5.0);
        // bisection on the shot boundary value
        let (mut lo, mut hi) = (6.0, 9.0);
        let mut flo = shoot_u_at_boundary(radius, b_field, lo);
        assert!(flo * shoot_u_at_boundary(radius, b_field, hi) < 0.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            let fm = shoot_u_at_boundary(radius, b_field, mid);
            if flo * fm <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        let oracle = 0.5 * (lo + hi);
        assert_relative_eq!(disk_lambda1(radius, b_field).unwrap(), oracle, max_relative = 1e-8);
    }

    #[test]
    fn scaling_identity_exact() {
        // lambda(tR, B/t^2) = lambda(R, B)/t^2
        let (radius, b_field) = (1.0, 5.0);
        let base = disk_lambda1(radius, b_field).unwrap();
        for &t in &[0.5f64, 2.0, 3.7] {
            let scaled = disk_lambda1(t * radius, b_field / (t * t)).unwrap();
            assert_relative_eq!(scaled, base / (t * t), max_relative = 1e-10);
        }
    }

    #[test]
    fn diamagnetic_bound() {
        for &(radius, b_field) in &[(1.0, 0.5), (1.0, 5.0), (0.3, 40.0), (2.0, 11.0), (0.5, 170.0)] {
            let lam = disk_lambda1(radius, b_field).unwrap();
            let lam0 = J01_SQ / (radius * radius);
            assert!(lam >= lam0.max(b_field) - 1e-10 * lam, "({radius}, {b_field})");
        }
    }

    #[test]
    fn monotone_decreasing_in_radius() {
        let b_field = 7.0;
        let mut prev = f64::INFINITY;
        for &radius in &[0.4, 0.7, 1.0, 1.5, 2.5] {
            let lam = disk_lambda1(radius, b_field).unwrap();
            assert!(lam <= prev + 1e-12);
            prev = lam;
        }
    }

    #[test]
    fn h_times_disk_at_scaled_field_increases() {
        // h -> h lambda_1(D, B/h) strictly increasing (unit-area disk)
        let r_unit = 1.0 / std::f64::consts::PI.sqrt();
        let b_field = 25.0;
        let mut prev = 0.0;
        for i in 1..=40 {
            let h = 0.1 * 1.25f64.powi(i);
            let v = h * disk_lambda1(r_unit, b_field / h).unwrap();
            assert!(v > prev, "h lambda must increase: h={h} v={v} prev={prev}");
            prev = v;
        }
    }

    #[test]
    fn continuity_at_zero_field() {
        let lam = disk_lambda1(1.0, 1e-6).unwrap();
        assert!((lam - J01_SQ).abs() < 1e-3);
    }

    #[test]
    fn sector_eigenvalues_order() {
        let (radius, b_field) = (1.0, 5.0);
        let l0 = disk_lambda1_l(radius, b_field, 0).unwrap();
        assert_relative_eq!(l0, disk_lambda1(radius, b_field).unwrap(), max_relative = 1e-9);
        let lm1 = disk_lambda1_l(radius, b_field, -1).unwrap();
        let lp1 = disk_lambda1_l(radius, b_field, 1).unwrap();
        assert!(lm1 >= l0 - 1e-9 * l0, "l=-1 sector above ground: {lm1} vs {l0}");
        assert!(lp1 >= lm1 - 1e-9 * lm1, "positive l penalized: {lp1} vs {lm1}");
        // ground state at l = 0 across a small scan
        for l in -3..=3 {
            let ll = disk_lambda1_l(radius, b_field, l).unwrap();
            assert!(ll >= l0 - 1e-9 * l0, "sector {l} below ground");
        }
    }

    #[test]
    fn asymptotic_expansion_trend() {
        let r_unit = 1.0 / std::f64::consts::PI.sqrt();
        // reference gaps computed with 40-digit arithmetic
        let gap50 = 0.2381045968062869194815073601715035177767;
        let gap100 = 0.0003633507769063684240656852576040906247403;
        let g50 = disk_lambda1_gap(r_unit, 50.0).unwrap();
        let g100 = disk_lambda1_gap(r_unit, 100.0).unwrap();
        assert_relative_eq!(g50, gap50, max_relative = 1e-9);
        assert_relative_eq!(g100, gap100, max_relative = 1e-9);
        let e50 = (disk_gap_asym(50.0) - g50).abs() / g50;
        let e100 = (disk_gap_asym(100.0) - g100).abs() / g100;
        assert!(e50 < 0.2, "relative error at B=50 should be < 20%, got {e50}");
        assert!(e100 < e50, "expansion must tighten with B: {e100} !< {e50}");
        // positive correction term
        assert!(disk_lambda1_asym(0.5).unwrap() > 0.5);
    }

    #[test]
    fn huge_field_gap_across_asymptotic_switch() {
        // both sides of the z = 400 switch against 250-digit references
        let radius = 1.0 / std::f64::consts::PI.sqrt();
        let cases = [
            (0.999, 5.7186685e-168),   // z = 399.6, series path
            (1.001, 2.579875231e-168), // z = 400.4, asymptotic path
        ];
        for &(factr, reference) in &cases {
            let b = 2.0 * Z_ASYMPTOTIC / (radius * radius) * factr;
            let g = disk_lambda1_gap(radius, b).unwrap();
            assert_relative_eq!(g, reference, max_relative = 1e-8);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(disk_lambda1(0.0, 1.0).is_err());
        assert!(disk_lambda1(-1.0, 1.0).is_err());
        assert!(disk_lambda1(1.0, -1.0).is_err());
        assert!(disk_lambda1_asym(0.0).is_err());
    }
}
