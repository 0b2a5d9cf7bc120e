//! Bessel functions J_nu of integer order and their positive zeros.
//!
//! J_n(x) is evaluated through the integral representation
//! (1/pi) int_0^pi cos(n t - x sin t) dt with the trapezoidal rule. The
//! quadrature error is an aliasing sum of Bessel functions of order
//! ~2N +- n, which is far below machine precision once N comfortably
//! exceeds (x + n)/2, so the node count below gives full accuracy
//! (absolute near zeros, relative elsewhere).

use crate::error::{Error, Result};

/// J_nu(x) for non-negative integer order.
pub fn bessel_j(nu: u32, x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("bessel_j requires finite x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(if nu == 0 { 1.0 } else { 0.0 });
    }
    let n = 32 + (0.75 * (x + nu as f64)) as usize + 8;
    let h = std::f64::consts::PI / n as f64;
    // endpoints carry weight 1/2; the tau = 0 integrand is cos(0) = 1 and
    // tau = pi gives cos(nu * pi)
    let mut sum = 0.5 * (1.0 + (nu as f64 * std::f64::consts::PI).cos());
    for j in 1..n {
        let t = j as f64 * h;
        sum += (nu as f64 * t - x * t.sin()).cos();
    }
    Ok(sum * h / std::f64::consts::PI)
}

/// k-th positive zero of J_nu, accurate to ~1e-12 relative.
pub fn bessel_j_zero(nu: u32, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::Argument("zero index k must be >= 1".into()));
    }
    // march outward counting sign changes; consecutive zeros of J_nu are
    // separated by at least ~2.4, so a 0.5 step cannot skip a pair
    let step = 0.5;
    let mut x0 = (nu as f64).max(1e-3);
    let mut f0 = bessel_j(nu, x0)?;
    if f0 == 0.0 {
        x0 += 1e-9;
        f0 = bessel_j(nu, x0)?;
    }
    let mut found = 0;
    for _ in 0..100_000 {
        let x1 = x0 + step;
        let f1 = bessel_j(nu, x1)?;
        if f0 * f1 <= 0.0 {
            found += 1;
            if found == k {
                return bisect_zero(nu, x0, x1);
            }
        }
        x0 = x1;
        f0 = f1;
    }
    Err(Error::Solver(format!("failed to locate zero {k} of J_{nu}")))
}

fn bisect_zero(nu: u32, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut flo = bessel_j(nu, lo)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo) <= 1e-14 * mid {
            break;
        }
        let fm = bessel_j(nu, mid)?;
        if flo * fm <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    Ok(0.5 * (lo + hi))
}
