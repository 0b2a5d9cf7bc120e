//! Real spherical harmonics in the convention used throughout this crate:
//!
//!   Yt_l^m = sqrt(2) Re Y_l^m   (m > 0)
//!   Yt_l^0 = Y_l^0
//!   Yt_l^m = sqrt(2) Im Y_l^|m| (m < 0)
//!
//! with Y_l^m = sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!) e^{i m phi} P_l^m(cos
//! theta) and Condon-Shortley P_l^m. This yields an orthonormal basis on
//! the unit sphere.
//!
//! [`HarmonicBasis`] evaluates whole rows Yt(theta, phi) (and their first
//! angular derivatives) in the fixed coefficient ordering
//! (0,0), (1,-1), (1,0), (1,1), (2,-2), ... used by shape vectors; an
//! axisymmetric basis keeps only m = 0.

use super::legendre::assoc_legendre_unchecked;
use crate::error::{Error, Result};

/// Yt_l^m(theta, phi), single value.
pub fn real_sph_harm(l: u32, m: i32, theta: f64, phi: f64) -> Result<f64> {
    if m.unsigned_abs() > l {
        return Err(Error::Argument(format!("require |m| <= l, got l={l} m={m}")));
    }
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::Domain(format!("theta = {theta} outside [0, pi]")));
    }
    let ma = m.unsigned_abs();
    let p = assoc_legendre_unchecked(l, ma, theta.cos());
    let norm = norm_factor(l, ma);
    let az = if m > 0 {
        std::f64::consts::SQRT_2 * (ma as f64 * phi).cos()
    } else if m < 0 {
        std::f64::consts::SQRT_2 * (ma as f64 * phi).sin()
    } else {
        1.0
    };
    Ok(norm * p * az)
}

/// sqrt((2l+1)/(4 pi) * (l-m)!/(l+m)!)
fn norm_factor(l: u32, m: u32) -> f64 {
    let mut ratio = 1.0f64;
    for j in (l - m + 1)..=(l + m) {
        ratio /= j as f64;
    }
    ((2 * l + 1) as f64 / (4.0 * std::f64::consts::PI) * ratio).sqrt()
}

/// Index layout of a real-harmonic coefficient vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarmonicBasis {
    pub l_max: u32,
    pub axisymmetric: bool,
}

impl HarmonicBasis {
    pub fn new(l_max: u32, axisymmetric: bool) -> Self {
        HarmonicBasis { l_max, axisymmetric }
    }

    /// Number of coefficients: (l_max+1)^2 general, l_max+1 axisymmetric.
    pub fn len(&self) -> usize {
        if self.axisymmetric {
            (self.l_max + 1) as usize
        } else {
            ((self.l_max + 1) * (self.l_max + 1)) as usize
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// (l, m) of the i-th coefficient.
    pub fn degree_order(&self, i: usize) -> (u32, i32) {
        if self.axisymmetric {
            (i as u32, 0)
        } else {
            let l = (i as f64).sqrt() as u32;
            let l = if ((l + 1) * (l + 1)) as usize <= i { l + 1 } else { l };
            let m = i as i32 - (l * l) as i32 - l as i32;
            (l, m)
        }
    }

    /// Flat index of (l, m).
    pub fn index_of(&self, l: u32, m: i32) -> usize {
        if self.axisymmetric {
            debug_assert_eq!(m, 0);
            l as usize
        } else {
            (l * l) as usize + (m + l as i32) as usize
        }
    }

    /// Fill `out` with Yt_i(theta, phi) for every basis index i.
    pub fn eval_into(&self, theta: f64, phi: f64, out: &mut [f64]) {
        assert_eq!(out.len(), self.len());
        let x = theta.cos();
        let table = self.legendre_table(x);
        self.assemble(&table, phi, out, |norm_p, az, _, _| norm_p * az);
    }

    /// Row of values plus rows of d/dtheta and d/dphi.
    ///
    /// Valid away from the poles; the theta-derivative uses
    /// (1-x^2) dP_l^m/dx = (l+m) P_{l-1}^m - l x P_l^m.
    pub fn eval_with_derivs_into(
        &self,
        theta: f64,
        phi: f64,
        val: &mut [f64],
        d_theta: &mut [f64],
        d_phi: &mut [f64],
    ) {
        assert_eq!(val.len(), self.len());
        assert_eq!(d_theta.len(), self.len());
        assert_eq!(d_phi.len(), self.len());
        let x = theta.cos();
        let sin_t = theta.sin();
        let table = self.legendre_table(x);
        for i in 0..self.len() {
            let (l, m) = self.degree_order(i);
            let ma = m.unsigned_abs();
            let norm = norm_factor(l, ma);
            let p = table[tbl_idx(l, ma)];
            let p_lm1 = if l > 0 && ma <= l - 1 { table[tbl_idx(l - 1, ma)] } else { 0.0 };
            // dP/dtheta = (l x P_l^m - (l+m) P_{l-1}^m) / sin(theta)
            let dp_dtheta = if l == 0 {
                0.0
            } else {
                (l as f64 * x * p - (l + ma) as f64 * p_lm1) / sin_t
            };
            let (az, daz) = if m > 0 {
                let c = std::f64::consts::SQRT_2;
                ((ma as f64 * phi).cos() * c, -(ma as f64) * (ma as f64 * phi).sin() * c)
            } else if m < 0 {
                let c = std::f64::consts::SQRT_2;
                ((ma as f64 * phi).sin() * c, (ma as f64) * (ma as f64 * phi).cos() * c)
            } else {
                (1.0, 0.0)
            };
            val[i] = norm * p * az;
            d_theta[i] = norm * dp_dtheta * az;
            d_phi[i] = norm * p * daz;
        }
    }

    /// All P_l^m(x) for l <= l_max (m = 0 only when axisymmetric).
    fn legendre_table(&self, x: f64) -> Vec<f64> {
        let lm = self.l_max;
        let m_max = if self.axisymmetric { 0 } else { lm };
        let mut table = vec![0.0; tbl_idx(lm, m_max.min(lm)) + 1];
        let s = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt();
        for m in 0..=m_max {
            let mut pmm = 1.0;
            for i in 1..=m {
                pmm *= -((2 * i - 1) as f64) * s;
            }
            table[tbl_idx(m, m)] = pmm;
            if m == lm {
                break;
            }
            let p_next = x * (2 * m + 1) as f64 * pmm;
            table[tbl_idx(m + 1, m)] = p_next;
            let (mut p_prev, mut p_curr) = (pmm, p_next);
            for l in (m + 2)..=lm {
                let lf = l as f64;
                let mf = m as f64;
                let v = ((2.0 * lf - 1.0) * x * p_curr - (lf + mf - 1.0) * p_prev) / (lf - mf);
                p_prev = p_curr;
                p_curr = v;
                table[tbl_idx(l, m)] = v;
            }
        }
        table
    }

    fn assemble(
        &self,
        table: &[f64],
        phi: f64,
        out: &mut [f64],
        f: impl Fn(f64, f64, u32, i32) -> f64,
    ) {
        for i in 0..self.len() {
            let (l, m) = self.degree_order(i);
            let ma = m.unsigned_abs();
            let norm = norm_factor(l, ma);
            let az = if m > 0 {
                std::f64::consts::SQRT_2 * (ma as f64 * phi).cos()
            } else if m < 0 {
                std::f64::consts::SQRT_2 * (ma as f64 * phi).sin()
            } else {
                1.0
            };
            out[i] = f(norm * table[tbl_idx(l, ma)], az, l, m);
        }
    }
}

/// Triangular storage index for (l, m), m <= l.
fn tbl_idx(l: u32, m: u32) -> usize {
    (l as usize * (l as usize + 1)) / 2 + m as usize
}
