//! Kummer's confluent hypergeometric function M(a, b, z) for real
//! parameters and non-negative argument, plus the exponentially weighted
//! form `e^{-z/2} z^w M(a, b, z)` used by the cylindrical particular
//! solutions (the raw value overflows long before the weighted one does).
//!
//! Evaluation is a direct Taylor sum with term-ratio stopping. For
//! negative `a` the early terms alternate in sign and the summation is
//! escalated to double-double or fixed-point big-integer arithmetic when
//! cancellation would destroy the requested accuracy. Every path keeps a
//! running bound on the accumulated rounding error and escalates a
//! posteriori if the bound exceeds the tolerance, so a bad prediction
//! costs a retry rather than accuracy.

use super::bigfloat::FxBig;
use super::dd::Dd;
use crate::error::{Error, Result};

/// Truncation control for series evaluations.
#[derive(Debug, Clone, Copy)]
pub struct SpecFunAccuracy {
    rel_tol: f64,
    max_terms: usize,
}

impl SpecFunAccuracy {
    /// `rel_tol` must lie in (0, 1e-6], `max_terms` must be at least 100.
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol <= 1e-6) {
            return Err(Error::Argument(format!(
                "rel_tol must be in (0, 1e-6], got {rel_tol}"
            )));
        }
        if max_terms < 100 {
            return Err(Error::Argument(format!(
                "max_terms must be >= 100, got {max_terms}"
            )));
        }
        Ok(SpecFunAccuracy { rel_tol, max_terms })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for SpecFunAccuracy {
    fn default() -> Self {
        SpecFunAccuracy { rel_tol: 1e-12, max_terms: 25_000 }
    }
}

/// Largest argument the series paths accept. The solver keeps `B r^2 / 2`
/// well below this by construction.
pub const KUMMER_Z_MAX: f64 = 700.0;
/// Tested range for the first parameter. Large |a| only occurs together
/// with small z (the weak-field limit), where the series is short.
pub const KUMMER_A_MAX: f64 = 1.0e6;

/// M(a, b, z) = sum_k (a)_k z^k / ((b)_k k!).
///
/// May overflow to infinity for large z; use [`kummer_m_weighted`] there.
pub fn kummer_m(a: f64, b: f64, z: f64) -> Result<f64> {
    kummer_m_with(&SpecFunAccuracy::default(), a, b, z)
}

pub fn kummer_m_with(acc: &SpecFunAccuracy, a: f64, b: f64, z: f64) -> Result<f64> {
    let w = kummer_m_weighted_with(acc, a, b, z, 0.0)?;
    Ok(w * (z / 2.0).exp())
}

/// Weighted form `e^{-z/2} z^w M(a, b, z)`, finite whenever the
/// corresponding particular solution is finite.
pub fn kummer_m_weighted(a: f64, b: f64, z: f64, w: f64) -> Result<f64> {
    kummer_m_weighted_with(&SpecFunAccuracy::default(), a, b, z, w)
}

pub fn kummer_m_weighted_with(
    acc: &SpecFunAccuracy,
    a: f64,
    b: f64,
    z: f64,
    w: f64,
) -> Result<f64> {
    weighted_impl(acc, a, b, z, w, false)
}

/// Like [`kummer_m_weighted`], but the accuracy target near zeros of M is
/// absolute at the scale of the leading term e^{-z/2} z^w instead of
/// relative to the (vanishing) value. Root finders and collocation-matrix
/// assembly need exactly this: the slope of M in its parameters carries
/// that scale, so a root located against this floor keeps full relative
/// accuracy.
pub(crate) fn kummer_m_weighted_rootfind(a: f64, b: f64, z: f64, w: f64) -> Result<f64> {
    weighted_impl(&SpecFunAccuracy::default(), a, b, z, w, true)
}

fn weighted_impl(
    acc: &SpecFunAccuracy,
    a: f64,
    b: f64,
    z: f64,
    w: f64,
    prefactor_floor: bool,
) -> Result<f64> {
    check_args(a, b, z)?;
    if z == 0.0 {
        // empty sum: M(a, b, 0) = 1, so the weighted value is z^w
        return Ok(if w == 0.0 { 1.0 } else { 0.0 });
    }
    let prefactor = (-z / 2.0).exp() * z.powf(w);
    let floor = if prefactor_floor { prefactor.abs() } else { 0.0 };

    // Worst-case ratio of largest term to the sum, from the
    // oscillatory-regime envelope exp(2 sqrt(|a| z)) of the series.
    let a_neg = (-a).max(0.0);
    let cancel_log10 = 2.0 * (a_neg * z).sqrt() * std::f64::consts::LOG10_E;
    let digits = -acc.rel_tol.log10();

    if cancel_log10 + digits < 14.0 {
        if let Some((v, err)) = series_f64(a, b, z, prefactor, acc) {
            if accept(v, err, floor, acc) {
                return Ok(v);
            }
        }
    }
    if cancel_log10 + digits < 29.0 {
        if let Some((v, err)) = series_dd(a, b, z, prefactor, acc) {
            if accept(v, err, floor, acc) {
                return Ok(v);
            }
        }
    }
    series_big(a, b, z, w, acc, prefactor_floor)
}

fn accept(value: f64, err: f64, floor: f64, acc: &SpecFunAccuracy) -> bool {
    let scale = value.abs().max(floor);
    scale > 0.0 && err <= 0.5 * acc.rel_tol * scale
}

fn check_args(a: f64, b: f64, z: f64) -> Result<()> {
    if !a.is_finite() || !b.is_finite() || !z.is_finite() {
        return Err(Error::Domain(format!("non-finite arguments a={a} b={b} z={z}")));
    }
    if b <= 0.0 && b == b.floor() {
        return Err(Error::Domain(format!("b = {b} is a non-positive integer")));
    }
    if z < 0.0 {
        return Err(Error::Domain(format!("z = {z} must be non-negative")));
    }
    if z > KUMMER_Z_MAX {
        return Err(Error::Domain(format!("z = {z} exceeds supported range {KUMMER_Z_MAX}")));
    }
    if a.abs() > KUMMER_A_MAX {
        return Err(Error::Domain(format!("|a| = {} exceeds tested range {KUMMER_A_MAX}", a.abs())));
    }
    Ok(())
}

/// Leading terms that may alternate in sign. The term magnitudes can only
/// resume growing past an early dip when z exceeds ~4|a| (the late hump of
/// the term-ratio |a+k| z / ((b+k)(k+1)) peaks at z/(4|a|)), so smallness
/// tests are trusted early unless z is comparable to |a|.
fn min_terms(a: f64, z: f64) -> usize {
    if a < 0.0 && z > 2.0 * (-a) { (-a).ceil() as usize + 4 } else { 4 }
}

/// A term must drop this far below the running sum (three times in a row)
/// before the series is considered converged.
const STOP_FACTOR: f64 = 1e-2;

fn series_f64(a: f64, b: f64, z: f64, prefactor: f64, acc: &SpecFunAccuracy) -> Option<(f64, f64)> {
    let mut term = prefactor;
    let mut sum = term;
    let mut comp = 0.0f64; // Kahan compensation
    let mut sum_abs = term.abs();
    let k_min = min_terms(a, z);
    let mut quiet = 0;
    let mut k_used = 0usize;
    for k in 0..acc.max_terms {
        let kf = k as f64;
        let ratio = (a + kf) * z / ((b + kf) * (kf + 1.0));
        term *= ratio;
        if !term.is_finite() {
            return None;
        }
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        sum_abs += term.abs();
        k_used = k + 1;
        if term == 0.0 {
            break; // polynomial case: a is a non-positive integer
        }
        if k + 1 >= k_min && ratio.abs() < 0.9 && term.abs() <= STOP_FACTOR * acc.rel_tol * sum.abs() {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    // accumulated rounding bound: ~3 ulps per term, amplified by k steps
    let err = 6.6e-16 * k_used as f64 * sum_abs;
    Some((sum, err))
}

fn series_dd(a: f64, b: f64, z: f64, prefactor: f64, acc: &SpecFunAccuracy) -> Option<(f64, f64)> {
    let mut term = Dd::from(prefactor);
    let mut sum = term;
    let mut sum_abs = term.abs();
    let k_min = min_terms(a, z);
    let mut quiet = 0;
    let mut k_used = 0usize;
    for k in 0..acc.max_terms {
        let kf = k as f64;
        // (a + k) and (b + k) as exact double-doubles via two-sum
        let num = dd_sum(a, kf).mul_f64(z);
        let den = dd_sum(b, kf).mul_f64(kf + 1.0);
        let ratio = num.value() / den.value();
        term = term.mul(num).div(den);
        if !term.hi.is_finite() {
            return None;
        }
        sum = sum.add(term);
        sum_abs += term.abs();
        k_used = k + 1;
        if term.hi == 0.0 {
            break;
        }
        if k + 1 >= k_min && ratio.abs() < 0.9 && term.abs() <= STOP_FACTOR * acc.rel_tol * sum.abs() {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    let err = 1e-31 * k_used as f64 * sum_abs;
    Some((sum.value(), err))
}

fn dd_sum(x: f64, y: f64) -> Dd {
    Dd::from(x).add(Dd::from(y))
}

/// Fixed-point big-integer fallback. Every multiplier is applied exactly
/// (numerators as two-sum dyadic pairs, the denominator as an exact
/// integer-scaled division), so the only error is truncation at a scale
/// chosen far below the result. The raw series is summed and the weight
/// applied in log2 space at the end.
fn series_big(a: f64, b: f64, z: f64, w: f64, acc: &SpecFunAccuracy, prefactor_floor: bool) -> Result<f64> {
    let a_neg = (-a).max(0.0);
    let mut cancel_bits = (2.0 * (a_neg * z).sqrt() * std::f64::consts::LOG2_E) as u32 + 64;
    for _attempt in 0..3 {
        let scale = cancel_bits + 256;
        let mut term = FxBig::from_f64(1.0, scale);
        let mut sum = term.clone();
        let mut max_log2 = 0.0f64;
        let k_min = min_terms(a, z);
        let mut quiet = 0;
        let mut converged = false;
        for k in 0..acc.max_terms {
            let kf = k as f64;
            let (nh, nl) = two_sum(a, kf);
            // t = term * (a + k), exactly
            let mut t = term.mul_f64(nh);
            if nl != 0.0 {
                t.add_assign(&term.mul_f64(nl));
            }
            let t = t.mul_f64(z);
            // divide by (b + k)(k + 1) as one exact scaled integer
            let (dh, dl) = two_sum(b, kf);
            let ratio = nh * z / (dh * (kf + 1.0));
            term = t.div_exact_pair(dh, dl, (kf + 1.0) as u64);
            if term.is_zero() {
                converged = true;
                break;
            }
            sum.add_assign(&term);
            let tl = term.log2_abs().unwrap_or(f64::NEG_INFINITY);
            max_log2 = max_log2.max(tl);
            let sl = sum.log2_abs().unwrap_or(f64::NEG_INFINITY);
            if k + 1 >= k_min && ratio.abs() < 0.9 && tl < sl + (STOP_FACTOR * acc.rel_tol).log2() {
                quiet += 1;
                if quiet >= 3 {
                    converged = true;
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        if !converged {
            let (m, e) = sum.to_f64_exp2();
            let partial = apply_weight(m, e, z, w);
            return Err(Error::Accuracy {
                context: format!(
                    "kummer series did not converge within {} terms (a={a}, b={b}, z={z})",
                    acc.max_terms
                ),
                partial,
            });
        }
        let sum_log2 = sum.log2_abs().unwrap_or(f64::NEG_INFINITY);
        // in raw-series space the k = 0 term is 1, so the rootfind floor is 0 bits
        let eff_log2 = if prefactor_floor { sum_log2.max(0.0) } else { sum_log2 };
        let digits_bits = -acc.rel_tol.log2();
        if max_log2 - eff_log2 + digits_bits + 16.0 > scale as f64 {
            // cancellation exceeded the prediction: retry with more bits
            cancel_bits = (((max_log2 - eff_log2).max(0.0) as u32) + 64).max(cancel_bits * 3 / 2);
            continue;
        }
        let (m, e) = sum.to_f64_exp2();
        return Ok(apply_weight(m, e, z, w));
    }
    Err(Error::Accuracy {
        context: format!("kummer big-float escalation failed (a={a}, b={b}, z={z})"),
        partial: f64::NAN,
    })
}

/// m * 2^e * e^{-z/2} * z^w without intermediate overflow.
fn apply_weight(m: f64, e: i64, z: f64, w: f64) -> f64 {
    if m == 0.0 {
        return 0.0;
    }
    let log2_weight = -z / 2.0 * std::f64::consts::LOG2_E + w * z.log2();
    let total = e as f64 + log2_weight;
    let e_int = total.floor();
    let frac = total - e_int;
    m * frac.exp2() * e_int.exp2()
}

fn two_sum(x: f64, y: f64) -> (f64, f64) {
    let s = x + y;
    let yy = s - x;
    let err = (x - (s - yy)) + (y - yy);
    (s, err)
}
