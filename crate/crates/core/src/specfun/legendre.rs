//! Associated Legendre functions P_l^m with the Condon-Shortley phase,
//! by the standard stable upward recurrences.

use crate::error::{Error, Result};

/// P_l^m(x) for 0 <= m <= l, x in [-1, 1]. Includes the Condon-Shortley
/// factor (-1)^m, i.e. P_1^1(x) = -sqrt(1 - x^2).
pub fn assoc_legendre(l: u32, m: u32, x: f64) -> Result<f64> {
    if m > l {
        return Err(Error::Argument(format!("require m <= l, got l={l} m={m}")));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("x = {x} outside [-1, 1]")));
    }
    Ok(assoc_legendre_unchecked(l, m, x))
}

pub(crate) fn assoc_legendre_unchecked(l: u32, m: u32, x: f64) -> f64 {
    // seed: P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}
    let s = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt();
    let mut pmm = 1.0;
    for i in 1..=m {
        pmm *= -((2 * i - 1) as f64) * s;
    }
    if l == m {
        return pmm;
    }
    // P_{m+1}^m = x (2m+1) P_m^m
    let mut p_prev = pmm;
    let mut p_curr = x * (2 * m + 1) as f64 * pmm;
    if l == m + 1 {
        return p_curr;
    }
    for ll in (m + 2)..=l {
        let llf = ll as f64;
        let mf = m as f64;
        let next = ((2.0 * llf - 1.0) * x * p_curr - (llf + mf - 1.0) * p_prev) / (llf - mf);
        p_prev = p_curr;
        p_curr = next;
    }
    p_curr
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn low_order_closed_forms() {
        assert_eq!(assoc_legendre(0, 0, 0.3).unwrap(), 1.0);
        assert_eq!(assoc_legendre(1, 0, 0.5).unwrap(), 0.5);
        // Condon-Shortley: P_1^1(0) = -1
        assert_eq!(assoc_legendre(1, 1, 0.0).unwrap(), -1.0);
        // P_2^0(x) = (3x^2 - 1)/2
        let x = -0.42;
        assert_relative_eq!(assoc_legendre(2, 0, x).unwrap(), 0.5 * (3.0 * x * x - 1.0), max_relative = 1e-14);
        // P_2^1(x) = -3 x sqrt(1-x^2)
        assert_relative_eq!(
            assoc_legendre(2, 1, x).unwrap(),
            -3.0 * x * (1.0f64 - x * x).sqrt(),
            max_relative = 1e-14
        );
        // P_2^2(x) = 3 (1 - x^2)
        assert_relative_eq!(assoc_legendre(2, 2, x).unwrap(), 3.0 * (1.0 - x * x), max_relative = 1e-14);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(assoc_legendre(1, 2, 0.0).is_err());
        assert!(assoc_legendre(3, 0, 1.5).is_err());
    }

    #[test]
    fn endpoint_values() {
        // P_l^0(1) = 1, P_l^m(1) = 0 for m > 0
        for l in 0..8 {
            assert_relative_eq!(assoc_legendre(l, 0, 1.0).unwrap(), 1.0, max_relative = 1e-13);
        }
        for l in 1..8 {
            assert_eq!(assoc_legendre(l, 1, 1.0).unwrap(), 0.0);
        }
    }
}
