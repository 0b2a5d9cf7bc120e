//! Fixed-point big-integer floats for the rare Kummer evaluations whose
//! alternating series cancels beyond what double-double can absorb
//! (large negative first parameter together with a large argument).
//!
//! A value is stored as `m * 2^-scale` with a shared `scale` chosen per
//! evaluation from the predicted number of cancelled bits. Multiplication
//! and division by dyadic rationals (i.e. exact `f64` values) are exact up
//! to a one-ulp truncation at the fixed scale.

use num_bigint::BigInt;

#[derive(Debug, Clone)]
pub struct FxBig {
    m: BigInt,
    scale: u32,
}

impl FxBig {
    pub fn from_f64(x: f64, scale: u32) -> FxBig {
        let (mant, exp) = decompose(x);
        let shift = exp + scale as i64;
        let m = if shift >= 0 {
            BigInt::from(mant) << shift as u64
        } else {
            BigInt::from(mant) >> (-shift) as u64
        };
        FxBig { m, scale }
    }

    pub fn zero(scale: u32) -> FxBig {
        FxBig { m: BigInt::from(0), scale }
    }

    pub fn add_assign(&mut self, other: &FxBig) {
        debug_assert_eq!(self.scale, other.scale);
        self.m += &other.m;
    }

    /// Exact multiplication by an `f64` (truncated at the fixed scale).
    pub fn mul_f64(&self, x: f64) -> FxBig {
        let (mant, exp) = decompose(x);
        let m = &self.m * BigInt::from(mant);
        let m = if exp >= 0 { m << exp as u64 } else { m >> (-exp) as u64 };
        FxBig { m, scale: self.scale }
    }

    /// Division by an `f64`, exact up to truncation at the fixed scale.
    pub fn div_f64(&self, x: f64) -> FxBig {
        let (mant, exp) = decompose(x);
        // value / (mant * 2^exp), single truncation at the fixed scale
        let m = if mant < 0 { -&self.m } else { self.m.clone() };
        let mant_abs = BigInt::from(mant.unsigned_abs());
        let m = if exp <= 0 { (m << (-exp) as u64) / mant_abs } else { m / (mant_abs << exp as u64) };
        FxBig { m, scale: self.scale }
    }

    /// Division by `(hi + lo) * int_factor` where `hi + lo` is an exact
    /// two-sum pair. The divisor is assembled as one exact scaled integer,
    /// so the quotient has a single truncation at the fixed scale.
    pub fn div_exact_pair(&self, hi: f64, lo: f64, int_factor: u64) -> FxBig {
        let (mh, eh) = decompose(hi);
        let (mant, e) = if lo == 0.0 {
            (BigInt::from(mh), eh)
        } else {
            let (ml, el) = decompose(lo);
            let e = eh.min(el);
            ((BigInt::from(mh) << (eh - e) as u64) + (BigInt::from(ml) << (el - e) as u64), e)
        };
        let mant = mant * BigInt::from(int_factor);
        let m = if e <= 0 {
            (&self.m << (-e) as u64) / mant
        } else {
            &self.m / (mant << e as u64)
        };
        FxBig { m, scale: self.scale }
    }

    pub fn is_zero(&self) -> bool {
        self.m.sign() == num_bigint::Sign::NoSign
    }

    /// log2 of |value|, None for zero.
    pub fn log2_abs(&self) -> Option<f64> {
        if self.is_zero() {
            return None;
        }
        Some(self.m.bits() as f64 - self.scale as f64)
    }

    /// Mantissa-and-exponent view: value == m * 2^e with |m| in [0.5, 1).
    pub fn to_f64_exp2(&self) -> (f64, i64) {
        let bits = self.m.bits();
        if bits == 0 {
            return (0.0, 0);
        }
        let (top, shift) = if bits > 64 {
            let s = bits - 64;
            ((&self.m >> s).iter_u64_digits().next().unwrap(), s as i64)
        } else {
            (self.m.iter_u64_digits().next().unwrap(), 0)
        };
        let sign = if self.m.sign() == num_bigint::Sign::Minus { -1.0 } else { 1.0 };
        // top is in [2^63, 2^64) when bits > 64
        let m = sign * top as f64 / 2f64.powi(64);
        (m, shift + 64 - self.scale as i64)
    }

    pub fn to_f64(&self) -> f64 {
        let (m, e) = self.to_f64_exp2();
        m * ((e as f64).exp2())
    }
}

fn decompose(x: f64) -> (i64, i64) {
    if x == 0.0 {
        return (0, 0);
    }
    assert!(x.is_finite(), "cannot decompose non-finite f64");
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1i64 } else { 1i64 };
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = (bits & 0xf_ffff_ffff_ffff) as i64;
    if raw_exp == 0 {
        (sign * frac, -1074)
    } else {
        (sign * (frac | (1i64 << 52)), raw_exp - 1075)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_f64() {
        for &x in &[1.0, -3.75, 1e-12, 6.02e23, -0.1] {
            let f = FxBig::from_f64(x, 256);
            assert!((f.to_f64() - x).abs() <= x.abs() * 1e-15);
        }
    }

    #[test]
    fn cancellation_is_exact() {
        let scale = 512;
        let mut acc = FxBig::from_f64(1e30, scale);
        acc.add_assign(&FxBig::from_f64(1e-30, scale));
        acc.add_assign(&FxBig::from_f64(-1e30, scale));
        let v = acc.to_f64();
        assert!((v - 1e-30).abs() < 1e-40 * 1e30);
        assert!(v > 0.9e-30 && v < 1.1e-30);
    }

    #[test]
    fn mul_div_exact_dyadics() {
        let f = FxBig::from_f64(3.0, 300);
        let g = f.mul_f64(0.125).div_f64(3.0);
        assert_eq!(g.to_f64(), 0.125);
    }
}
