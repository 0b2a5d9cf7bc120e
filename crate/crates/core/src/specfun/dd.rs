//! Double-double arithmetic: an unevaluated sum of two `f64`s giving
//! roughly 31 significant decimal digits. Used by the Kummer series when
//! alternating-sign terms cancel too much for plain `f64` accumulation.

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {

    #[inline]
    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let s2 = s2 + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, x);
        let p2 = p2 + self.lo * x;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    /// Division by a full double-double divisor (two Newton-ish corrections).
    #[inline]
    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.add(other.mul_f64(-q1));
        let q2 = r.hi / other.hi;
        let r2 = r.add(other.mul_f64(-q2));
        let q3 = r2.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from(q3))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.value().abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_keeps_cancelled_bits() {
        // (1 + 1e-20) - 1 == 1e-20 exactly in double-double
        let a = Dd::from(1.0).add(Dd::from(1e-20));
        let b = a.add(Dd::from(-1.0));
        assert_eq!(b.value(), 1e-20);
    }

    #[test]
    fn mul_and_div_roundtrip() {
        let a = Dd::from(std::f64::consts::PI);
        let b = Dd::from(std::f64::consts::E);
        let c = a.mul(b).div(b);
        assert!((c.value() - std::f64::consts::PI).abs() < 1e-30);
        assert!((c.hi - std::f64::consts::PI).abs() < 1e-15);
    }
}
