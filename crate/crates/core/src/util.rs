//! Small shared numerics: 1-D minimization by golden-section with
//! parabolic (Brent-style) acceleration.

/// Minimize f on [a, b] to the given relative x-tolerance. Returns
/// (x_min, f_min). f is assumed unimodal on the bracket; the caller
/// audits the result when that is not guaranteed.
pub fn brent_min(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, rel_tol: f64, max_iter: usize) -> (f64, f64) {
    const GOLD: f64 = 0.381_966_011_250_105_1; // 2 - phi
    let (mut a, mut b) = (a.min(b), a.max(b));
    let mut x = a + GOLD * (b - a);
    let mut w = x;
    let mut v = x;
    let mut fx = f(x);
    let (mut fw, mut fv) = (fx, fx);
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;
    for _ in 0..max_iter {
        let m = 0.5 * (a + b);
        let tol = rel_tol * x.abs() + 1e-300;
        let tol2 = 2.0 * tol;
        if (x - m).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut use_golden = true;
        if e.abs() > tol {
            // parabolic fit through (v, w, x)
            let r = (x - w) * (fx - fv);
            let q0 = (x - v) * (fx - fw);
            let mut p = (x - v) * q0 - (x - w) * r;
            let mut q = 2.0 * (q0 - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let e_old = e;
            e = d;
            if p.abs() < (0.5 * q * e_old).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if (u - a) < tol2 || (b - u) < tol2 {
                    d = if m > x { tol } else { -tol };
                }
                use_golden = false;
            }
        }
        if use_golden {
            e = if x < m { b - x } else { a - x };
            d = GOLD * e;
        }
        let u = if d.abs() >= tol { x + d } else { x + if d > 0.0 { tol } else { -tol } };
        let fu = f(u);
        if fu <= fx {
            if u < x {
                b = x;
            } else {
                a = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    (x, fx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_quadratic_minimum() {
        // accuracy near a parabolic minimum is sqrt(eps)-limited
        let (x, fx) = brent_min(|x| (x - 1.7) * (x - 1.7) + 3.0, 0.0, 10.0, 1e-12, 200);
        assert!((x - 1.7).abs() < 1e-7);
        assert!((fx - 3.0).abs() < 1e-15);
    }

    #[test]
    fn handles_asymmetric_functions() {
        let (x, _) = brent_min(|x: f64| x.exp() + 1.0 / x, 0.1, 5.0, 1e-12, 200);
        // derivative e^x - 1/x^2 = 0 near 0.7035
        assert!((x - 0.703467).abs() < 1e-5);
    }
}
