use magshape::cylinder::*;
use magshape::geometry::ShapeCoefficients;
use magshape::mps3d::*;
use std::time::Instant;

fn main() {
    // 1) unit ball at B=0, general (already tested) — timing only
    let t0 = Instant::now();
    let shape = ShapeCoefficients::ball(1.0, 4).unwrap();
    let res = solve_ground_state(&shape, 0.0, SolveMode::General, &SolverOptions::default()).unwrap();
    println!("ball B=0 general: lambda={:.8} sigma={:.2e} [{:?}]", res.lambda, res.sigma, t0.elapsed());

    // 2) exact cylinder R=(1.2pi)^-1/2, h=1.2 at B=10 vs closed form
    let h = 1.2f64;
    let radius = 1.0 / (std::f64::consts::PI * h).sqrt();
    let closed = cylinder_lambda1(radius, h, 10.0).unwrap();
    let r_cyl = move |theta: f64, _phi: f64| -> f64 {
        let ct = theta.cos().abs();
        let st = theta.sin();
        let from_wall = if st > 1e-12 { radius / st } else { f64::INFINITY };
        let from_cap = if ct > 1e-12 { (h / 2.0) / ct } else { f64::INFINITY };
        from_wall.min(from_cap)
    };
    let vol = std::f64::consts::PI * radius * radius * h;
    for (tag, axi, n_tgt) in [("axisym", true, 1000usize), ("general", false, 1000)] {
        let basis = if axi { BasisSpec::axisym() } else { BasisSpec::general() };
        let domain = SolveDomain::from_radius_fn(r_cyl, n_tgt, axi, 2 * basis.full_len(), [0.0; 3], vol).unwrap();
        let t0 = Instant::now();
        let floor = 10.0 + std::f64::consts::PI.powi(2) / (h * h);
        let opts = SolverOptions::default();
        match find_eigenvalue(&domain, 10.0, &basis, (floor, floor + 60.0), &opts) {
            Ok(r) => println!("cylinder B=10 {tag}: lambda={:.8} closed={closed:.8} rel={:.2e} sigma={:.2e} [{:?}]",
                r.lambda, (r.lambda/closed - 1.0).abs(), r.sigma, t0.elapsed()),
            Err(e) => println!("cylinder B=10 {tag}: ERR {e} [{:?}]", t0.elapsed()),
        }
    }

    // 3) unit-volume ball at B=50 and 170, axisym
    let rb = ShapeCoefficients::unit_volume_ball_radius();
    for b in [50.0, 170.0] {
        let shape = ShapeCoefficients::ball_axisym(rb, 60).unwrap();
        let t0 = Instant::now();
        match solve_ground_state(&shape, b, SolveMode::Axisymmetric, &SolverOptions::default()) {
            Ok(r) => println!("ball B={b}: lambda-B={:.6} (>=6.4116?) sigma={:.2e} [{:?}]", r.lambda - b, r.sigma, t0.elapsed()),
            Err(e) => println!("ball B={b}: ERR {e} [{:?}]", t0.elapsed()),
        }
    }
}
