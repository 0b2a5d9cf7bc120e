//! Method-of-particular-solutions eigenvalue solver for the magnetic
//! Dirichlet Laplacian on star-shaped domains: basis assembly,
//! subspace-angle search over lambda, eigenfunction evaluation and
//! boundary derivatives, with an axisymmetric fast path and a Bessel
//! basis in the weak-field limit.

mod basis;
mod domain;
mod eigenfunction;
mod solve;

pub use basis::{
    bessel_basis, gradient_to_cartesian, particular_solution, particular_solution_gradient,
    BasisSpec,
};
pub use domain::SolveDomain;
pub use eigenfunction::{
    eigenfunction_eval, eigenfunction_grad_eval, l2_normalize, normal_derivative,
    BoundaryDerivatives,
};
pub use solve::{
    assemble_matrix, find_eigenvalue, solve_ground_state, subspace_angle, EigenSolveResult,
    SolveMode, SolverOptions, B_ZERO_SWITCH,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ShapeCoefficients;
    use approx::assert_relative_eq;

    #[test]
    fn assembled_dimensions() {
        let shape = ShapeCoefficients::ball(1.0, 4).unwrap();
        let basis = BasisSpec::general();
        let domain = SolveDomain::from_shape(&shape, 1000, false, 2 * basis.full_len()).unwrap();
        let a = assemble_matrix(&domain, 10.0, 30.0, &basis).unwrap();
        let (m, n) = a.dim();
        assert_eq!(n, 357);
        assert_eq!(m, domain.colloc.len() + 714);
        assert!((950..=1100).contains(&domain.colloc.len()));

        let axi = BasisSpec::axisym();
        let domain = SolveDomain::from_shape(&shape, 1000, true, 2 * axi.full_len()).unwrap();
        let a = assemble_matrix(&domain, 10.0, 30.0, &axi).unwrap();
        let (m, n) = a.dim();
        assert_eq!(n, 121);
        assert_eq!(m, 1001 + 242);
    }

    #[test]
    fn axis_column_is_the_radial_profile() {
        // at points on the z-axis boundary, the (l, p) = (0, 0) column
        // equals the scalar radial profile (the phases are 1)
        let shape = ShapeCoefficients::ball(1.0, 4).unwrap();
        let basis = BasisSpec::axisym();
        let domain = SolveDomain::from_shape(&shape, 100, true, 10).unwrap();
        let lambda = 30.0;
        let a = assemble_matrix(&domain, 10.0, lambda, &basis).unwrap();
        let j_center = basis.modes(lambda).iter().position(|&(l, p)| l == 0 && p == 0.0).unwrap();
        // row 0 is the north pole (r = 0, z = 1)
        let v = a[[0, j_center]];
        assert!(v.im.abs() < 1e-14);
        assert_relative_eq!(v.re, 1.0, max_relative = 1e-12); // M(a,1,0) = 1
    }

    #[test]
    fn ball_sigma_dips_at_pi_squared() {
        // unit ball at B = 0 (Bessel basis): lambda = pi^2 is exact
        let shape = ShapeCoefficients::ball(1.0, 4).unwrap();
        let basis = BasisSpec::general().with_bessel(true);
        let domain = SolveDomain::from_shape(&shape, 400, false, 2 * basis.full_len()).unwrap();
        let pi2 = std::f64::consts::PI.powi(2);
        let s_exact = subspace_angle(&domain, 0.0, pi2, &basis).unwrap();
        let s_off = subspace_angle(&domain, 0.0, 0.8 * pi2, &basis).unwrap();
        assert!(s_exact < 1e-4, "sigma at pi^2 = {s_exact}");
        assert!(s_off > 10.0 * s_exact, "sigma off-eigenvalue {s_off} vs {s_exact}");
        assert!((0.0..=1.0).contains(&s_exact) && (0.0..=1.0).contains(&s_off));
    }

    #[test]
    fn ball_ground_state_b0() {
        let shape = ShapeCoefficients::ball(1.0, 4).unwrap();
        let opts = SolverOptions::default();
        let res = solve_ground_state(&shape, 0.0, SolveMode::General, &opts).unwrap();
        let pi2 = std::f64::consts::PI.powi(2);
        assert_relative_eq!(res.lambda, pi2, max_relative = 1e-6);
        assert!(res.used_bessel);
        // alpha has unit norm
        let n: f64 = res.alpha.iter().map(|c| c.norm_sqr()).sum();
        assert_relative_eq!(n, 1.0, max_relative = 1e-12);
    }
}
