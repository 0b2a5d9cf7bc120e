//! Subspace-angle eigenvalue search. For a trial lambda the collocation
//! matrix A(lambda) = [psi_j(x_i)] is stacked over boundary and interior
//! points, its columns are orthonormalized by QR, and sigma(lambda) is the
//! smallest singular value of the boundary block of Q: small values
//! witness a basis combination that nearly vanishes on the boundary while
//! carrying interior mass. Eigenvalues are local minima of sigma.

use ndarray::{s, Array1, Array2};
use ndarray_linalg::{JobSvd, SVDDC, QR};
use num_complex::Complex64;
use rayon::prelude::*;

use super::basis::{bessel_radial, kummer_radial, BasisSpec};
use super::domain::SolveDomain;
use crate::error::{Error, Result};
use crate::util::brent_min;

#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    /// residual acceptance threshold; None picks 1e-3 (general) or
    /// 1e-5 (axisymmetric)
    pub sigma_accept: Option<f64>,
    /// uniform scan resolution inside the search window
    pub scan_points: usize,
    /// relative tolerance of the lambda refinement
    pub lambda_rtol: f64,
    /// interior points = factor * basis size
    pub interior_factor: usize,
    /// window doublings before giving up
    pub max_widen: u32,
    /// second sigma-minimum within this relative gap flags a degenerate
    /// eigenvalue (the derivative formulas require simplicity)
    pub degeneracy_rel_gap: f64,
    /// collocation target (general mode) / latitude count (axisymmetric)
    pub n_target: usize,
    /// restrict the scan to an explicit window instead of the default
    pub window_hint: Option<(f64, f64)>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            sigma_accept: None,
            scan_points: 60,
            lambda_rtol: 1e-8,
            interior_factor: 2,
            max_widen: 4,
            degeneracy_rel_gap: 5e-3,
            n_target: 1000,
            window_hint: None,
        }
    }
}

/// Accepted eigenpair approximation.
#[derive(Debug, Clone)]
pub struct EigenSolveResult {
    pub lambda: f64,
    /// basis coefficients, unit Euclidean norm until normalized in L^2
    pub alpha: Vec<Complex64>,
    /// subspace angle at lambda
    pub sigma: f64,
    pub basis: BasisSpec,
    /// axial spacing actually used at lambda
    pub delta_p: f64,
    /// column modes (l, p) matching alpha
    pub modes: Vec<(i32, f64)>,
    pub b_field: f64,
    /// true when the Bessel basis replaced the Kummer one (weak field)
    pub used_bessel: bool,
    /// centering shift applied before basis evaluation
    pub center: [f64; 3],
    pub h_extent: f64,
    /// a second residual minimum close to lambda, if one was detected
    pub nearby_eigenvalue: Option<f64>,
    /// set by l2_normalize
    pub l2_normalized: bool,
}

impl EigenSolveResult {
    /// Persist as JSON; the shape travels by reference (its own file).
    pub fn to_json(&self, shape_ref: &str) -> Result<String> {
        let alpha: Vec<[f64; 2]> = self.alpha.iter().map(|c| [c.re, c.im]).collect();
        let v = serde_json::json!({
            "lambda": self.lambda,
            "sigma": self.sigma,
            "b_field": self.b_field,
            "basis": {
                "n_l": self.basis.n_l,
                "n_p": self.basis.n_p,
                "dp_multiplier": self.basis.dp_multiplier,
                "axisymmetric": self.basis.axisymmetric,
                "b_zero_mode": self.used_bessel,
                "delta_p": self.delta_p,
            },
            "center": self.center,
            "shape": shape_ref,
            "alpha": alpha,
        });
        Ok(serde_json::to_string_pretty(&v)?)
    }
}

/// A(lambda): rows indexed by boundary then interior points, columns by
/// (l, p) modes in fixed lexicographic order.
pub fn assemble_matrix(
    domain: &SolveDomain,
    b_field: f64,
    lambda: f64,
    basis: &BasisSpec,
) -> Result<Array2<Complex64>> {
    let modes = basis.modes(lambda);
    if modes.is_empty() {
        return Err(Error::Argument("empty basis".into()));
    }
    if domain.colloc.is_empty() {
        return Err(Error::Argument("empty collocation set".into()));
    }
    let n_rows = domain.colloc.len() + domain.interior.len();
    let n_cols = modes.len();

    // radial profiles depend only on (|l|, p^2): group columns into slots
    let mut slot_of_col = Vec::with_capacity(n_cols);
    let mut slots: Vec<(u32, f64)> = Vec::new();
    for &(l, p) in &modes {
        let key = (l.unsigned_abs(), p.abs());
        let idx = match slots.iter().position(|&(la, pa)| la == key.0 && pa == key.1) {
            Some(i) => i,
            None => {
                slots.push(key);
                slots.len() - 1
            }
        };
        slot_of_col.push(idx);
    }

    let use_bessel = basis.b_zero_mode;
    let points: Vec<&[f64; 3]> = domain.colloc.points.iter().chain(domain.interior.iter()).collect();
    let mut data = vec![Complex64::new(0.0, 0.0); n_rows * n_cols];
    let rows: Vec<Result<Vec<Complex64>>> = points
        .par_iter()
        .map(|&point| {
            let (r, phi, z) = domain.centered_cyl(point);
            let mut radial = vec![0.0f64; slots.len()];
            for (v, &(la, pa)) in radial.iter_mut().zip(&slots) {
                *v = if use_bessel {
                    bessel_radial(la as i32, pa, lambda, r)?
                } else {
                    kummer_radial(la as i32, pa, lambda, b_field, r)?
                };
            }
            let mut row = vec![Complex64::new(0.0, 0.0); n_cols];
            for (j, &(l, p)) in modes.iter().enumerate() {
                let ph = Complex64::from_polar(1.0, l as f64 * phi + p * z);
                row[j] = radial[slot_of_col[j]] * ph;
            }
            Ok(row)
        })
        .collect();
    for (i, row) in rows.into_iter().enumerate() {
        let row = row?;
        data[i * n_cols..(i + 1) * n_cols].copy_from_slice(&row);
    }
    Array2::from_shape_vec((n_rows, n_cols), data)
        .map_err(|e| Error::Argument(format!("matrix shape: {e}")))
}

pub(crate) struct AngleOutput {
    pub sigma: f64,
    /// unit-norm coefficient vector over the raw (unscaled) basis
    pub alpha: Option<Vec<Complex64>>,
}

/// sigma(lambda); optionally also the minimizing coefficient vector.
pub(crate) fn subspace_angle_core(
    domain: &SolveDomain,
    b_field: f64,
    lambda: f64,
    basis: &BasisSpec,
    want_vector: bool,
) -> Result<AngleOutput> {
    let mut a = assemble_matrix(domain, b_field, lambda, basis)?;
    let (_, n_cols) = a.dim();
    let nb = domain.colloc.len();

    // scale columns to unit norm; the scaling is undone on alpha
    let mut col_scale = vec![0.0f64; n_cols];
    for (j, scale) in col_scale.iter_mut().enumerate() {
        let norm: f64 = a.column(j).iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Conditioning(format!(
                "column {j} has invalid norm {norm} at lambda = {lambda}"
            )));
        }
        *scale = norm;
        a.column_mut(j).mapv_inplace(|c| c / norm);
    }

    let (q, r) = a.qr()?;
    let rdiag: Vec<f64> = (0..n_cols).map(|i| r[[i, i]].norm()).collect();
    let rmax = rdiag.iter().cloned().fold(0.0f64, f64::max);
    let rmin = rdiag.iter().cloned().fold(f64::INFINITY, f64::min);
    if rmin < 1e-13 * rmax {
        return Err(Error::Conditioning(format!(
            "collocation matrix numerically rank deficient at lambda = {lambda}: \
             |R_ii| range [{rmin:.3e}, {rmax:.3e}]"
        )));
    }

    let qb = q.slice(s![..nb, ..]).to_owned();
    let (_, sv, vt) = qb.svddc(if want_vector { JobSvd::Some } else { JobSvd::None })?;
    let sigma = sv[sv.len() - 1];

    let alpha = if want_vector {
        let vt = vt.ok_or_else(|| Error::Linalg("svd did not return right vectors".into()))?;
        let v: Array1<Complex64> = vt.row(vt.nrows() - 1).mapv(|c| c.conj());
        // alpha solves R alpha = v (A alpha = Q R alpha = Q v)
        let mut x = v;
        for i in (0..n_cols).rev() {
            let mut acc = x[i];
            for j in (i + 1)..n_cols {
                acc -= r[[i, j]] * x[j];
            }
            x[i] = acc / r[[i, i]];
        }
        let mut alpha: Vec<Complex64> =
            x.iter().zip(&col_scale).map(|(c, &s)| c / s).collect();
        let norm: f64 = alpha.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for c in &mut alpha {
            *c /= norm;
        }
        Some(alpha)
    } else {
        None
    };
    Ok(AngleOutput { sigma, alpha })
}

/// Subspace angle sigma(lambda) in [0, 1].
pub fn subspace_angle(
    domain: &SolveDomain,
    b_field: f64,
    lambda: f64,
    basis: &BasisSpec,
) -> Result<f64> {
    Ok(subspace_angle_core(domain, b_field, lambda, basis, false)?.sigma)
}

fn default_sigma_accept(basis: &BasisSpec) -> f64 {
    if basis.axisymmetric { 1e-5 } else { 1e-3 }
}

/// Scan sigma(lambda) over the window, bracket the smallest local
/// minimum, refine it, and accept if the residual is below threshold.
/// The scan runs incrementally so a ground state low in the window does
/// not pay for the full grid.
pub fn find_eigenvalue(
    domain: &SolveDomain,
    b_field: f64,
    basis: &BasisSpec,
    window: (f64, f64),
    opts: &SolverOptions,
) -> Result<EigenSolveResult> {
    let (lo, hi) = window;
    if !(hi > lo) {
        return Err(Error::Argument(format!("empty window [{lo}, {hi}]")));
    }
    let n = opts.scan_points.max(8);
    let accept = opts.sigma_accept.unwrap_or_else(|| default_sigma_accept(basis));
    let grid: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();

    let eval = |lambda: f64| -> f64 {
        subspace_angle_core(domain, b_field, lambda, basis, false)
            .map(|o| o.sigma)
            .unwrap_or(f64::INFINITY)
    };

    let mut sigmas: Vec<f64> = Vec::with_capacity(grid.len());
    let mut best_sigma = f64::INFINITY;
    let chunk = 8usize;
    let mut examined = 0usize; // candidates checked for a confirmed local minimum
    let mut i0 = 0usize;
    while i0 < grid.len() {
        let i1 = (i0 + chunk).min(grid.len());
        let vals: Vec<f64> = grid[i0..i1].par_iter().map(|&l| eval(l)).collect();
        sigmas.extend(vals);
        i0 = i1;
        // a local minimum at i needs sigma[i+1], so only indices below
        // len-1 are confirmed; accepted minima return immediately, which
        // keeps the ground state (the smallest-lambda minimum) first
        let confirmed = sigmas.len().saturating_sub(1);
        while examined < confirmed {
            let i = examined;
            examined += 1;
            let is_min = if i == 0 {
                sigmas[0] < sigmas[1]
            } else {
                sigmas[i] <= sigmas[i - 1] && sigmas[i] <= sigmas[i + 1]
            };
            if !is_min || !sigmas[i].is_finite() {
                continue;
            }
            let a = grid[i.saturating_sub(1)];
            let b = grid[i + 1];
            let (l_min, s_min) = brent_min(eval, a, b, opts.lambda_rtol, 80);
            best_sigma = best_sigma.min(s_min);
            // prominence gate: with scarce boundary points the background
            // sigma sinks as lambda grows (the basis aliases between
            // collocation points), producing shallow fake minima; a true
            // eigenvalue dip drops well below its bracket edges
            let edge = sigmas[i.saturating_sub(1)].min(sigmas[i + 1]);
            let prominent = s_min <= 0.25 * edge;
            if s_min <= accept && prominent {
                return finish(domain, b_field, basis, opts, (l_min, s_min), &grid, &sigmas, accept);
            }
        }
    }
    Err(Error::NotFound { lo, hi, best_sigma })
}

/// Build the result at an accepted minimum, including the degeneracy
/// audit over later minima within the relative gap.
fn finish(
    domain: &SolveDomain,
    b_field: f64,
    basis: &BasisSpec,
    opts: &SolverOptions,
    found: (f64, f64),
    grid: &[f64],
    sigmas: &[f64],
    accept: f64,
) -> Result<EigenSolveResult> {
    let (lambda, sigma) = found;
    let eval = |l: f64| -> f64 {
        subspace_angle_core(domain, b_field, l, basis, false)
            .map(|o| o.sigma)
            .unwrap_or(f64::INFINITY)
    };
    // look for a second minimum just above lambda
    let gap = opts.degeneracy_rel_gap * lambda.abs().max(1.0);
    let mut nearby = None;
    for i in 1..sigmas.len().saturating_sub(1) {
        if grid[i] <= lambda + 1e-9 * lambda.abs() || grid[i] > lambda + gap {
            continue;
        }
        if sigmas[i] <= sigmas[i - 1] && sigmas[i] <= sigmas[i + 1] && sigmas[i].is_finite() {
            let (l2, s2) = brent_min(eval, grid[i - 1], grid[i + 1], opts.lambda_rtol, 60);
            if s2 <= accept && (l2 - lambda).abs() > 10.0 * opts.lambda_rtol * lambda.abs() {
                nearby = Some(l2);
                break;
            }
        }
    }

    let out = subspace_angle_core(domain, b_field, lambda, basis, true)?;
    let alpha = out.alpha.expect("vector requested");

    // Lemma-floor sanity on every accepted solve
    let floor = b_field + std::f64::consts::PI.powi(2) / (domain.h_extent * domain.h_extent);
    if lambda < floor - 1e-6 * floor.abs() - 1e-9 {
        return Err(Error::Solver(format!(
            "accepted lambda = {lambda} violates the rigorous floor {floor}"
        )));
    }

    Ok(EigenSolveResult {
        lambda,
        alpha,
        sigma: out.sigma.min(sigma),
        basis: *basis,
        delta_p: basis.delta_p(lambda),
        modes: basis.modes(lambda),
        b_field,
        used_bessel: basis.b_zero_mode,
        center: domain.center,
        h_extent: domain.h_extent,
        nearby_eigenvalue: nearby,
        l2_normalized: false,
    })
}

/// Solver mode selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    General,
    Axisymmetric,
    /// axisymmetric fast path when the shape itself is axisymmetric
    Auto,
}

/// Weak-field switch: the Kummer basis is replaced by the Bessel one when
/// B max_r^2 / 2 drops below this.
pub const B_ZERO_SWITCH: f64 = 1e-3;

/// Full ground-state solve on a shape: build the domain, pick the basis,
/// search from the rigorous floor upward, widening the window on misses.
pub fn solve_ground_state(
    shape: &crate::geometry::ShapeCoefficients,
    b_field: f64,
    mode: SolveMode,
    opts: &SolverOptions,
) -> Result<EigenSolveResult> {
    let axi = match mode {
        SolveMode::General => false,
        SolveMode::Axisymmetric => true,
        SolveMode::Auto => shape.axisymmetric(),
    };
    let mut basis = if axi { BasisSpec::axisym() } else { BasisSpec::general() };
    let domain = SolveDomain::from_shape(
        shape,
        opts.n_target,
        axi,
        opts.interior_factor * basis.full_len(),
    )?;
    let rmax = domain.max_radius_centered;
    if b_field * rmax * rmax / 2.0 < B_ZERO_SWITCH {
        basis = basis.with_bessel(true);
    }
    let b_eff = if basis.b_zero_mode { 0.0 } else { b_field };

    let floor = b_field + std::f64::consts::PI.powi(2) / (domain.h_extent * domain.h_extent);
    let (w_lo, w_hi) = match opts.window_hint {
        Some(w) => w,
        None => {
            let ball = std::f64::consts::PI.powi(2)
                / (domain.equal_volume_ball_radius * domain.equal_volume_ball_radius);
            (floor, floor + 8.0 * ball)
        }
    };
    // recovery ladder: densify the scan first (narrow dips hide on a
    // falling background), then widen the window
    let span = w_hi - w_lo;
    let mut last_err = None;
    for attempt in 0..=opts.max_widen {
        let scan_mult = 1usize << (attempt.min(2) as usize);
        let span_mult = if attempt >= 3 { 1u32 << (attempt - 2) } else { 1 };
        let attempt_opts = SolverOptions {
            scan_points: opts.scan_points * scan_mult,
            ..*opts
        };
        let window = (w_lo, w_lo + span * span_mult as f64);
        match find_eigenvalue(&domain, b_eff, &basis, window, &attempt_opts) {
            Ok(mut res) => {
                res.b_field = b_field;
                return Ok(res);
            }
            Err(e @ Error::NotFound { .. }) => {
                last_err = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Solver("window widening exhausted".into())))
}
