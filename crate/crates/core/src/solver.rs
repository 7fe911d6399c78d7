//! Convex design of the noise PMF: minimize `H[V] - H[Z]` over the
//! probability simplex subject to the mean-square distortion budget
//! `E[Z^2] <= epsilon`.
//!
//! The inner minimizer is entropic mirror descent (multiplicative weights).
//! The objective is 1-smooth relative to negative entropy, so the full step
//! eta = 1 (the Blahut-Arimoto-style fixed point) already descends
//! monotonically; a deterministic backtracking halving guards the last few
//! ulps near the optimum. Iterates stay strictly interior, where the
//! gradient of `-H[Z]` is finite.
//!
//! The distortion constraint is handled by bisection on the scalar
//! multiplier `lambda >= 0`: the inner optimum's distortion is nonincreasing
//! in `lambda`, so the bracket `[lambda_lo, lambda_hi]` is grown
//! geometrically and then halved until the constraint is active to within
//! the complementary-slackness target. Everything is deterministic: fixed
//! initialization, no randomized steps.

use crate::error::{Error, Result};
use crate::info_theory::{convolve, mi_objective};
use crate::pmf::Pmf;
use crate::quantizer::QuantizerSpec;

const LN_2: f64 = std::f64::consts::LN_2;

/// Default probability floor used inside gradient evaluations.
pub const DEFAULT_PROBABILITY_FLOOR: f64 = 1e-12;

/// One per-sensor design problem: the known measurement PMF on the
/// quantizer's levels plus an optional distortion budget.
#[derive(Debug, Clone)]
pub struct DesignProblem {
    p_y: Pmf,
    spec: QuantizerSpec,
    epsilon: Option<f64>,
}

impl DesignProblem {
    /// `epsilon = None` means unconstrained. `Some(f64::INFINITY)` is
    /// accepted and equivalent.
    pub fn new(p_y: Pmf, spec: QuantizerSpec, epsilon: Option<f64>) -> Result<Self> {
        let levels = spec.levels();
        if p_y.support().len() != levels.len()
            || p_y
                .support()
                .iter()
                .zip(&levels)
                .any(|(a, b)| a.to_bits() != b.to_bits())
        {
            return Err(Error::SupportMismatch);
        }
        if let Some(eps) = epsilon {
            if eps.is_nan() || eps < 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "epsilon must be nonnegative, got {eps}"
                )));
            }
        }
        Ok(Self { p_y, spec, epsilon })
    }

    pub fn p_y(&self) -> &Pmf {
        &self.p_y
    }

    pub fn spec(&self) -> &QuantizerSpec {
        &self.spec
    }

    pub fn epsilon(&self) -> Option<f64> {
        self.epsilon
    }

    /// Smallest achievable distortion on this level set: the noise alphabet
    /// is fixed to the levels, so `E[Z^2]` can never drop below the smallest
    /// squared level.
    pub fn min_feasible_distortion(&self) -> f64 {
        self.spec
            .levels()
            .iter()
            .map(|l| l * l)
            .fold(f64::INFINITY, f64::min)
    }

    /// Same measurement and quantizer with a different budget.
    pub fn with_epsilon(&self, epsilon: Option<f64>) -> Result<Self> {
        Self::new(self.p_y.clone(), self.spec.clone(), epsilon)
    }
}

/// Knobs of the iterative solver. All fields must be positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Cap on bracket growth plus bisection steps of the outer loop.
    pub max_outer_iterations: usize,
    /// Cap on mirror-descent iterations per inner solve.
    pub max_inner_iterations: usize,
    /// Objective improvement (bits) below which an inner iteration counts
    /// as quiet; ten consecutive quiet iterations trigger the KKT test.
    pub objective_tolerance: f64,
    /// Stationarity residual (bits) below which an iterate is accepted.
    pub kkt_tolerance: f64,
    /// Floor applied to probabilities inside gradient evaluation only;
    /// never applied to reported probabilities.
    pub probability_floor: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            max_outer_iterations: 400,
            max_inner_iterations: 200_000,
            objective_tolerance: 1e-9,
            kkt_tolerance: 1e-6,
            probability_floor: DEFAULT_PROBABILITY_FLOOR,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if self.max_outer_iterations == 0 || self.max_inner_iterations == 0 {
            return Err(Error::InvalidArgument(
                "iteration caps must be positive".into(),
            ));
        }
        for (name, v) in [
            ("objective_tolerance", self.objective_tolerance),
            ("kkt_tolerance", self.kkt_tolerance),
            ("probability_floor", self.probability_floor),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be > 0, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// A solved noise design together with its optimality diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseDesign {
    /// The designed noise PMF on the quantization levels.
    pub p_z: Pmf,
    /// Achieved objective `I[Y+Z; Y]` in bits.
    pub mi_bits: f64,
    /// Achieved distortion `E[Z^2]`.
    pub distortion: f64,
    /// Lagrange multiplier of the distortion constraint, in bits per
    /// squared sensor unit; zero when the constraint is absent or slack.
    pub lambda: f64,
    /// Max violation of the first-order optimality conditions, in bits.
    pub kkt_residual: f64,
    /// Total inner (mirror-descent) iterations spent.
    pub iterations: usize,
    pub converged: bool,
}

// ---------------------------------------------------------------------------
// inner minimization of H[V] - H[Z] + lambda * E[Z^2] (natural logs)
// ---------------------------------------------------------------------------

struct InnerWorkspace {
    p_v: Vec<f64>,
    grad: Vec<f64>,
    candidate: Vec<f64>,
    cand_p_v: Vec<f64>,
}

impl InnerWorkspace {
    fn new(n: usize) -> Self {
        Self {
            p_v: Vec::with_capacity(2 * n - 1),
            grad: vec![0.0; n],
            candidate: vec![0.0; n],
            cand_p_v: Vec::with_capacity(2 * n - 1),
        }
    }
}

fn neg_entropy_nats(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&q| q > 0.0)
        .map(|&q| q * q.ln())
        .sum()
}

fn lagrangian_nats(py: &[f64], p: &[f64], p_v: &mut Vec<f64>, lam: f64, cost: &[f64]) -> f64 {
    convolve(py, p, p_v);
    let dist: f64 = cost.iter().zip(p).map(|(c, q)| c * q).sum();
    -neg_entropy_nats(p_v) + neg_entropy_nats(p) + lam * dist
}

/// grad_k = -sum_j py_j ln(pv_{j+k}) + ln(max(p_k, floor)) + lam * cost_k,
/// skipping zero-probability measurement terms.
fn gradient_nats(
    py: &[f64],
    p: &[f64],
    p_v: &[f64],
    lam: f64,
    cost: &[f64],
    floor: f64,
    out: &mut [f64],
) {
    for (k, g) in out.iter_mut().enumerate() {
        let mut acc = p[k].max(floor).ln() + lam * cost[k];
        for (j, &y) in py.iter().enumerate() {
            if y > 0.0 {
                acc -= y * p_v[j + k].max(floor).ln();
            }
        }
        *g = acc;
    }
}

/// Stationarity residual of the Lagrangian in nats: on the support
/// (`p > floor`, restricted to `active`) the gradient must be constant; off
/// the support it must not dip below that constant.
fn stationarity_nats(p: &[f64], grad: &[f64], active: &[bool], floor: f64) -> f64 {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for k in 0..p.len() {
        if active[k] && p[k] > floor {
            lo = lo.min(grad[k]);
            hi = hi.max(grad[k]);
        }
    }
    if !lo.is_finite() {
        return 0.0;
    }
    let nu = 0.5 * (lo + hi);
    let mut residual = 0.5 * (hi - lo);
    for k in 0..p.len() {
        if active[k] && p[k] <= floor {
            residual = residual.max(nu - grad[k]);
        }
    }
    residual
}

struct InnerResult {
    p: Vec<f64>,
    iterations: usize,
    converged: bool,
}

fn inner_solve(
    py: &[f64],
    cost: &[f64],
    lam: f64,
    init: &[f64],
    active: &[bool],
    opts: &SolverOptions,
    ws: &mut InnerWorkspace,
) -> InnerResult {
    let n = py.len();
    let obj_tol = opts.objective_tolerance * LN_2;
    let kkt_tol = opts.kkt_tolerance * LN_2;
    let floor = opts.probability_floor;

    let mut p: Vec<f64> = init.to_vec();
    for (q, &a) in p.iter_mut().zip(active) {
        if !a {
            *q = 0.0;
        }
    }
    let total: f64 = p.iter().sum();
    for q in &mut p {
        *q /= total;
    }

    let mut f = lagrangian_nats(py, &p, &mut ws.p_v, lam, cost);
    let mut quiet = 0usize;
    let mut iterations = 0usize;

    while iterations < opts.max_inner_iterations {
        iterations += 1;
        gradient_nats(py, &p, &ws.p_v, lam, cost, floor, &mut ws.grad);

        if quiet >= 10 {
            // stop at half the certification threshold so the residual
            // recomputed on the assembled design keeps a margin
            let r = stationarity_nats(&p, &ws.grad, active, floor);
            if r < 0.5 * kkt_tol {
                return InnerResult {
                    p,
                    iterations,
                    converged: true,
                };
            }
        }

        // center the exponent so the update is scale-safe
        let mut center = 0.0;
        let mut count = 0.0;
        for k in 0..n {
            if active[k] {
                center += ws.grad[k];
                count += 1.0;
            }
        }
        center /= count;

        let mut eta = 1.0;
        let mut accepted = false;
        let mut f_new = f;
        for _ in 0..60 {
            let mut sum = 0.0;
            for k in 0..n {
                let w = if active[k] {
                    p[k] * (-eta * (ws.grad[k] - center)).clamp(-700.0, 700.0).exp()
                } else {
                    0.0
                };
                ws.candidate[k] = w;
                sum += w;
            }
            if sum > 0.0 && sum.is_finite() {
                for w in &mut ws.candidate {
                    *w /= sum;
                }
                f_new = lagrangian_nats(py, &ws.candidate, &mut ws.cand_p_v, lam, cost);
                if f_new <= f + 1e-14 * f.abs().max(1.0) {
                    accepted = true;
                    break;
                }
            }
            eta *= 0.5;
        }
        if !accepted {
            // stalled at floating-point resolution; certify what we have
            let r = stationarity_nats(&p, &ws.grad, active, floor);
            return InnerResult {
                p,
                iterations,
                converged: r < kkt_tol,
            };
        }
        std::mem::swap(&mut p, &mut ws.candidate);
        std::mem::swap(&mut ws.p_v, &mut ws.cand_p_v);
        let improvement = f - f_new;
        f = f_new;
        quiet = if improvement < obj_tol { quiet + 1 } else { 0 };
    }
    InnerResult {
        p,
        iterations,
        converged: false,
    }
}

// ---------------------------------------------------------------------------
// initialization
// ---------------------------------------------------------------------------

fn tilt_probs(cost: &[f64], beta: f64) -> Vec<f64> {
    let cmin = cost.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    let mut p: Vec<f64> = cost
        .iter()
        .map(|&c| (-beta * (c - cmin) * LN_2).exp())
        .collect();
    let total: f64 = p.iter().sum();
    for q in &mut p {
        *q /= total;
    }
    p
}

fn tilt_distortion(cost: &[f64], beta: f64) -> f64 {
    let p = tilt_probs(cost, beta);
    cost.iter().zip(&p).map(|(c, q)| c * q).sum()
}

/// Uniform over the levels when that is feasible; otherwise the maximum-
/// entropy feasible point from the exponential family `p ∝ 2^(-beta c)`,
/// with `beta` located by bisection on the distortion.
fn initial_point(cost: &[f64], epsilon: Option<f64>) -> Vec<f64> {
    let n = cost.len();
    let uniform = vec![1.0 / n as f64; n];
    let eps = match epsilon {
        None => return uniform,
        Some(e) => e,
    };
    let mean: f64 = cost.iter().sum::<f64>() / n as f64;
    if mean <= eps {
        return uniform;
    }
    let cmin = cost.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    let cmax = cost.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let mut beta_hi = 1.0 / (cmax - cmin).max(1e-12);
    let mut grew = 0;
    while tilt_distortion(cost, beta_hi) > eps {
        beta_hi *= 2.0;
        grew += 1;
        if grew > 200 {
            // budget is at (or numerically at) the minimum; the caller's
            // face handling takes over, any interior start will do
            return tilt_probs(cost, beta_hi);
        }
    }
    let mut beta_lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (beta_lo + beta_hi);
        if tilt_distortion(cost, mid) > eps {
            beta_lo = mid;
        } else {
            beta_hi = mid;
        }
    }
    tilt_probs(cost, beta_hi)
}

// ---------------------------------------------------------------------------
// public solve
// ---------------------------------------------------------------------------

fn assemble_design(
    problem: &DesignProblem,
    probs: Vec<f64>,
    lam_nats: f64,
    iterations: usize,
    inner_converged: bool,
    opts: &SolverOptions,
) -> Result<NoiseDesign> {
    let levels = problem.spec.levels();
    let cost: Vec<f64> = levels.iter().map(|l| l * l).collect();
    let mut probs = probs;
    let total: f64 = probs.iter().sum();
    for q in &mut probs {
        *q /= total;
    }
    let distortion: f64 = cost.iter().zip(&probs).map(|(c, q)| c * q).sum();

    let n = probs.len();
    let mut ws = InnerWorkspace::new(n);
    convolve(problem.p_y.probs(), &probs, &mut ws.p_v);
    gradient_nats(
        problem.p_y.probs(),
        &probs,
        &ws.p_v,
        lam_nats,
        &cost,
        opts.probability_floor,
        &mut ws.grad,
    );
    let kkt_residual =
        stationarity_nats(&probs, &ws.grad, &vec![true; n], opts.probability_floor) / LN_2;

    let p_z = Pmf::new(levels, probs)?;
    let mi_bits = mi_objective(&problem.p_y, &p_z)?;
    let lambda = lam_nats / LN_2;

    let slack_ok = match problem.epsilon {
        None => true,
        Some(eps) => {
            let cs = if lambda == 0.0 {
                0.0
            } else {
                lambda * (eps - distortion)
            };
            distortion <= eps + 1e-8 && cs.abs() <= 1e-6
        }
    };
    let converged = inner_converged && kkt_residual < opts.kkt_tolerance && slack_ok;

    let design = NoiseDesign {
        p_z,
        mi_bits,
        distortion,
        lambda,
        kkt_residual,
        iterations,
        converged,
    };
    if converged {
        Ok(design)
    } else {
        Err(Error::NotConverged {
            best: Box::new(design),
        })
    }
}

/// Solves the per-sensor design problem to global optimality (the objective
/// is convex) and certifies the result through its KKT residual.
pub fn solve(problem: &DesignProblem, opts: &SolverOptions) -> Result<NoiseDesign> {
    opts.validate()?;
    let levels = problem.spec.levels();
    let cost: Vec<f64> = levels.iter().map(|l| l * l).collect();
    let n = cost.len();
    let cmin = cost.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    let py = problem.p_y.probs();
    let mut ws = InnerWorkspace::new(n);

    if let Some(eps) = problem.epsilon {
        if eps < cmin {
            return Err(Error::InfeasibleDistortion {
                epsilon: eps,
                min_distortion: cmin,
            });
        }
        if eps - cmin <= 1e-12 * cmin.max(1.0) {
            return solve_on_min_distortion_face(problem, &cost, opts, &mut ws);
        }
    }

    let active = vec![true; n];
    let init = initial_point(&cost, problem.epsilon);

    let at_zero = inner_solve(py, &cost, 0.0, &init, &active, opts, &mut ws);
    let mut total_iters = at_zero.iterations;
    let d0: f64 = cost.iter().zip(&at_zero.p).map(|(c, q)| c * q).sum();

    let eps = match problem.epsilon {
        None => {
            return assemble_design(
                problem,
                at_zero.p,
                0.0,
                total_iters,
                at_zero.converged,
                opts,
            )
        }
        Some(eps) if d0 <= eps => {
            return assemble_design(
                problem,
                at_zero.p,
                0.0,
                total_iters,
                at_zero.converged,
                opts,
            )
        }
        Some(eps) => eps,
    };

    // bracket: grow lambda until the budget is met
    let cmax = cost.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let lam_unit = 1.0 / (cmax - cmin).max(1e-12);
    let mut lam_lo = 0.0;
    let mut lam_hi = lam_unit / 1024.0;
    let mut outer = 0usize;
    let mut sol_hi: InnerResult;
    loop {
        sol_hi = inner_solve(py, &cost, lam_hi, &init, &active, opts, &mut ws);
        total_iters += sol_hi.iterations;
        outer += 1;
        let d: f64 = cost.iter().zip(&sol_hi.p).map(|(c, q)| c * q).sum();
        if d <= eps {
            break;
        }
        lam_lo = lam_hi;
        lam_hi *= 2.0;
        if outer >= opts.max_outer_iterations {
            return assemble_design(problem, sol_hi.p, lam_hi, total_iters, false, opts);
        }
    }

    // bisect until the constraint is active to complementary-slackness
    // precision (reported lambda is in bits, hence the LN_2 in the target)
    let mut d_hi: f64 = cost.iter().zip(&sol_hi.p).map(|(c, q)| c * q).sum();
    while outer < opts.max_outer_iterations {
        let cs = lam_hi / LN_2 * (eps - d_hi);
        let gap_ok = eps - d_hi <= 1e-5 * eps.max(1.0);
        if (cs <= 2e-7 && gap_ok) || (lam_hi - lam_lo) <= 1e-15 * lam_hi {
            break;
        }
        outer += 1;
        let mid = 0.5 * (lam_lo + lam_hi);
        let sol_mid = inner_solve(py, &cost, mid, &init, &active, opts, &mut ws);
        total_iters += sol_mid.iterations;
        let d_mid: f64 = cost.iter().zip(&sol_mid.p).map(|(c, q)| c * q).sum();
        if d_mid <= eps {
            lam_hi = mid;
            sol_hi = sol_mid;
            d_hi = d_mid;
        } else {
            lam_lo = mid;
        }
    }

    assemble_design(
        problem,
        sol_hi.p,
        lam_hi,
        total_iters,
        sol_hi.converged,
        opts,
    )
}

/// Budget exactly at the minimum achievable distortion: all feasible mass
/// sits on the levels of smallest squared value. Optimize on that face and
/// certify with the smallest multiplier that covers the excluded levels.
fn solve_on_min_distortion_face(
    problem: &DesignProblem,
    cost: &[f64],
    opts: &SolverOptions,
    ws: &mut InnerWorkspace,
) -> Result<NoiseDesign> {
    let n = cost.len();
    let py = problem.p_y.probs();
    let cmin = cost.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    let active: Vec<bool> = cost
        .iter()
        .map(|&c| c - cmin <= 1e-12 * cmin.max(1.0))
        .collect();
    let face_size = active.iter().filter(|&&a| a).count();

    let (p, iterations, inner_converged) = if face_size == 1 {
        let mut p = vec![0.0; n];
        p[active.iter().position(|&a| a).unwrap()] = 1.0;
        (p, 0, true)
    } else {
        let init = vec![1.0 / n as f64; n];
        let sol = inner_solve(py, cost, 0.0, &init, &active, opts, ws);
        (sol.p, sol.iterations, sol.converged)
    };

    // smallest lambda >= 0 that makes every off-face gradient clear the
    // face-level stationarity constant
    convolve(py, &p, &mut ws.p_v);
    gradient_nats(
        py,
        &p,
        &ws.p_v,
        0.0,
        cost,
        opts.probability_floor,
        &mut ws.grad,
    );
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for k in 0..n {
        if active[k] && p[k] > opts.probability_floor {
            lo = lo.min(ws.grad[k]);
            hi = hi.max(ws.grad[k]);
        }
    }
    let nu = 0.5 * (lo + hi);
    let mut lam_nats: f64 = 0.0;
    for k in 0..n {
        if !active[k] {
            lam_nats = lam_nats.max((nu - ws.grad[k]) / (cost[k] - cmin));
        }
    }
    assemble_design(problem, p, lam_nats, iterations, inner_converged, opts)
}

/// Exhaustive grid search over the feasible simplex; the test oracle for
/// global optimality. Only sensible for a handful of levels.
pub fn brute_force_solve(problem: &DesignProblem, grid_resolution: usize) -> Result<NoiseDesign> {
    let n = problem.p_y.len();
    if n > 4 {
        return Err(Error::TooManyLevels { n, max: 4 });
    }
    if grid_resolution < 50 {
        return Err(Error::InvalidArgument(format!(
            "grid resolution must be at least 50, got {grid_resolution}"
        )));
    }
    let levels = problem.spec.levels();
    let cost: Vec<f64> = levels.iter().map(|l| l * l).collect();
    let cmin = cost.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    if let Some(eps) = problem.epsilon {
        if eps < cmin {
            return Err(Error::InfeasibleDistortion {
                epsilon: eps,
                min_distortion: cmin,
            });
        }
    }

    let py = problem.p_y.probs();
    let r = grid_resolution;
    let mut counts = vec![0usize; n];
    counts[0] = r;
    let mut p = vec![0.0; n];
    let mut p_v: Vec<f64> = Vec::with_capacity(2 * n - 1);
    let mut best: Option<(f64, Vec<f64>, f64)> = None;
    let mut evaluated = 0usize;

    loop {
        for (q, &c) in p.iter_mut().zip(&counts) {
            *q = c as f64 / r as f64;
        }
        let dist: f64 = cost.iter().zip(&p).map(|(c, q)| c * q).sum();
        let feasible = problem.epsilon.is_none_or(|eps| dist <= eps);
        if feasible {
            evaluated += 1;
            convolve(py, &p, &mut p_v);
            let mi = (-neg_entropy_nats(&p_v) + neg_entropy_nats(&p)) / LN_2;
            if best.as_ref().is_none_or(|(b, _, _)| mi < *b) {
                best = Some((mi, p.clone(), dist));
            }
        }
        if !next_composition(&mut counts) {
            break;
        }
    }

    let (mi_bits, probs, distortion) =
        best.expect("the vertex at the smallest squared level is always feasible");

    // diagnostic multiplier: least-squares fit of grad = nu - lambda*cost
    // over the support of the grid optimum
    let mut ws = InnerWorkspace::new(n);
    convolve(py, &probs, &mut ws.p_v);
    gradient_nats(
        py,
        &probs,
        &ws.p_v,
        0.0,
        &cost,
        DEFAULT_PROBABILITY_FLOOR,
        &mut ws.grad,
    );
    let support: Vec<usize> = (0..n).filter(|&k| probs[k] > 0.0).collect();
    let lambda = if problem.epsilon.is_some() && support.len() >= 2 {
        let m = support.len() as f64;
        let mean_c = support.iter().map(|&k| cost[k]).sum::<f64>() / m;
        let mean_g = support.iter().map(|&k| ws.grad[k]).sum::<f64>() / m;
        let cov: f64 = support
            .iter()
            .map(|&k| (cost[k] - mean_c) * (ws.grad[k] - mean_g))
            .sum();
        let var: f64 = support.iter().map(|&k| (cost[k] - mean_c).powi(2)).sum();
        if var > 0.0 {
            (-cov / var).max(0.0) / LN_2
        } else {
            0.0
        }
    } else {
        0.0
    };
    gradient_nats(
        py,
        &probs,
        &ws.p_v,
        lambda * LN_2,
        &cost,
        DEFAULT_PROBABILITY_FLOOR,
        &mut ws.grad,
    );
    let kkt_residual =
        stationarity_nats(&probs, &ws.grad, &vec![true; n], DEFAULT_PROBABILITY_FLOOR) / LN_2;

    Ok(NoiseDesign {
        p_z: Pmf::new(levels, probs)?,
        mi_bits,
        distortion,
        lambda,
        kkt_residual,
        iterations: evaluated,
        converged: true,
    })
}

/// Advances a composition of a fixed total over `counts.len()` parts in
/// lexicographic order; returns false after the last one.
fn next_composition(counts: &mut [usize]) -> bool {
    let n = counts.len();
    if n == 1 {
        return false;
    }
    // move one unit from the first nonempty prefix position to the next
    let mut i = 0;
    while i < n - 1 && counts[i] == 0 {
        i += 1;
    }
    if i == n - 1 {
        return false;
    }
    let carry = counts[i] - 1;
    counts[i + 1] += 1;
    counts[i] = 0;
    counts[0] = carry;
    true
}

/// Recomputes the stationarity residual of a design against its problem:
/// over the support (after flooring) the quantity `grad + lambda * level^2`
/// must be constant, and off the support it must not fall below that
/// constant. Returns the max violation in bits.
pub fn kkt_check(problem: &DesignProblem, design: &NoiseDesign) -> f64 {
    let cost: Vec<f64> = problem.spec.levels().iter().map(|l| l * l).collect();
    let n = cost.len();
    let mut ws = InnerWorkspace::new(n);
    let probs = design.p_z.probs();
    convolve(problem.p_y.probs(), probs, &mut ws.p_v);
    gradient_nats(
        problem.p_y.probs(),
        probs,
        &ws.p_v,
        design.lambda * LN_2,
        &cost,
        DEFAULT_PROBABILITY_FLOOR,
        &mut ws.grad,
    );
    stationarity_nats(probs, &ws.grad, &vec![true; n], DEFAULT_PROBABILITY_FLOOR) / LN_2
}

/// Solves the same problem across a nondecreasing list of budgets. Each
/// budget gets its own result so an infeasible entry does not abort the
/// sweep. Larger budgets never raise the optimal objective.
pub fn tradeoff_sweep(
    problem_base: &DesignProblem,
    epsilons: &[f64],
    opts: &SolverOptions,
) -> Result<Vec<Result<NoiseDesign>>> {
    if epsilons.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument(
            "epsilons must be sorted ascending".into(),
        ));
    }
    Ok(epsilons
        .iter()
        .map(|&eps| {
            problem_base
                .with_epsilon(Some(eps))
                .and_then(|p| solve(&p, opts))
        })
        .collect())
}
