//! Dual maximization, primal recovery and a brute-force grid oracle.
//!
//! [`solve_dual`] works in three stages:
//!
//! 1. A homogenized feasibility LP finds a point in the relative interior of
//!    `{A w = e1, w >= 0}` and the weights that every feasible point forces to zero.
//! 2. A log-barrier Newton method (in the null space of `A`) follows the central
//!    path from that point down to a small barrier parameter.
//! 3. Constraint blocks whose weights vanished are dropped and plain Newton
//!    iterations on the remaining support converge to the maximizer. Dropped
//!    blocks are re-admitted if their optimality condition fails.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
// Shadowed by inherent methods whenever std is linked into the build.
#[allow(unused_imports)]
use num_traits::Float;

use crate::dual::{build_dual, Block, DualProgram, DualSolution};
use crate::linalg::{self, Decomposition};
use crate::lp::{self, LpOutcome};
use crate::posynomial::{evaluate, log_sum_exp, StandardGp};
use crate::Error;

/// Tolerances and limits for the dual maximizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    /// Infinity-norm bound on `A w - e1`.
    pub feasibility_tol: f64,
    /// Infinity-norm bound on the projected gradient over the interior weights.
    pub stationarity_tol: f64,
    /// Weights at or below this value count as zero.
    pub boundary_eps: f64,
    pub max_iterations: usize,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self { feasibility_tol: 1e-10, stationarity_tol: 1e-8, boundary_eps: 1e-12, max_iterations: 10_000 }
    }
}

/// Outcome of the dual maximization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualStatus {
    Optimal,
    /// No nonnegative weights satisfy normality and orthogonality.
    Infeasible,
    /// The dual objective grows without bound along a feasible ray.
    Unbounded,
    IterationLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualOutcome {
    pub status: DualStatus,
    pub solution: Option<DualSolution>,
    /// `||A w - e1||_inf` at the returned weights.
    pub feasibility_residual: f64,
    /// Projected-gradient norm at the returned weights.
    pub stationarity: f64,
    pub iterations: usize,
}

impl DualOutcome {
    fn failed(status: DualStatus, iterations: usize) -> Self {
        Self { status, solution: None, feasibility_residual: f64::NAN, stationarity: f64::NAN, iterations }
    }
}

/// Status of a primal solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Optimal,
    /// No point satisfies the constraints.
    Infeasible,
    /// The objective infimum is not attained by any finite positive point
    /// (it may be zero).
    Unbounded,
    IterationLimit,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KktResiduals {
    /// Dual equality residual `||A w - e1||_inf`.
    pub feasibility: f64,
    /// Projected dual gradient norm.
    pub stationarity: f64,
    /// `max_i f_i(x) - 1` at the recovered point.
    pub primal_violation: f64,
}

impl KktResiduals {
    const UNKNOWN: Self = Self { feasibility: f64::NAN, stationarity: f64::NAN, primal_violation: f64::NAN };
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub status: Status,
    /// Recovered primal point; empty unless a point was reconstructed.
    pub x: Vec<f64>,
    pub dual: Option<DualSolution>,
    /// Primal objective at `x`.
    pub objective_value: Option<f64>,
    /// `|primal - dual| / primal`.
    pub duality_gap: Option<f64>,
    pub residuals: KktResiduals,
    pub iterations: usize,
}

const BARRIER_START: f64 = 1.0;
const BARRIER_END: f64 = 1e-12;
const BARRIER_SHRINK: f64 = 0.1;
/// Constraint blocks lighter than this after the barrier stage are dropped.
const DROP_LAMBDA: f64 = 1e-8;
const DIVERGENCE: f64 = 1e10;
const RECOVERY_TOL: f64 = 1e-6;

/// Maximizes the log-dual over `{A w = e1, w >= 0}`.
pub fn solve_dual(d: &DualProgram, cfg: &SolverSettings) -> DualOutcome {
    let k_count = d.term_count();
    let a_rows = d.variable_count() + 1;
    let a_full = d.equality_matrix();
    let b = d.equality_rhs();

    let (interior, free) = match relative_interior(&a_full, &b, k_count) {
        Some(found) => found,
        None => return DualOutcome::failed(DualStatus::Infeasible, 0),
    };

    let sub = |cols: &[usize]| -> DMatrix<f64> {
        DMatrix::from_fn(a_rows, cols.len(), |r, c| a_full[r * k_count + cols[c]])
    };
    let b_vec = DVector::from_column_slice(&b);
    let mut w = vec![0.0; k_count];
    let mut iterations = 0;

    let a_free = sub(&free);
    let dec = Decomposition::new(&a_free);
    if dec.null_dim() == 0 {
        // Unique feasible point: direct linear solve.
        let sol = dec.solve(&b_vec);
        for (p, &k) in free.iter().enumerate() {
            w[k] = sol[p].max(0.0);
        }
        return finish(d, w, cfg, iterations);
    }

    // Equal block weights projected onto the affine set, or the LP interior point.
    let start = equal_weight_start(d, &free, &a_free, &dec, &b_vec).unwrap_or_else(|| free.iter().map(|&k| interior[k]).collect());
    for (p, &k) in free.iter().enumerate() {
        w[k] = start[p];
    }

    match barrier(d, &mut w, &free, &a_free, &dec, &b_vec, cfg, &mut iterations) {
        Ok(()) => {}
        Err(status) => return DualOutcome::failed(status, iterations),
    }

    // Active-set polish.
    let mut dropped: Vec<usize> = Vec::new();
    let mut pinned: Vec<usize> = Vec::new();
    let lambdas = d.lambdas(&w);
    for (i, &lambda) in lambdas.iter().enumerate() {
        if lambda < DROP_LAMBDA {
            dropped.push(i);
        }
    }
    let barrier_w = w.clone();
    for _round in 0..(2 * lambdas.len() + 2) {
        let support: Vec<usize> = free
            .iter()
            .copied()
            .filter(|&k| match d.blocks()[k] {
                Block::Constraint(i) => !dropped.contains(&i),
                Block::Objective => true,
            })
            .collect();
        let mut trial = barrier_w.clone();
        for (k, v) in trial.iter_mut().enumerate() {
            if !support.contains(&k) {
                *v = 0.0;
            }
        }
        let a_s = sub(&support);
        let dec_s = Decomposition::new(&a_s);
        match newton_polish(d, &mut trial, &support, &a_s, &dec_s, &b_vec, &pinned, cfg, &mut iterations) {
            Polish::Converged => {}
            Polish::DropBlock(i) => {
                dropped.push(i);
                continue;
            }
            Polish::Diverged => return DualOutcome::failed(DualStatus::Unbounded, iterations),
            Polish::Stalled => {
                w = trial;
                break;
            }
        }
        // Dropped blocks must not improve the dual: ln sum_t c_t exp(-(A^T nu)_t) <= 0.
        let nu = multipliers(d, &trial, &support, &a_s);
        let violated = dropped.iter().copied().find(|&i| {
            let r = d.block_ranges()[i + 1].clone();
            let logs: Vec<f64> = r
                .map(|k| {
                    let at_nu: f64 = (0..d.variable_count()).map(|j| d.exponent(k, j) * nu[j + 1]).sum();
                    d.coefficients()[k].ln() - at_nu
                })
                .collect();
            log_sum_exp(&logs) > 1e-9
        });
        w = trial;
        match violated {
            Some(i) => {
                dropped.retain(|&j| j != i);
                pinned.push(i);
            }
            None => break,
        }
    }
    finish(d, w, cfg, iterations)
}

/// Finds a relative-interior point of `{A w = b, w >= 0}` and the indices not forced to zero.
///
/// Solves `max sum t` s.t. `A w = tau b`, `w >= t`, `0 <= t <= 1`, `tau >= 1`; at the
/// optimum `t_k = 1` exactly for the coordinates some feasible point makes positive.
fn relative_interior(a: &[f64], b: &[f64], k_count: usize) -> Option<(Vec<f64>, Vec<usize>)> {
    let rows = b.len();
    // Columns: w (K), t (K), tau, s (K), u (K), v.
    let cols = 4 * k_count + 2;
    let (w0, t0, tau, s0, u0, v) = (0, k_count, 2 * k_count, 2 * k_count + 1, 3 * k_count + 1, 4 * k_count + 1);
    let total_rows = rows + 2 * k_count + 1;
    let mut m = vec![0.0; total_rows * cols];
    let mut rhs = vec![0.0; total_rows];
    for r in 0..rows {
        for k in 0..k_count {
            m[r * cols + w0 + k] = a[r * k_count + k];
        }
        m[r * cols + tau] = -b[r];
    }
    for k in 0..k_count {
        let r = rows + k;
        m[r * cols + w0 + k] = 1.0;
        m[r * cols + t0 + k] = -1.0;
        m[r * cols + s0 + k] = -1.0;
        let r = rows + k_count + k;
        m[r * cols + t0 + k] = 1.0;
        m[r * cols + u0 + k] = 1.0;
        rhs[r] = 1.0;
    }
    let r = rows + 2 * k_count;
    m[r * cols + tau] = 1.0;
    m[r * cols + v] = -1.0;
    rhs[r] = 1.0;

    let mut c = vec![0.0; cols];
    c[t0..t0 + k_count].iter_mut().for_each(|x| *x = 1.0);
    match lp::maximize(&c, &m, &rhs) {
        LpOutcome::Optimal(x) => {
            let scale = x[tau];
            let w: Vec<f64> = x[w0..w0 + k_count].iter().map(|wk| wk / scale).collect();
            let free = (0..k_count).filter(|&k| x[t0 + k] > 0.5).collect();
            Some((w, free))
        }
        LpOutcome::Infeasible | LpOutcome::Unbounded => None,
    }
}

fn equal_weight_start(
    d: &DualProgram,
    free: &[usize],
    a_free: &DMatrix<f64>,
    dec: &Decomposition,
    b: &DVector<f64>,
) -> Option<Vec<f64>> {
    let mut counts = vec![0usize; d.block_ranges().len()];
    for &k in free {
        counts[d.blocks()[k].number()] += 1;
    }
    let w_eq = DVector::from_iterator(free.len(), free.iter().map(|&k| 1.0 / counts[d.blocks()[k].number()] as f64));
    let projected = &w_eq + dec.solve(&(b - a_free * &w_eq));
    let floor = 1e-6 * projected.amax();
    projected.iter().all(|&v| v > floor).then(|| projected.iter().copied().collect())
}

fn to_vec(v: &DVector<f64>) -> Vec<f64> {
    v.iter().copied().collect()
}

fn restrict(full: &[f64], idx: &[usize]) -> DVector<f64> {
    DVector::from_iterator(idx.len(), idx.iter().map(|&k| full[k]))
}

/// Largest step keeping the support strictly positive, with the index that limits it.
fn max_step(w: &[f64], idx: &[usize], dw: &DVector<f64>) -> (f64, Option<usize>) {
    let mut alpha = f64::INFINITY;
    let mut limiting = None;
    for (p, &k) in idx.iter().enumerate() {
        if dw[p] < 0.0 {
            let a = -w[k] / dw[p];
            if a < alpha {
                alpha = a;
                limiting = Some(k);
            }
        }
    }
    (alpha, limiting)
}

fn project_onto_affine(w: &mut [f64], idx: &[usize], a: &DMatrix<f64>, dec: &Decomposition, b: &DVector<f64>) {
    let ws = restrict(w, idx);
    let r = b - a * &ws;
    if r.amax() > 1e-15 {
        let corr = dec.solve(&r);
        let corrected = &ws + corr;
        if corrected.iter().all(|&v| v > 0.0) {
            for (p, &k) in idx.iter().enumerate() {
                w[k] = corrected[p];
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn barrier(
    d: &DualProgram,
    w: &mut [f64],
    free: &[usize],
    a: &DMatrix<f64>,
    dec: &Decomposition,
    b: &DVector<f64>,
    cfg: &SolverSettings,
    iterations: &mut usize,
) -> Result<(), DualStatus> {
    let null = &dec.null_space;
    let phi = |w: &[f64], mu: f64| -> f64 { d.log_value(w) + mu * free.iter().map(|&k| w[k].ln()).sum::<f64>() };
    let mut mu = BARRIER_START;
    while mu >= BARRIER_END {
        for _ in 0..100 {
            *iterations += 1;
            if *iterations > cfg.max_iterations {
                return Err(DualStatus::IterationLimit);
            }
            let grad = d.gradient(w);
            let g = DVector::from_iterator(free.len(), free.iter().map(|&k| grad[k] + mu / w[k]));
            let mut h = DMatrix::from_row_slice(free.len(), free.len(), &d.hessian(w, free));
            for (p, &k) in free.iter().enumerate() {
                h[(p, p)] -= mu / (w[k] * w[k]);
            }
            let reduced = -(null.transpose() * &h * null);
            let rhs = null.transpose() * &g;
            let Some(u) = linalg::solve_spd(&reduced, &rhs) else {
                return Err(DualStatus::IterationLimit);
            };
            let decrement = rhs.dot(&u);
            if decrement < 1e-14 {
                break;
            }
            let dw = null * u;
            let (alpha_max, _) = max_step(w, free, &dw);
            let mut alpha = (0.95 * alpha_max).min(1.0);
            let current = phi(w, mu);
            let mut trial = w.to_vec();
            let mut accepted = false;
            for _ in 0..60 {
                for (p, &k) in free.iter().enumerate() {
                    trial[k] = w[k] + alpha * dw[p];
                }
                let value = phi(&trial, mu);
                if value.is_finite() && value >= current + 0.1 * alpha * decrement {
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            if !accepted {
                break;
            }
            w.copy_from_slice(&trial);
            project_onto_affine(w, free, a, dec, b);
            if free.iter().map(|&k| w[k]).sum::<f64>() > DIVERGENCE {
                return Err(DualStatus::Unbounded);
            }
        }
        mu *= BARRIER_SHRINK;
    }
    Ok(())
}

enum Polish {
    Converged,
    Stalled,
    Diverged,
    DropBlock(usize),
}

/// Infeasible-start Newton iterations on the support without a barrier.
#[allow(clippy::too_many_arguments)]
fn newton_polish(
    d: &DualProgram,
    w: &mut [f64],
    support: &[usize],
    a: &DMatrix<f64>,
    dec: &Decomposition,
    b: &DVector<f64>,
    pinned: &[usize],
    cfg: &SolverSettings,
    iterations: &mut usize,
) -> Polish {
    let null = &dec.null_space;
    let mut last_value = f64::NEG_INFINITY;
    let mut quiet = 0;
    for _ in 0..200 {
        *iterations += 1;
        if *iterations > cfg.max_iterations {
            return Polish::Stalled;
        }
        let ws = restrict(w, support);
        let residual = b - a * &ws;
        let dw_feas = dec.solve(&residual);
        let grad = restrict(&d.gradient(w), support);
        let h = DMatrix::from_row_slice(support.len(), support.len(), &d.hessian(w, support));
        let mut dw = dw_feas.clone();
        let mut decrement = 0.0;
        if null.ncols() > 0 {
            let reduced = -(null.transpose() * &h * null);
            let rhs = null.transpose() * (&grad + &h * &dw_feas);
            let Some(u) = linalg::solve_spd(&reduced, &rhs) else {
                return Polish::Stalled;
            };
            decrement = rhs.dot(&u);
            dw += null * u;
        }
        let value = d.log_value(w);
        if residual.amax() < 1e-15 && decrement.abs() < 1e-22 {
            return Polish::Converged;
        }
        let (alpha_max, limiting) = max_step(w, support, &dw);
        if alpha_max < 1.0 {
            if let Some(k) = limiting {
                if let Block::Constraint(i) = d.blocks()[k] {
                    let r = d.block_ranges()[i + 1].clone();
                    let lambda: f64 = w[r.clone()].iter().sum();
                    let change: f64 = support.iter().enumerate().filter(|(_, &l)| r.contains(&l)).map(|(p, _)| dw[p]).sum();
                    if !pinned.contains(&i) && change < 0.0 && lambda + change <= 0.0 {
                        return Polish::DropBlock(i);
                    }
                }
            }
        }
        let mut alpha = (0.99 * alpha_max).min(1.0);
        let mut trial = w.to_vec();
        let feasible_step = residual.amax() > 1e-13;
        let mut accepted = false;
        for _ in 0..60 {
            for (p, &k) in support.iter().enumerate() {
                trial[k] = w[k] + alpha * dw[p];
            }
            let tv = d.log_value(&trial);
            // While restoring feasibility any finite step is accepted.
            if tv.is_finite() && (feasible_step || tv >= value - 1e-15 * value.abs().max(1.0)) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if !accepted {
            return Polish::Stalled;
        }
        w.copy_from_slice(&trial);
        if support.iter().map(|&k| w[k]).sum::<f64>() > DIVERGENCE {
            return Polish::Diverged;
        }
        let new_value = d.log_value(w);
        if (new_value - last_value).abs() <= 1e-15 * new_value.abs().max(1.0) && !feasible_step {
            quiet += 1;
            if quiet >= 3 {
                return Polish::Converged;
            }
        } else {
            quiet = 0;
        }
        last_value = new_value;
    }
    Polish::Stalled
}

/// Least-squares multipliers `nu` with `grad_S = A_S^T nu`.
fn multipliers(d: &DualProgram, w: &[f64], support: &[usize], a_s: &DMatrix<f64>) -> Vec<f64> {
    let grad = restrict(&d.gradient(w), support);
    let dec = Decomposition::new(&a_s.transpose());
    to_vec(&dec.solve(&grad))
}

/// Projected-gradient norm over the weights above `boundary_eps`.
fn stationarity(d: &DualProgram, w: &[f64], cfg: &SolverSettings) -> f64 {
    let support: Vec<usize> = (0..w.len()).filter(|&k| w[k] > cfg.boundary_eps).collect();
    if support.is_empty() {
        return 0.0;
    }
    let a_full = d.equality_matrix();
    let k_count = d.term_count();
    let a_s = DMatrix::from_fn(d.variable_count() + 1, support.len(), |r, c| a_full[r * k_count + support[c]]);
    let dec = Decomposition::new(&a_s);
    let grad = restrict(&d.gradient(w), &support);
    let null = &dec.null_space;
    if null.ncols() == 0 {
        return 0.0;
    }
    (null * (null.transpose() * grad)).amax()
}

fn finish(d: &DualProgram, mut w: Vec<f64>, cfg: &SolverSettings, iterations: usize) -> DualOutcome {
    for v in &mut w {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    let feasibility_residual = d.equality_residual(&w).unwrap_or(f64::INFINITY);
    let stationarity = stationarity(d, &w, cfg);
    let status = if feasibility_residual <= cfg.feasibility_tol && stationarity <= cfg.stationarity_tol {
        DualStatus::Optimal
    } else {
        DualStatus::IterationLimit
    };
    let solution = DualSolution::from_weights(d, w).ok();
    DualOutcome { status, solution, feasibility_residual, stationarity, iterations }
}

/// Reconstructs the primal point from near-optimal dual weights.
///
/// Solves, in the least-squares sense over `y = ln x`, the relations
/// `c_0t x^{a_0t} = w_0t Z` for objective terms and `c_it x^{a_it} = w_it / lambda_i`
/// for terms of active constraints, skipping weights at or below `boundary_eps`.
pub fn recover_primal(s: &StandardGp, ds: &DualSolution, cfg: &SolverSettings) -> Result<Vec<f64>, Error> {
    let d = build_dual(s);
    let n = s.variable_count();
    if ds.weights.len() != d.term_count() {
        return Err(Error::ArityMismatch { expected: d.term_count(), found: ds.weights.len() });
    }
    let z = ds.objective_value;
    let mut rows: Vec<f64> = Vec::new();
    let mut rhs: Vec<f64> = Vec::new();
    let lambdas = d.lambdas(&ds.weights);
    for k in 0..d.term_count() {
        let wk = ds.weights[k];
        if wk <= cfg.boundary_eps {
            continue;
        }
        let target = match d.blocks()[k] {
            Block::Objective => (wk * z).ln(),
            Block::Constraint(i) => {
                if lambdas[i] <= cfg.boundary_eps {
                    continue;
                }
                (wk / lambdas[i]).ln()
            }
        };
        rows.extend((0..n).map(|j| d.exponent(k, j)));
        rhs.push(target - d.coefficients()[k].ln());
    }
    let e = DMatrix::from_row_slice(rhs.len(), n, &rows);
    let rhs = DVector::from_vec(rhs);
    let dec = Decomposition::new(&e);
    let y0 = dec.solve(&rhs);
    let residual = if rhs.is_empty() { 0.0 } else { (&e * &y0 - &rhs).amax() };
    if residual > RECOVERY_TOL {
        return Err(Error::Reconstruction { residual });
    }
    let mut y = to_vec(&y0);
    if dec.null_dim() > 0 && n > 0 {
        repair_inactive(s, &mut y, &dec.null_space);
    }
    Ok(y.iter().map(|v| v.exp()).collect())
}

/// Moves `y` inside the undetermined directions until the constraints hold.
/// Gauss-Newton on `sum_i max(0, ln f_i + margin)^2`, which is convex in `y`.
fn repair_inactive(s: &StandardGp, y: &mut [f64], null: &DMatrix<f64>) {
    const MARGIN: f64 = 1e-10;
    let n = y.len();
    for _ in 0..100 {
        let mut jac: Vec<f64> = Vec::new();
        let mut res: Vec<f64> = Vec::new();
        for c in s.constraints() {
            let value = c.log_eval(y);
            if value + MARGIN > 0.0 {
                // Gradient of ln f_i: softmax-weighted exponent rows.
                let logs: Vec<f64> = c.terms.iter().map(|t| t.log_value(y)).collect();
                let total = log_sum_exp(&logs);
                let mut g = vec![0.0; n];
                for (t, l) in c.terms.iter().zip(&logs) {
                    let weight = (l - total).exp();
                    for j in 0..n {
                        g[j] += weight * t.exponents[j];
                    }
                }
                jac.extend(g);
                res.push(value + 2.0 * MARGIN);
            }
        }
        if res.is_empty() {
            return;
        }
        let j_full = DMatrix::from_row_slice(res.len(), n, &jac) * null;
        let step = Decomposition::new(&j_full).solve(&DVector::from_vec(res));
        let dy = null * step;
        for (yj, dj) in y.iter_mut().zip(dy.iter()) {
            *yj -= dj;
        }
        if dy.amax() < 1e-15 {
            return;
        }
    }
}

/// Builds the dual, maximizes it, recovers the primal point and checks the gap.
pub fn solve(s: &StandardGp, cfg: &SolverSettings) -> SolveReport {
    let d = build_dual(s);
    let outcome = solve_dual(&d, cfg);
    let mut report = SolveReport {
        status: Status::IterationLimit,
        x: Vec::new(),
        dual: outcome.solution.clone(),
        objective_value: None,
        duality_gap: None,
        residuals: KktResiduals {
            feasibility: outcome.feasibility_residual,
            stationarity: outcome.stationarity,
            primal_violation: f64::NAN,
        },
        iterations: outcome.iterations,
    };
    match outcome.status {
        DualStatus::Optimal => {}
        // Dual infeasible: the primal infimum is not attained.
        DualStatus::Infeasible => {
            report.status = Status::Unbounded;
            report.residuals = KktResiduals::UNKNOWN;
            return report;
        }
        // Dual unbounded: the primal constraints are inconsistent.
        DualStatus::Unbounded => {
            report.status = Status::Infeasible;
            report.residuals = KktResiduals::UNKNOWN;
            return report;
        }
        DualStatus::IterationLimit => return report,
    }
    let Some(ds) = outcome.solution else {
        return report;
    };
    // A vanishing objective weight (or a zero weight inside an active constraint)
    // means the corresponding term must vanish at the optimum: not attainable.
    let ranges = d.block_ranges();
    let objective_zero = ds.weights[ranges[0].clone()].iter().any(|&v| v <= cfg.boundary_eps);
    let constraint_zero = ranges[1..].iter().zip(&ds.lambdas).any(|(r, &lambda)| {
        lambda > cfg.boundary_eps && ds.weights[r.clone()].iter().any(|&v| v == 0.0)
    });
    if objective_zero || constraint_zero {
        report.status = Status::Unbounded;
        return report;
    }
    let Ok(x) = recover_primal(s, &ds, cfg) else {
        return report;
    };
    let (Ok(primal), Ok(violation)) = (evaluate(s.objective(), &x), s.max_violation(&x)) else {
        return report;
    };
    let gap = (primal - ds.objective_value).abs() / primal;
    report.residuals.primal_violation = violation;
    report.objective_value = Some(primal);
    report.duality_gap = Some(gap);
    report.x = x;
    if gap <= 1e-6 && violation <= 1e-8 {
        report.status = Status::Optimal;
    }
    report
}

/// Best grid point found by [`brute_force_oracle`].
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub x: Vec<f64>,
    pub value: f64,
}

/// Exhaustive log-space grid search with two refinement passes.
///
/// Searches `y_j in [-half_width, half_width]` with `points` samples per axis, then
/// twice re-centers on the incumbent with a box two coarse spacings wide. Returns
/// `None` when no grid point satisfies every constraint to `1 + 1e-9`.
pub fn brute_force_oracle(s: &StandardGp, half_width: f64, points: usize) -> Option<OracleResult> {
    let n = s.variable_count();
    let points = points.max(1);
    let limit = (1.0 + 1e-9f64).ln();
    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut center = vec![0.0; n];
    let mut width = half_width;
    for _pass in 0..3 {
        let mut idx = vec![0usize; n];
        let mut y = vec![0.0; n];
        loop {
            for j in 0..n {
                y[j] = if points == 1 {
                    center[j]
                } else {
                    center[j] - width + 2.0 * width * idx[j] as f64 / (points - 1) as f64
                };
            }
            if s.constraints().iter().all(|c| c.log_eval(&y) <= limit) {
                let value = s.objective().log_eval(&y);
                if best.as_ref().is_none_or(|(_, v)| value < *v) {
                    best = Some((y.clone(), value));
                }
            }
            // Odometer increment.
            let mut j = 0;
            while j < n {
                idx[j] += 1;
                if idx[j] < points {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j == n {
                break;
            }
        }
        let (incumbent, _) = best.as_ref()?;
        center.clone_from(incumbent);
        if points > 1 {
            width = 2.0 * (2.0 * width / (points - 1) as f64);
        }
    }
    best.map(|(y, value)| OracleResult { x: y.iter().map(|v| v.exp()).collect(), value: value.exp() })
}
