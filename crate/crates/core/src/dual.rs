//! The dual of a standard-form posynomial program.
//!
//! With one weight `w_k` per primal term, the dual maximizes
//!
//! ```text
//! v(w) = prod_k (c_k / w_k)^{w_k} * prod_{i>=1} lambda_i^{lambda_i},   lambda_i = sum_{k in block i} w_k
//! ```
//!
//! over the weights satisfying normality (objective weights sum to one),
//! orthogonality (`sum_k a_kj w_k = 0` for every variable, objective terms
//! included) and `w >= 0`. Factors with a zero base use the limit `t^t -> 1`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

// Shadowed by inherent methods whenever std is linked into the build.
#[allow(unused_imports)]
use num_traits::Float;

use crate::posynomial::StandardGp;
use crate::Error;

/// Owner of a dual weight: the objective or the constraint with the given
/// zero-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    Objective,
    Constraint(usize),
}

impl Block {
    /// Block number as written in weight names: 0 for the objective, `i + 1` for
    /// constraint `i`.
    pub fn number(self) -> usize {
        match self {
            Block::Objective => 0,
            Block::Constraint(i) => i + 1,
        }
    }
}

/// Linearly constrained dual of a [`StandardGp`].
#[derive(Debug, Clone, PartialEq)]
pub struct DualProgram {
    coefficients: Vec<f64>,
    blocks: Vec<Block>,
    ranges: Vec<Range<usize>>,
    exponents: Vec<f64>,
    variable_count: usize,
}

impl DualProgram {
    /// Number of dual weights (one per primal term).
    pub fn term_count(&self) -> usize {
        self.coefficients.len()
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    /// Flattened coefficients: objective terms first, then each constraint in order.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Owner of each flat weight.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Flat index range of each block; entry 0 is the objective.
    pub fn block_ranges(&self) -> &[Range<usize>] {
        &self.ranges
    }

    /// Exponent `a_kj` of variable `j` in flat term `k`.
    pub fn exponent(&self, k: usize, j: usize) -> f64 {
        self.exponents[k * self.variable_count + j]
    }

    /// Conventional name of weight `k`, e.g. `w01` or `w12` (block, then 1-based term).
    pub fn weight_name(&self, k: usize) -> alloc::string::String {
        let block = self.blocks[k];
        let term = k - self.ranges[block.number()].start + 1;
        alloc::format!("w{}{}", block.number(), term)
    }

    /// Rows of the equality system `A w = e1`: normality first, then one
    /// orthogonality row per variable. Row-major, `(n + 1) x K`.
    pub fn equality_matrix(&self) -> Vec<f64> {
        let k_count = self.term_count();
        let n = self.variable_count;
        let mut a = vec![0.0; (n + 1) * k_count];
        for k in self.ranges[0].clone() {
            a[k] = 1.0;
        }
        for k in 0..k_count {
            for j in 0..n {
                a[(j + 1) * k_count + k] = self.exponent(k, j);
            }
        }
        a
    }

    /// Right-hand side `e1` of the equality system.
    pub fn equality_rhs(&self) -> Vec<f64> {
        let mut b = vec![0.0; self.variable_count + 1];
        b[0] = 1.0;
        b
    }

    /// Infinity norm of `A w - e1`.
    pub fn equality_residual(&self, w: &[f64]) -> Result<f64, Error> {
        self.check_arity(w)?;
        let a = self.equality_matrix();
        let b = self.equality_rhs();
        let k_count = self.term_count();
        Ok(b
            .iter()
            .enumerate()
            .map(|(r, rhs)| {
                let row = &a[r * k_count..(r + 1) * k_count];
                (row.iter().zip(w).map(|(x, y)| x * y).sum::<f64>() - rhs).abs()
            })
            .fold(0.0, f64::max))
    }

    /// `lambda_i` for every constraint block (the objective block is excluded).
    pub fn lambdas(&self, w: &[f64]) -> Vec<f64> {
        self.ranges[1..].iter().map(|r| w[r.clone()].iter().sum()).collect()
    }

    fn check_arity(&self, w: &[f64]) -> Result<(), Error> {
        if w.len() != self.term_count() {
            return Err(Error::ArityMismatch { expected: self.term_count(), found: w.len() });
        }
        Ok(())
    }

    fn check_weights(&self, w: &[f64]) -> Result<(), Error> {
        self.check_arity(w)?;
        for (index, &value) in w.iter().enumerate() {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(Error::NegativeWeight { index, value });
            }
        }
        Ok(())
    }

    /// Log-dual value without argument checks. `w` must be nonnegative.
    pub(crate) fn log_value(&self, w: &[f64]) -> f64 {
        let mut value = 0.0;
        for (&c, &wk) in self.coefficients.iter().zip(w) {
            if wk > 0.0 {
                value += wk * (c.ln() - wk.ln());
            }
        }
        for r in &self.ranges[1..] {
            let lambda: f64 = w[r.clone()].iter().sum();
            if lambda > 0.0 {
                value += lambda * lambda.ln();
            }
        }
        value
    }

    pub(crate) fn gradient(&self, w: &[f64]) -> Vec<f64> {
        let mut grad = vec![0.0; w.len()];
        for (b, r) in self.ranges.iter().enumerate() {
            let lambda_part = if b == 0 {
                -1.0
            } else {
                let lambda: f64 = w[r.clone()].iter().sum();
                lambda.ln()
            };
            for k in r.clone() {
                grad[k] = if w[k] > 0.0 {
                    self.coefficients[k].ln() - w[k].ln() + lambda_part
                } else {
                    f64::INFINITY
                };
            }
        }
        grad
    }

    /// Dense Hessian of the log-dual on the given index subset (row-major).
    pub(crate) fn hessian(&self, w: &[f64], support: &[usize]) -> Vec<f64> {
        let s = support.len();
        let mut h = vec![0.0; s * s];
        let lambdas = self.lambdas(w);
        for (p, &k) in support.iter().enumerate() {
            h[p * s + p] -= 1.0 / w[k];
            if let Block::Constraint(i) = self.blocks[k] {
                for (q, &l) in support.iter().enumerate() {
                    if self.blocks[l] == Block::Constraint(i) {
                        h[p * s + q] += 1.0 / lambdas[i];
                    }
                }
            }
        }
        h
    }
}

/// Dual weights with their block sums and the dual objective value.
#[derive(Debug, Clone, PartialEq)]
pub struct DualSolution {
    pub weights: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub objective_value: f64,
}

impl DualSolution {
    pub fn from_weights(d: &DualProgram, weights: Vec<f64>) -> Result<Self, Error> {
        d.check_weights(&weights)?;
        let lambdas = d.lambdas(&weights);
        let objective_value = d.log_value(&weights).exp();
        Ok(Self { weights, lambdas, objective_value })
    }
}

/// Assembles the dual program, one weight per primal term in block order.
pub fn build_dual(s: &StandardGp) -> DualProgram {
    let n = s.variable_count();
    let mut coefficients = Vec::new();
    let mut blocks = Vec::new();
    let mut ranges = Vec::new();
    let mut exponents = Vec::new();
    let posynomials = core::iter::once((Block::Objective, s.objective()))
        .chain(s.constraints().iter().enumerate().map(|(i, p)| (Block::Constraint(i), p)));
    for (block, p) in posynomials {
        let start = coefficients.len();
        for term in &p.terms {
            coefficients.push(term.coefficient);
            blocks.push(block);
            exponents.extend_from_slice(&term.exponents);
        }
        ranges.push(start..coefficients.len());
    }
    DualProgram { coefficients, blocks, ranges, exponents, variable_count: n }
}

/// Total term count minus variable count minus one. Negative values mean the dual
/// equality system is over-determined.
pub fn degree_of_difficulty(s: &StandardGp) -> i64 {
    s.term_count() as i64 - s.variable_count() as i64 - 1
}

/// `prod_k (c_k / w_k)^{w_k} * prod_i lambda_i^{lambda_i}`, evaluated factor by factor.
pub fn dual_objective(d: &DualProgram, w: &[f64]) -> Result<f64, Error> {
    d.check_weights(w)?;
    let mut value = 1.0;
    for (&c, &wk) in d.coefficients.iter().zip(w) {
        if wk > 0.0 {
            value *= (c / wk).powf(wk);
        }
    }
    for lambda in d.lambdas(w) {
        if lambda > 0.0 {
            value *= lambda.powf(lambda);
        }
    }
    Ok(value)
}

/// Natural log of the dual objective and its gradient.
///
/// The gradient entry of a weight is `ln c_k - ln w_k - 1` in the objective block and
/// `ln c_k - ln w_k + ln lambda_i` in constraint block `i`; it is `+inf` where
/// `w_k = 0`.
pub fn log_dual_objective(d: &DualProgram, w: &[f64]) -> Result<(f64, Vec<f64>), Error> {
    d.check_weights(w)?;
    Ok((d.log_value(w), d.gradient(w)))
}
