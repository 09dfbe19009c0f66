//! Monomials, posynomials and posynomial programs.
//!
//! A problem is stored in the general form
//!
//! ```text
//! minimize    f_0(x)
//! subject to  f_i(x) <= b_i,   i = 1..m
//!             x_j > 0
//! ```
//!
//! and [`GpProblem::standardize`] divides every constraint by its bound so that all
//! right-hand sides become one.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

// Shadowed by inherent methods whenever std is linked into the build.
#[allow(unused_imports)]
use num_traits::Float;

use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub index: usize,
    pub name: String,
}

/// `coefficient * prod_j x_j^exponents[j]`, with one dense exponent per variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    pub coefficient: f64,
    pub exponents: Vec<f64>,
}

impl Monomial {
    pub fn new(coefficient: f64, exponents: Vec<f64>) -> Self {
        Self { coefficient, exponents }
    }

    /// Evaluates the monomial in log space: `ln c + sum_j a_j y_j` with `y = ln x`.
    pub(crate) fn log_value(&self, y: &[f64]) -> f64 {
        self.coefficient.ln() + dot(&self.exponents, y)
    }
}

/// A non-empty sum of monomials over the same variables.
#[derive(Debug, Clone, PartialEq)]
pub struct Posynomial {
    pub terms: Vec<Monomial>,
}

impl Posynomial {
    pub fn new(terms: Vec<Monomial>) -> Self {
        Self { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Returns `ln f(exp(y))` computed with a shifted log-sum-exp.
    pub(crate) fn log_eval(&self, y: &[f64]) -> f64 {
        let logs: Vec<f64> = self.terms.iter().map(|t| t.log_value(y)).collect();
        log_sum_exp(&logs)
    }

    fn scaled(&self, factor: f64) -> Posynomial {
        Posynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Monomial::new(t.coefficient * factor, t.exponents.clone()))
                .collect(),
        }
    }
}

/// One constraint `posynomial <= bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub posynomial: Posynomial,
    pub bound: f64,
}

impl Constraint {
    pub fn new(posynomial: Posynomial, bound: f64) -> Self {
        Self { posynomial, bound }
    }
}

/// A posynomial program in general form (bounds `b_i` arbitrary positive reals).
#[derive(Debug, Clone, PartialEq)]
pub struct GpProblem {
    pub variables: Vec<Variable>,
    pub objective: Posynomial,
    pub constraints: Vec<Constraint>,
}

impl GpProblem {
    pub fn new(variables: Vec<Variable>, objective: Posynomial, constraints: Vec<Constraint>) -> Self {
        Self { variables, objective, constraints }
    }

    /// Convenience constructor assigning dense indices to the given names.
    pub fn with_names(names: &[&str], objective: Posynomial, constraints: Vec<Constraint>) -> Self {
        let variables = names
            .iter()
            .enumerate()
            .map(|(index, name)| Variable { index, name: name.to_string() })
            .collect();
        Self::new(variables, objective, constraints)
    }

    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    /// Lists every broken invariant. An empty list means the problem is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.variables.len();
        if n == 0 {
            out.push(Violation::new(Location::Problem, ViolationKind::NoVariables));
        }
        for (pos, v) in self.variables.iter().enumerate() {
            if v.index != pos {
                out.push(Violation::new(
                    Location::Problem,
                    ViolationKind::VariableIndex { position: pos, index: v.index },
                ));
            }
            if self.variables[..pos].iter().any(|w| w.name == v.name) {
                out.push(Violation::new(
                    Location::Problem,
                    ViolationKind::DuplicateVariable(v.name.clone()),
                ));
            }
        }
        check_posynomial(&self.objective, n, Block::Objective, &mut out);
        for (i, c) in self.constraints.iter().enumerate() {
            check_posynomial(&c.posynomial, n, Block::Constraint(i), &mut out);
            if !(c.bound > 0.0 && c.bound.is_finite()) {
                out.push(Violation::new(
                    Location::Bound { constraint: i },
                    ViolationKind::NonPositiveBound(c.bound),
                ));
            }
        }
        out
    }

    /// Divides each constraint's coefficients by its bound, giving the standard form.
    pub fn standardize(&self) -> Result<StandardGp, Error> {
        for (i, c) in self.constraints.iter().enumerate() {
            if !(c.bound > 0.0) {
                return Err(Error::NonPositiveBound { constraint: i, bound: c.bound });
            }
        }
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidProblem(violations));
        }
        Ok(StandardGp {
            variables: self.variables.clone(),
            objective: self.objective.clone(),
            constraints: self
                .constraints
                .iter()
                .map(|c| c.posynomial.scaled(c.bound.recip()))
                .collect(),
        })
    }
}

/// A validated program whose constraints all read `f_i(x) <= 1`.
///
/// Only obtainable through [`GpProblem::standardize`] or [`StandardGp::new`], so every
/// coefficient is positive and all arities agree.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardGp {
    variables: Vec<Variable>,
    objective: Posynomial,
    constraints: Vec<Posynomial>,
}

impl StandardGp {
    /// Builds a standard-form program directly. Zero variables are allowed here
    /// (a constant objective), unlike [`GpProblem::validate`].
    pub fn new(
        variables: Vec<Variable>,
        objective: Posynomial,
        constraints: Vec<Posynomial>,
    ) -> Result<Self, Error> {
        let n = variables.len();
        let mut out = Vec::new();
        check_posynomial(&objective, n, Block::Objective, &mut out);
        for (i, c) in constraints.iter().enumerate() {
            check_posynomial(c, n, Block::Constraint(i), &mut out);
        }
        if !out.is_empty() {
            return Err(Error::InvalidProblem(out));
        }
        Ok(Self { variables, objective, constraints })
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    pub fn objective(&self) -> &Posynomial {
        &self.objective
    }

    pub fn constraints(&self) -> &[Posynomial] {
        &self.constraints
    }

    /// Total number of monomial terms across objective and constraints.
    pub fn term_count(&self) -> usize {
        self.objective.len() + self.constraints.iter().map(Posynomial::len).sum::<usize>()
    }

    /// Largest value of `f_i(x) - 1` over the constraints (`-inf` when unconstrained).
    pub fn max_violation(&self, x: &[f64]) -> Result<f64, Error> {
        let mut worst = f64::NEG_INFINITY;
        for c in &self.constraints {
            worst = worst.max(evaluate(c, x)? - 1.0);
        }
        Ok(worst)
    }
}

/// Evaluates `sum_t C_t prod_j x_j^{a_tj}` at a strictly positive point.
pub fn evaluate(p: &Posynomial, x: &[f64]) -> Result<f64, Error> {
    for (index, &value) in x.iter().enumerate() {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::NonPositiveVariable { index, value });
        }
    }
    let mut sum = 0.0;
    for term in &p.terms {
        if term.exponents.len() != x.len() {
            return Err(Error::ArityMismatch { expected: term.exponents.len(), found: x.len() });
        }
        let product = term
            .exponents
            .iter()
            .zip(x)
            .filter(|(a, _)| **a != 0.0)
            .fold(1.0, |acc, (a, xj)| acc * xj.powf(*a));
        sum += term.coefficient * product;
    }
    Ok(sum)
}

/// Where a violation was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Problem,
    ObjectiveTerm { term: usize },
    ConstraintTerm { constraint: usize, term: usize },
    Constraint { constraint: usize },
    Bound { constraint: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ViolationKind {
    NoVariables,
    VariableIndex { position: usize, index: usize },
    DuplicateVariable(String),
    EmptyPosynomial,
    NonPositiveCoefficient(f64),
    NonFiniteExponent { variable: usize },
    ExponentArity { expected: usize, found: usize },
    NonPositiveBound(f64),
}

/// One broken invariant, with the term or constraint it belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub location: Location,
    pub kind: ViolationKind,
}

impl Violation {
    fn new(location: Location, kind: ViolationKind) -> Self {
        Self { location, kind }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Problem => write!(f, "problem"),
            Location::ObjectiveTerm { term } => write!(f, "objective term {term}"),
            Location::ConstraintTerm { constraint, term } => {
                write!(f, "constraint {constraint} term {term}")
            }
            Location::Constraint { constraint } => write!(f, "constraint {constraint}"),
            Location::Bound { constraint } => write!(f, "constraint {constraint} bound"),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.location)?;
        match &self.kind {
            ViolationKind::NoVariables => write!(f, "no variables declared"),
            ViolationKind::VariableIndex { position, index } => {
                write!(f, "variable at position {position} has index {index}")
            }
            ViolationKind::DuplicateVariable(name) => write!(f, "duplicate variable `{name}`"),
            ViolationKind::EmptyPosynomial => write!(f, "posynomial has no terms"),
            ViolationKind::NonPositiveCoefficient(c) => {
                write!(f, "coefficient {c} is not strictly positive")
            }
            ViolationKind::NonFiniteExponent { variable } => {
                write!(f, "exponent of variable {variable} is not finite")
            }
            ViolationKind::ExponentArity { expected, found } => {
                write!(f, "{found} exponents for {expected} variables")
            }
            ViolationKind::NonPositiveBound(b) => write!(f, "bound {b} is not strictly positive"),
        }
    }
}

#[derive(Clone, Copy)]
enum Block {
    Objective,
    Constraint(usize),
}

fn check_posynomial(p: &Posynomial, n: usize, block: Block, out: &mut Vec<Violation>) {
    let term_loc = |term| match block {
        Block::Objective => Location::ObjectiveTerm { term },
        Block::Constraint(constraint) => Location::ConstraintTerm { constraint, term },
    };
    if p.terms.is_empty() {
        let loc = match block {
            Block::Objective => Location::Problem,
            Block::Constraint(constraint) => Location::Constraint { constraint },
        };
        out.push(Violation::new(loc, ViolationKind::EmptyPosynomial));
    }
    for (t, term) in p.terms.iter().enumerate() {
        // NaN fails the comparison as well.
        if !(term.coefficient > 0.0 && term.coefficient.is_finite()) {
            out.push(Violation::new(term_loc(t), ViolationKind::NonPositiveCoefficient(term.coefficient)));
        }
        if term.exponents.len() != n {
            out.push(Violation::new(
                term_loc(t),
                ViolationKind::ExponentArity { expected: n, found: term.exponents.len() },
            ));
        }
        for (j, a) in term.exponents.iter().enumerate() {
            if !a.is_finite() {
                out.push(Violation::new(term_loc(t), ViolationKind::NonFiniteExponent { variable: j }));
            }
        }
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + values.iter().map(|v| (v - max).exp()).sum::<f64>().ln()
}
