//! Posynomial geometric programming solved through the dual program.
//!
//! The crate covers four layers:
//!
//! * [`posynomial`]: monomials, posynomials, problems with bounds `f_i(x) <= b_i`,
//!   and conversion to standard form (all bounds equal to one).
//! * [`dual`]: the linearly constrained dual program (normality, orthogonality,
//!   nonnegativity) and its objective.
//! * [`solver`]: maximization of the log-dual, primal recovery from the optimal
//!   weights and a brute-force grid oracle used for cross-checking.
//! * [`choice`]: coefficients and exponents picked from discrete candidate sets
//!   through binary selector polynomials, solved by enumerating every valid
//!   bit assignment.
//!
//! Everything is `no_std` with `alloc`; file formats and the command line live in
//! the companion `posygp` crate.
//!
//! ```
//! use posygp_core::{GpProblem, Monomial, Posynomial, SolverSettings, Status};
//!
//! // minimize x + 1/x
//! let objective = Posynomial::new(vec![
//!     Monomial::new(1.0, vec![1.0]),
//!     Monomial::new(1.0, vec![-1.0]),
//! ]);
//! let problem = GpProblem::with_names(&["x"], objective, vec![]);
//! let standard = problem.standardize().unwrap();
//! let report = posygp_core::solve(&standard, &SolverSettings::default());
//! assert_eq!(report.status, Status::Optimal);
//! assert!((report.objective_value.unwrap() - 2.0).abs() < 1e-9);
//! ```

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod choice;
pub mod dual;
mod error;
mod linalg;
mod lp;
pub mod posynomial;
pub mod solver;

pub use choice::{
    selector_polynomial, solve_choice, valid_assignments, AssignmentOutcome, BinaryAssignment,
    CandidateSet, ChoiceGp, ChoiceReport, ChoiceSettings, SetChoice, Slot, SlotRole, TemplateConstraint,
    TemplateTerm,
};
pub use dual::{
    build_dual, degree_of_difficulty, dual_objective, log_dual_objective, Block, DualProgram,
    DualSolution,
};
pub use error::Error;
pub use posynomial::{
    evaluate, Constraint, GpProblem, Monomial, Posynomial, StandardGp, Variable, Violation,
    ViolationKind, Location,
};
pub use solver::{
    brute_force_oracle, recover_primal, solve, solve_dual, DualOutcome, DualStatus, KktResiduals,
    OracleResult, SolveReport, SolverSettings, Status,
};
