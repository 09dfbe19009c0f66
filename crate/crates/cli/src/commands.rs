use std::time::Instant;

use indexmap::IndexMap;
use posygp_core::{
    brute_force_oracle, build_dual, degree_of_difficulty, solve, solve_choice, valid_assignments, BinaryAssignment,
    ChoiceGp, ChoiceSettings, DualProgram, SolveReport, SolverSettings, StandardGp, Status,
};

use crate::error::CliError;
use crate::file::Model;
use crate::report::{
    finite, AssignmentRow, ChosenValue, DualSystem, OracleCheck, ReportDocument, ReportStatus, Residuals,
};

/// Oracle searches are skipped above this many variables.
pub const ORACLE_MAX_VARIABLES: usize = 4;
const ORACLE_AGREEMENT: f64 = 1e-2;

#[derive(Debug, Clone, Default)]
pub struct Options {
    /// Overrides the dual stationarity tolerance.
    pub tolerance: Option<f64>,
    pub all_assignments: bool,
    pub oracle: bool,
    pub timing: bool,
}

impl Options {
    fn solver(&self) -> SolverSettings {
        let mut cfg = SolverSettings::default();
        if let Some(t) = self.tolerance {
            cfg.stationarity_tol = t;
        }
        cfg
    }
}

/// Enumerates every admitted assignment and reports the best one.
pub fn solve_model(model: &Model, opts: &Options) -> Result<ReportDocument, CliError> {
    let start = Instant::now();
    let cg = model.to_choice();
    let cfg = ChoiceSettings { solver: opts.solver(), record_outcomes: true, ..ChoiceSettings::default() };
    let r = solve_choice(&cg, &cfg)?;

    // The reported expansion: the winner, or a representative failure.
    let (choice, status) = if r.status == Status::Optimal {
        (r.chosen.iter().map(|c| c.assignment.clone()).collect::<Vec<_>>(), Status::Optimal)
    } else {
        let solved: Vec<_> = r.outcomes.iter().filter(|o| o.status.is_some()).collect();
        let pick = solved
            .iter()
            .find(|o| o.status == Some(Status::IterationLimit))
            .or_else(|| solved.iter().find(|o| o.status == Some(Status::Unbounded)))
            .or(solved.first());
        let status = if solved.iter().any(|o| o.status == Some(Status::IterationLimit)) {
            Status::IterationLimit
        } else if !solved.is_empty() && solved.iter().all(|o| o.status == Some(Status::Unbounded)) {
            Status::Unbounded
        } else {
            Status::Infeasible
        };
        (pick.map(|o| o.assignments.clone()).unwrap_or_default(), status)
    };

    let mut doc = empty_document(status.into(), r.combinations, r.rejected);
    let standard = if choice.len() == cg.sets.len() { cg.expand(&choice).and_then(|g| g.standardize()).ok() } else { None };
    if let Some(s) = &standard {
        let report = match (&r.report, status) {
            (Some(report), Status::Optimal) => report.clone(),
            _ => solve(s, &cfg.solver),
        };
        fill_from_report(&mut doc, s, &build_dual(s), &report);
        doc.status = status.into();
        if status == Status::Optimal {
            doc.chosen = chosen_values(&cg, &choice);
        }
        if opts.oracle {
            doc.oracle = Some(oracle_check(s, &report));
        }
    }
    if opts.all_assignments {
        doc.assignments = Some(
            r.outcomes
                .iter()
                .map(|o| AssignmentRow {
                    bits: cg.sets.iter().zip(&o.assignments).map(|(s, a)| (s.name.clone(), a.to_string())).collect(),
                    values: cg.sets.iter().zip(&o.values).map(|(s, v)| (s.name.clone(), *v)).collect(),
                    status: o.status.map(Into::into),
                    z: o.objective_value.and_then(finite),
                })
                .collect(),
        );
    }
    if opts.timing {
        doc.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(doc)
}

/// Builds and solves the dual of one fixed expansion.
///
/// Sets with a single candidate need no assignment; every other set must appear
/// in `assign` as `(name, bits)`.
pub fn dual_model(model: &Model, assign: &[(String, String)], opts: &Options) -> Result<ReportDocument, CliError> {
    let start = Instant::now();
    let cg = model.to_choice();
    for (i, (name, _)) in assign.iter().enumerate() {
        if cg.set_index(name).is_none() {
            return Err(CliError::Semantic(format!("--assign: candidate set `{name}` is not defined")));
        }
        if assign[..i].iter().any(|(n, _)| n == name) {
            return Err(CliError::Semantic(format!("--assign: set `{name}` assigned twice")));
        }
    }
    let mut choice = Vec::with_capacity(cg.sets.len());
    for set in &cg.sets {
        let a = match assign.iter().find(|(n, _)| *n == set.name) {
            Some((_, bits)) => {
                let a: BinaryAssignment = bits.parse().map_err(|_| invalid_bits(&set.name, bits))?;
                if !valid_assignments(set)?.contains(&a) {
                    return Err(invalid_bits(&set.name, bits));
                }
                a
            }
            None if set.candidates.len() == 1 => valid_assignments(set)?.remove(0),
            None => {
                return Err(CliError::Semantic(format!(
                    "candidate set `{}` has {} values; pass --assign {}=<bits>",
                    set.name,
                    set.candidates.len(),
                    set.name
                )))
            }
        };
        choice.push(a);
    }
    let s = cg.expand(&choice)?.standardize()?;
    let d = build_dual(&s);
    let report = solve(&s, &opts.solver());

    let mut doc = empty_document(report.status.into(), 1, 0);
    fill_from_report(&mut doc, &s, &d, &report);
    doc.chosen = chosen_values(&cg, &choice);
    doc.dual_value = report.dual.as_ref().and_then(|sol| finite(sol.objective_value));
    doc.dual_system = Some(dual_system(&s, &d));
    if opts.timing {
        doc.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(doc)
}

fn invalid_bits(set: &str, bits: &str) -> CliError {
    CliError::Semantic(format!("--assign: bit pattern `{bits}` is not valid for candidate set `{set}`"))
}

fn empty_document(status: ReportStatus, combinations: usize, rejected: usize) -> ReportDocument {
    ReportDocument {
        status,
        z: None,
        x: IndexMap::new(),
        w: IndexMap::new(),
        lambda: IndexMap::new(),
        gap: None,
        chosen: Vec::new(),
        combinations,
        rejected,
        residuals: Residuals { feasibility: None, stationarity: None, primal_violation: None },
        dual_value: None,
        dual_system: None,
        assignments: None,
        oracle: None,
        timing_ms: None,
    }
}

fn fill_from_report(doc: &mut ReportDocument, s: &StandardGp, d: &DualProgram, r: &SolveReport) {
    doc.z = r.objective_value.and_then(finite);
    doc.x = s.variables().iter().zip(&r.x).map(|(v, x)| (v.name.clone(), *x)).collect();
    if let Some(sol) = &r.dual {
        doc.w = sol.weights.iter().enumerate().map(|(k, w)| (d.weight_name(k), *w)).collect();
        doc.lambda = sol.lambdas.iter().enumerate().map(|(i, l)| (format!("lambda{}", i + 1), *l)).collect();
    }
    doc.gap = r.duality_gap.and_then(finite);
    doc.residuals = Residuals {
        feasibility: finite(r.residuals.feasibility),
        stationarity: finite(r.residuals.stationarity),
        primal_violation: finite(r.residuals.primal_violation),
    };
}

fn chosen_values(cg: &ChoiceGp, choice: &[BinaryAssignment]) -> Vec<ChosenValue> {
    let values = cg.resolve(choice).expect("choice was expanded");
    cg.sets
        .iter()
        .zip(choice)
        .zip(values)
        .map(|((s, a), value)| ChosenValue { set: s.name.clone(), bits: a.to_string(), value })
        .collect()
}

fn oracle_check(s: &StandardGp, report: &SolveReport) -> OracleCheck {
    let skipped = |note: &str| OracleCheck { z: None, x: Vec::new(), relative_difference: None, note: note.into() };
    let n = s.variable_count();
    if n > ORACLE_MAX_VARIABLES {
        return skipped("skipped, more than 4 variables");
    }
    let Some(z) = report.objective_value.filter(|_| report.status == Status::Optimal) else {
        return skipped("skipped, no optimal solution");
    };
    let half_width = report.x.iter().map(|x| x.ln().abs() + 2.0).fold(4.0, f64::max);
    let points = match n {
        0 | 1 => 401,
        2 => 121,
        3 => 41,
        _ => 21,
    };
    match brute_force_oracle(s, half_width, points) {
        Some(o) => {
            let rel = (o.value - z).abs() / z.abs();
            let note = if rel <= ORACLE_AGREEMENT { "agrees within 1e-2" } else { "differs by more than 1e-2" };
            OracleCheck { z: finite(o.value), x: o.x, relative_difference: finite(rel), note: note.into() }
        }
        None => skipped("no feasible grid point"),
    }
}

/// Normality and orthogonality rows in the form `-w01 + w03 + w11 = 0`.
pub fn dual_system(s: &StandardGp, d: &DualProgram) -> DualSystem {
    let objective_terms = s.objective().len();
    let normality = (0..objective_terms).map(|k| d.weight_name(k)).collect::<Vec<_>>().join(" + ") + " = 1";
    let orthogonality = s
        .variables()
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let row = linear_row((0..d.term_count()).map(|k| (d.exponent(k, j), d.weight_name(k))));
            (v.name.clone(), format!("{row} = 0"))
        })
        .collect();
    DualSystem { degree_of_difficulty: degree_of_difficulty(s), normality, orthogonality }
}

fn linear_row(terms: impl Iterator<Item = (f64, String)>) -> String {
    let mut out = String::new();
    for (c, name) in terms.filter(|(c, _)| *c != 0.0) {
        let magnitude = c.abs();
        let body = if magnitude == 1.0 { name } else { format!("{} * {name}", crate::report::sig7(magnitude)) };
        match (out.is_empty(), c < 0.0) {
            (true, false) => out.push_str(&body),
            (true, true) => out.push_str(&format!("-{body}")),
            (false, false) => out.push_str(&format!(" + {body}")),
            (false, true) => out.push_str(&format!(" - {body}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
