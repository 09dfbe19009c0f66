//! Discrete candidate sets encoded with binary selector polynomials.
//!
//! A coefficient or exponent slot may take one of `k` candidate values
//! (`1 <= k <= 8`). The choice is encoded by two bits when `k <= 4` and three bits
//! otherwise, through a multilinear polynomial in the bits that evaluates to exactly
//! one candidate for every admitted pattern. The `i`-th candidate binds to the
//! `i`-th term of the polynomial:
//!
//! | k | terms, in candidate order |
//! |---|---------------------------|
//! | 3 | `z1(1-z2)`, `(1-z1)z2`, `(1-z1)(1-z2)` |
//! | 4 | k=3 terms, `z1 z2` |
//! | 5 | the three one-hot products, `(1-z1)(1-z2)(1-z3)`, `z1 z2 z3` |
//! | 6 | the three one-hot products, `z1 z2(1-z3)`, `z1 z3(1-z2)`, `z2 z3(1-z1)` |
//! | 7 | k=6 terms, `(1-z1)(1-z2)(1-z3)` |
//! | 8 | k=7 terms, `z1 z2 z3` |
//!
//! Sets of one or two candidates use `a1` (pattern `00`) and `a1 z1 + a2 (1-z1)`
//! (patterns `10`, `00`).
//!
//! [`solve_choice`] enumerates every combination of admitted patterns, solves each
//! expanded program and keeps the best.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::posynomial::{Constraint, GpProblem, Monomial, Posynomial, Variable};
use crate::solver::{solve, SolveReport, SolverSettings, Status};
use crate::Error;

/// What kind of slot a candidate set fills.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SlotRole {
    ObjectiveCoefficient,
    ConstraintCoefficient,
    Exponent,
}

/// A named slot with `k` candidate values.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    pub name: String,
    pub role: SlotRole,
    pub candidates: Vec<f64>,
}

impl CandidateSet {
    pub fn new(name: impl Into<String>, role: SlotRole, candidates: Vec<f64>) -> Self {
        Self { name: name.into(), role, candidates }
    }

    /// Number of selector bits: 2 for up to four candidates, 3 otherwise.
    pub fn bit_count(&self) -> usize {
        if self.candidates.len() <= 4 {
            2
        } else {
            3
        }
    }

    fn check_count(&self) -> Result<(), Error> {
        let k = self.candidates.len();
        if !(1..=8).contains(&k) {
            return Err(Error::CandidateCount { set: self.name.clone(), count: k });
        }
        Ok(())
    }

    /// Checks the size range and value domain: finite everywhere, strictly positive
    /// for coefficient roles.
    pub fn validate(&self) -> Result<(), Error> {
        self.check_count()?;
        for (position, &value) in self.candidates.iter().enumerate() {
            let ok = match self.role {
                SlotRole::Exponent => value.is_finite(),
                SlotRole::ObjectiveCoefficient | SlotRole::ConstraintCoefficient => value > 0.0 && value.is_finite(),
            };
            if !ok {
                return Err(Error::InvalidCandidate { set: self.name.clone(), position, value });
            }
        }
        Ok(())
    }
}

/// One bit pattern `(z1, z2[, z3])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryAssignment {
    pub bits: Vec<bool>,
}

impl BinaryAssignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    fn from_pattern(pattern: &str) -> Self {
        Self { bits: pattern.bytes().map(|b| b == b'1').collect() }
    }

    fn z(&self, i: usize) -> f64 {
        if self.bits.get(i).copied().unwrap_or(false) {
            1.0
        } else {
            0.0
        }
    }
}

impl fmt::Display for BinaryAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryAssignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::InvalidAssignment { set: String::new(), bits: s.into() });
        }
        Ok(Self::from_pattern(s))
    }
}

/// Admitted patterns for a set, listed in candidate order.
pub fn valid_assignments(set: &CandidateSet) -> Result<Vec<BinaryAssignment>, Error> {
    set.check_count()?;
    let patterns: &[&str] = match set.candidates.len() {
        1 => &["00"],
        2 => &["10", "00"],
        3 => &["10", "01", "00"],
        4 => &["10", "01", "00", "11"],
        5 => &["100", "010", "001", "000", "111"],
        6 => &["100", "010", "001", "110", "101", "011"],
        7 => &["100", "010", "001", "110", "101", "011", "000"],
        _ => &["100", "010", "001", "110", "101", "011", "000", "111"],
    };
    Ok(patterns.iter().map(|p| BinaryAssignment::from_pattern(p)).collect())
}

/// Evaluates the selector polynomial of `set` at the pattern `a`.
pub fn selector_polynomial(set: &CandidateSet, a: &BinaryAssignment) -> Result<f64, Error> {
    let valid = valid_assignments(set)?;
    if !valid.contains(a) {
        return Err(Error::InvalidAssignment { set: set.name.clone(), bits: alloc::format!("{a}") });
    }
    let c = &set.candidates;
    let (z1, z2, z3) = (a.z(0), a.z(1), a.z(2));
    let (n1, n2, n3) = (1.0 - z1, 1.0 - z2, 1.0 - z3);
    let value = match c.len() {
        1 => c[0],
        2 => c[0] * z1 + c[1] * n1,
        3 | 4 => {
            let mut v = c[0] * z1 * n2 + c[1] * n1 * z2 + c[2] * n1 * n2;
            if c.len() == 4 {
                v += c[3] * z1 * z2;
            }
            v
        }
        5 => {
            c[0] * z1 * n2 * n3 + c[1] * n1 * z2 * n3 + c[2] * n1 * n2 * z3 + c[3] * n1 * n2 * n3 + c[4] * z1 * z2 * z3
        }
        k => {
            let mut v = c[0] * z1 * n2 * n3
                + c[1] * n1 * z2 * n3
                + c[2] * n1 * n2 * z3
                + c[3] * z1 * z2 * n3
                + c[4] * z1 * z3 * n2
                + c[5] * z2 * z3 * n1;
            if k >= 7 {
                v += c[6] * n1 * n2 * n3;
            }
            if k == 8 {
                v += c[7] * z1 * z2 * z3;
            }
            v
        }
    };
    Ok(value)
}

/// A coefficient or exponent: either a constant or a reference to a candidate set.
#[derive(Debug, Clone, PartialEq)]
pub enum Slot {
    Fixed(f64),
    Set(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TemplateTerm {
    pub coefficient: Slot,
    /// One slot per variable.
    pub exponents: Vec<Slot>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TemplateConstraint {
    pub terms: Vec<TemplateTerm>,
    pub bound: f64,
}

/// A posynomial program whose slots may reference candidate sets.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiceGp {
    pub variables: Vec<Variable>,
    pub objective: Vec<TemplateTerm>,
    pub constraints: Vec<TemplateConstraint>,
    pub sets: Vec<CandidateSet>,
}

impl ChoiceGp {
    /// Checks set references: every referenced set exists, is used in a slot
    /// matching its role and every declared set is used at least once.
    pub fn new(
        variables: Vec<Variable>,
        objective: Vec<TemplateTerm>,
        constraints: Vec<TemplateConstraint>,
        sets: Vec<CandidateSet>,
    ) -> Result<Self, Error> {
        let cg = Self { variables, objective, constraints, sets };
        cg.check()?;
        Ok(cg)
    }

    /// Wraps a fixed problem; every slot is a constant.
    pub fn from_problem(g: &GpProblem) -> Self {
        let term = |t: &Monomial| TemplateTerm {
            coefficient: Slot::Fixed(t.coefficient),
            exponents: t.exponents.iter().map(|&e| Slot::Fixed(e)).collect(),
        };
        Self {
            variables: g.variables.clone(),
            objective: g.objective.terms.iter().map(term).collect(),
            constraints: g
                .constraints
                .iter()
                .map(|c| TemplateConstraint { terms: c.posynomial.terms.iter().map(term).collect(), bound: c.bound })
                .collect(),
            sets: Vec::new(),
        }
    }

    pub fn set_index(&self, name: &str) -> Option<usize> {
        self.sets.iter().position(|s| s.name == name)
    }

    /// Number of assignment combinations (product of set sizes).
    pub fn combination_count(&self) -> u128 {
        self.sets.iter().map(|s| s.candidates.len() as u128).product()
    }

    fn check(&self) -> Result<(), Error> {
        for (i, s) in self.sets.iter().enumerate() {
            s.check_count()?;
            if self.sets[..i].iter().any(|o| o.name == s.name) {
                return Err(Error::DuplicateSet(s.name.clone()));
            }
        }
        let n = self.variables.len();
        let mut used = vec![false; self.sets.len()];
        let mut visit = |slot: &Slot, role: SlotRole| -> Result<(), Error> {
            if let Slot::Set(name) = slot {
                let idx = self.set_index(name).ok_or_else(|| Error::UnknownSet(name.clone()))?;
                if self.sets[idx].role != role {
                    return Err(Error::RoleMismatch { set: name.clone() });
                }
                used[idx] = true;
            }
            Ok(())
        };
        let blocks = core::iter::once((SlotRole::ObjectiveCoefficient, &self.objective))
            .chain(self.constraints.iter().map(|c| (SlotRole::ConstraintCoefficient, &c.terms)));
        for (role, terms) in blocks {
            for t in terms {
                if t.exponents.len() != n {
                    return Err(Error::InvalidTemplate(alloc::format!(
                        "term has {} exponents for {} variables",
                        t.exponents.len(),
                        n
                    )));
                }
                visit(&t.coefficient, role)?;
                for e in &t.exponents {
                    visit(e, SlotRole::Exponent)?;
                }
            }
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(Error::UnusedSet(self.sets[i].name.clone()));
        }
        Ok(())
    }

    /// Resolved value of every set under `choice` (one assignment per set, in order).
    pub fn resolve(&self, choice: &[BinaryAssignment]) -> Result<Vec<f64>, Error> {
        if choice.len() != self.sets.len() {
            return Err(Error::ArityMismatch { expected: self.sets.len(), found: choice.len() });
        }
        self.sets.iter().zip(choice).map(|(s, a)| selector_polynomial(s, a)).collect()
    }

    /// Replaces every slot by its selector value.
    pub fn expand(&self, choice: &[BinaryAssignment]) -> Result<GpProblem, Error> {
        self.check()?;
        let values = self.resolve(choice)?;
        self.expand_values(&values)
    }

    fn expand_values(&self, values: &[f64]) -> Result<GpProblem, Error> {
        let slot = |s: &Slot| -> f64 {
            match s {
                Slot::Fixed(v) => *v,
                Slot::Set(name) => values[self.set_index(name).expect("checked reference")],
            }
        };
        let term = |t: &TemplateTerm| -> Result<Monomial, Error> {
            let coefficient = slot(&t.coefficient);
            if !(coefficient > 0.0) {
                return Err(Error::NonPositiveCoefficient { value: coefficient });
            }
            Ok(Monomial::new(coefficient, t.exponents.iter().map(slot).collect()))
        };
        let objective = Posynomial::new(self.objective.iter().map(term).collect::<Result<_, _>>()?);
        let constraints = self
            .constraints
            .iter()
            .map(|c| Ok(Constraint::new(Posynomial::new(c.terms.iter().map(term).collect::<Result<_, _>>()?), c.bound)))
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(GpProblem::new(self.variables.clone(), objective, constraints))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChoiceSettings {
    pub solver: SolverSettings,
    /// Upper bound on the number of combinations enumerated.
    pub combination_cap: u64,
    /// Keep one [`AssignmentOutcome`] per combination in the report.
    pub record_outcomes: bool,
}

impl Default for ChoiceSettings {
    fn default() -> Self {
        Self { solver: SolverSettings::default(), combination_cap: 1_000_000, record_outcomes: false }
    }
}

/// The selected pattern and value of one candidate set.
#[derive(Debug, Clone, PartialEq)]
pub struct SetChoice {
    pub set: String,
    pub assignment: BinaryAssignment,
    pub value: f64,
}

/// Result of one enumerated combination.
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentOutcome {
    pub assignments: Vec<BinaryAssignment>,
    pub values: Vec<f64>,
    /// `None` when the expansion was rejected (non-positive coefficient or invalid program).
    pub status: Option<Status>,
    pub objective_value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChoiceReport {
    /// `Optimal` when at least one expansion solved to optimality, else `Infeasible`.
    pub status: Status,
    /// Report of the winning expansion.
    pub report: Option<SolveReport>,
    pub chosen: Vec<SetChoice>,
    pub combinations: usize,
    pub rejected: usize,
    /// Filled when [`ChoiceSettings::record_outcomes`] is set, in enumeration order.
    pub outcomes: Vec<AssignmentOutcome>,
}

/// Solves every admitted combination and returns the lowest optimal objective.
///
/// Ties within `1e-9` relative go to the lexicographically smallest concatenated
/// bit string.
pub fn solve_choice(cg: &ChoiceGp, cfg: &ChoiceSettings) -> Result<ChoiceReport, Error> {
    cg.check()?;
    let count = cg.combination_count();
    if count > cfg.combination_cap as u128 {
        return Err(Error::TooManyCombinations { count, cap: cfg.combination_cap });
    }
    let patterns = cg.sets.iter().map(valid_assignments).collect::<Result<Vec<_>, _>>()?;

    let mut idx = vec![0usize; patterns.len()];
    let mut best: Option<(String, f64, Vec<BinaryAssignment>, Vec<f64>, SolveReport)> = None;
    let mut rejected = 0;
    let mut combinations = 0;
    let mut outcomes = Vec::new();
    loop {
        combinations += 1;
        let choice: Vec<BinaryAssignment> = idx.iter().zip(&patterns).map(|(&i, p)| p[i].clone()).collect();
        let values = cg.resolve(&choice)?;
        let solved = cg.expand_values(&values).and_then(|g| g.standardize()).map(|s| solve(&s, &cfg.solver));
        let (status, objective_value) = match &solved {
            Ok(r) => (Some(r.status), r.objective_value),
            Err(_) => {
                rejected += 1;
                (None, None)
            }
        };
        if cfg.record_outcomes {
            outcomes.push(AssignmentOutcome { assignments: choice.clone(), values: values.clone(), status, objective_value });
        }
        if let Ok(report) = solved {
            if report.status == Status::Optimal {
                let z = report.objective_value.expect("optimal reports carry a value");
                let key: String = choice.iter().map(|a| alloc::format!("{a}")).collect();
                let replace = match &best {
                    None => true,
                    Some((best_key, best_z, ..)) => {
                        if (z - best_z).abs() <= 1e-9 * best_z.abs() {
                            key < *best_key
                        } else {
                            z < *best_z
                        }
                    }
                };
                if replace {
                    best = Some((key, z, choice, values, report));
                }
            }
        }
        // Advance the odometer, last set fastest.
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < patterns[pos].len() {
                break;
            }
            idx[pos] = 0;
            if pos == 0 {
                pos = usize::MAX;
                break;
            }
        }
        if pos == usize::MAX || idx.is_empty() {
            break;
        }
    }

    Ok(match best {
        Some((_, _, choice, values, report)) => ChoiceReport {
            status: Status::Optimal,
            chosen: cg
                .sets
                .iter()
                .zip(choice)
                .zip(values)
                .map(|((s, assignment), value)| SetChoice { set: s.name.clone(), assignment, value })
                .collect(),
            report: Some(report),
            combinations,
            rejected,
            outcomes,
        },
        None => ChoiceReport {
            status: Status::Infeasible,
            report: None,
            chosen: Vec::new(),
            combinations,
            rejected,
            outcomes,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn set(values: &[f64]) -> CandidateSet {
        CandidateSet::new("s", SlotRole::Exponent, values.to_vec())
    }

    fn bits(p: &str) -> BinaryAssignment {
        p.parse().unwrap()
    }

    #[test]
    fn three_candidate_selector() {
        // c = 5(1-z1)(1-z2) + (1-z1)z2 + 3 z1(1-z2), pattern (0,1)
        assert_eq!(selector_polynomial(&set(&[5.0, 1.0, 3.0]), &bits("01")).unwrap(), 1.0);
    }

    #[test]
    fn five_candidates_all_zero_pattern() {
        assert_eq!(selector_polynomial(&set(&[5.0, 1.0, 3.0, 4.0, 6.0]), &bits("000")).unwrap(), 4.0);
    }

    #[test]
    fn eight_candidates_all_ones_pattern() {
        let s = set(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        assert_eq!(selector_polynomial(&s, &bits("111")).unwrap(), 8.0);
    }

    #[test]
    fn excluded_patterns_are_rejected() {
        assert!(matches!(
            selector_polynomial(&set(&[1.0, 2.0, 3.0]), &bits("11")),
            Err(Error::InvalidAssignment { .. })
        ));
        assert!(selector_polynomial(&set(&[1.0, 2.0, 3.0, 4.0, 5.0]), &bits("110")).is_err());
        assert!(selector_polynomial(&set(&[1.0, 2.0, 3.0]), &bits("100")).is_err());
    }

    #[test]
    fn assignment_counts() {
        for k in 1..=8 {
            let s = set(&vec![1.0; k]);
            let v = valid_assignments(&s).unwrap();
            assert_eq!(v.len(), k);
            assert!(v.iter().all(|a| a.bits.len() == s.bit_count()));
        }
        assert!(matches!(valid_assignments(&set(&[])), Err(Error::CandidateCount { count: 0, .. })));
        assert!(valid_assignments(&set(&[1.0; 9])).is_err());
    }

    #[test]
    fn bit_strings_round_trip() {
        assert_eq!(bits("101").to_string(), "101");
        assert!("".parse::<BinaryAssignment>().is_err());
        assert!("12".parse::<BinaryAssignment>().is_err());
    }

    fn one_var_template(coefficient: Slot, exponent: Slot, sets: Vec<CandidateSet>) -> Result<ChoiceGp, Error> {
        let vars = vec![Variable { index: 0, name: "x".into() }];
        // coefficient * x^exponent + 1/x
        let objective = vec![
            TemplateTerm { coefficient, exponents: vec![exponent] },
            TemplateTerm { coefficient: Slot::Fixed(1.0), exponents: vec![Slot::Fixed(-1.0)] },
        ];
        ChoiceGp::new(vars, objective, vec![], sets)
    }

    #[test]
    fn template_reference_checks() {
        let c = CandidateSet::new("c", SlotRole::ObjectiveCoefficient, vec![1.0, 2.0, 3.0]);
        assert!(matches!(
            one_var_template(Slot::Set("d".into()), Slot::Fixed(1.0), vec![c.clone()]),
            Err(Error::UnknownSet(name)) if name == "d"
        ));
        assert!(matches!(
            one_var_template(Slot::Fixed(1.0), Slot::Fixed(1.0), vec![c.clone()]),
            Err(Error::UnusedSet(_))
        ));
        assert!(matches!(
            one_var_template(Slot::Fixed(1.0), Slot::Set("c".into()), vec![c.clone()]),
            Err(Error::RoleMismatch { .. })
        ));
        assert!(matches!(
            one_var_template(Slot::Set("c".into()), Slot::Fixed(1.0), vec![c.clone(), c]),
            Err(Error::DuplicateSet(_))
        ));
    }

    #[test]
    fn zero_coefficient_candidate_is_rejected_not_fatal() {
        let c = CandidateSet::new("c", SlotRole::ObjectiveCoefficient, vec![0.0, 2.0, 1.0]);
        let cg = one_var_template(Slot::Set("c".into()), Slot::Fixed(1.0), vec![c]).unwrap();
        assert!(matches!(cg.expand(&[bits("10")]), Err(Error::NonPositiveCoefficient { .. })));
        let report = solve_choice(&cg, &ChoiceSettings::default()).unwrap();
        assert_eq!(report.rejected, 1);
        assert_eq!(report.status, Status::Optimal);
        // c x + 1/x is minimized at 2 sqrt(c): c = 1 wins.
        assert_eq!(report.chosen[0].value, 1.0);
        assert!((report.report.unwrap().objective_value.unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn ties_go_to_smallest_bit_string() {
        let c = CandidateSet::new("c", SlotRole::ObjectiveCoefficient, vec![3.0, 1.0, 1.0]);
        let cg = one_var_template(Slot::Set("c".into()), Slot::Fixed(1.0), vec![c]).unwrap();
        let report = solve_choice(&cg, &ChoiceSettings::default()).unwrap();
        // Patterns 01 and 00 both give c = 1.
        assert_eq!(report.chosen[0].assignment, bits("00"));
    }

    #[test]
    fn combination_cap_is_enforced() {
        let c = CandidateSet::new("c", SlotRole::ObjectiveCoefficient, vec![3.0, 1.0, 1.0]);
        let cg = one_var_template(Slot::Set("c".into()), Slot::Fixed(1.0), vec![c]).unwrap();
        let cfg = ChoiceSettings { combination_cap: 2, ..ChoiceSettings::default() };
        assert!(matches!(solve_choice(&cg, &cfg), Err(Error::TooManyCombinations { count: 3, cap: 2 })));
    }

    #[test]
    fn no_optimal_expansion_is_infeasible() {
        // c x + 1/x with x^p where p only takes values leaving the infimum unattained.
        let vars = vec![Variable { index: 0, name: "x".into() }];
        let p = CandidateSet::new("p", SlotRole::Exponent, vec![1.0, 2.0]);
        let objective = vec![TemplateTerm { coefficient: Slot::Fixed(1.0), exponents: vec![Slot::Set("p".into())] }];
        let cg = ChoiceGp::new(vars, objective, vec![], vec![p]).unwrap();
        let report = solve_choice(&cg, &ChoiceSettings { record_outcomes: true, ..Default::default() }).unwrap();
        assert_eq!(report.status, Status::Infeasible);
        assert_eq!(report.outcomes.len(), 2);
        assert!(report.chosen.is_empty());
    }
}
