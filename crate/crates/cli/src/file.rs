//! Versioned JSON problem files.
//!
//! A file lists variable names, objective terms, constraints and candidate sets.
//! Every coefficient or exponent is either a number or a reference `{"set": name}`
//! to a candidate set. Exponents are keyed by variable name; omitted variables
//! have exponent zero. See `docs/problem-format.md` for the full layout.

use std::fs;
use std::path::Path;

use indexmap::IndexMap;
use posygp_core::{
    CandidateSet, ChoiceGp, GpProblem, Slot, SlotRole, TemplateConstraint,
    TemplateTerm, Variable,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub version: u32,
    pub variables: Vec<String>,
    pub objective: Vec<TermSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<ConstraintSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub candidate_sets: Vec<SetSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coefficient: SlotSpec,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub exponents: IndexMap<String, SlotSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintSpec {
    pub terms: Vec<TermSpec>,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SlotSpec {
    Value(f64),
    Set(SetRef),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetRef {
    pub set: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    ObjectiveCoefficient,
    ConstraintCoefficient,
    Exponent,
}

impl From<Role> for SlotRole {
    fn from(r: Role) -> Self {
        match r {
            Role::ObjectiveCoefficient => SlotRole::ObjectiveCoefficient,
            Role::ConstraintCoefficient => SlotRole::ConstraintCoefficient,
            Role::Exponent => SlotRole::Exponent,
        }
    }
}

impl From<SlotRole> for Role {
    fn from(r: SlotRole) -> Self {
        match r {
            SlotRole::ObjectiveCoefficient => Role::ObjectiveCoefficient,
            SlotRole::ConstraintCoefficient => Role::ConstraintCoefficient,
            SlotRole::Exponent => Role::Exponent,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetSpec {
    pub name: String,
    pub role: Role,
    pub values: Vec<f64>,
}

/// A parsed model: a plain GP when the file declares no candidate sets.
#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Fixed(GpProblem),
    Choice(ChoiceGp),
}

impl Model {
    pub fn variables(&self) -> &[Variable] {
        match self {
            Model::Fixed(g) => &g.variables,
            Model::Choice(cg) => &cg.variables,
        }
    }

    /// The model as a choice problem; a fixed problem has no sets.
    pub fn to_choice(&self) -> ChoiceGp {
        match self {
            Model::Fixed(g) => ChoiceGp::from_problem(g),
            Model::Choice(cg) => cg.clone(),
        }
    }
}

/// Reads and validates a problem file.
pub fn parse_problem(path: &Path) -> Result<Model, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    parse_str(&text)?.to_model()
}

/// Parses problem-file text without semantic checks.
pub fn parse_str(text: &str) -> Result<ProblemFile, CliError> {
    if text.trim().is_empty() {
        return Err(CliError::Syntax("file is empty".into()));
    }
    let mut de = serde_json::Deserializer::from_str(text);
    let file: ProblemFile = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            CliError::Syntax(e.into_inner().to_string())
        } else {
            CliError::Syntax(format!("{path}: {}", e.into_inner()))
        }
    })?;
    de.end().map_err(|e| CliError::Syntax(e.to_string()))?;
    Ok(file)
}

fn semantic(msg: impl Into<String>) -> CliError {
    CliError::Semantic(msg.into())
}

impl ProblemFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files always serialize")
    }

    /// Converts to a validated model.
    pub fn to_model(&self) -> Result<Model, CliError> {
        if self.version != FORMAT_VERSION {
            return Err(semantic(format!("version: unsupported version {}, expected {FORMAT_VERSION}", self.version)));
        }
        for (j, name) in self.variables.iter().enumerate() {
            if name.is_empty() {
                return Err(semantic(format!("variables[{j}]: empty name")));
            }
            if self.variables[..j].contains(name) {
                return Err(semantic(format!("variables[{j}]: duplicate variable `{name}`")));
            }
        }
        if self.objective.is_empty() {
            return Err(semantic("objective: needs at least one term"));
        }
        let mut sets = Vec::with_capacity(self.candidate_sets.len());
        for (i, s) in self.candidate_sets.iter().enumerate() {
            let set = CandidateSet::new(s.name.clone(), s.role.into(), s.values.clone());
            set.validate().map_err(|e| semantic(format!("candidate_sets[{i}]: {e}")))?;
            sets.push(set);
        }

        let objective = self
            .objective
            .iter()
            .enumerate()
            .map(|(t, term)| self.term(term, &format!("objective[{t}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let constraints = self
            .constraints
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if !(c.bound > 0.0 && c.bound.is_finite()) {
                    return Err(semantic(format!("constraints[{i}].bound: must be positive, got {}", c.bound)));
                }
                if c.terms.is_empty() {
                    return Err(semantic(format!("constraints[{i}].terms: needs at least one term")));
                }
                let terms = c
                    .terms
                    .iter()
                    .enumerate()
                    .map(|(t, term)| self.term(term, &format!("constraints[{i}].terms[{t}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(TemplateConstraint { terms, bound: c.bound })
            })
            .collect::<Result<Vec<_>, _>>()?;

        let variables: Vec<Variable> =
            self.variables.iter().enumerate().map(|(index, name)| Variable { index, name: name.clone() }).collect();
        let cg = ChoiceGp::new(variables, objective, constraints, sets)?;
        if !cg.sets.is_empty() {
            return Ok(Model::Choice(cg));
        }
        let g = cg.expand(&[])?;
        let violations = g.validate();
        if let Some(v) = violations.first() {
            return Err(semantic(v.to_string()));
        }
        Ok(Model::Fixed(g))
    }

    fn term(&self, spec: &TermSpec, at: &str) -> Result<TemplateTerm, CliError> {
        let slot = |s: &SlotSpec, field: &str| -> Result<Slot, CliError> {
            match s {
                SlotSpec::Value(v) if !v.is_finite() => Err(semantic(format!("{at}.{field}: not finite"))),
                SlotSpec::Value(v) => Ok(Slot::Fixed(*v)),
                SlotSpec::Set(r) => {
                    if self.candidate_sets.iter().any(|s| s.name == r.set) {
                        Ok(Slot::Set(r.set.clone()))
                    } else {
                        Err(semantic(format!("{at}.{field}: candidate set `{}` is not defined", r.set)))
                    }
                }
            }
        };
        let coefficient = slot(&spec.coefficient, "coefficient")?;
        if let Slot::Fixed(c) = coefficient {
            if c <= 0.0 {
                return Err(semantic(format!("{at}.coefficient: must be positive, got {c}")));
            }
        }
        let mut exponents = vec![Slot::Fixed(0.0); self.variables.len()];
        for (name, e) in &spec.exponents {
            let j = self
                .variables
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| semantic(format!("{at}.exponents: unknown variable `{name}`")))?;
            exponents[j] = slot(e, &format!("exponents.{name}"))?;
        }
        Ok(TemplateTerm { coefficient, exponents })
    }

    /// Writes a model back out; zero exponents are omitted.
    pub fn from_model(model: &Model) -> Self {
        let cg = model.to_choice();
        let names: Vec<String> = cg.variables.iter().map(|v| v.name.clone()).collect();
        let slot = |s: &Slot| match s {
            Slot::Fixed(v) => SlotSpec::Value(*v),
            Slot::Set(name) => SlotSpec::Set(SetRef { set: name.clone() }),
        };
        let term = |t: &TemplateTerm| TermSpec {
            coefficient: slot(&t.coefficient),
            exponents: names
                .iter()
                .zip(&t.exponents)
                .filter(|(_, e)| **e != Slot::Fixed(0.0))
                .map(|(n, e)| (n.clone(), slot(e)))
                .collect(),
        };
        Self {
            version: FORMAT_VERSION,
            variables: names.clone(),
            objective: cg.objective.iter().map(term).collect(),
            constraints: cg
                .constraints
                .iter()
                .map(|c| ConstraintSpec { terms: c.terms.iter().map(term).collect(), bound: c.bound })
                .collect(),
            candidate_sets: cg
                .sets
                .iter()
                .map(|s| SetSpec { name: s.name.clone(), role: s.role.into(), values: s.candidates.clone() })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"{
        "version": 1,
        "variables": ["x"],
        "objective": [
            {"coefficient": {"set": "c"}, "exponents": {"x": 1}},
            {"coefficient": 1, "exponents": {"x": -1}}
        ],
        "candidate_sets": [{"name": "c", "role": "objective_coefficient", "values": [1, 4, 9]}]
    }"#;

    #[test]
    fn parses_choice_model() {
        let Model::Choice(cg) = parse_str(EXAMPLE).unwrap().to_model().unwrap() else { panic!() };
        assert_eq!(cg.sets[0].candidates, vec![1.0, 4.0, 9.0]);
        assert_eq!(cg.objective[1].exponents, vec![Slot::Fixed(-1.0)]);
    }

    #[test]
    fn round_trips_through_json() {
        let model = parse_str(EXAMPLE).unwrap().to_model().unwrap();
        let text = ProblemFile::from_model(&model).to_json();
        assert_eq!(parse_str(&text).unwrap().to_model().unwrap(), model);
    }

    #[test]
    fn unknown_field_is_a_syntax_error_with_path() {
        let text = EXAMPLE.replace("\"role\"", "\"kind\": 1, \"role\"");
        let err = parse_str(&text).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("candidate_sets[0]"), "{err}");
    }

    #[test]
    fn negative_coefficient_candidate_is_semantic() {
        let err = parse_str(&EXAMPLE.replace("[1, 4, 9]", "[1, -4, 9]")).unwrap().to_model().unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn unknown_variable_is_semantic() {
        let err = parse_str(&EXAMPLE.replace("{\"x\": -1}", "{\"y\": -1}")).unwrap().to_model().unwrap_err();
        assert!(err.to_string().contains("unknown variable `y`"), "{err}");
    }

    #[test]
    fn plain_problem_without_sets() {
        let text = r#"{"version": 1, "variables": ["x"],
            "objective": [{"coefficient": 2, "exponents": {"x": 1}}],
            "constraints": [{"terms": [{"coefficient": 1, "exponents": {"x": -1}}], "bound": 1}]}"#;
        let model = parse_str(text).unwrap().to_model().unwrap();
        assert!(matches!(model, Model::Fixed(ref g) if g.constraints.len() == 1));
        let back = parse_str(&ProblemFile::from_model(&model).to_json()).unwrap().to_model().unwrap();
        assert_eq!(back, model);
    }
}
