#![allow(dead_code)]

use posygp_core::{
    CandidateSet, ChoiceGp, Constraint, GpProblem, Monomial, Posynomial, Slot, SlotRole,
    TemplateConstraint, TemplateTerm, Variable,
};
use rand::rngs::StdRng;
use rand::Rng;

pub const EX1_Z: f64 = 11.01098;
pub const EX1_X: [f64; 2] = [0.2069792, 0.7930208];
pub const EX1_W: [f64; 5] = [0.4387805, 0.5463127, 0.01490681, 0.4238737, 1.624031];

pub const EX2_Z: f64 = 50.60611;
pub const EX2_X: [f64; 4] = [16.86890, 1.405717, 4.217114, 1.405791];
pub const EX2_W: [f64; 7] = [0.3333372, 0.2777762, 0.3333285, 0.05555811, 2.903339e-6, 0.02777615, 0.3333285];

/// Candidate lists `(c, p, a)` for the six case variants of the first example.
pub const EX1_CASES: [(&[f64], &[f64], &[f64]); 6] = [
    (&[3., 1., 5.], &[-2., -3., -1.], &[2., 1., 3.]),
    (&[3., 1., 5., 4.], &[-2., -3., -1., -4.], &[2., 1., 3., 4.]),
    (&[5., 1., 3., 4., 6.], &[-1., -3., -2., -1., -4.], &[3., 1., 2., 5., 6.]),
    (&[5., 1., 3., 4., 6., 2.], &[-1., -3., -2., -1., -4., -5.], &[3., 1., 2., 5., 6., 4.]),
    (&[5., 1., 3., 4., 6., 2., 1.], &[-1., -3., -2., -1., -4., -5., -1.], &[3., 1., 2., 5., 6., 4., 4.]),
    (
        &[5., 1., 3., 4., 6., 2., 1., 2.],
        &[-1., -3., -2., -1., -4., -5., -1., -2.],
        &[3., 1., 2., 5., 6., 4., 4., 2.],
    ),
];

pub const EX2_CASES: [(&[f64], &[f64], &[f64]); 6] = [
    (&[3., 1., 5.], &[-2., -3., -1.], &[2., 1., 3.]),
    (&[3., 1., 5., 4.], &[-2., -3., -1., -4.], &[2., 1., 3., 4.]),
    (&[5., 1., 3., 3., 5.], &[1., -3., -2., -3., -2.], &[1., 1., 2., 4., 3.]),
    (&[5., 1., 3., 3., 1., 1.], &[1., -3., -2., -2., -3., -1.], &[1., 1., 2., 4., 3., 4.]),
    (&[5., 1., 3., 3., 5., 2., 1.], &[-1., -3., -2., -3., -2., -1., -1.], &[1., 1., 2., 4., 3., 4., 4.]),
    (
        &[5., 1., 3., 3., 5., 2., 1., 1.],
        &[-1., -3., -2., -3., -2., -1., -1., -2.],
        &[1., 1., 2., 4., 3., 4., 4., 2.],
    ),
];

fn vars(names: &[&str]) -> Vec<Variable> {
    names.iter().enumerate().map(|(index, n)| Variable { index, name: (*n).into() }).collect()
}

fn fixed(c: f64, e: &[f64]) -> TemplateTerm {
    TemplateTerm { coefficient: Slot::Fixed(c), exponents: e.iter().map(|&v| Slot::Fixed(v)).collect() }
}

fn set(name: &str) -> Slot {
    Slot::Set(name.into())
}

fn sets(case: (&[f64], &[f64], &[f64]), constraint_role: SlotRole) -> Vec<CandidateSet> {
    vec![
        CandidateSet::new("c", SlotRole::ObjectiveCoefficient, case.0.to_vec()),
        CandidateSet::new("p", SlotRole::Exponent, case.1.to_vec()),
        CandidateSet::new("a", constraint_role, case.2.to_vec()),
    ]
}

/// min c x1^p + 3 x2^-3 + x1 x2  s.t.  a x1 + x2 <= 1
pub fn example1(case: usize) -> ChoiceGp {
    let objective = vec![
        TemplateTerm { coefficient: set("c"), exponents: vec![set("p"), Slot::Fixed(0.0)] },
        fixed(3.0, &[0.0, -3.0]),
        fixed(1.0, &[1.0, 1.0]),
    ];
    let constraint = TemplateConstraint {
        terms: vec![
            TemplateTerm { coefficient: set("a"), exponents: vec![Slot::Fixed(1.0), Slot::Fixed(0.0)] },
            fixed(1.0, &[0.0, 1.0]),
        ],
        bound: 1.0,
    };
    ChoiceGp::new(vars(&["x1", "x2"]), objective, vec![constraint], sets(EX1_CASES[case], SlotRole::ConstraintCoefficient))
        .unwrap()
}

/// min c x1 + 10 x2 + 4 x3 + 2 x4
/// s.t. a x1^p x4^-2 + x2^2 x4^-2 <= 1,  100 x1^-1 x2^-1 x3^-1 <= 1
pub fn example2(case: usize) -> ChoiceGp {
    let objective = vec![
        TemplateTerm {
            coefficient: set("c"),
            exponents: vec![Slot::Fixed(1.0), Slot::Fixed(0.0), Slot::Fixed(0.0), Slot::Fixed(0.0)],
        },
        fixed(10.0, &[0.0, 1.0, 0.0, 0.0]),
        fixed(4.0, &[0.0, 0.0, 1.0, 0.0]),
        fixed(2.0, &[0.0, 0.0, 0.0, 1.0]),
    ];
    let first = TemplateConstraint {
        terms: vec![
            TemplateTerm {
                coefficient: set("a"),
                exponents: vec![set("p"), Slot::Fixed(0.0), Slot::Fixed(0.0), Slot::Fixed(-2.0)],
            },
            fixed(1.0, &[0.0, 2.0, 0.0, -2.0]),
        ],
        bound: 1.0,
    };
    let second = TemplateConstraint { terms: vec![fixed(100.0, &[-1.0, -1.0, -1.0, 0.0])], bound: 1.0 };
    ChoiceGp::new(
        vars(&["x1", "x2", "x3", "x4"]),
        objective,
        vec![first, second],
        sets(EX2_CASES[case], SlotRole::ConstraintCoefficient),
    )
    .unwrap()
}

/// Example 1 at its optimal choice (c, p, a) = (1, -1, 1).
pub fn example1_fixed() -> GpProblem {
    GpProblem::with_names(
        &["x1", "x2"],
        Posynomial::new(vec![
            Monomial::new(1.0, vec![-1.0, 0.0]),
            Monomial::new(3.0, vec![0.0, -3.0]),
            Monomial::new(1.0, vec![1.0, 1.0]),
        ]),
        vec![Constraint::new(
            Posynomial::new(vec![Monomial::new(1.0, vec![1.0, 0.0]), Monomial::new(1.0, vec![0.0, 1.0])]),
            1.0,
        )],
    )
}

/// Example 2 at its optimal choice (c, p, a) = (1, -3, 1).
pub fn example2_fixed() -> GpProblem {
    GpProblem::with_names(
        &["x1", "x2", "x3", "x4"],
        Posynomial::new(vec![
            Monomial::new(1.0, vec![1.0, 0.0, 0.0, 0.0]),
            Monomial::new(10.0, vec![0.0, 1.0, 0.0, 0.0]),
            Monomial::new(4.0, vec![0.0, 0.0, 1.0, 0.0]),
            Monomial::new(2.0, vec![0.0, 0.0, 0.0, 1.0]),
        ]),
        vec![
            Constraint::new(
                Posynomial::new(vec![
                    Monomial::new(1.0, vec![-3.0, 0.0, 0.0, -2.0]),
                    Monomial::new(1.0, vec![0.0, 2.0, 0.0, -2.0]),
                ]),
                1.0,
            ),
            Constraint::new(Posynomial::new(vec![Monomial::new(100.0, vec![-1.0, -1.0, -1.0, 0.0])]), 1.0),
        ],
    )
}

fn random_posynomial(rng: &mut StdRng, n: usize, terms: usize) -> Posynomial {
    Posynomial::new(
        (0..terms)
            .map(|_| {
                let c = rng.gen_range(0.1..=10.0);
                let e = (0..n).map(|_| rng.gen_range(-3.0..=3.0)).collect();
                Monomial::new(c, e)
            })
            .collect(),
    )
}

/// Random GP with at most six terms in total, feasible by construction: each bound
/// is set above the constraint's value at a random point.
pub fn random_feasible_gp(rng: &mut StdRng) -> GpProblem {
    let n = rng.gen_range(1..=3);
    let total = rng.gen_range(n + 1..=6);
    let objective_terms = rng.gen_range(1..=total.min(3));
    let objective = random_posynomial(rng, n, objective_terms);
    let mut remaining = total - objective_terms;
    let x0: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0f64..=1.0).exp()).collect();
    let mut constraints = Vec::new();
    while remaining > 0 {
        let t = rng.gen_range(1..=remaining);
        remaining -= t;
        let p = random_posynomial(rng, n, t);
        let bound = posygp_core::evaluate(&p, &x0).unwrap() * rng.gen_range(1.0..=2.0);
        constraints.push(Constraint::new(p, bound));
    }
    let names: Vec<String> = (1..=n).map(|j| format!("x{j}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    GpProblem::with_names(&refs, objective, constraints)
}
