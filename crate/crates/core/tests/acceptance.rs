//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use posygp_core::{
    brute_force_oracle, build_dual, log_dual_objective, selector_polynomial, solve, solve_choice, solve_dual,
    valid_assignments, BinaryAssignment, CandidateSet, ChoiceReport, ChoiceSettings, DualStatus, SlotRole,
    SolverSettings, StandardGp, Status,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(failures: Vec<String>, ok: String) -> Self {
        if failures.is_empty() {
            Self { pass: true, detail: ok }
        } else {
            Self { pass: false, detail: failures.join("; ") }
        }
    }
}

fn chosen(r: &ChoiceReport) -> Vec<f64> {
    r.chosen.iter().map(|c| c.value).collect()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn criterion_1() -> Verdict {
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for case in 0..6 {
        let cg = example1(case);
        let start = Instant::now();
        let r = solve_choice(&cg, &ChoiceSettings::default()).unwrap();
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        let Some(report) = r.report.as_ref().filter(|_| r.status == Status::Optimal) else {
            failures.push(format!("case {}: status {:?}", case + 1, r.status));
            continue;
        };
        let z = report.objective_value.unwrap();
        let x = &report.x;
        if !close(z, EX1_Z, 1e-4) {
            failures.push(format!("case {}: Z = {z}", case + 1));
        }
        if chosen(&r) != [1.0, -1.0, 1.0] {
            failures.push(format!("case {}: chosen {:?}", case + 1, chosen(&r)));
        }
        if !(close(x[0], EX1_X[0], 1e-4) && close(x[1], EX1_X[1], 1e-4)) {
            failures.push(format!("case {}: x = {x:?}", case + 1));
        }
        if elapsed >= Duration::from_secs(1) {
            failures.push(format!("case {}: took {elapsed:?}", case + 1));
        }
    }
    Verdict::new(failures, format!("6 cases at Z = 11.01098, (c,p,a) = (1,-1,1); slowest {slowest:.2?}"))
}

fn criterion_2() -> Verdict {
    let s = example1_fixed().standardize().unwrap();
    let d = build_dual(&s);
    let out = solve_dual(&d, &SolverSettings::default());
    let mut failures = Vec::new();
    match (&out.status, &out.solution) {
        (DualStatus::Optimal, Some(sol)) => {
            if !close(sol.objective_value, EX1_Z, 1e-3) {
                failures.push(format!("dual value {}", sol.objective_value));
            }
            for (k, (w, want)) in sol.weights.iter().zip(EX1_W).enumerate() {
                if !close(*w, want, 1e-3) {
                    failures.push(format!("{} = {w}, expected {want}", d.weight_name(k)));
                }
            }
        }
        (status, _) => failures.push(format!("dual status {status:?}")),
    }
    Verdict::new(failures, "dual value and 5 weights within 1e-3".into())
}

fn criterion_3() -> Verdict {
    let mut failures = Vec::new();
    for case in 0..6 {
        let r = solve_choice(&example2(case), &ChoiceSettings::default()).unwrap();
        let Some(report) = r.report.as_ref().filter(|_| r.status == Status::Optimal) else {
            failures.push(format!("case {}: status {:?}", case + 1, r.status));
            continue;
        };
        let z = report.objective_value.unwrap();
        if !close(z, EX2_Z, 1e-3) {
            failures.push(format!("case {}: Z = {z}", case + 1));
        }
        if chosen(&r) != [1.0, -3.0, 1.0] {
            failures.push(format!("case {}: chosen {:?} with Z = {z:.7}", case + 1, chosen(&r)));
        }
        if report.x.iter().zip(EX2_X).any(|(x, want)| !close(*x, want, 1e-2)) {
            failures.push(format!("case {}: x = {:?}", case + 1, report.x));
        }
        let dual = report.dual.as_ref().unwrap();
        if !close(dual.objective_value, EX2_Z, 1e-3) {
            failures.push(format!("case {}: dual value {}", case + 1, dual.objective_value));
        }
        if !close(dual.weights[6], EX2_W[6], 1e-3) {
            failures.push(format!("case {}: w21 = {}", case + 1, dual.weights[6]));
        }
    }
    Verdict::new(failures, "6 cases at Z = 50.60611, (c,p,a) = (1,-3,1), w21 = 0.3333".into())
}

fn criterion_4() -> Verdict {
    let mut rng = StdRng::seed_from_u64(4);
    let cfg = SolverSettings::default();
    let mut failures = Vec::new();
    let (mut optimal, mut drawn) = (0, 0);
    let (mut worst_gap, mut worst_eq) = (0.0f64, 0.0f64);
    while optimal < 50 && drawn < 5000 {
        drawn += 1;
        let g = random_feasible_gp(&mut rng);
        let s = g.standardize().unwrap();
        let r = solve(&s, &cfg);
        if r.status != Status::Optimal {
            continue;
        }
        optimal += 1;
        let gap = r.duality_gap.unwrap();
        let eq = build_dual(&s).equality_residual(&r.dual.as_ref().unwrap().weights).unwrap();
        worst_gap = worst_gap.max(gap);
        worst_eq = worst_eq.max(eq);
        if gap > 1e-6 || eq > 1e-10 {
            failures.push(format!("problem {drawn}: gap {gap:e}, equality residual {eq:e}"));
        }
    }
    if optimal < 50 {
        failures.push(format!("only {optimal} of {drawn} draws reached Optimal"));
    }
    Verdict::new(
        failures,
        format!("50 optimal of {drawn} draws; max gap {worst_gap:.1e}, max equality residual {worst_eq:.1e}"),
    )
}

const ORACLE_HALF_WIDTH: f64 = 4.0;

fn oracle_points(n: usize) -> usize {
    match n {
        1 => 401,
        2 => 121,
        _ => 41,
    }
}

fn oracle_check(s: &StandardGp, label: &str, failures: &mut Vec<String>) -> f64 {
    let r = solve(s, &SolverSettings::default());
    let z = r.objective_value.unwrap();
    match brute_force_oracle(s, ORACLE_HALF_WIDTH, oracle_points(s.variable_count())) {
        Some(o) => {
            let rel = (o.value - z).abs() / z.abs();
            if rel > 1e-2 {
                failures.push(format!("{label}: solve {z}, oracle {}", o.value));
            }
            rel
        }
        None => {
            failures.push(format!("{label}: oracle found no feasible grid point"));
            f64::INFINITY
        }
    }
}

fn criterion_5() -> Verdict {
    let mut failures = Vec::new();
    let mut worst = oracle_check(&example1_fixed().standardize().unwrap(), "example 1", &mut failures);
    let mut rng = StdRng::seed_from_u64(5);
    let (mut checked, mut drawn) = (0, 0);
    while checked < 20 && drawn < 5000 {
        drawn += 1;
        let s = random_feasible_gp(&mut rng).standardize().unwrap();
        let r = solve(&s, &SolverSettings::default());
        // The oracle can only see optima inside its search box.
        if r.status != Status::Optimal || r.x.iter().any(|x| x.ln().abs() > ORACLE_HALF_WIDTH - 1.0) {
            continue;
        }
        checked += 1;
        worst = worst.max(oracle_check(&s, &format!("random problem {drawn}"), &mut failures));
    }
    if checked < 20 {
        failures.push(format!("only {checked} usable random problems"));
    }
    Verdict::new(failures, format!("example 1 and 20 random problems; max relative difference {worst:.1e}"))
}

/// Consistency constraints as printed for the cases that exclude patterns.
fn printed_constraints_hold(k: usize, z: &[f64]) -> bool {
    match k {
        3 => z[0] + z[1] <= 1.0,
        5 => {
            z[0] * z[1] * (1.0 - z[2]) == 0.0
                && z[1] * z[2] * (1.0 - z[0]) == 0.0
                && z[0] * z[2] * (1.0 - z[1]) == 0.0
        }
        6 => z[0] * z[1] * z[2] == 0.0 && (1.0 - z[0]) * (1.0 - z[1]) * (1.0 - z[2]) == 0.0,
        7 => z[0] * z[1] * z[2] == 0.0,
        _ => true,
    }
}

fn criterion_6() -> Verdict {
    let mut rng = StdRng::seed_from_u64(6);
    let mut failures = Vec::new();
    for k in 1..=8usize {
        for trial in 0..100 {
            let candidates: Vec<f64> = (0..k).map(|_| rng.gen_range(-10.0..10.0)).collect();
            let set = CandidateSet::new("s", SlotRole::Exponent, candidates.clone());
            let valid = valid_assignments(&set).unwrap();
            let mut hit = vec![0usize; k];
            for a in &valid {
                let v = selector_polynomial(&set, a).unwrap();
                match candidates.iter().position(|&c| c == v) {
                    Some(i) => hit[i] += 1,
                    None => failures.push(format!("k = {k}, trial {trial}: {a} gives {v}, not a candidate")),
                }
            }
            if valid.len() != k || hit.iter().any(|&h| h != 1) {
                failures.push(format!("k = {k}, trial {trial}: position hits {hit:?}"));
            }
        }
        if matches!(k, 3 | 5 | 6 | 7) {
            let set = CandidateSet::new("s", SlotRole::Exponent, vec![1.0; k]);
            let bits = set.bit_count();
            let valid = valid_assignments(&set).unwrap();
            for code in 0..1u32 << bits {
                let a = BinaryAssignment::new((0..bits).map(|i| code >> (bits - 1 - i) & 1 == 1).collect());
                let z: Vec<f64> = a.bits.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
                if valid.contains(&a) != printed_constraints_hold(k, &z) {
                    failures.push(format!("k = {k}: pattern {a} disagrees with the printed constraints"));
                }
            }
        }
    }
    Verdict::new(failures, "k = 1..8 bijective over 100 lists each; exclusions match printed constraints".into())
}

fn criterion_7() -> Verdict {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for (label, g, w) in [("example 1", example1_fixed(), &EX1_W[..]), ("example 2", example2_fixed(), &EX2_W[..])] {
        let d = build_dual(&g.standardize().unwrap());
        let r = d.equality_residual(w).unwrap();
        worst = worst.max(r);
        if r > 2e-6 {
            failures.push(format!("{label}: residual {r:e}"));
        }
    }
    Verdict::new(failures, format!("max residual {worst:.1e}"))
}

fn criterion_8() -> Verdict {
    let mut rng = StdRng::seed_from_u64(8);
    let duals = [build_dual(&example1_fixed().standardize().unwrap()), build_dual(&example2_fixed().standardize().unwrap())];
    let h = 1e-6;
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for point in 0..100 {
        let d = if point % 2 == 0 {
            duals[point / 2 % 2].clone()
        } else {
            build_dual(&random_feasible_gp(&mut rng).standardize().unwrap())
        };
        let w: Vec<f64> = (0..d.term_count()).map(|_| rng.gen_range(0.05..2.0)).collect();
        let (_, grad) = log_dual_objective(&d, &w).unwrap();
        for k in 0..w.len() {
            let (mut up, mut down) = (w.clone(), w.clone());
            up[k] += h;
            down[k] -= h;
            let fd = (log_dual_objective(&d, &up).unwrap().0 - log_dual_objective(&d, &down).unwrap().0) / (2.0 * h);
            let err = (fd - grad[k]).abs();
            worst = worst.max(err);
            if err > 1e-5 {
                failures.push(format!("point {point}, coordinate {k}: analytic {}, numeric {fd}", grad[k]));
            }
        }
    }
    Verdict::new(failures, format!("100 points; max abs difference {worst:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("example 1 reproduction", criterion_1),
        ("example 1 dual reproduction", criterion_2),
        ("example 2 reproduction", criterion_3),
        ("duality gap on random GPs", criterion_4),
        ("oracle equivalence", criterion_5),
        ("selector bijection", criterion_6),
        ("orthogonality fidelity", criterion_7),
        ("log-dual gradient check", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        let mark = if v.pass { "PASS" } else { "FAIL" };
        println!("criterion {} [{mark}] {name}: {}", i + 1, v.detail);
        failed += usize::from(!v.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
