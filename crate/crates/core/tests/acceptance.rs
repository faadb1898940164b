//! One test per acceptance criterion. Each prints a `criterion N: PASS|FAIL` line
//! with its timing against the budget.

use std::sync::Arc;
use std::time::{Duration, Instant};

use cotor_core::catalog::{
    check_psi, check_pullback_square, check_restriction_square, cotor_of, degeneration_check, model, pgl_counting_formula,
    rep_table, Group, HodgeTable, ModelId,
};
use cotor_core::cotor::{
    build_twisted_complex, cotor_cobar, cotor_twisted, tensor_element, Truncation, TriDegree, TwistingCochain,
};
use cotor_core::hopf::check_comodule_axioms;
use cotor_core::toda::{d1_cohomology, find_sharp, verify_relations, BarGenerators, TodaClasses};
use cotor_core::{ComoduleAlgebra, HopfDescriptor, Poly};

fn verdict(n: u32, name: &str, start: Instant, budget: Duration, failures: &[String]) {
    let elapsed = start.elapsed();
    let mut failures = failures.to_vec();
    if elapsed > budget {
        failures.push(format!("took {elapsed:.2?}, budget {budget:.0?}"));
    }
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {n}: {status} {name} ({elapsed:.2?})");
    for f in &failures {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "criterion {n} failed: {failures:?}");
}

fn poly(ca: &ComoduleAlgebra, terms: &[&[(&str, u16)]]) -> Poly {
    Poly::from_monomials(terms.iter().map(|t| ca.algebra().monomial_of(t).unwrap()))
}

/// Coefficients of `Π 1/(1 − t^d)` up to `max`.
fn free_series(degrees: &[usize], max: usize) -> Vec<usize> {
    let mut out = vec![0; max + 1];
    out[0] = 1;
    for &d in degrees {
        for k in d..=max {
            out[k] += out[k - d];
        }
    }
    out
}

#[test]
fn criterion_01_twisting_identity() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for hopf in [HopfDescriptor::lambda1(), HopfDescriptor::lambda2()] {
        let r = TwistingCochain::new(Arc::new(hopf), 32).check_equation(32);
        if !r.passed() {
            failures.push(r.to_string());
        }
    }
    verdict(1, "twisting cochain identity up to degree 32", start, Duration::from_secs(1), &failures);
}

#[test]
fn criterion_02_acyclicity() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for id in [ModelId::Gm, ModelId::Mu2] {
        let ca = model(id).unwrap();
        let tc = TwistingCochain::new(ca.hopf_arc(), 12);
        let ct = cotor_twisted(&tc, &ca, 12).unwrap();
        let nonzero: Vec<_> = ct.entries().iter().filter(|(_, &d)| d > 0).collect();
        if nonzero.len() != 1 || ct.get(TriDegree::new(0, 0, 0)) != 1 {
            failures.push(format!("{id}: cohomology {nonzero:?}"));
        }
    }
    verdict(2, "d² = 0 and acyclicity up to degree 12", start, Duration::from_secs(10), &failures);
}

#[test]
fn criterion_03_oracle_equivalence() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for id in [ModelId::Gl(2), ModelId::Gl(4), ModelId::Sp(6), ModelId::So(6)] {
        let ca = model(id).unwrap();
        let tc = TwistingCochain::new(ca.hopf_arc(), 8);
        let tw = cotor_twisted(&tc, &ca, 8).unwrap();
        let cb = cotor_cobar(&ca, 8).unwrap();
        if let Some(d) = tw.first_difference(&cb) {
            failures.push(format!("{id}: first difference {d:?}"));
        }
    }
    verdict(3, "twisted complex agrees with cobar complex up to degree 8", start, Duration::from_secs(120), &failures);
}

#[test]
fn criterion_04_gl2_partitions() {
    let start = Instant::now();
    let ca = model(ModelId::Gl(2)).unwrap();
    let got = cotor_of(&ca, Truncation::total(14)).unwrap().total_dims();
    let want = free_series(&[2, 3], 14);
    let failures = if got == want { vec![] } else { vec![format!("cotor {got:?}, partitions {want:?}")] };
    verdict(4, "GL₂ dims are partition counts into {2,3} up to 14", start, Duration::from_secs(10), &failures);
}

fn degeneration(n: u32, group: Group, max_total: u32, label: &str) {
    let start = Instant::now();
    let r = degeneration_check(group, 1, max_total).unwrap();
    let failures: Vec<String> = r
        .rows
        .iter()
        .filter(|(_, e, a)| e != a)
        .map(|(t, e, a)| format!("degree {t}: {} {e}, {} {a}", r.expected_label, r.actual_label))
        .collect();
    verdict(n, label, start, Duration::from_secs(300), &failures);
}

#[test]
fn criterion_05_pgl6_degeneration() {
    degeneration(5, Group::Pgl, 14, "GL₆ cotor matches the PGL₆ presentation up to 14");
}

#[test]
fn criterion_06_bar_values() {
    let start = Instant::now();
    let ca = model(ModelId::Gl(6)).unwrap();
    let sharp = find_sharp(&ca, 8).unwrap();
    let bar = BarGenerators::build(&ca, &sharp).unwrap();
    let want = [
        (3, poly(&ca, &[&[("c3", 1)], &[("c1", 3)]])),
        (4, poly(&ca, &[&[("c4", 1)], &[("c2", 2)], &[("c1", 2), ("c2", 1)]])),
        (5, poly(&ca, &[&[("c5", 1)], &[("c4", 1), ("c1", 1)], &[("c3", 1), ("c2", 1)], &[("c3", 1), ("c1", 2)]])),
        (6, poly(&ca, &[&[("c6", 1)], &[("c4", 1), ("c2", 1)], &[("c3", 1), ("c1", 1), ("c2", 1)]])),
    ];
    let mut failures = Vec::new();
    for (k, p) in want {
        let got = bar.get(k).unwrap();
        if *got != p {
            failures.push(format!("c̄{k} = {}, expected {}", ca.algebra().format_poly(got), ca.algebra().format_poly(&p)));
        }
    }
    for j in [2, 3] {
        if ca.d_op(1, bar.get(2 * j).unwrap()) != *bar.get(2 * j - 1).unwrap() {
            failures.push(format!("d₁(c̄{}) ≠ c̄{}", 2 * j, 2 * j - 1));
        }
    }
    let r = bar.verify(&ca, &sharp);
    if !r.passed() {
        failures.push(r.to_string());
    }
    verdict(6, "GL₆ canonical generators", start, Duration::from_secs(10), &failures);
}

#[test]
fn criterion_07_relations() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for id in [ModelId::Gl(6), ModelId::So(6)] {
        let ca = model(id).unwrap();
        let sharp = find_sharp(&ca, 8).unwrap();
        let bar = BarGenerators::build(&ca, &sharp).unwrap();
        let classes = TodaClasses::build(&ca, &sharp, &bar, 1).unwrap();
        let r = verify_relations(&classes);
        if !r.passed() || r.checks == 0 {
            failures.push(r.to_string());
        }
    }
    let ca = model(ModelId::Gl(6)).unwrap();
    let sharp = find_sharp(&ca, 8).unwrap();
    let bar = BarGenerators::build(&ca, &sharp).unwrap();
    let classes = TodaClasses::build(&ca, &sharp, &bar, 1).unwrap();
    let tc = TwistingCochain::new(ca.hopf_arc(), 14);
    let complex = build_twisted_complex(&tc, &ca, 13).unwrap();
    let z3 = tc.ring().gen("z3").unwrap();
    for set in [vec![2], vec![3]] {
        let elt = tensor_element(&z3, &classes.y[&set]);
        match complex.is_boundary(&elt) {
            Ok(true) => {}
            other => failures.push(format!("z₃·y_{set:?} is not a boundary: {other:?}")),
        }
    }
    verdict(7, "relations in GL₆ and SO₆, z₃·y_I = 0 in cotor", start, Duration::from_secs(60), &failures);
}

#[test]
fn criterion_08_pso6_degeneration() {
    degeneration(8, Group::Pso, 14, "SO₆ cotor matches the PSO₆ presentation up to 14");
}

#[test]
fn criterion_09_d1_cohomology() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let so = d1_cohomology(&model(ModelId::So(6)).unwrap(), 14);
    let want = free_series(&[8, 12], 14);
    if so != want {
        failures.push(format!("SO₆: {so:?}, expected {want:?}"));
    }
    let gl = d1_cohomology(&model(ModelId::Gl(6)).unwrap(), 24);
    let want = free_series(&[2, 16, 24], 24);
    if gl != want {
        failures.push(format!("GL₆: {gl:?}, expected {want:?}"));
    }
    verdict(9, "d₁ cohomology of P₂A for SO₆ and GL₆", start, Duration::from_secs(120), &failures);
}

#[test]
fn criterion_10_low_hodge_values() {
    let start = Instant::now();
    let mut failures = Vec::new();
    // (model, total dims from 0, [(total, hodge a, hodge b, dim)])
    type Case = (ModelId, &'static [usize], &'static [(i32, i32, i32, usize)]);
    let cases: [Case; 3] = [
        (ModelId::Gl(6), &[1, 0, 1, 1], &[(2, 1, 1, 1), (3, 1, 2, 1)]),
        (ModelId::So(6), &[1, 0, 1], &[(2, 1, 1, 1)]),
        (ModelId::Sp(6), &[1, 0, 1, 1, 1, 2], &[(5, 2, 3, 2)]),
    ];
    for (id, dims, cells) in cases {
        let max = dims.len() as u32 - 1;
        let ct = cotor_of(&model(id).unwrap(), Truncation::total(max)).unwrap();
        let got = ct.total_dims();
        if got != dims {
            failures.push(format!("{id}: total dims {got:?}, expected {dims:?}"));
        }
        let ht = HodgeTable::from_cotor(&ct);
        for &(t, a, b, d) in cells {
            let at_t = ht.at_total(t);
            if at_t != vec![((a, b), d)] {
                failures.push(format!("{id}: total {t} Hodge cells {at_t:?}, expected [(({a}, {b}), {d})]"));
            }
        }
    }
    verdict(10, "low-degree Hodge values of PGL₆, PSO₆, PSp₆", start, Duration::from_secs(120), &failures);
}

#[test]
fn criterion_11_psp_comparison() {
    degeneration(11, Group::Psp, 12, "Sp₆ cotor over Λ₂ matches the singular side up to 12");
}

#[test]
fn criterion_12_rep_tables() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let (table, report) = rep_table(Group::Pgl, 1, 14, 14).unwrap();
    if !report.passed() {
        failures.push(report.to_string());
    }
    for i in 0..=14i32 {
        for j in 1..=14i32 {
            let got = table.cells[i as usize][j as usize];
            let want = pgl_counting_formula(1, i, j);
            if got != want || (i < j && got != 0) {
                failures.push(format!("(i={i}, j={j}): table {got}, formula {want}"));
            }
        }
    }
    verdict(12, "PGL₆ representation table matches the counting formula", start, Duration::from_secs(120), &failures);
}

#[test]
fn criterion_13_axiom_suites() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut push = |r: cotor_core::Report| {
        if !r.passed() {
            failures.push(r.to_string());
        }
    };
    for id in ModelId::samples() {
        push(check_comodule_axioms(&model(id).unwrap(), 12));
    }
    for n in 1..=3 {
        push(check_restriction_square(n, 10).unwrap());
    }
    for r in 1..=3 {
        push(check_pullback_square(r, 10).unwrap());
    }
    push(check_psi(12));
    verdict(13, "comodule axioms, restriction, pullback square, ψ", start, Duration::from_secs(120), &failures);
}
