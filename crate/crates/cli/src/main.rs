use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use cotor_core::catalog::{
    check_psi, check_pullback_square, check_restriction_square, degeneration_check, model, rep_table, Group, ModelFile,
    ModelId,
};
use cotor_core::cotor::{cotor_cobar_with, cotor_twisted, CobarOptions, CotorTable};
use cotor_core::hopf::{check_comodule_axioms, check_hopf_axioms};
use cotor_core::toda::{
    check_d1_squared, check_splitting, find_sharp, verify_relations, BarGenerators, TodaClasses,
};
use cotor_core::{ComoduleAlgebra, HopfDescriptor, Poly, Report, TwistingCochain};
use serde::Serialize;

const EXIT_MODEL: u8 = 2;
const EXIT_ORACLE: u8 = 3;
const EXIT_DEGENERACY: u8 = 4;
const EXIT_REP: u8 = 5;
const MAX_SUITE_FAILURES: usize = 100;

#[derive(Parser)]
#[command(name = "cotor", version, about = "Cotor tables, Toda-style generators and degeneration checks over GF(2)")]
struct Cli {
    /// Worker threads for the engine (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Csv)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Twisted,
    Cobar,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Axioms,
    Theta,
    Toda,
    Relations,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a Cotor table for a built-in model (e.g. `gl:6`) or a model JSON file.
    Cotor {
        #[arg(long)]
        model: String,
        #[arg(long, value_enum, default_value_t = Method::Twisted)]
        method: Method,
        #[arg(long, default_value_t = 10)]
        max_total: u32,
        /// Largest cobar length before the cobar method refuses to run.
        #[arg(long, default_value_t = 6)]
        max_s: u32,
    },
    /// Run verification suites; the exit code is the number of failed suites.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        model: Option<String>,
        #[arg(long, default_value = "pgl")]
        group: String,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 12)]
        max_total: u32,
    },
    /// Compare Poincaré series for pgl, pso or psp of size 4m+2.
    Degeneracy { group: String, m: u32, max_total: u32 },
    /// Table of dim H^j(G, Sym^i) for 0 ≤ i ≤ i_max, 0 ≤ j ≤ j_max.
    RepTable { group: String, m: u32, i_max: u32, j_max: u32 },
    /// Show a♯, the canonical generators and the classes b_h, y_I.
    Toda {
        #[arg(long, default_value = "gl:6")]
        model: String,
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
}

/// An error carrying its exit code.
#[derive(Debug)]
struct Exit(u8, String);

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.1)
    }
}

impl std::error::Error for Exit {}

fn model_error(msg: impl Into<String>) -> anyhow::Error {
    Exit(EXIT_MODEL, msg.into()).into()
}

/// Built-in id or JSON file; files must pass the comodule axioms up to `check_to`.
fn load_model(spec: &str, check_to: u32) -> Result<ComoduleAlgebra> {
    if spec.ends_with(".json") || Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
        let file: ModelFile = serde_json::from_str(&text).map_err(|e| model_error(format!("{spec}: {e}")))?;
        let ca = file.build(spec).map_err(|e| model_error(format!("{spec}: {e}")))?;
        let report = check_comodule_axioms(&ca, check_to);
        if !report.passed() {
            return Err(model_error(report.to_string()));
        }
        return Ok(ca);
    }
    let id: ModelId = spec.parse().map_err(|e| model_error(format!("{e}")))?;
    model(id).map_err(|e| model_error(e.to_string()))
}

fn parse_group(s: &str) -> Result<Group> {
    s.parse().map_err(|e| model_error(format!("{e}")))
}

fn write_table(out: &mut impl Write, table: &CotorTable, output: Output) -> Result<()> {
    match output {
        Output::Csv => table.write_csv(&mut *out)?,
        Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(&table.to_json())?)?,
    }
    Ok(())
}

fn cmd_cotor(out: &mut impl Write, spec: &str, method: Method, max_total: u32, max_s: u32, output: Output) -> Result<u8> {
    let ca = load_model(spec, max_total.min(12))?;
    let twisted = || -> Result<CotorTable> {
        let tc = TwistingCochain::new(ca.hopf_arc(), max_total);
        Ok(cotor_twisted(&tc, &ca, max_total)?)
    };
    let cobar = || -> Result<CotorTable> { Ok(cotor_cobar_with(&ca, max_total, CobarOptions { max_s })?) };
    match method {
        Method::Twisted => write_table(out, &twisted()?, output)?,
        Method::Cobar => write_table(out, &cobar()?, output)?,
        Method::Both => {
            let (tw, cb) = (twisted()?, cobar()?);
            write_table(out, &tw, output)?;
            if let Some((t, x, y)) = tw.first_difference(&cb) {
                eprintln!("twisted and cobar differ at (s={}, a={}, b={}): {x} vs {y}", t.s, t.a, t.b);
                return Ok(EXIT_ORACLE);
            }
            eprintln!("twisted and cobar tables agree up to total degree {max_total}");
        }
    }
    Ok(0)
}

fn suite_axioms(target: Option<&ComoduleAlgebra>, max_total: u32) -> Result<Report> {
    let mut report = Report::new(format!("comodule and Hopf axioms up to degree {max_total}"));
    match target {
        Some(ca) => report.absorb(check_comodule_axioms(ca, max_total)),
        None => {
            for h in [HopfDescriptor::lambda1(), HopfDescriptor::lambda2(), HopfDescriptor::sing_z2(), HopfDescriptor::sing_gm()] {
                report.absorb(check_hopf_axioms(&h, max_total));
            }
            for id in ModelId::samples() {
                report.absorb(check_comodule_axioms(&model(id)?, max_total));
            }
            for n in 1..=3 {
                report.absorb(check_restriction_square(n, max_total.min(10))?);
            }
            for r in 1..=3 {
                report.absorb(check_pullback_square(r, max_total.min(10))?);
            }
            report.absorb(check_psi(max_total));
        }
    }
    Ok(report)
}

fn suite_theta() -> Report {
    let mut report = Report::new("twisting cochain identity μ∘(θ⊗θ)∘Δ = 0 up to degree 32");
    for h in [HopfDescriptor::lambda1(), HopfDescriptor::lambda2()] {
        report.absorb(TwistingCochain::new(Arc::new(h), 32).check_equation(32));
    }
    report
}

/// Known canonical generators of the GL₆ model.
fn gl6_expected(ca: &ComoduleAlgebra) -> Result<Vec<(usize, Poly)>> {
    let alg = ca.algebra();
    let p = |terms: &[&[(&str, u16)]]| -> Result<Poly> {
        let mut out = Poly::zero();
        for t in terms {
            out.toggle(alg.monomial_of(t)?);
        }
        Ok(out)
    };
    Ok(vec![
        (3, p(&[&[("c3", 1)], &[("c1", 3)]])?),
        (4, p(&[&[("c4", 1)], &[("c2", 2)], &[("c1", 2), ("c2", 1)]])?),
        (5, p(&[&[("c5", 1)], &[("c4", 1), ("c1", 1)], &[("c3", 1), ("c2", 1)], &[("c3", 1), ("c1", 2)]])?),
        (6, p(&[&[("c6", 1)], &[("c4", 1), ("c2", 1)], &[("c3", 1), ("c1", 1), ("c2", 1)]])?),
    ])
}

fn suite_toda(spec: &str, max_total: u32) -> Result<Report> {
    let ca = load_model(spec, max_total)?;
    let mut report = Report::new(format!("splitting element and canonical generators of {}", ca.name()));
    let Some(sharp) = find_sharp(&ca, 16) else {
        report.fail("no splitting element a♯ found".into());
        return Ok(report);
    };
    report.absorb(check_splitting(&ca, &sharp, max_total));
    if sharp.q == 2 {
        report.absorb(check_d1_squared(&ca, max_total));
    }
    let bar = BarGenerators::build(&ca, &sharp)?;
    report.absorb(bar.verify(&ca, &sharp));
    if ca.name() == "gl:6" {
        for (k, want) in gl6_expected(&ca)? {
            let got = bar.get(k)?;
            report.check(*got == want, || {
                format!("c̄{k} = {}, expected {}", ca.algebra().format_poly(got), ca.algebra().format_poly(&want))
            });
        }
    }
    Ok(report)
}

fn suite_relations(group: Group, m: u32) -> Result<Report> {
    if group == Group::Psp {
        bail!(model_error("relations are defined for pgl and pso"));
    }
    let ca = model(group.model_id(m))?;
    let sharp = find_sharp(&ca, 16).context("no splitting element")?;
    let bar = BarGenerators::build(&ca, &sharp)?;
    let classes = TodaClasses::build(&ca, &sharp, &bar, m as usize)?;
    let mut report = Report::new(format!("{group} relations among b_h and y_I in {}", ca.name()));
    report.absorb(classes.verify_primitive());
    report.absorb(verify_relations(&classes));
    Ok(report)
}

fn print_reports(out: &mut impl Write, reports: &[Report], output: Output) -> Result<()> {
    match output {
        Output::Csv => {
            for r in reports {
                writeln!(out, "{r}")?;
            }
        }
        Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(reports)?)?,
    }
    Ok(())
}

fn cmd_verify(out: &mut impl Write, suite: Suite, spec: Option<&str>, group: &str, m: u32, max_total: u32, output: Output) -> Result<u8> {
    let group = parse_group(group)?;
    let target = spec.map(|s| load_model(s, max_total)).transpose()?;
    let mut reports = Vec::new();
    if matches!(suite, Suite::Axioms | Suite::All) {
        reports.push(suite_axioms(target.as_ref(), max_total)?);
    }
    if matches!(suite, Suite::Theta | Suite::All) {
        reports.push(suite_theta());
    }
    if matches!(suite, Suite::Toda | Suite::All) {
        reports.push(suite_toda(spec.unwrap_or("gl:6"), max_total)?);
    }
    if matches!(suite, Suite::Relations | Suite::All) {
        reports.push(suite_relations(group, m)?);
    }
    print_reports(out, &reports, output)?;
    let failed = reports.iter().filter(|r| !r.passed()).count();
    Ok(failed.min(MAX_SUITE_FAILURES) as u8)
}

#[derive(Serialize)]
struct DegeneracyRow {
    total: u32,
    expected: usize,
    actual: usize,
    verdict: &'static str,
}

fn cmd_degeneracy(out: &mut impl Write, group: &str, m: u32, max_total: u32, output: Output) -> Result<u8> {
    let r = degeneration_check(parse_group(group)?, m, max_total)?;
    let rows: Vec<DegeneracyRow> = r
        .rows
        .iter()
        .map(|&(total, expected, actual)| DegeneracyRow {
            total,
            expected,
            actual,
            verdict: if expected == actual { "equal" } else { "DIFFERENT" },
        })
        .collect();
    match output {
        Output::Csv => {
            writeln!(out, "# {} m={}: expected = {}, actual = {}", r.group, r.m, r.expected_label, r.actual_label)?;
            let mut w = csv::Writer::from_writer(&mut *out);
            for row in &rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(&serde_json::json!({"report": r, "rows": rows}))?)?,
    }
    Ok(if r.passed() { 0 } else { EXIT_DEGENERACY })
}

fn cmd_rep_table(out: &mut impl Write, group: &str, m: u32, i_max: u32, j_max: u32, output: Output) -> Result<u8> {
    let (table, report) = rep_table(parse_group(group)?, m, i_max, j_max)?;
    match output {
        Output::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            let header: Vec<String> = std::iter::once("i".to_string()).chain((0..=j_max).map(|j| format!("j={j}"))).collect();
            w.write_record(&header)?;
            for (i, row) in table.cells.iter().enumerate() {
                w.write_record(std::iter::once(i.to_string()).chain(row.iter().map(usize::to_string)))?;
            }
            w.flush()?;
        }
        Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(&serde_json::json!({"table": table, "cross_check": report}))?)?,
    }
    eprintln!("{report}");
    Ok(if report.passed() { 0 } else { EXIT_REP })
}

fn cmd_toda(out: &mut impl Write, spec: &str, m: u32) -> Result<u8> {
    let ca = load_model(spec, 12)?;
    let alg = ca.algebra();
    let sharp = find_sharp(&ca, 16).context("no splitting element a♯ found")?;
    writeln!(out, "a♯ = {} (q = {}, degree {})", alg.format_poly(&sharp.element), sharp.q, sharp.degree)?;
    let bar = BarGenerators::build(&ca, &sharp)?;
    for (k, p) in &bar.bars {
        writeln!(out, "bar {k} = {}", alg.format_poly(p))?;
    }
    if sharp.q == 2 {
        let classes = TodaClasses::build(&ca, &sharp, &bar, m as usize)?;
        for (h, p) in &classes.b {
            writeln!(out, "b{h} = {}", alg.format_poly(p))?;
        }
        for (set, p) in &classes.y {
            writeln!(out, "y{} = {}", set.iter().map(usize::to_string).collect::<Vec<_>>().join("_"), alg.format_poly(p))?;
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match cli.command {
        Command::Cotor { model, method, max_total, max_s } => cmd_cotor(&mut out, &model, method, max_total, max_s, cli.output)?,
        Command::Verify { suite, model, group, m, max_total } => {
            cmd_verify(&mut out, suite, model.as_deref(), &group, m, max_total, cli.output)?
        }
        Command::Degeneracy { group, m, max_total } => cmd_degeneracy(&mut out, &group, m, max_total, cli.output)?,
        Command::RepTable { group, m, i_max, j_max } => cmd_rep_table(&mut out, &group, m, i_max, j_max, cli.output)?,
        Command::Toda { model, m } => cmd_toda(&mut out, &model, m)?,
    };
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Exit>() {
                Some(Exit(code, _)) => ExitCode::from(*code),
                None => ExitCode::FAILURE,
            }
        }
    }
}
