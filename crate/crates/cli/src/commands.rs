use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use quadric_approx::bench::{corpus, run_bench};
use quadric_approx::dirichlet::{height_e, lambda1, solve, verify, Certificate, Instance, SolveOptions};
use quadric_approx::exactnum::{serde_rat, Magnitude, Rat, Real};
use quadric_approx::forms::{heights, QuadForm};
use quadric_approx::witt::{random_sphere_points, witt_index};
use quadric_approx::Error;

use crate::{Command, Global};

pub const EXIT_NO_SOLUTION: u8 = 1;
pub const EXIT_BUDGET: u8 = 2;
pub const EXIT_INPUT: u8 = 3;
pub const EXIT_UNDECIDABLE: u8 = 4;
pub const EXIT_REJECTED: u8 = 5;
pub const EXIT_INTERNAL: u8 = 6;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NoSolutionExists => EXIT_NO_SOLUTION,
            Error::BudgetBelowThreshold(_) => EXIT_BUDGET,
            Error::Undecidable { .. } => EXIT_UNDECIDABLE,
            Error::SearchExhausted | Error::EnumerationLimit(_) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: msg.into() }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| input_error(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| input_error(format!("{what}: {e}")))
}

fn emit<T: Serialize>(g: &Global, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("outputs serialize");
    text.push('\n');
    match &g.output {
        Some(p) => fs::write(p, text).map_err(|e| input_error(format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure { code: EXIT_INTERNAL, message: e.to_string() }),
    }
}

/// A form given bare or as the `q` field of an object.
fn parse_form(text: &str) -> Result<QuadForm, Failure> {
    let v: Value = parse(text, "form")?;
    let v = match v.get("q") {
        Some(q) => q.clone(),
        None => v,
    };
    serde_json::from_value(v).map_err(|e| input_error(format!("form: {e}")))
}

/// An instance whose `places` may be omitted.
fn parse_space_instance(text: &str) -> Result<Instance, Failure> {
    let mut v: Value = parse(text, "instance")?;
    if let Some(obj) = v.as_object_mut() {
        obj.entry("places").or_insert_with(|| Value::Array(vec![]));
    }
    serde_json::from_value(v).map_err(|e| input_error(format!("instance: {e}")))
}

#[derive(Serialize)]
struct Quantity {
    exact: String,
    approx: f64,
}

impl Quantity {
    fn of(r: &Real) -> Self {
        Quantity { exact: r.to_string(), approx: Magnitude::from_real(r.clone()).to_f64() }
    }
}

#[derive(Serialize)]
struct HeightsReport {
    #[serde(rename = "H(E)")]
    h_e: Quantity,
    #[serde(rename = "H(q)")]
    h_q: Quantity,
    #[serde(rename = "H(1,q)")]
    h_1q: Quantity,
    lambda1: Quantity,
}

#[derive(Deserialize)]
struct PointsInput {
    q: QuadForm,
    #[serde(with = "serde_rat::vec")]
    x0: Vec<Rat>,
}

pub fn run(cmd: &Command, g: &Global) -> Result<u8, Failure> {
    let opts = SolveOptions { max_bits: g.max_bits, ..Default::default() };
    match cmd {
        Command::Approximate { input, best } => {
            let inst = Instance::from_json(&read_input(input)?)?;
            let cert = solve(&inst, &SolveOptions { best: *best, ..opts })?;
            emit(g, &cert)?;
        }
        Command::Witt { input } => {
            let q = parse_form(&read_input(input)?)?;
            emit(g, &witt_index(&q)?)?;
        }
        Command::Heights { input } => {
            let inst = parse_space_instance(&read_input(input)?)?;
            let e = inst.space()?;
            let h = heights(&inst.q, &e.gram, &e.local)?;
            let report = HeightsReport {
                h_e: Quantity::of(height_e(&e)?.real()),
                h_q: Quantity::of(&h.h_q),
                h_1q: Quantity::of(&h.h_1q),
                lambda1: Quantity::of(lambda1(&e)?.real()),
            };
            emit(g, &report)?;
        }
        Command::GenPoints { input, count, height, seed } => {
            let p: PointsInput = parse(&read_input(input)?, "points input")?;
            emit(g, &random_sphere_points(&p.q, &p.x0, *count, *height, *seed)?)?;
        }
        Command::Verify { instance, certificate } => {
            let inst = Instance::from_json(&read_input(instance)?)?;
            let cert = Certificate::from_json(&read_input(certificate)?)?;
            let verdict = verify(&inst, &cert, &opts)?;
            emit(g, &verdict)?;
            if verdict.undecidable {
                return Ok(EXIT_UNDECIDABLE);
            }
            if !verdict.accepted {
                return Ok(EXIT_REJECTED);
            }
        }
        Command::Bench { points, seed, csv, best } => {
            let rows = run_bench(&corpus(*points, *seed)?, &SolveOptions { best: *best, ..opts })?;
            if let Some(path) = csv {
                let mut w = csv::Writer::from_path(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
                for r in &rows {
                    w.serialize(r).map_err(|e| input_error(e.to_string()))?;
                }
                w.flush().map_err(|e| input_error(e.to_string()))?;
            }
            emit(g, &rows)?;
        }
    }
    Ok(0)
}
