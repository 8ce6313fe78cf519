//! Subcommands and their execution. Every command produces an [`Outcome`];
//! `main` only prints it.

use std::cmp::Ordering;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dilator_core::exp_derivative::{e_build, e_order, j_embed, xi_build, JError};
use dilator_core::extension::{compose, ext_order};
use dilator_core::normal_f::{f_build, f_order};
use dilator_core::order::{self, CodedOrder, Integers, Order};
use dilator_core::ordinal::{self, Ordinal};
use dilator_core::praedilator::{self, validate_normal, validate_praedilator, Dilator, Report};
use dilator_core::wf::{descending_search, Strategy};
use dilator_core::Elem;

use crate::expr::{parse_ordinal, ParseError};

#[derive(Parser, Debug)]
#[command(name = "dilator", about = "Ordinals below ε₀, prae-dilators and their extensions")]
pub struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FnName {
    F,
    G,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum StrategyName {
    #[value(name = "greedy-min-above", alias = "greedy")]
    Greedy,
    Random,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form of an expression.
    Eval { expr: String },
    /// Compare two expressions.
    Cmp { a: String, b: String },
    /// f(α) = 1 + Σ_{γ<α} (1+γ).
    F { expr: String },
    /// g(0) = 1, g(α+1) = (α+1)·2, g(λ) = sup g(γ).
    G { expr: String },
    /// The derivative of f: its α-th fixed point ω^(ω^α).
    Fprime { expr: String },
    /// The derivative of g: its α-th fixed point ω^(1+α).
    Gprime { expr: String },
    /// The smallest fixed points of f or g below a bound.
    Fix {
        #[arg(long = "fn", value_enum)]
        function: FnName,
        #[arg(long)]
        below: String,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Run the prae-dilator (and, if present, normality) validators.
    DilCheck {
        name: String,
        #[arg(long, default_value_t = 4)]
        size: usize,
        #[arg(long, default_value_t = 60)]
        elements: usize,
    },
    /// The first elements of D^T(X).
    DilExtend {
        name: String,
        #[arg(long)]
        order: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// J on a comma-separated strictly descending sequence.
    EmbedJ {
        #[arg(long)]
        order: String,
        #[arg(long, default_value = "")]
        seq: String,
    },
    /// Bounded search for a descending chain.
    WfSearch {
        #[arg(long)]
        order: String,
        #[arg(long, default_value_t = 20)]
        budget: usize,
        #[arg(long, value_enum, default_value = "greedy-min-above")]
        strategy: StrategyName,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Records `(n, element)` for the first elements of each T(n).
    #[command(name = "export-T0")]
    ExportT0 {
        name: String,
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Done {
    command: &'static str,
    inputs: Value,
    result: Value,
    witnesses: Vec<String>,
    text: String,
    failed: bool,
}

#[derive(Debug)]
struct Usage(String);

impl From<ParseError> for Usage {
    fn from(e: ParseError) -> Self {
        Usage(format!("parse error {e}"))
    }
}

fn ord(text: &str) -> Result<Ordinal, Usage> {
    Ok(parse_ordinal(text)?)
}

/// Looks up `F`, `E`, the zoo names, and `A.B` for the composite `A∘B`.
pub fn parse_dilator(name: &str) -> Result<Dilator, String> {
    let mut parts = name.split('.').rev();
    let mut acc = single_dilator(parts.next().unwrap_or(""))?;
    for outer in parts {
        acc = compose(single_dilator(outer)?, acc);
    }
    Ok(acc)
}

fn single_dilator(name: &str) -> Result<Dilator, String> {
    match name {
        "F" => Ok(f_build()),
        "E" => Ok(e_build()),
        other => praedilator::zoo(other).map_err(|e| e.to_string()),
    }
}

/// `fin:N`, `ord:EXPR`, `ints`, `lift:X`, `sq:X`, `pow2:X`, `F:X`, `E:X`, `ext:T:X`.
pub fn parse_order(spec: &str) -> Result<Order, String> {
    if spec == "ints" {
        return Ok(Arc::new(Integers));
    }
    let (head, rest) = spec.split_once(':').ok_or_else(|| format!("malformed order `{spec}`"))?;
    match head {
        "fin" => rest.trim().parse().map(order::fin).map_err(|_| format!("bad size in `{spec}`")),
        "ord" => parse_ordinal(rest).map(order::ordinal_order).map_err(|e| format!("parse error {e}")),
        "lift" => parse_order(rest).map(order::lift),
        "sq" => parse_order(rest).map(order::lex_square),
        "pow2" => parse_order(rest).map(order::pow2),
        "F" => parse_order(rest).map(f_order),
        "E" => parse_order(rest).map(e_order),
        "ext" => {
            let (t, x) = rest.split_once(':').ok_or_else(|| format!("malformed extension `{spec}`"))?;
            let t = parse_dilator(t)?;
            let x = parse_order(x)?;
            Ok(ext_order(t, x) as Order)
        }
        _ => Err(format!("unknown order `{spec}`")),
    }
}

/// Reads an element of `x` written as an ordinal expression (or an integer for `ints`).
fn parse_elem(x: &dyn CodedOrder, text: &str) -> Result<Elem, Usage> {
    let text = text.trim();
    if let Ok(i) = text.parse::<i64>() {
        if x.contains(&Elem::Int(i)) {
            return Ok(Elem::Int(i));
        }
    }
    let o = ord(text)?;
    let mut candidates = vec![Elem::Ord(o.clone())];
    if let Some(n) = o.as_nat() {
        candidates.insert(0, Elem::Nat(n));
    }
    candidates
        .into_iter()
        .find(|e| x.contains(e))
        .ok_or_else(|| Usage(format!("{o} is not an element of {}", x.describe())))
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(|i| i.to_string()).collect()
}

fn unary(command: &'static str, expr: &str, op: fn(&Ordinal) -> Ordinal) -> Result<Done, Usage> {
    let a = ord(expr)?;
    let r = op(&a);
    Ok(Done {
        command,
        inputs: json!({ "expr": expr }),
        result: json!(r.to_string()),
        witnesses: Vec::new(),
        text: r.to_string(),
        failed: false,
    })
}

/// Fixed points of `f` are `ω^(ω^α)` and of `g` are `ω^(1+α)`, both increasing
/// in `α`, so the smallest ones are the images of `0, 1, 2, …`.
pub fn fixed_points(function: FnName, below: &Ordinal, count: usize) -> Vec<Ordinal> {
    let deriv = match function {
        FnName::F => ordinal::f_derivative,
        FnName::G => ordinal::g_derivative,
    };
    (0..count as u64).map(|k| deriv(&Ordinal::nat(k))).take_while(|p| p < below).collect()
}

fn report_json(r: &Report) -> Value {
    json!({ "passed": r.passed(), "checks": r.checks, "violations": r.violations.len() })
}

fn witnesses(r: &Report) -> Vec<String> {
    r.violations.iter().map(|v| format!("{:?}: {}", v.law, v.witness)).collect()
}

fn execute(cmd: &Command) -> Result<Done, Usage> {
    match cmd {
        Command::Eval { expr } => unary("eval", expr, Ordinal::clone),
        Command::F { expr } => unary("f", expr, ordinal::f_eval),
        Command::G { expr } => unary("g", expr, ordinal::g_eval),
        Command::Fprime { expr } => unary("fprime", expr, ordinal::f_derivative),
        Command::Gprime { expr } => unary("gprime", expr, ordinal::g_derivative),
        Command::Cmp { a, b } => {
            let sym = match ordinal::cmp(&ord(a)?, &ord(b)?) {
                Ordering::Less => "<",
                Ordering::Equal => "=",
                Ordering::Greater => ">",
            };
            Ok(Done {
                command: "cmp",
                inputs: json!({ "a": a, "b": b }),
                result: json!(sym),
                witnesses: Vec::new(),
                text: sym.into(),
                failed: false,
            })
        }
        Command::Fix { function, below, count } => {
            let points = strings(&fixed_points(*function, &ord(below)?, *count));
            let name = match function {
                FnName::F => "f",
                FnName::G => "g",
            };
            Ok(Done {
                command: "fix",
                inputs: json!({ "fn": name, "below": below, "count": count }),
                result: json!(points),
                witnesses: Vec::new(),
                text: points.join(", "),
                failed: false,
            })
        }
        Command::DilCheck { name, size, elements } => {
            let t = parse_dilator(name).map_err(Usage)?;
            let pre = validate_praedilator(&*t, *size, *elements);
            let normal = t.normal().map(|mu| validate_normal(&*t, &*mu, *size, *elements));
            let mut wit = witnesses(&pre);
            let mut text = format!("prae-dilator: {pre}");
            match &normal {
                Some(r) => {
                    wit.extend(witnesses(r));
                    text.push_str(&format!("\nnormal: {r}"));
                }
                None => text.push_str("\nnormal: no normal structure"),
            }
            let failed = !pre.passed() || normal.as_ref().is_some_and(|r| !r.passed());
            Ok(Done {
                command: "dil-check",
                inputs: json!({ "name": name, "size": size, "elements": elements }),
                result: json!({ "praedilator": report_json(&pre), "normal": normal.as_ref().map(report_json) }),
                witnesses: wit,
                text: text.trim_end().to_string(),
                failed,
            })
        }
        Command::DilExtend { name, order: spec, count } => {
            let t = parse_dilator(name).map_err(Usage)?;
            let x = parse_order(spec).map_err(Usage)?;
            let elems = strings(&ext_order(t, x).enumerate(*count));
            Ok(Done {
                command: "dil-extend",
                inputs: json!({ "name": name, "order": spec, "count": count }),
                result: json!(elems),
                witnesses: Vec::new(),
                text: elems.join("\n"),
                failed: false,
            })
        }
        Command::EmbedJ { order: spec, seq } => {
            let x = parse_order(spec).map_err(Usage)?;
            let elems = seq
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_elem(&*x, s))
                .collect::<Result<Vec<_>, _>>()?;
            let j = j_embed(x, &xi_build());
            let value = j.apply(&elems).map_err(|e| match e {
                JError::NotDescending(..) => Usage(format!("malformed sequence: {e}")),
                other => Usage(other.to_string()),
            })?;
            Ok(Done {
                command: "embed-j",
                inputs: json!({ "order": spec, "seq": strings(&elems) }),
                result: json!(value.to_string()),
                witnesses: Vec::new(),
                text: value.to_string(),
                failed: j.defaults_hit() > 0,
            })
        }
        Command::WfSearch { order: spec, budget, strategy, seed } => {
            let x = parse_order(spec).map_err(Usage)?;
            let strat = match strategy {
                StrategyName::Greedy => Strategy::Greedy,
                StrategyName::Random => Strategy::Random { seed: *seed },
            };
            let found = descending_search(&x, *budget, strat);
            let chain = found.as_ref().map(|c| strings(c.elements()));
            let text = match &chain {
                Some(c) => format!("chain of length {}: {}", c.len(), c.join(" > ")),
                None => format!("none within budget {budget}"),
            };
            Ok(Done {
                command: "wf-search",
                inputs: json!({ "order": spec, "budget": budget, "strategy": format!("{strategy:?}").to_lowercase(), "seed": seed }),
                result: json!(chain),
                witnesses: chain.unwrap_or_default(),
                text,
                failed: false,
            })
        }
        Command::ExportT0 { name, size, count } => {
            let t = parse_dilator(name).map_err(Usage)?;
            let mut records = Vec::new();
            for n in 0..=*size {
                for e in t.at(n).enumerate(*count) {
                    records.push((n, e.to_string()));
                }
            }
            let text = records.iter().map(|(n, c)| format!("({n}, {c})")).collect::<Vec<_>>().join("\n");
            Ok(Done {
                command: "export-T0",
                inputs: json!({ "name": name, "size": size, "count": count }),
                result: json!(records.iter().map(|(n, c)| json!([n, c])).collect::<Vec<_>>()),
                witnesses: Vec::new(),
                text,
                failed: false,
            })
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli.command) {
        Ok(done) => {
            let stdout = if cli.json {
                let doc = json!({
                    "command": done.command,
                    "inputs": done.inputs,
                    "result": done.result,
                    "witnesses": done.witnesses,
                });
                serde_json::to_string_pretty(&doc).expect("json values serialize")
            } else if done.text.is_empty() {
                String::new()
            } else {
                done.text
            };
            Outcome { code: if done.failed { 1 } else { 0 }, stdout, stderr: String::new() }
        }
        Err(Usage(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}") },
    }
}
