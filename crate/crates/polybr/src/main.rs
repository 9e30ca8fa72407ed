//! Command-line front end: evaluate products, answer structural queries,
//! and run the verification suites.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use polybr::brx::{BrxContext, BrxElem};
use polybr::grammar;
use polybr::monoid::{self, FiniteMonoid, GreenRel, Theta};
use polybr::verify::{self, SuiteId, SuiteParams, SuiteReport};
use polybr::word::Alphabet;

#[derive(Parser)]
#[command(
    name = "polybr",
    about = "Lambda-polycyclic Bruck-Reilly extensions: products, structural queries, verification suites",
    version
)]
struct Cli {
    /// Built-in monoid name (trivial, C2, C3, chain2, lz2, I2) or a path
    /// to a monoid JSON file.
    #[arg(long, global = true)]
    monoid: Option<String>,

    /// Homomorphism into the unit group: "id" (groups), "one" (constant,
    /// always admissible), or "file" (taken from the monoid file).
    #[arg(long, global = true, default_value = "one")]
    theta: String,

    /// Alphabet size.
    #[arg(short = 'k', long = "k", global = true, default_value_t = 2)]
    alphabet: u32,

    /// Fragment bound override for the suites.
    #[arg(short = 'L', long = "bound", global = true)]
    bound: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,

    /// Also write the output to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for the sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a '*'-separated product of element literals.
    Eval { expr: String },
    /// Structural queries against one context.
    Query {
        #[command(subcommand)]
        what: QueryCmd,
    },
    /// Run verification suites; exits 0 only if everything passes.
    Check {
        /// Run every suite (the default when no suite is named).
        #[arg(long)]
        all: bool,
        /// Run a single named suite.
        #[arg(long)]
        suite: Option<String>,
    },
}

#[derive(Subcommand)]
enum QueryCmd {
    /// Is the element idempotent?
    Idem { elem: String },
    /// The inverse element, when one exists.
    Inv { elem: String },
    /// Are two elements Green-related? Relation is one of L, R, J, H, D.
    Green { rel: String, x: String, y: String },
    /// Is the element central?
    Center { elem: String },
    /// Is the element a unit?
    Unit { elem: String },
    /// Solve a*x = b (side "right") or x*a = b (side "left").
    Solve { side: String, a: String, b: String },
    /// The two-sided witnesses carrying b onto a.
    Witness { a: String, b: String },
    /// The image in the polycyclic quotient.
    Quotient { elem: String },
}

struct Output {
    buffer: String,
    out: Option<PathBuf>,
}

impl Output {
    fn new(out: Option<PathBuf>) -> Self {
        Self {
            buffer: String::new(),
            out,
        }
    }

    fn line(&mut self, text: impl AsRef<str>) {
        println!("{}", text.as_ref());
        self.buffer.push_str(text.as_ref());
        self.buffer.push('\n');
    }

    fn finish(self) -> Result<(), String> {
        if let Some(path) = self.out {
            std::fs::write(&path, self.buffer)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let mut output = Output::new(cli.out.clone());
    let code = match &cli.command {
        Cmd::Eval { expr } => {
            let ctx = resolve_context(&cli)?;
            let factors = grammar::parse_product(expr, &ctx).map_err(|e| e.to_string())?;
            let mut acc = factors[0].clone();
            for f in &factors[1..] {
                acc = ctx.mul(&acc, f).map_err(|e| e.to_string())?;
            }
            emit_result(&mut output, cli.format, "eval", acc.to_string());
            ExitCode::SUCCESS
        }
        Cmd::Query { what } => {
            let ctx = resolve_context(&cli)?;
            run_query(&ctx, what, &mut output, cli.format)?;
            ExitCode::SUCCESS
        }
        Cmd::Check { all, suite } => run_check(&cli, *all, suite.as_deref(), &mut output)?,
    };
    output.finish()?;
    Ok(code)
}

fn emit_result(output: &mut Output, format: OutFormat, kind: &str, result: String) {
    match format {
        OutFormat::Text => output.line(result),
        OutFormat::Json => {
            output.line(serde_json::json!({ "query": kind, "result": result }).to_string())
        }
    }
}

fn parse_elem(input: &str, ctx: &BrxContext) -> Result<BrxElem, String> {
    grammar::parse_elem(input, ctx).map_err(|e| e.to_string())
}

fn run_query(
    ctx: &BrxContext,
    what: &QueryCmd,
    output: &mut Output,
    format: OutFormat,
) -> Result<(), String> {
    match what {
        QueryCmd::Idem { elem } => {
            let x = parse_elem(elem, ctx)?;
            emit_result(output, format, "idem", ctx.is_idempotent(&x).to_string());
        }
        QueryCmd::Inv { elem } => {
            let x = parse_elem(elem, ctx)?;
            let text = match ctx.inverse_of(&x) {
                Some(y) => y.to_string(),
                None => "none".to_string(),
            };
            emit_result(output, format, "inv", text);
        }
        QueryCmd::Green { rel, x, y } => {
            let rel = GreenRel::from_name(rel)
                .ok_or_else(|| format!("unknown Green relation '{rel}' (use L, R, J, H, D)"))?;
            let a = parse_elem(x, ctx)?;
            let b = parse_elem(y, ctx)?;
            emit_result(output, format, "green", ctx.green(rel, &a, &b).to_string());
        }
        QueryCmd::Center { elem } => {
            let x = parse_elem(elem, ctx)?;
            emit_result(output, format, "center", ctx.is_in_center(&x).to_string());
        }
        QueryCmd::Unit { elem } => {
            let x = parse_elem(elem, ctx)?;
            emit_result(output, format, "unit", ctx.is_unit(&x).to_string());
        }
        QueryCmd::Solve { side, a, b } => {
            let lhs = parse_elem(a, ctx)?;
            let rhs = parse_elem(b, ctx)?;
            let solutions: BTreeSet<BrxElem> = match side.as_str() {
                "right" => ctx.solve_right(&lhs, &rhs).map_err(|e| e.to_string())?,
                "left" => ctx.solve_left(&lhs, &rhs).map_err(|e| e.to_string())?,
                other => {
                    return Err(format!(
                        "solve side must be 'left' or 'right', got '{other}'"
                    ))
                }
            };
            match format {
                OutFormat::Text => {
                    output.line(format!("{} solutions", solutions.len()));
                    for s in &solutions {
                        output.line(s.to_string());
                    }
                }
                OutFormat::Json => {
                    let items: Vec<String> = solutions.iter().map(|s| s.to_string()).collect();
                    output
                        .line(serde_json::json!({ "query": "solve", "result": items }).to_string());
                }
            }
        }
        QueryCmd::Witness { a, b } => {
            let target = parse_elem(a, ctx)?;
            let source = parse_elem(b, ctx)?;
            let (x, y) = ctx
                .zero_simple_witness(&target, &source)
                .map_err(|e| e.to_string())?;
            let product = ctx
                .mul(&ctx.mul(&x, &source).map_err(|e| e.to_string())?, &y)
                .map_err(|e| e.to_string())?;
            let ok = product == target;
            match format {
                OutFormat::Text => {
                    output.line(format!("x = {x}"));
                    output.line(format!("y = {y}"));
                    output.line(format!("check: x*b*y = {product}, matches a: {ok}"));
                }
                OutFormat::Json => output.line(
                    serde_json::json!({
                        "query": "witness",
                        "x": x.to_string(),
                        "y": y.to_string(),
                        "product": product.to_string(),
                        "ok": ok,
                    })
                    .to_string(),
                ),
            }
            if !ok {
                return Err("witness check failed".to_string());
            }
        }
        QueryCmd::Quotient { elem } => {
            let x = parse_elem(elem, ctx)?;
            emit_result(
                output,
                format,
                "quotient",
                ctx.quotient_to_p(&x).to_string(),
            );
        }
    }
    Ok(())
}

fn run_check(
    cli: &Cli,
    all: bool,
    suite: Option<&str>,
    output: &mut Output,
) -> Result<ExitCode, String> {
    let params = SuiteParams {
        bound: cli.bound,
        seed: cli.seed,
        ..SuiteParams::default()
    };
    let suites: Vec<SuiteId> = match suite {
        Some(name) if !all => {
            vec![SuiteId::from_name(name).ok_or_else(|| format!("unknown suite: {name}"))?]
        }
        _ => SuiteId::NAMED.to_vec(),
    };
    let contexts = match &cli.monoid {
        Some(_) => vec![resolve_context(cli)?],
        None => verify::builtin_contexts(),
    };

    let mut reports: Vec<SuiteReport> = Vec::new();
    for ctx in &contexts {
        for &id in &suites {
            reports.push(verify::run_suite(ctx, id, &params).map_err(|e| e.to_string())?);
        }
        let named_all = suites.len() == SuiteId::NAMED.len();
        if named_all && ctx.alphabet().size() == 1 {
            reports.push(
                verify::run_suite(ctx, SuiteId::Bicyclic, &params).map_err(|e| e.to_string())?,
            );
        }
    }

    let mut all_passed = true;
    for report in &reports {
        all_passed &= report.passed();
        match cli.format {
            OutFormat::Text => {
                let status = if report.passed() { "PASS" } else { "FAIL" };
                let verdict = report
                    .verdict
                    .as_deref()
                    .map(|v| format!(" — {v}"))
                    .unwrap_or_default();
                output.line(format!(
                    "{status} {} @ {} — {} cases, {} failures, {} ms{verdict}",
                    report.suite,
                    report.context,
                    report.cases,
                    report.failures.len(),
                    report.ms,
                ));
                for failure in &report.failures {
                    output.line(format!("  inputs:   {}", failure.inputs.join(" ; ")));
                    output.line(format!("  expected: {}", failure.expected));
                    output.line(format!("  actual:   {}", failure.actual));
                }
            }
            OutFormat::Json => {
                output.line(serde_json::to_string(report).map_err(|e| e.to_string())?);
            }
        }
    }
    if cli.format == OutFormat::Text {
        output.line(format!(
            "{}: {} suite runs over {} context(s)",
            if all_passed { "ALL PASS" } else { "FAILURES" },
            reports.len(),
            contexts.len(),
        ));
    }
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn resolve_context(cli: &Cli) -> Result<BrxContext, String> {
    let spec = cli
        .monoid
        .as_deref()
        .ok_or("this command needs --monoid <name|file>")?;
    let (m, file_theta) = resolve_monoid(spec)?;
    let theta = match cli.theta.as_str() {
        "id" => Theta::identity(&m)
            .map_err(|e| format!("--theta id is only admissible for groups ({e})"))?,
        "one" => Theta::constant_identity(&m),
        "file" => file_theta.ok_or("--theta file, but the monoid file carries no theta")?,
        other => return Err(format!("unknown theta '{other}' (use id, one, or file)")),
    };
    let alphabet = Alphabet::new(cli.alphabet).map_err(|e| e.to_string())?;
    BrxContext::new(m, theta, alphabet).map_err(|e| e.to_string())
}

fn resolve_monoid(spec: &str) -> Result<(FiniteMonoid, Option<Theta>), String> {
    if let Some(m) = monoid::builtin(spec) {
        return Ok((m, None));
    }
    let path = Path::new(spec);
    if path.exists() {
        return FiniteMonoid::from_json_file(path).map_err(|e| e.to_string());
    }
    Err(format!(
        "'{spec}' is neither a built-in monoid ({}) nor a file",
        monoid::BUILTIN_NAMES.join(", ")
    ))
}
