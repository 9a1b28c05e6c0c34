//! The `qalg` command line.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Expr, Monomial, QPolynomial, RewriteSystem};
use crate::auto::{self, AutOrder, Automorphism};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::frontend::{validate_presentation, AlgebraPresentation, Status};
use crate::solve::{self, DerivationSolve, OreView, Thm32Report};

/// Version of the `--json` output layout.
pub const JSON_SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "qalg", version, about = "Exact computation in quantum algebras")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run structural checks on a presentation.
    Validate { file: String },
    /// Print the canonical form of a presentation.
    Fmt { file: String },
    /// Normal form of an expression.
    Nf { file: String, expr: String },
    /// Conjugation by a monomial, `r -> d^-1 r d`.
    Conj { file: String, mono: String, expr: Option<String> },
    /// Monotone test and extraction in a quantum space.
    Monotone { file: String, expr: String },
    /// Split a monotone element as monomial times central factor.
    CentralFactor { file: String, expr: String },
    /// Homogeneity and adjoint weights in a color enveloping algebra.
    Semiinv { file: String, expr: String },
    /// Search for an inner witness of the skew derivation.
    DerSolve {
        file: String,
        #[arg(long = "box", default_value_t = solve::DEFAULT_BOX)]
        bound: i64,
    },
    /// Test a candidate inducing element `w` or `(x - c)^m w`.
    Thm32 {
        file: String,
        #[arg(long, value_parser = ["1", "2"])]
        case: String,
        #[arg(long)]
        w: String,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        m: i64,
        /// Box for the witness search in case 2.
        #[arg(long = "box", default_value_t = solve::DEFAULT_BOX)]
        bound: i64,
    },
    /// Check `a sigma(r) sigma(b) = b r a` on generators.
    Verify {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
    },
    /// Order of a triangular automorphism.
    Order {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
    },
    /// Built-in example fixtures.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Subcommand, Debug)]
enum FixtureAction {
    /// Run the checks of the named fixtures, or all of them.
    Run { ids: Vec<String> },
    /// List fixture ids.
    List,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn error(e: &Error) -> Self {
        let code = if e.is_rejection() { 1 } else { 2 };
        Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

/// Load a presentation from a path, or from a built-in fixture as `@ID`.
pub fn load(file: &str) -> Result<AlgebraPresentation> {
    let text = match file.strip_prefix('@') {
        Some(id) => {
            fixtures::source(id).ok_or_else(|| Error::InvalidArgument(format!("no fixture named {id}")))?.to_string()
        }
        None => std::fs::read_to_string(file).map_err(|e| Error::InvalidArgument(format!("{file}: {e}")))?,
    };
    AlgebraPresentation::parse(&text)
}

fn laurent_for(sys: &RewriteSystem, e: &Expr) -> Result<RewriteSystem> {
    let vars: Vec<_> = e.inverted_vars().into_iter().filter(|&v| !sys.is_invertible(v)).collect();
    if vars.is_empty() {
        Ok(sys.clone())
    } else {
        sys.laurent_extend(&vars)
    }
}

/// Normal form, inverting generators that appear with negative powers
/// when that is possible.
pub fn eval(p: &AlgebraPresentation, text: &str) -> Result<QPolynomial> {
    let e = p.parse_expr(text)?;
    match p.system.eval(&e) {
        Err(Error::NegativePowerOfNonInvertible(_)) => laurent_for(&p.system, &e)?.eval(&e),
        r => r,
    }
}

fn monomial(p: &AlgebraPresentation, text: &str) -> Result<Monomial> {
    p.parse_expr(text)?
        .as_monomial(p.nvars())
        .ok_or_else(|| Error::InvalidArgument(format!("`{text}` is not a monomial")))
}

fn envelope(command: &str, result: Value) -> String {
    let v = json!({ "schema": JSON_SCHEMA, "command": command, "result": result });
    format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("plain data")
}

fn render_map(lines: &[(String, String)]) -> String {
    lines.iter().map(|(g, img)| format!("{g} -> {img}\n")).collect()
}

fn map_json(lines: &[(String, String)]) -> Value {
    Value::Array(lines.iter().map(|(g, img)| json!({ "generator": g, "image": img })).collect())
}

fn thm32_text(r: &Thm32Report) -> String {
    let mut s = String::new();
    let case = match r.case {
        solve::Thm32Case::One => 1,
        solve::Thm32Case::Two => 2,
    };
    let _ = writeln!(s, "case {case}, w = {}, m = {}", r.w, r.m);
    for c in &r.checks {
        let _ = writeln!(s, "{} = {} ({})", c.name, c.value, if c.in_ring { "in ring" } else { "not in ring" });
    }
    match (&r.rejection, &r.images) {
        (Some(why), _) => {
            let _ = writeln!(s, "rejected: {why}");
        }
        (None, Some(images)) => {
            s.push_str("accepted\n");
            s.push_str(&render_map(images));
            if let Some((a, b)) = &r.certificate {
                let _ = writeln!(s, "certificate: a = {a}, b = {b}");
            }
        }
        (None, None) => {}
    }
    s
}

fn dispatch(command: Command, as_json: bool) -> Result<Outcome> {
    let out = |name: &str, text: String, value: Value| Outcome::ok(if as_json { envelope(name, value) } else { text });
    Ok(match command {
        Command::Validate { file } => {
            let p = load(&file)?;
            let rep = validate_presentation(&p);
            let mut text = format!("{} ({})\n", p.name, p.kind);
            for c in &rep.checks {
                let status = match c.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Warn => "warn",
                    Status::Skip => "skip",
                };
                let _ = writeln!(
                    text,
                    "{status:<4} {}{}",
                    c.check,
                    if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) }
                );
            }
            let value = json!({ "name": p.name, "kind": p.kind.to_string(), "passed": rep.passed(), "checks": to_value(&rep.checks) });
            let mut o = out("validate", text, value);
            if !rep.passed() {
                o.code = 1;
            }
            o
        }
        Command::Fmt { file } => {
            let p = load(&file)?;
            let src = p.to_source();
            out("fmt", src.clone(), json!({ "source": src }))
        }
        Command::Nf { file, expr } => {
            let p = load(&file)?;
            let r = p.system.format(&eval(&p, &expr)?);
            out("nf", format!("{r}\n"), json!({ "normal_form": r }))
        }
        Command::Conj { file, mono, expr } => {
            let p = load(&file)?;
            let d = monomial(&p, &mono)?;
            let s = auto::conjugation_automorphism(&d, &p)?;
            match expr {
                Some(e) => {
                    let r = p.system.format(&s.apply(&p.system, &p.eval_str(&e)?)?);
                    out("conj", format!("{r}\n"), json!({ "monomial": mono, "image": r }))
                }
                None => {
                    let lines = s.render(&p.system);
                    out("conj", render_map(&lines), json!({ "monomial": mono, "images": map_json(&lines) }))
                }
            }
        }
        Command::Monotone { file, expr } => {
            let p = load(&file)?;
            let w = eval(&p, &expr)?;
            let rep = auto::is_monotone(&w, &p)?;
            let (v, steps) = auto::extract_monotone_trace(&w, &p)?;
            let mut text = format!("monotone: {}\n", rep.is_monotone);
            if let Some(pi) = &rep.pi {
                let _ = writeln!(text, "pi: {pi}");
            }
            if let Some((a, b)) = &rep.witness {
                let _ = writeln!(text, "witness: {a}, {b}");
            }
            for (k, st) in steps.iter().enumerate() {
                let _ = writeln!(text, "step {}: x = {}, leading {}: {}", k + 1, st.generator, st.leading, st.result);
            }
            let result = p.system.format(&v);
            let _ = writeln!(text, "extracted: {result}");
            out("monotone", text, json!({ "report": to_value(&rep), "steps": to_value(&steps), "extracted": result }))
        }
        Command::CentralFactor { file, expr } => {
            let p = load(&file)?;
            let (d, f) = auto::central_factor(&eval(&p, &expr)?, &p)?;
            let (d, f) = (p.system.format_monomial(&d), p.system.format(&f));
            out("central-factor", format!("monomial: {d}\nfactor: {f}\n"), json!({ "monomial": d, "factor": f }))
        }
        Command::Semiinv { file, expr } => {
            let p = load(&file)?;
            let rep = auto::is_semi_invariant(&eval(&p, &expr)?, &p)?;
            let mut text = format!("homogeneous: {}\n", rep.homogeneous);
            if let Some(g) = &rep.grade {
                let g: Vec<String> = g.iter().map(i64::to_string).collect();
                let _ = writeln!(text, "grade: ({})", g.join(","));
            }
            match &rep.weights {
                Some(w) => {
                    let w: Vec<String> = w.iter().map(|(g, a)| format!("{g}: {a}")).collect();
                    let _ = writeln!(text, "semi-invariant: true\nweights: {}", w.join(", "));
                }
                None => text.push_str("semi-invariant: false\n"),
            }
            out("semiinv", text, to_value(&rep))
        }
        Command::DerSolve { file, bound } => {
            let p = load(&file)?;
            let view = OreView::new(&p)?;
            let r = solve::solve_in_view(&view, bound)?;
            let text = match &r {
                DerivationSolve::Witness(w) => {
                    let mut t = format!("c = {}\n", view.sys.format(&w.c));
                    for k in &w.kernel {
                        let _ = writeln!(t, "kernel: {}", view.sys.format(k));
                    }
                    t
                }
                DerivationSolve::NoneInBox { bound, unknowns } => {
                    format!("none in box [-{bound},{bound}] ({unknowns} unknowns)\n")
                }
            };
            out("der-solve", text, r.to_json(&view))
        }
        Command::Thm32 { file, case, w, m, bound } => {
            let p = load(&file)?;
            let view = OreView::new(&p)?;
            let w = monomial(&p, &w)?;
            let rep = if case == "1" {
                solve::case1_in_view(&view, &w)?
            } else {
                let sol = solve::solve_in_view(&view, bound)?;
                let Some(wit) = sol.witness() else {
                    return Err(Error::UnverifiedWitness(format!("no inner witness in the box [-{bound},{bound}]")));
                };
                solve::case2_in_view(&view, &w, m, &wit.c)?
            };
            let mut o = out("thm32", thm32_text(&rep), to_value(&rep));
            if !rep.accepted {
                o.code = 1;
            }
            o
        }
        Command::Verify { file, a, b, sigma } => {
            let p = load(&file)?;
            let s = Automorphism::parse(&p, &sigma)?;
            let ok = solve::verify_inducing(&p.eval_str(&a)?, &p.eval_str(&b)?, &s, &p)?;
            let mut o = out("verify", format!("{ok}\n"), json!({ "induces": ok }));
            if !ok {
                o.code = 1;
            }
            o
        }
        Command::Order { file, sigma } => {
            let p = load(&file)?;
            let s = Automorphism::parse(&p, &sigma)?;
            let ord = s.order(&p.system)?;
            let text = match ord {
                AutOrder::Finite(n) => format!("finite {n}\n"),
                AutOrder::Infinite => "infinite\n".to_string(),
            };
            out("order", text, to_value(&ord))
        }
        Command::Fixtures { action } => match action {
            FixtureAction::List => {
                let ids: Vec<&str> = fixtures::all().iter().map(|f| f.id).collect();
                out("fixtures list", ids.iter().map(|i| format!("{i}\n")).collect(), json!(ids))
            }
            FixtureAction::Run { ids } => {
                let selected = fixtures::select(&ids)?;
                let summary = fixtures::run_all(&selected);
                let mut o = out("fixtures run", summary.render(), to_value(&summary));
                if !summary.passed() {
                    o.code = 1;
                }
                o
            }
        },
    })
}

/// Run one invocation; `args` excludes the program name.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = std::iter::once("qalg".to_string()).chain(args.into_iter().map(Into::into)).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    match dispatch(cli.command, cli.json) {
        Ok(o) => o,
        Err(e) => Outcome::error(&e),
    }
}

pub fn main() -> ExitCode {
    let o = run(std::env::args().skip(1));
    print!("{}", o.stdout);
    eprint!("{}", o.stderr);
    ExitCode::from(o.code)
}
