//! Command-line front end.
//!
//! Exit codes: 0 success, 1 violation (or surviving search candidate) found,
//! 2 usage or configuration error, 3 inconclusive.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::division::{self, CandidateDivision};
use crate::error::{Error, Result};
use crate::func::EuclideanFn;
use crate::lab::{self, CheckOptions};
use crate::refine::{self, RefineStrategy};
use crate::report::{self, Format, Report};
use crate::ring::{Domain, Element, Kind, Window};
use crate::search::{self, FamilySpec, Generator};
use crate::verdict::{Property, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

const ELEMENT_HELP: &str = "\
Element syntax:
  integers        17, -3
  finite fields   residues 0..q-1; over F_4 also a (α) and b (β)
  polynomials     a*x^2+b, x^3+x+1, 2*x-1   (coefficients in the field)
  series          same as polynomials; terms of degree >= precision are dropped
  quadratic       u+v*sqrt(d) with u, v integers or halves n/2 when d = 1 mod 4,
                  e.g. 7+2*sqrt(-1), 2-i, 1/2+1/2*sqrt(-3)

Exit codes: 0 ok, 1 violation found, 2 usage error, 3 inconclusive.
Set EUCLID_LAB_THREADS to cap worker threads (0 = automatic).";

#[derive(Parser, Debug)]
#[command(name = "euclid-lab", version, about = "Euclidean functions on small Euclidean domains", after_help = ELEMENT_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical division a = q·b + r.
    Divide {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pair: Pair,
    },
    /// Every valid division of a by b under f.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pair: Pair,
    },
    /// Extended gcd g = s·a + t·b.
    Gcd {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pair: Pair,
    },
    /// Check one property over a window.
    Check {
        #[command(flatten)]
        common: Common,
        /// euclidean, strongly, ultra, uniquely, unit_equality, min_at_units, unit_field_closure
        #[arg(long)]
        property: String,
        /// Report every witness instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// The four predicates and their theorem relations.
    Matrix {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        all: bool,
    },
    /// The refinement f̃(a) = min f(ab), at one element or over the window.
    Refine {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
    },
    /// Digits of a in base x by repeated unique division.
    Decompose {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        base: String,
    },
    /// Search a family of functions for counterexamples to
    /// "f ultra-Euclidean implies f̃ ultra-Euclidean".
    Search(SearchArgs),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Z, quad, field, poly or series
    #[arg(long, default_value = "Z")]
    domain: String,
    /// d for quadratic rings: -11, -7, -3, -2, -1, 2, 3
    #[arg(long, allow_hyphen_values = true)]
    d: Option<i64>,
    /// Field order: 2, 3, 4, 5, 7
    #[arg(long)]
    q: Option<u8>,
    /// Series precision T (arithmetic mod x^T)
    #[arg(long, default_value_t = 8)]
    precision: usize,
    /// abs, deg, ord, norm, phi-deg or table; defaults to the domain's own
    #[arg(long = "fn")]
    function: Option<String>,
    /// phi values for phi-deg, e.g. 1,2,4
    #[arg(long)]
    phi: Option<String>,
    /// Field table values in element order, e.g. 0,1,1
    #[arg(long)]
    table: Option<String>,
    /// Overridden values, e.g. "3:9,-3:9"
    #[arg(long, allow_hyphen_values = true)]
    except: Option<String>,
    /// Window bound: |n| for Z, doubled coordinates for quad, degree for poly
    #[arg(long)]
    max: Option<u64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Include wall-clock timing in the report
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug, Clone)]
struct Pair {
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
}

#[derive(Args, Debug, Clone)]
struct SearchArgs {
    /// TOML or JSON campaign file; keys as the flags below
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    domain: Option<String>,
    #[arg(long)]
    q: Option<u8>,
    /// tables, phi-deg or integers
    #[arg(long)]
    generator: Option<String>,
    #[arg(long)]
    max_value: Option<u64>,
    #[arg(long)]
    max_degree: Option<usize>,
    /// Perturbation points for the integer family, |n| ≤ bound
    #[arg(long)]
    bound: Option<u64>,
    /// Overridden points per function
    #[arg(long)]
    exceptions: Option<usize>,
    /// Maximum number of functions
    #[arg(long)]
    budget: Option<usize>,
    /// Search window bound
    #[arg(long)]
    max: Option<u64>,
    /// Re-check stage-two functions at this larger bound
    #[arg(long)]
    verify_max: Option<u64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[arg(long)]
    timing: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Json,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        }
    }
}

/// Campaign file contents. Flags given on the command line take precedence.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct Campaign {
    domain: Option<String>,
    q: Option<u8>,
    generator: Option<String>,
    max_value: Option<u64>,
    max_degree: Option<usize>,
    bound: Option<u64>,
    exceptions: Option<usize>,
    budget: Option<usize>,
    max: Option<u64>,
    verify_max: Option<u64>,
}

/// A finished command: report plus exit code.
struct Outcome {
    result: Value,
    exit: i32,
}

/// Runs the CLI on `argv` (program name first), writing reports to `out`
/// and diagnostics to `err`. Returns the exit code.
pub fn run_cli_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let threads = match std::env::var("EUCLID_LAB_THREADS") {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) => n,
            Err(_) => {
                let _ = writeln!(
                    err,
                    "error: EUCLID_LAB_THREADS must be a non-negative integer, got {s:?}"
                );
                return EXIT_USAGE;
            }
        },
        Err(_) => 0,
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return EXIT_USAGE;
        }
    };
    let (format, timing) = match &cli.command {
        Command::Search(s) => (s.format.into(), s.timing),
        Command::Divide { common, .. }
        | Command::Enumerate { common, .. }
        | Command::Gcd { common, .. }
        | Command::Check { common, .. }
        | Command::Matrix { common, .. }
        | Command::Refine { common, .. }
        | Command::Decompose { common, .. } => (common.format.into(), common.timing),
    };
    let start = Instant::now();
    match pool.install(|| dispatch(&cli.command)) {
        Ok((command, outcome)) => {
            let mut report = Report::new(command, outcome.result);
            if timing {
                report.timing = Some(json!({ "elapsed_ms": start.elapsed().as_secs_f64() * 1e3 }));
            }
            let _ = out.write_all(report::emit_report(&report, format).as_bytes());
            outcome.exit
        }
        Err(e) => {
            let code = if e.is_undecidable() {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_USAGE
            };
            let _ = match format {
                Format::Json => {
                    let diag =
                        json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } });
                    writeln!(err, "{diag}")
                }
                Format::Text => writeln!(err, "error[{}]: {e}", error_kind(&e)),
            };
            code
        }
    }
}

/// Runs the CLI against the process arguments and standard streams.
pub fn run_cli() -> i32 {
    let argv: Vec<String> = std::env::args().collect();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with(&argv, &mut stdout.lock(), &mut stderr.lock())
}

fn error_kind(e: &Error) -> String {
    let debug = format!("{e:?}");
    let name: String = debug.chars().take_while(|c| c.is_alphanumeric()).collect();
    let mut snake = String::new();
    for (i, c) in name.chars().enumerate() {
        if c.is_uppercase() {
            if i > 0 {
                snake.push('_');
            }
            snake.extend(c.to_lowercase());
        } else {
            snake.push(c);
        }
    }
    snake
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn parse_domain(name: &str, d: Option<i64>, q: Option<u8>, precision: usize) -> Result<Domain> {
    let need_q = || q.ok_or_else(|| Error::InvalidDomain(format!("{name} needs --q")));
    match name.to_ascii_lowercase().as_str() {
        "z" | "int" | "integers" => Ok(Domain::integers()),
        "quad" | "o" | "quadratic" => {
            Domain::quadratic(d.ok_or_else(|| Error::InvalidDomain("quad needs --d".into()))?)
        }
        "gaussian" => Ok(Domain::gaussian()),
        "field" | "f" => Domain::field(need_q()?),
        "poly" => Domain::poly(need_q()?),
        "series" => Domain::series(need_q()?, precision),
        _ => Err(Error::InvalidDomain(format!(
            "unknown domain {name:?}; expected Z, quad, field, poly or series"
        ))),
    }
}

fn parse_values(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| usage(format!("expected a non-negative integer, got {t:?}")))
        })
        .collect()
}

fn parse_function(c: &Common, domain: Domain) -> Result<EuclideanFn> {
    let base = match c.function.as_deref() {
        None => EuclideanFn::default_for(domain),
        Some("abs") => EuclideanFn::AbsValue,
        Some("deg") => EuclideanFn::Degree,
        Some("ord") => EuclideanFn::Order,
        Some("norm") => EuclideanFn::QuadNorm,
        Some("phi-deg") => {
            let phi = c
                .phi
                .as_deref()
                .ok_or_else(|| usage("phi-deg needs --phi"))?;
            EuclideanFn::phi_deg(parse_values(phi)?)
        }
        Some("table") => {
            let table = c
                .table
                .as_deref()
                .ok_or_else(|| usage("table needs --table"))?;
            EuclideanFn::field_table(domain, &parse_values(table)?)?
        }
        Some(other) => {
            return Err(usage(format!(
                "unknown function {other:?}; expected abs, deg, ord, norm, phi-deg or table"
            )))
        }
    };
    let f = match &c.except {
        None => base,
        Some(spec) => {
            let mut exceptions = Vec::new();
            for item in spec.split(',') {
                let (e, v) = item
                    .rsplit_once(':')
                    .ok_or_else(|| usage(format!("exception {item:?} is not element:value")))?;
                let e = Element::parse(domain, e.trim())?;
                let v = v
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| usage(format!("bad exception value in {item:?}")))?;
                exceptions.push((e, v));
            }
            EuclideanFn::with_exceptions(base, exceptions)
        }
    };
    f.validate()?;
    f.compat(domain)?;
    Ok(f)
}

fn parse_window(domain: Domain, max: Option<u64>) -> Result<Window> {
    match max {
        Some(m) => Window::bounded(domain, m),
        None => Ok(Window::default_for(domain)),
    }
}

/// Parsed domain, function and window, echoed into every report.
struct Setup {
    domain: Domain,
    f: EuclideanFn,
    window: Window,
    echo: serde_json::Map<String, Value>,
}

fn setup(name: &str, c: &Common) -> Result<Setup> {
    let domain = parse_domain(&c.domain, c.d, c.q, c.precision)?;
    let f = parse_function(c, domain)?;
    let window = parse_window(domain, c.max)?;
    let mut echo = serde_json::Map::new();
    echo.insert("command".into(), name.into());
    echo.insert("domain".into(), report::domain(domain));
    echo.insert("function".into(), f.to_string().into());
    echo.insert("window".into(), report::window(window));
    Ok(Setup {
        domain,
        f,
        window,
        echo,
    })
}

fn verdict_exit(v: &Verdict, skipped: u64) -> i32 {
    if v.is_violated() {
        EXIT_VIOLATION
    } else if skipped > 0 {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    }
}

fn dispatch(cmd: &Command) -> Result<(Value, Outcome)> {
    match cmd {
        Command::Divide { common, pair } => {
            let mut s = setup("divide", common)?;
            let (a, b) = operands(&s, pair)?;
            let (q, r) = division::canonical_divide(&a, &b)?;
            let d = CandidateDivision::judge(&s.f, &a, &b, &q, &r)?;
            let result = report::division(&d);
            Ok((
                s.finish(),
                Outcome {
                    result,
                    exit: EXIT_OK,
                },
            ))
        }
        Command::Enumerate { common, pair } => {
            let mut s = setup("enumerate", common)?;
            let (a, b) = operands(&s, pair)?;
            let res = division::enumerate_valid_divisions(&s.f, &a, &b, Some(s.window))?;
            let exit = if res.skipped > 0 {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            };
            Ok((
                s.finish(),
                Outcome {
                    result: report::enumeration(&res),
                    exit,
                },
            ))
        }
        Command::Gcd { common, pair } => {
            let mut s = setup("gcd", common)?;
            let (a, b) = operands(&s, pair)?;
            let (g, x, y) = division::gcd_extended(&a, &b)?;
            let text = format!(
                "{g} = {}·{} + {}·{}",
                crate::verdict::paren(&x),
                crate::verdict::paren(&a),
                crate::verdict::paren(&y),
                crate::verdict::paren(&b)
            );
            let result = json!({
                "gcd": report::element(&g),
                "s": report::element(&x),
                "t": report::element(&y),
                "text": text,
            });
            Ok((
                s.finish(),
                Outcome {
                    result,
                    exit: EXIT_OK,
                },
            ))
        }
        Command::Check {
            common,
            property,
            all,
        } => {
            let mut s = setup("check", common)?;
            let p = Property::from_name(property)
                .ok_or_else(|| usage(format!("unknown property {property:?}")))?;
            s.echo.insert("property".into(), p.name().into());
            let opts = CheckOptions {
                all_witnesses: *all,
            };
            if matches!(p, Property::UnitEquality | Property::MinAtUnits) {
                let r = lab::check_unit_lemmas(&s.f, s.domain, s.window, opts)?;
                let chosen = if p == Property::UnitEquality {
                    &r.unit_equality
                } else {
                    &r.min_at_units
                };
                let exit = verdict_exit(&chosen.verdict, chosen.pairs_skipped);
                return Ok((
                    s.finish(),
                    Outcome {
                        result: report::unit_lemmas(&r),
                        exit,
                    },
                ));
            }
            let r = lab::check_property(p, &s.f, s.domain, s.window, opts)?;
            let exit = verdict_exit(&r.verdict, r.pairs_skipped);
            Ok((
                s.finish(),
                Outcome {
                    result: report::property_report(&r),
                    exit,
                },
            ))
        }
        Command::Matrix { common, all } => {
            let mut s = setup("matrix", common)?;
            let m = lab::theorem_matrix(
                &s.f,
                s.domain,
                s.window,
                CheckOptions {
                    all_witnesses: *all,
                },
            )?;
            let reports = [&m.euclidean, &m.strongly, &m.ultra, &m.uniquely];
            let exit = if reports.iter().any(|r| r.verdict.is_violated()) {
                EXIT_VIOLATION
            } else if reports.iter().any(|r| r.pairs_skipped > 0) {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            };
            Ok((
                s.finish(),
                Outcome {
                    result: report::matrix(&m),
                    exit,
                },
            ))
        }
        Command::Refine { common, a } => {
            let mut s = setup("refine", common)?;
            let strategy = RefineStrategy::Auto {
                fallback: Some(s.window),
            };
            if let Some(a) = a {
                let a = Element::parse(s.domain, a)?;
                s.echo.insert("a".into(), report::element(&a));
                let v = refine::refine_eval(&s.f, &a, strategy)?;
                let exit = if v.is_exact() {
                    EXIT_OK
                } else {
                    EXIT_INCONCLUSIVE
                };
                let mut result = report::certified(&v);
                result["element"] = report::element(&a);
                return Ok((s.finish(), Outcome { result, exit }));
            }
            let c = refine::check_refinement_properties(
                &s.f,
                s.domain,
                s.window,
                CheckOptions::default(),
            )?;
            let exit = if c.table.all_exact()
                && c.strongly.pairs_skipped == 0
                && c.ultra.pairs_skipped == 0
            {
                EXIT_OK
            } else {
                EXIT_INCONCLUSIVE
            };
            Ok((
                s.finish(),
                Outcome {
                    result: report::refinement_check(&c),
                    exit,
                },
            ))
        }
        Command::Decompose { common, a, base } => {
            let mut s = setup("decompose", common)?;
            let a = Element::parse(s.domain, a)?;
            let x = Element::parse(s.domain, base)?;
            s.echo.insert("a".into(), report::element(&a));
            s.echo.insert("base".into(), report::element(&x));
            let d = division::decompose_by(&s.f, &a, &x)?;
            Ok((
                s.finish(),
                Outcome {
                    result: report::decomposition(&d),
                    exit: EXIT_OK,
                },
            ))
        }
        Command::Search(args) => run_search(args),
    }
}

impl Setup {
    fn finish(&mut self) -> Value {
        Value::Object(std::mem::take(&mut self.echo))
    }
}

fn operands(s: &Setup, pair: &Pair) -> Result<(Element, Element)> {
    let a = Element::parse(s.domain, &pair.a)?;
    let b = Element::parse(s.domain, &pair.b)?;
    Ok((a, b))
}

fn load_campaign(path: &PathBuf) -> Result<Campaign> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let is_json =
        path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{');
    if is_json {
        serde_json::from_str(&text)
            .map_err(|e| usage(format!("bad campaign file {}: {e}", path.display())))
    } else {
        toml::from_str(&text)
            .map_err(|e| usage(format!("bad campaign file {}: {e}", path.display())))
    }
}

fn run_search(args: &SearchArgs) -> Result<(Value, Outcome)> {
    let file = match &args.config {
        Some(p) => load_campaign(p)?,
        None => Campaign::default(),
    };
    let domain_name = args
        .domain
        .clone()
        .or(file.domain)
        .ok_or_else(|| usage("search needs a domain"))?;
    let q = args.q.or(file.q);
    let domain = parse_domain(&domain_name, None, q, 8)?;
    if matches!(domain.kind(), Kind::Quadratic { .. } | Kind::Series { .. }) {
        return Err(Error::InvalidFamily(format!(
            "no search family for {domain}"
        )));
    }
    let max_value = args
        .max_value
        .or(file.max_value)
        .ok_or_else(|| usage("search needs max_value"))?;
    let exception_budget = args.exceptions.or(file.exceptions).unwrap_or(1);
    let generator_name = args
        .generator
        .clone()
        .or(file.generator)
        .unwrap_or_else(|| {
            match domain.kind() {
                Kind::Field { .. } => "tables",
                Kind::Poly { .. } => "phi-deg",
                _ => "integers",
            }
            .to_string()
        });
    let generator = match generator_name.as_str() {
        "tables" | "all-field-tables" => Generator::AllFieldTables { max_value },
        "phi-deg" | "phi-deg-perturbations" => Generator::PhiDegPerturbations {
            max_degree: args.max_degree.or(file.max_degree).unwrap_or(0),
            max_value,
            exception_budget,
        },
        "integers" | "integer-perturbations" => Generator::IntegerPerturbations {
            bound: args.bound.or(file.bound).unwrap_or(6),
            max_value,
            exception_budget,
        },
        other => return Err(Error::InvalidFamily(format!("unknown generator {other:?}"))),
    };
    let budget = args.budget.or(file.budget).unwrap_or(10_000);
    let family = FamilySpec {
        domain,
        generator,
        budget,
    };
    let window = match args.max.or(file.max) {
        Some(m) => Window::bounded(domain, m)?,
        None => match domain.kind() {
            Kind::Poly { .. } => Window::Degree(3),
            Kind::Integers => Window::Magnitude(20),
            _ => Window::default_for(domain),
        },
    };
    let verify_window = args
        .verify_max
        .or(file.verify_max)
        .map(|m| Window::bounded(domain, m))
        .transpose()?;

    let r = search::run_search(&family, window)?;
    let mut result = report::search(&r, false);
    let mut survivors = !r.candidates.is_empty();
    if let Some(w) = verify_window {
        let mut verified = Vec::new();
        let mut any = false;
        for c in &r.stage_two {
            let v = search::verify_candidate(&c.function, domain, w)?;
            any |= !v.candidates.is_empty();
            verified.push(report::search(&v, true));
        }
        survivors = any;
        result["verification"] = json!({ "window": report::window(w), "reports": verified });
    }
    let command = json!({
        "command": "search",
        "domain": report::domain(domain),
        "generator": format!("{generator:?}"),
        "budget": budget,
        "window": report::window(window),
    });
    let exit = if survivors { EXIT_VIOLATION } else { EXIT_OK };
    Ok((command, Outcome { result, exit }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("euclid-lab")
            .chain(args.iter().copied())
            .map(String::from)
            .collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_cli_with(&argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn check_ultra_on_integers() {
        let (code, out, _) = run(&[
            "check",
            "--domain",
            "Z",
            "--fn",
            "abs",
            "--property",
            "ultra",
            "--max",
            "10",
            "--format",
            "json",
        ]);
        assert_eq!(code, EXIT_VIOLATION);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["witnesses"][0]["a"], "1");
        assert_eq!(v["result"]["witnesses"][0]["b"], "1");
    }

    #[test]
    fn error_kinds_are_snake_case() {
        assert_eq!(error_kind(&Error::DivisionByZero), "division_by_zero");
        assert_eq!(
            error_kind(&Error::InvalidDomain("x".into())),
            "invalid_domain"
        );
    }
}
