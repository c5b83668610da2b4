use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qcalc_core::gauge::{self, GaugeTransformation};
use qcalc_core::parse::{parse_generator, parse_scalar, split_list, ParseError};
use qcalc_core::report::Report;
use qcalc_core::rn::{CalculusSpec, GradedForm};
use qcalc_core::suites;
use qcalc_core::Scalar;

#[derive(Parser)]
#[command(name = "qcalc", version, about = "Exact bicovariant calculi, quantum tangent spaces and gauge theory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Checks on U_q(su_2): Hopf axioms, the Casimir tangent space, the braided Lie table
    Suq2 {
        #[arg(long, value_parser = ["hopf", "casimir", "bralie", "check-L"])]
        suite: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Tangent space and bimodule relations of the calculus generated by c(p)
    Tangent {
        /// Generator, e.g. "p^3/6" or "lam^-2*exp(lam*p)"
        #[arg(long)]
        c: String,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        vars: u8,
    },
    /// Relations of a named calculus
    Calculus {
        /// jet:<n>, fd:1 or fd:2
        #[arg(long)]
        spec: String,
        #[arg(long, value_enum, default_value_t = Show::Relations)]
        show: Show,
    },
    /// Gauge theory over a named calculus
    Gauge {
        #[arg(long)]
        spec: String,
        /// Comma-separated components of alpha, one per basis 1-form
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        gamma: Option<String>,
        /// Matter field for the lemma checks (default: the symbol f)
        #[arg(long)]
        psi: Option<String>,
        #[arg(long, value_enum)]
        op: Op,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, default_value = "all", value_parser = ["all", "hopf", "casimir", "bralie", "check-L", "jets", "finite-diff", "gauge-jet", "gauge-fd"])]
        suite: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Show {
    Relations,
    Omega2,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Curvature,
    Transform,
    Flat,
    Lemmas,
}

/// Successful runs report whether every check held.
type Outcome = Result<bool, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Suq2 { suite, json } => suq2(suite.as_deref(), json),
        Command::Tangent { c, vars } => tangent(&c, vars as usize),
        Command::Calculus { spec, show } => calculus(&spec, show),
        Command::Gauge { spec, alpha, gamma, psi, op } => gauge_cmd(&spec, &alpha, gamma.as_deref(), psi.as_deref(), op),
        Command::Verify { suite, json } => verify(&suite, json),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("{message}");
            ExitCode::from(2)
        }
    }
}

fn parse_failure(input: &str, e: &ParseError) -> String {
    format!("error: {e}\n  {input}\n  {}^", " ".repeat(e.column.saturating_sub(1)))
}

fn emit(report: &Report, json: bool) -> bool {
    if json {
        println!("{}", report.to_json_string());
    } else {
        print!("{}", report.to_text());
    }
    report.all_passed()
}

fn suq2(suite: Option<&str>, json: bool) -> Outcome {
    let report = match suite {
        Some(s) => suites::run_suite(s).expect("validated by clap"),
        None => {
            let mut all = Report::new("suq2");
            for s in ["hopf", "casimir", "bralie", "check-L"] {
                all.absorb(suites::run_suite(s).expect("known suite"));
            }
            all
        }
    };
    Ok(emit(&report, json))
}

fn verify(suite: &str, json: bool) -> Outcome {
    Ok(emit(&suites::run_suite(suite).expect("validated by clap"), json))
}

fn spec_named(name: &str) -> Result<CalculusSpec, String> {
    CalculusSpec::named(name).map_err(|e| format!("error: {e} (expected jet:<n>, fd:1 or fd:2)"))
}

fn tangent(c: &str, vars: usize) -> Outcome {
    let generator = parse_generator(c, vars).map_err(|e| parse_failure(c, &e))?;
    let spec = CalculusSpec::from_generator(generator.clone(), vars).map_err(|e| format!("error: {e}"))?;
    let mut out = String::new();
    writeln!(out, "c = {generator}").unwrap();
    writeln!(out, "derivative closure:").unwrap();
    for d in &spec.tangent.derived {
        let name = match (vars, d.index) {
            (1, [i, _]) => format!("∂_p^{i} c"),
            (_, [i, j]) => format!("∂_p^{i} ∂_q^{j} c"),
        };
        writeln!(out, "  {name} = {}", d.function).unwrap();
    }
    writeln!(out, "dim L = {}", spec.dimension()).unwrap();
    writeln!(out, "basis:").unwrap();
    for (b, form) in spec.tangent.basis.iter().zip(&spec.forms) {
        writeln!(out, "  {} = {}    dual form {form}", b.label, b.function).unwrap();
    }
    let closure = spec.tangent.translation_closure_report();
    writeln!(out, "translation closed: {}", if closure.iter().all(|(_, ok)| *ok) { "yes" } else { "no" }).unwrap();
    writeln!(out, "relations:").unwrap();
    for r in spec.relations() {
        writeln!(out, "  {r}").unwrap();
    }
    print!("{out}");
    Ok(true)
}

fn calculus(name: &str, show: Show) -> Outcome {
    let spec = spec_named(name)?;
    match show {
        Show::Relations => {
            println!("calculus {} (dim {}), 1-forms: {}", spec.name, spec.dimension(), spec.forms.join(", "));
            for r in spec.relations() {
                println!("  {r}");
            }
        }
        Show::Omega2 => {
            let omega = spec.omega2.as_ref().ok_or_else(|| format!("error: no second-order forms for {}", spec.name))?;
            let dim = omega.names.len();
            let render = |entries: &[(usize, Scalar)]| {
                let mut coeffs = vec![Scalar::zero(); dim];
                for (k, s) in entries {
                    coeffs[*k] = s.clone();
                }
                spec.display(&GradedForm { degree: 2, coeffs }).to_string()
            };
            println!("calculus {}: Ω² has dimension {dim}{}", spec.name, if dim > 0 { format!(", basis {}", omega.names.join(", ")) } else { String::new() });
            for (i, a) in spec.forms.iter().enumerate() {
                for (j, b) in spec.forms.iter().enumerate() {
                    println!("  {a} ∧ {b} = {}", render(&omega.wedge[i][j]));
                }
            }
            for (m, a) in spec.forms.iter().enumerate() {
                println!("  d({a}) = {}", render(&omega.d_theta[m]));
            }
            for r in spec.relations().into_iter().skip(spec.dimension()) {
                println!("  {r}");
            }
        }
    }
    Ok(true)
}

fn scalar_arg(text: &str) -> Result<Scalar, String> {
    parse_scalar(text).map_err(|e| parse_failure(text, &e))
}

fn gauge_cmd(name: &str, alpha: &str, gamma: Option<&str>, psi: Option<&str>, op: Op) -> Outcome {
    let spec = spec_named(name)?;
    let components = split_list(alpha).iter().map(|c| scalar_arg(c)).collect::<Result<Vec<_>, _>>()?;
    if components.len() != spec.dimension() {
        return Err(format!("error: {} needs {} components of alpha ({}), got {}", spec.name, spec.dimension(), spec.forms.join(", "), components.len()));
    }
    let field = gauge::gauge_field(&spec, components).map_err(|e| format!("error: {e}"))?;
    let transformation = |text: &str| -> Result<GaugeTransformation, String> {
        GaugeTransformation::new(scalar_arg(text)?).map_err(|e| format!("error: {e}"))
    };
    let fail = |e: gauge::GaugeError| format!("error: {e}");
    println!("alpha = {}", spec.display(&field));
    match op {
        Op::Curvature => {
            let f = gauge::curvature(&spec, &field).map_err(fail)?;
            println!("F = {}", spec.display(&f));
            Ok(true)
        }
        Op::Transform => {
            let text = gamma.ok_or("error: --op transform needs --gamma")?;
            let g = transformation(text)?;
            let transformed = gauge::gauge_transform(&spec, &field, &g).map_err(fail)?;
            let f = gauge::curvature(&spec, &transformed).map_err(fail)?;
            println!("gamma = {}", g.gamma());
            println!("alpha^gamma = {}", spec.display(&transformed));
            println!("F(alpha^gamma) = {}", spec.display(&f));
            Ok(true)
        }
        Op::Flat => {
            let f = gauge::curvature(&spec, &field).map_err(fail)?;
            if f.is_zero() {
                println!("flat");
                Ok(true)
            } else {
                println!("not flat: F = {}", spec.display(&f));
                Ok(false)
            }
        }
        Op::Lemmas => {
            let g = transformation(gamma.unwrap_or("g"))?;
            let psi = scalar_arg(psi.unwrap_or("f"))?;
            let mut report = Report::new("lemmas");
            report.extend(gauge::verify_lemmas(&spec, &field, &g, &psi).map_err(fail)?);
            Ok(emit(&report, false))
        }
    }
}
