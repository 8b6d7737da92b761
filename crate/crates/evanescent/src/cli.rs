//! Command-line front end. Results go to `out`, diagnostics to `err`.
//!
//! Exit codes: 2 for usage and input errors, 1 for a failed verification or
//! a non-evanescent `check --expect-evanescent`, 0 otherwise.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::baric::{
    algebra_from_json, algebra_to_json, char_poly, left_mult_matrix, rational_roots, spectrum_algebra, verify_identity,
    Vector, Verdict, DEFAULT_TRIALS,
};
use crate::homgen::generate_homogeneous;
use crate::magma::{enumerate, w_number, TypeVector, Variable};
use crate::peirce::{is_evanescent, peirce_json, peirce_recursive, Identity, PeircePolynomial};
use crate::poly::{Polynomial, Rational};
use crate::syntax::{parse, parse_monomial, print, print_monomial, to_json};
use crate::trainsgen::{generate_train_basis, train_identity, Roles, Shape};

#[derive(Parser, Debug)]
#[command(name = "evanescent", version, about = "Peirce polynomials and evanescent identities")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Jsonl,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Peirce polynomial of EXPR in each variable, or in one.
    Peirce {
        expr: String,
        #[arg(long)]
        var: Option<String>,
    },
    /// Evanescence report.
    Check {
        expr: String,
        /// Exit 1 unless EXPR is an evanescent identity.
        #[arg(long)]
        expect_evanescent: bool,
    },
    /// Train identities.
    Train(TrainArgs),
    /// Basis of homogeneous evanescent identities of a type.
    Homog {
        #[arg(long = "type")]
        ty: String,
    },
    /// Monomials of a type in canonical order.
    Enum {
        #[arg(long = "type")]
        ty: String,
    },
    /// Number of monomials of a type.
    Wnumber {
        #[arg(long = "type")]
        ty: String,
    },
    /// Randomized check of an identity on an algebra read from a JSON file.
    Verify {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        identity: String,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Mutation algebra whose idempotent has the given Peirce eigenvalues.
    Spectrum {
        /// Comma-separated rationals, e.g. 0,1/2.
        #[arg(long, allow_hyphen_values = true)]
        eigenvalues: String,
    },
}

#[derive(Args, Debug)]
pub struct TrainArgs {
    /// A shape (n, n,1, n,2, n,1,1) or a concrete type such as 4,1.
    #[arg(long = "type")]
    ty: String,
    /// Train identity of one monomial.
    #[arg(long, conflicts_with = "all")]
    of: Option<String>,
    /// Degrees n for a shape: `6` or `4..8` (inclusive).
    #[arg(long)]
    all: Option<String>,
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Usage {
        Usage(e.to_string())
    }
}

struct Session<'a> {
    format: Format,
    out: &'a mut dyn Write,
}

impl Session<'_> {
    fn line(&mut self, s: &str) {
        // a closed pipe is not worth a panic
        let _ = writeln!(self.out, "{s}");
    }

    fn json(&mut self, v: Value) {
        self.line(&v.to_string());
    }

    fn polynomial(&mut self, f: &Polynomial) {
        match self.format {
            Format::Text => self.line(&print(f)),
            Format::Jsonl => self.json(to_json(f)),
        }
    }

    fn identities(&mut self, ids: &[Identity]) {
        for id in ids {
            self.polynomial(&id.polynomial);
        }
    }
}

fn parse_type(s: &str) -> Result<TypeVector, Usage> {
    s.parse::<TypeVector>().map_err(Usage)
}

fn parse_var(s: &str) -> Result<Variable, Usage> {
    let f = parse(s)?;
    let leaf = f.terms().next().and_then(|(w, c)| w.as_leaf().filter(|_| c == &Rational::from_integer(1.into())));
    match leaf {
        Some(v) if f.len() == 1 => Ok(v),
        _ => Err(Usage(format!("not a variable: {s:?}"))),
    }
}

fn parse_degrees(s: &str) -> Result<Vec<u32>, Usage> {
    let bad = || Usage(format!("bad degree range {s:?}"));
    match s.split_once("..") {
        Some((lo, hi)) => {
            let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
            let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
            Ok((lo..=hi).collect())
        }
        None => Ok(vec![s.trim().parse().map_err(|_| bad())?]),
    }
}

fn peirce_text(v: Variable, p: &PeircePolynomial) -> String {
    format!("d_{v} = {p}")
}

fn vector_text(v: &Vector) -> String {
    let parts: Vec<String> = v.iter().map(Rational::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn vector_json(v: &Vector) -> Value {
    json!(v.iter().map(Rational::to_string).collect::<Vec<_>>())
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, Usage> {
    let mut s = Session { format: cli.format, out };
    match cli.command {
        Command::Peirce { expr, var } => {
            let f = parse(&expr)?;
            let vars = match var {
                Some(v) => vec![parse_var(&v)?],
                None => f.variables(),
            };
            for v in vars {
                let p = peirce_recursive(&f, v);
                match s.format {
                    Format::Text => s.line(&peirce_text(v, &p)),
                    Format::Jsonl => s.json(peirce_json(v, &p)),
                }
            }
            Ok(0)
        }
        Command::Check { expr, expect_evanescent } => {
            let f = parse(&expr)?;
            let report = is_evanescent(&f);
            match s.format {
                Format::Text => {
                    s.line(report.verdict());
                    for (v, p) in &report.peirce {
                        s.line(&peirce_text(*v, p));
                    }
                    s.line(&format!("f(1) = {}", report.value_at_ones));
                }
                Format::Jsonl => {
                    let peirce: Vec<Value> = report.peirce.iter().map(|(v, p)| peirce_json(*v, p)).collect();
                    s.json(json!({
                        "verdict": report.verdict(),
                        "evanescent_identity": report.is_evanescent_identity,
                        "peirce_evanescent": report.is_peirce_evanescent,
                        "value_at_ones": report.value_at_ones.to_string(),
                        "peirce": peirce,
                    }));
                }
            }
            Ok(if expect_evanescent && !report.is_evanescent_identity { 1 } else { 0 })
        }
        Command::Train(args) => {
            let shape = args.ty.parse::<Shape>().ok();
            if let Some(expr) = args.of {
                let w = parse_monomial(&expr)?;
                let shape = match shape {
                    Some(shape) => shape,
                    None => {
                        let ty = parse_type(&args.ty)?;
                        if w.type_vector() != ty {
                            return Err(Usage(format!(
                                "{} has type {}, not {ty}",
                                print_monomial(&w),
                                w.type_vector()
                            )));
                        }
                        Roles::detect(&ty)?.shape
                    }
                };
                s.identities(&[train_identity(&w, shape)?]);
            } else if let Some(shape) = shape {
                let degrees = args.all.ok_or_else(|| Usage("a shape needs --all DEGREES or --of EXPR".to_string()))?;
                for n in parse_degrees(&degrees)? {
                    if n >= shape.min_degree() {
                        s.identities(&generate_train_basis(&shape.type_vector(n))?);
                    }
                }
            } else {
                if args.all.is_some() {
                    return Err(Usage("--all takes a shape such as n,1".to_string()));
                }
                s.identities(&generate_train_basis(&parse_type(&args.ty)?)?);
            }
            Ok(0)
        }
        Command::Homog { ty } => {
            s.identities(&generate_homogeneous(&parse_type(&ty)?));
            Ok(0)
        }
        Command::Enum { ty } => {
            for w in enumerate(&parse_type(&ty)?).iter() {
                match s.format {
                    Format::Text => s.line(&print_monomial(w)),
                    Format::Jsonl => s.json(json!({ "monomial": print_monomial(w) })),
                }
            }
            Ok(0)
        }
        Command::Wnumber { ty } => {
            let ty = parse_type(&ty)?;
            let w = w_number(&ty);
            match s.format {
                Format::Text => s.line(&w.to_string()),
                Format::Jsonl => s.json(json!({ "type": ty.to_string(), "w": w.to_string() })),
            }
            Ok(0)
        }
        Command::Verify { algebra, identity, trials, seed } => {
            if trials == 0 {
                return Err(Usage("--trials must be at least 1".to_string()));
            }
            let text = std::fs::read_to_string(&algebra).map_err(|e| Usage(format!("{algebra}: {e}")))?;
            let a = algebra_from_json(&text)?;
            let f = parse(&identity)?;
            let verdict = verify_identity(&f, &a, trials, seed);
            match s.format {
                Format::Text => {
                    s.line(&format!("# seed {seed} trials {trials}"));
                    match &verdict {
                        Verdict::Pass { trials } => s.line(&format!("pass ({trials} trials)")),
                        Verdict::Fail(c) => {
                            let kind = if c.weighted { "weighted" } else { "weight-1" };
                            s.line(&format!("fail at trial {} ({kind} binding)", c.trial));
                            for (v, x) in &c.binding {
                                s.line(&format!("{v} = {}", vector_text(x)));
                            }
                            s.line(&format!("value = {}", vector_text(&c.value)));
                        }
                    }
                }
                Format::Jsonl => {
                    s.json(json!({ "seed": seed, "trials": trials }));
                    match &verdict {
                        Verdict::Pass { trials } => s.json(json!({ "verdict": "pass", "trials": trials })),
                        Verdict::Fail(c) => {
                            let binding: serde_json::Map<String, Value> =
                                c.binding.iter().map(|(v, x)| (v.name(), vector_json(x))).collect();
                            s.json(json!({
                                "verdict": "fail",
                                "trial": c.trial,
                                "weighted": c.weighted,
                                "binding": binding,
                                "value": vector_json(&c.value),
                            }));
                        }
                    }
                }
            }
            Ok(if verdict.passed() { 0 } else { 1 })
        }
        Command::Spectrum { eigenvalues } => {
            let lambdas: Vec<Rational> = eigenvalues
                .split(',')
                .map(str::trim)
                .filter(|p| !p.is_empty())
                .map(|p| p.parse().map_err(|_| Usage(format!("bad rational {p:?}"))))
                .collect::<Result<_, _>>()?;
            let (a, e) = spectrum_algebra(&lambdas);
            let cp = char_poly(&left_mult_matrix(&a, &e)?);
            let (roots, rest) = rational_roots(&cp);
            let root_strings: Vec<String> = roots.iter().map(Rational::to_string).collect();
            let irreducible = rest.degree().is_some_and(|d| d > 0);
            match s.format {
                Format::Text => {
                    s.line(&format!("algebra {}", algebra_to_json(&a)));
                    s.line(&format!("idempotent {}", vector_text(&e)));
                    s.line(&format!("charpoly {}", cp.to_string().replace('t', "X")));
                    s.line(&format!("roots {}", root_strings.join(", ")));
                    if irreducible {
                        s.line(&format!("unfactored {}", rest.to_string().replace('t', "X")));
                    }
                }
                Format::Jsonl => {
                    let algebra: Value = serde_json::from_str(&algebra_to_json(&a)).expect("valid json");
                    let coeffs: Vec<String> = cp.coeffs().iter().map(Rational::to_string).collect();
                    s.json(json!({
                        "algebra": algebra,
                        "idempotent": vector_json(&e),
                        "charpoly": coeffs,
                        "roots": root_strings,
                        "unfactored": if irreducible {
                            json!(rest.coeffs().iter().map(Rational::to_string).collect::<Vec<_>>())
                        } else {
                            Value::Null
                        },
                    }));
                }
            }
            Ok(0)
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{rendered}") } else { write!(out, "{rendered}") };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
    }
}
