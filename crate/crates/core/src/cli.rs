//! The `nullfil` command line.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::enumerate::{basis_monomials, dim_relatively_free, multilinear_codim};
use crate::error::{Error, Result};
use crate::images::{classify, preimage, ImageCase, PreimageResult};
use crate::model::{evaluate, format_assignment, Assignment, Element};
use crate::oracle::{find_witness, identity_oracle};
use crate::rewrite::{is_identity, left_norm_with_stats, reduce};
use crate::scalar::Domain;
use crate::term::{FreePolynomial, MultiDegree};
use crate::text::{parse_in, split_binding};
use crate::verify::{run_all, run_one, DEFAULT_SEED};

#[derive(Parser, Debug)]
#[command(name = "nullfil", version, about = "Identities, normal forms and polynomial images of null-filiform Leibniz algebras")]
struct Cli {
    /// Scalar field: `q` or `fp:P`.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    field: Domain,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct Target {
    /// `n` for L_n or `inf`.
    #[arg(long, value_parser = parse_algebra)]
    algebra: Algebra,
}

#[derive(Args, Debug)]
struct PolyArgs {
    #[command(flatten)]
    target: Target,
    /// Polynomial, e.g. "x1 x2 - x2 x1".
    poly: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Left-norm and reduce modulo the identities of the algebra.
    Reduce(PolyArgs),
    /// Decide whether the polynomial is an identity.
    Identity(PolyArgs),
    /// Describe the image of a multihomogeneous polynomial.
    Classify(PolyArgs),
    /// Find an assignment evaluating to a target element.
    Preimage {
        #[command(flatten)]
        args: PolyArgs,
        /// Element such as "e3" or "4*e2 + 6*e3".
        #[arg(long)]
        target: String,
    },
    /// Evaluate at concrete elements.
    Eval {
        #[command(flatten)]
        args: PolyArgs,
        /// Binding such as "x1=e1+2*e3"; repeatable.
        #[arg(long = "assign")]
        assign: Vec<String>,
    },
    /// Dimension of the relatively free algebra in m variables.
    Dim {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        m: usize,
    },
    /// Canonical basis words of the relatively free algebra.
    Basis {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        m: usize,
        /// List the words, not just counts.
        #[arg(long)]
        words: bool,
    },
    /// Multilinear codimension c_m.
    Codim {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        m: usize,
    },
    /// Run the acceptance suites.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Run a single criterion (1-9).
        #[arg(long)]
        criterion: Option<u8>,
    },
}

fn parse_field(s: &str) -> std::result::Result<Domain, String> {
    match s.trim() {
        "q" | "Q" => Ok(Domain::Rational),
        t => {
            let p = t
                .strip_prefix("fp:")
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| format!("expected 'q' or 'fp:P', got '{t}'"))?;
            Domain::prime(p).map_err(|e| e.to_string())
        }
    }
}

fn parse_algebra(s: &str) -> std::result::Result<Algebra, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Output of one invocation.
pub struct Response {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs `argv` (including the program name). Exit code 0 on success, 1 on a
/// domain error, 2 on a usage error.
pub fn run<I, S>(argv: I) -> Response
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Response {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Response {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let format = cli.format;
    match dispatch(cli) {
        Ok((code, text, value)) => Response {
            code,
            stdout: render(format, text, value),
            stderr: String::new(),
        },
        Err(e) => match format {
            Format::Text => Response {
                code: 1,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            },
            Format::Json => Response {
                code: 1,
                stdout: format!("{}\n", json!({ "error": e.tag(), "message": e.to_string() })),
                stderr: String::new(),
            },
        },
    }
}

fn render(format: Format, text: String, value: Value) -> String {
    match format {
        Format::Text => format!("{text}\n"),
        Format::Json => format!("{value}\n"),
    }
}

fn multidegree_json(md: &MultiDegree) -> Value {
    let map: serde_json::Map<String, Value> = md.iter().map(|(v, d)| (v.get().to_string(), json!(d))).collect();
    Value::Object(map)
}

fn case_tag(case: ImageCase) -> &'static str {
    match case {
        ImageCase::Identity => "identity",
        ImageCase::SumZero => "sum_zero",
        ImageCase::LinearHead => "linear_head",
        ImageCase::Cone => "cone",
    }
}

fn assignment_json(a: &Assignment) -> Value {
    let map: serde_json::Map<String, Value> = a.iter().map(|(v, e)| (v.to_string(), e.to_json())).collect();
    Value::Object(map)
}

fn finite(algebra: Algebra, what: &'static str) -> Result<usize> {
    algebra.dim().ok_or(Error::InfiniteAlgebra(what))
}

fn dispatch(cli: Cli) -> Result<(i32, String, Value)> {
    let domain = cli.field;
    let poly = |text: &str| -> Result<FreePolynomial> { parse_in(text, domain) };
    match cli.command {
        Command::Reduce(PolyArgs { target, poly: text }) => {
            let f = poly(&text)?;
            let (ln, stats) = left_norm_with_stats(&f);
            let nf = reduce(&f, target.algebra);
            let terms: Vec<Value> = nf
                .poly()
                .iter()
                .map(|(w, c)| json!({ "word": w.indices(), "coeff": c.to_string() }))
                .collect();
            let value = json!({
                "algebra": target.algebra.to_string(),
                "left_normed": ln.to_string(),
                "normal_form": nf.to_string(),
                "terms": terms,
                "multidegree": nf.multidegree().map(multidegree_json),
                "rule_applications": stats.rule_applications,
            });
            Ok((0, nf.to_string(), value))
        }
        Command::Identity(PolyArgs { target, poly: text }) => {
            if !domain.is_rational() {
                return Err(Error::FiniteFieldIdentity(domain.to_string()));
            }
            let f = poly(&text)?;
            let by_rewrite = is_identity(&f, target.algebra)?;
            let by_oracle = identity_oracle(&f, target.algebra)?;
            let witness = if by_oracle {
                None
            } else {
                find_witness(&f, target.algebra, 0)?
            };
            let agree = by_rewrite == by_oracle;
            let mut text = by_rewrite.to_string();
            if let Some((a, v)) = &witness {
                text.push_str(&format!("\nwitness: {} gives {v}", format_assignment(a)));
            }
            if !agree {
                text.push_str("\noracle disagrees");
            }
            let value = json!({
                "identity": by_rewrite,
                "oracle": by_oracle,
                "agree": agree,
                "witness": witness.as_ref().map(|(a, v)| json!({
                    "assignment": assignment_json(a),
                    "value": v.to_json(),
                })),
            });
            Ok((if agree { 0 } else { 1 }, text, value))
        }
        Command::Classify(PolyArgs { target, poly: text }) => {
            let f = poly(&text)?;
            let cls = classify(&f, target.algebra)?;
            let alphas: serde_json::Map<String, Value> = cls
                .head
                .alphas
                .iter()
                .map(|(v, a)| (v.get().to_string(), json!(a.to_string())))
                .collect();
            let value = json!({
                "descriptor": cls.descriptor.to_json(),
                "case": case_tag(cls.case),
                "multidegree": multidegree_json(&cls.head.multidegree),
                "degree": cls.head.degree(),
                "alphas": alphas,
                "alpha_sum": cls.head.alpha_sum.to_string(),
                "closure_required": cls.closure_required,
            });
            Ok((0, cls.descriptor.to_string(), value))
        }
        Command::Preimage { args, target } => {
            let f = poly(&args.poly)?;
            let u = Element::parse(&target, args.target.algebra, domain)?;
            Ok(match preimage(&f, args.target.algebra, &u)? {
                PreimageResult::Assignment(a) => (
                    0,
                    format_assignment(&a),
                    json!({ "result": "assignment", "assignment": assignment_json(&a) }),
                ),
                PreimageResult::NotInImage(reason) => (
                    0,
                    format!("not in image: {}", reason.tag()),
                    json!({ "result": "not_in_image", "reason": reason.tag() }),
                ),
                PreimageResult::NeedsRoot { exponent, value } => (
                    0,
                    format!("needs root: r^{exponent} = {value}"),
                    json!({ "result": "needs_root", "exponent": exponent, "value": value.to_string() }),
                ),
            })
        }
        Command::Eval { args, assign } => {
            let f = poly(&args.poly)?;
            let mut assignment = Assignment::new();
            for binding in &assign {
                let (v, rhs) = split_binding(binding)?;
                assignment.insert(v, Element::parse(rhs, args.target.algebra, domain)?);
            }
            let value = evaluate(&f, args.target.algebra, &assignment)?;
            Ok((0, value.to_string(), value.to_json()))
        }
        Command::Dim { target, m } => {
            let n = finite(target.algebra, "dim")?;
            let d = dim_relatively_free(n, m)?;
            let num = u64::try_from(&d).map(Value::from).unwrap_or_else(|_| json!(d.to_string()));
            Ok((0, d.to_string(), json!({ "n": n, "m": m, "dim": num })))
        }
        Command::Basis { target, m, words } => {
            let n = finite(target.algebra, "basis")?;
            let catalog = basis_monomials(n, m)?;
            let mut lines = Vec::new();
            for (s, ws) in &catalog.by_degree {
                let mut line = format!("degree {s}: {}", ws.len());
                if words {
                    let listed: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
                    line.push_str(&format!("  {}", listed.join(", ")));
                }
                lines.push(line);
            }
            lines.push(format!("unit: {}", usize::from(catalog.includes_unit)));
            lines.push(format!("total: {}", catalog.total()));
            Ok((0, lines.join("\n"), catalog.to_json(words)))
        }
        Command::Codim { target, m } => {
            let c = multilinear_codim(target.algebra, m)?;
            Ok((
                0,
                c.to_string(),
                json!({ "algebra": target.algebra.to_string(), "m": m, "codim": c }),
            ))
        }
        Command::Verify { seed, criterion } => {
            let outcomes = match criterion {
                Some(id) => vec![run_one(id, seed)
                    .ok_or_else(|| Error::InvalidArgument(format!("no criterion {id}")))?],
                None => run_all(seed),
            };
            let passed = outcomes.iter().all(|o| o.passed);
            let text = outcomes.iter().map(|o| o.to_string()).collect::<Vec<_>>().join("\n");
            let results: Vec<Value> = outcomes
                .iter()
                .map(|o| json!({ "id": o.id, "name": o.name, "passed": o.passed, "detail": o.detail }))
                .collect();
            let value = json!({ "seed": seed, "passed": passed, "results": results });
            Ok((if passed { 0 } else { 1 }, text, value))
        }
    }
}
