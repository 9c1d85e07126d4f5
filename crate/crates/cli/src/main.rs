//! `clm`: JSON front end to clm-core.
//!
//! Every subcommand reads its input (a file path, or `-`/nothing for standard
//! input) and writes a report to standard output. Domain errors exit with
//! status 1 and an error object on standard error; usage errors exit with 2.

mod render;

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use clm_core::chain::{collineation_from_chain_as, ChainReport};
use clm_core::chambers::plucker_coordinates;
use clm_core::collineation::{limit_collineation_on, standard_domain};
use clm_core::identities::{generating_function_check, section_dim_identity, snake_oil_check};
use clm_core::json::{rat_to_string, to_canonical_json_pretty, to_canonical_value};
use clm_core::linalg::parse_rat;
use clm_core::sample;
use clm_core::{
    chain_from_collineation, classify, dims_report, halphen_degeneration, isotropy_check,
    plucker_weight_support, semistable_oracle_equivalence, validate_chain, validate_collineation,
    CompleteCollineation, Error, Flavor, NodalChain, PairingKind, PolyMatrix, Rat, RatMatrix,
    SplitContext, Subspace,
};

#[derive(Parser)]
#[command(
    name = "clm",
    version,
    about = "Complete collineations, quadrics and skew forms"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Input {
    /// Input JSON file, or `-` for standard input.
    #[arg(default_value = "-")]
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Stability of a subspace of V ⊕ W at σ.
    Classify {
        #[arg(long, value_parser = parse_sigma)]
        sigma: Option<Rat>,
        /// Instead of reading a subspace, compare the two stability criteria
        /// on this many random subspaces and parameters.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        input: Input,
    },
    /// Plücker weights and orbit degree of a subspace.
    Weights {
        #[command(flatten)]
        input: Input,
    },
    /// Dimension tables for the quotients of Gr_u(V ⊕ W).
    Dims {
        #[arg(long)]
        dim_v: usize,
        #[arg(long)]
        dim_w: usize,
        #[arg(long)]
        u: usize,
        #[arg(long, value_enum, default_value_t = FlavorArg::General)]
        flavor: FlavorArg,
    },
    /// Limit complete collineation of a family {"family", "ctx"?, "domain"?}.
    Collineate {
        #[command(flatten)]
        input: Input,
    },
    /// Limit complete quadric of a symmetric family.
    Quadric {
        #[command(flatten)]
        input: Input,
    },
    /// Limit complete skew form of an antisymmetric family.
    Skew {
        #[command(flatten)]
        input: Input,
    },
    /// Check the chain equations for a nodal chain.
    ChainValidate {
        #[command(flatten)]
        input: Input,
    },
    /// Nodal chain of graphs of a complete collineation.
    ChainFromCc {
        #[command(flatten)]
        input: Input,
    },
    /// Complete collineation recovered from a nodal chain.
    CcFromChain {
        #[arg(long, value_enum, default_value_t = FlavorArg::General)]
        flavor: FlavorArg,
        #[command(flatten)]
        input: Input,
    },
    /// Halphen degeneration of an invertible matrix {"matrix", "ctx"?}.
    Halphen {
        #[command(flatten)]
        input: Input,
    },
    /// Isotropy of a subspace of V ⊕ V*.
    Isotropy {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[command(flatten)]
        input: Input,
    },
    /// Section-count identity for one (u, k), or a sweep up to the maxima.
    Identity {
        #[arg(long, conflicts_with = "max_u")]
        u: Option<u64>,
        #[arg(long, conflicts_with = "max_k")]
        k: Option<u64>,
        #[arg(long, requires = "max_k")]
        max_u: Option<u64>,
        #[arg(long, requires = "max_u")]
        max_k: Option<u64>,
    },
    /// Series checks: Σ C(r, j) x^r and the generating function for k.
    SnakeOil {
        #[arg(long, required_unless_present = "k")]
        j: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        order: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    General,
    Symmetric,
    Skew,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::General => Flavor::General,
            FlavorArg::Symmetric => Flavor::Symmetric,
            FlavorArg::Skew => Flavor::Skew,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Symplectic,
    Symmetric,
}

fn parse_sigma(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

/// A domain failure: the error object for standard error, plus an optional
/// report still printed on standard output.
struct Failure {
    error: Value,
    output: Option<Value>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::DimensionMismatch(_) => "dimension-mismatch",
            Error::InvalidContext(_) => "invalid-context",
            Error::ZeroFamily => "zero-family",
            Error::MinorIdenticallyZero { .. } => "minor-identically-zero",
            Error::Degenerate { .. } => "degenerate",
            Error::FlavorMismatch(_) => "flavor-mismatch",
            Error::Singular => "singular",
            Error::InvalidCollineation(_) => "invalid-collineation",
            Error::InvalidChain(_) => "invalid-chain",
            Error::Parse(_) => "parse",
        };
        let mut error = json!({"error": kind, "message": e.to_string()});
        match &e {
            Error::InvalidCollineation(r) => {
                error["violations"] = to_canonical_value(&r.violations).unwrap_or(Value::Null);
            }
            Error::InvalidChain(r) => {
                error["report"] = to_canonical_value(r).unwrap_or(Value::Null);
            }
            _ => {}
        }
        Failure {
            error,
            output: None,
        }
    }
}

type Outcome = Result<Value, Failure>;

fn read_input(input: &Input) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if input.input == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(&input.input).map(|t| text = t)
    };
    res.map_err(|e| Failure {
        error: json!({"error": "io", "message": format!("{}: {e}", input.input)}),
        output: None,
    })?;
    Ok(text)
}

fn parse_input<T: for<'de> Deserialize<'de>>(input: &Input) -> Result<T, Failure> {
    let text = read_input(input)?;
    serde_json::from_str(&text).map_err(|e| Failure {
        error: json!({"error": "parse", "message": e.to_string()}),
        output: None,
    })
}

fn value<T: serde::Serialize>(x: &T) -> Outcome {
    Ok(to_canonical_value(x)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyInput {
    family: PolyMatrix,
    ctx: Option<SplitContext>,
    domain: Option<Subspace>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixInput {
    matrix: RatMatrix,
    ctx: Option<SplitContext>,
}

fn collineate(input: &Input, flavor: Flavor) -> Outcome {
    let fi: FamilyInput = parse_input(input)?;
    let ctx = match fi.ctx {
        Some(c) => c,
        None => {
            let u = fi.family.cols();
            SplitContext::new(u, fi.family.rows(), u)?
        }
    };
    let domain = fi.domain.unwrap_or_else(|| standard_domain(&ctx));
    value(&limit_collineation_on(&fi.family, &ctx, flavor, domain)?)
}

fn classify_random(count: usize, seed: u64, sigma: Option<Rat>) -> Outcome {
    let mut rng = sample::rng(seed);
    let mut disagreements = Vec::new();
    for _ in 0..count {
        let ctx = sample::random_context(&mut rng, 4, 3);
        let u = sample::random_subspace(&mut rng, ctx.split(), ctx.u());
        let s = sigma
            .clone()
            .unwrap_or_else(|| sample::random_sigma(&mut rng, -1, ctx.u() as i64 + 1));
        if !semistable_oracle_equivalence(&u, &s)? {
            disagreements.push(json!({
                "subspace": to_canonical_value(&u)?,
                "sigma": rat_to_string(&s),
            }));
        }
    }
    Ok(json!({
        "samples": count,
        "seed": seed,
        "agree": count - disagreements.len(),
        "disagreements": disagreements,
    }))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Classify {
            sigma,
            random,
            seed,
            input,
        } => match random {
            Some(n) => classify_random(*n, *seed, sigma.clone()),
            None => {
                let sigma = sigma.clone().ok_or_else(|| Failure {
                    error: json!({"error": "usage", "message": "--sigma is required"}),
                    output: None,
                })?;
                let u: Subspace = parse_input(input)?;
                value(&classify(&u, &sigma)?)
            }
        },
        Command::Weights { input } => {
            let u: Subspace = parse_input(input)?;
            let support = plucker_weight_support(&u)?;
            let coords: Vec<Value> = plucker_coordinates(&u)?
                .into_iter()
                .map(|(cols, v)| json!({"columns": cols, "value": rat_to_string(&v)}))
                .collect();
            let mut out = to_canonical_value(&support)?;
            out["coordinates"] = Value::Array(coords);
            Ok(out)
        }
        Command::Dims {
            dim_v,
            dim_w,
            u,
            flavor,
        } => {
            let ctx = SplitContext::new(*dim_v, *dim_w, *u)?;
            value(&dims_report(&ctx, (*flavor).into())?)
        }
        Command::Collineate { input } => collineate(input, Flavor::General),
        Command::Quadric { input } => collineate(input, Flavor::Symmetric),
        Command::Skew { input } => collineate(input, Flavor::Skew),
        Command::ChainValidate { input } => {
            let chain: NodalChain = parse_input(input)?;
            let report: ChainReport = validate_chain(&chain);
            let out = to_canonical_value(&report)?;
            if report.is_valid() {
                Ok(out)
            } else {
                Err(Failure {
                    error: json!({
                        "error": "invalid-chain",
                        "violated_equations": report.violated_equations(),
                        "structural": report.structural,
                    }),
                    output: Some(out),
                })
            }
        }
        Command::ChainFromCc { input } => {
            let cc: CompleteCollineation = parse_input(input)?;
            value(&chain_from_collineation(&cc)?)
        }
        Command::CcFromChain { flavor, input } => {
            let chain: NodalChain = parse_input(input)?;
            value(&collineation_from_chain_as(&chain, (*flavor).into())?)
        }
        Command::Halphen { input } => {
            let mi: MatrixInput = parse_input(input)?;
            let ctx = match mi.ctx {
                Some(c) => c,
                None => SplitContext::new(mi.matrix.rows(), mi.matrix.rows(), mi.matrix.rows())?,
            };
            let cc = halphen_degeneration(&mi.matrix, &ctx)?;
            let report = validate_collineation(&cc);
            let chain = chain_from_collineation(&cc)?;
            let chain_report = validate_chain(&chain);
            Ok(json!({
                "collineation": to_canonical_value(&cc)?,
                "ranks": cc.ranks(),
                "is_halphen": cc.is_halphen(),
                "valid": report.is_valid(),
                "chain": to_canonical_value(&chain)?,
                "shape": chain_report.shape,
            }))
        }
        Command::Isotropy { kind, input } => {
            let u: Subspace = parse_input(input)?;
            let kind = match kind {
                KindArg::Symplectic => PairingKind::Symplectic,
                KindArg::Symmetric => PairingKind::Symmetric,
            };
            value(&isotropy_check(&u, kind)?)
        }
        Command::Identity { u, k, max_u, max_k } => match (u, k, max_u, max_k) {
            (Some(u), Some(k), None, None) if *u >= 1 && *k >= 1 => {
                value(&section_dim_identity(*u, *k))
            }
            (None, None, Some(mu), Some(mk)) => {
                let rows: Vec<_> = (1..=*mu)
                    .flat_map(|u| (1..=*mk).map(move |k| section_dim_identity(u, k)))
                    .collect();
                value(&rows)
            }
            _ => Err(Failure {
                error: json!({
                    "error": "usage",
                    "message": "give --u and --k (both >= 1), or --max-u and --max-k"
                }),
                output: None,
            }),
        },
        Command::SnakeOil { j, k, order } => {
            let mut out = serde_json::Map::new();
            if let Some(j) = j {
                if (*j as usize) >= *order {
                    return Err(Failure {
                        error: json!({"error": "usage", "message": "--order must exceed --j"}),
                        output: None,
                    });
                }
                out.insert(
                    "snake_oil".into(),
                    to_canonical_value(&snake_oil_check(*j, *order))?,
                );
            }
            if let Some(k) = k {
                out.insert(
                    "generating_function".into(),
                    to_canonical_value(&generating_function_check(*k, *order))?,
                );
            }
            Ok(Value::Object(out))
        }
    }
}

fn print(format: Format, cli: &Cli, v: &Value) {
    match format {
        Format::Json => println!(
            "{}",
            to_canonical_json_pretty(v).unwrap_or_else(|_| v.to_string())
        ),
        Format::Text => print!("{}", render::text(&cli.command, v)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            print(cli.format, &cli, &v);
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(out) = &f.output {
                print(cli.format, &cli, out);
            }
            let usage = f.error["error"] == "usage";
            eprintln!("{}", serde_json::to_string(&f.error).unwrap_or_default());
            if usage {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
