//! Command-line front end. Exit codes: 0 all checks pass, 1 a check or
//! precondition failed, 2 the input could not be read, parsed or used.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use homcoder_core::constructions::{
    adjoint_comodule, commutator_ass_to_lie, commutator_pre_lie_to_lie, direct_sum_coder_pairs,
    direct_sum_der_pairs, endo_twist, rb_twist, semidirect_algebra, semidirect_coalgebra,
};
use homcoder_core::duality::dualize_bundle;
use homcoder_core::solver::{
    candidate_count, coderivation_basis, default_grid, derivation_basis, idempotent_endo_operators,
    rb_operators, GenerationRecipe, Generator, Strategy, SEARCH_LIMIT,
};
use homcoder_core::structures::{all_passed, check_bundle};
use homcoder_core::{
    parse_scalar, Bundle, CheckReport, CoDerPair, CoalgebraFlavor, EndoOp, Error, LinMap,
    RotaBaxterData, Scalar, TensorSpace,
};
use serde_json::{json, Map, Value};

use crate::document::{canonical_json, matrix_value, parse, serialize, Document};
use crate::report::records;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "homcoder",
    version,
    about = "Exact checker for Hom-Lie coderivation pairs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every identity that applies to a bundle.
    Check {
        path: PathBuf,
        /// Emit the report list as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Build a new bundle from one or two inputs.
    Construct {
        kind: ConstructKind,
        #[arg(required = true, num_args = 1..=2)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// `identity`, `zero`, or rows `a,b;c,d` (row i is the image of e_i).
        #[arg(long = "R", allow_hyphen_values = true)]
        r: Option<String>,
        /// Same syntax as `--R`.
        #[arg(long = "T", allow_hyphen_values = true)]
        t: Option<String>,
    },
    /// Print a basis of the coderivations or derivations of a bundle.
    Solve { kind: SolveKind, path: PathBuf },
    /// Generate bundles, or search a grid for Rota-Baxter or endo operators.
    Search {
        flavor: Option<String>,
        /// Search operators on this bundle instead of a generated one.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "twist")]
        strategy: String,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        kind: Option<SearchKindArg>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConstructKind {
    Semidirect,
    Dsum,
    DsumAlg,
    CommutatorPrelie,
    CommutatorAss,
    RbTwist,
    EndoTwist,
    AdjointComodule,
    Dualize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SolveKind {
    Coder,
    Der,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SearchKindArg {
    Rb,
    Endo,
}

/// A failed command: its exit code and message.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Refused(_)
            | Error::FlavorMismatch { .. }
            | Error::UnsupportedWeight(_)
            | Error::SearchGuard { .. }
            | Error::Generation(_) => EXIT_FAIL,
            _ => EXIT_INPUT,
        };
        let message = match &e {
            Error::Refused(report) => {
                format!("{e}\n{}", crate::report::ReportRecord::from(report).line())
            }
            _ => e.to_string(),
        };
        Self { code, message }
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_INPUT
            } else {
                let _ = write!(out, "{text}");
                EXIT_PASS
            };
        }
    };
    let outcome = match cli.command {
        Command::Check { path, json } => check(&path, json, out),
        Command::Construct {
            kind,
            inputs,
            out: target,
            lambda,
            r,
            t,
        } => construct(kind, &inputs, target.as_deref(), lambda, r, t, out),
        Command::Solve { kind, path } => solve(kind, &path, out),
        Command::Search {
            flavor,
            input,
            dim,
            seed,
            strategy,
            count,
            kind,
            lambda,
            grid,
            out: target,
        } => search(
            SearchArgs {
                flavor,
                input,
                dim,
                seed,
                strategy,
                count,
                kind,
                lambda,
                grid,
                target,
            },
            out,
            err,
        ),
    };
    match outcome {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

fn read_document(path: &Path) -> Result<Document, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::input(format!("{}: {e}", path.display()))
}

fn check(path: &Path, json: bool, out: &mut dyn Write) -> Outcome {
    let doc = read_document(path)?;
    let reports = check_bundle(&doc.bundle)?;
    let recs = records(&reports);
    if json {
        let text = serde_json::to_string_pretty(&recs).expect("records serialize");
        let _ = writeln!(out, "{text}");
    } else {
        for rec in &recs {
            let _ = writeln!(out, "{}", rec.line());
        }
    }
    Ok(verdict(&reports))
}

fn verdict(reports: &[CheckReport]) -> i32 {
    if all_passed(reports) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn parse_rational(flag: &str, text: &str) -> Result<Scalar, Failure> {
    parse_scalar(text).ok_or_else(|| Failure::input(format!("{flag}: malformed rational `{text}`")))
}

/// `identity`, `zero`, or `;`-separated rows of `,`-separated rationals,
/// row `i` holding the image of `e_i`.
fn parse_operator(flag: &str, text: &str, n: usize) -> Result<LinMap, Failure> {
    let space = TensorSpace::power(n, 1);
    match text {
        "identity" | "id" => return Ok(LinMap::identity(space)),
        "zero" | "0" => return Ok(LinMap::zero(space.clone(), space)),
        _ => {}
    }
    let rows = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|x| parse_rational(flag, x.trim()))
                .collect()
        })
        .collect::<Result<Vec<Vec<Scalar>>, Failure>>()?;
    LinMap::from_images(space.clone(), space, rows)
        .map_err(|_| Failure::input(format!("{flag}: expected {n} rows of {n} entries")))
}

fn construct(
    kind: ConstructKind,
    inputs: &[PathBuf],
    target: Option<&Path>,
    lambda: Option<String>,
    r: Option<String>,
    t: Option<String>,
    out: &mut dyn Write,
) -> Outcome {
    let binary = matches!(kind, ConstructKind::Dsum | ConstructKind::DsumAlg);
    if inputs.len() != if binary { 2 } else { 1 } {
        return Err(Failure::input(format!(
            "construct {}: expected {} input bundle(s)",
            kind_tag(kind),
            if binary { 2 } else { 1 }
        )));
    }
    let docs = inputs
        .iter()
        .map(|p| read_document(p))
        .collect::<Result<Vec<_>, _>>()?;
    let first = &docs[0].bundle;
    let mut metadata = Map::new();
    let built = match kind {
        ConstructKind::Semidirect => {
            if first.is_coalgebra() {
                let comodule = first.coder_comodule()?;
                Bundle::from_coder_pair(&semidirect_coalgebra(comodule.pair(), &comodule)?)
            } else {
                let rep = first.representation()?;
                Bundle::from_der_pair(&semidirect_algebra(rep.pair(), &rep)?)
            }
        }
        ConstructKind::Dsum => Bundle::from_coder_pair(&direct_sum_coder_pairs(
            &first.coder_pair()?,
            &docs[1].bundle.coder_pair()?,
        )?),
        ConstructKind::DsumAlg => Bundle::from_der_pair(&direct_sum_der_pairs(
            &first.der_pair()?,
            &docs[1].bundle.der_pair()?,
        )?),
        ConstructKind::CommutatorPrelie => {
            Bundle::from_coder_pair(&commutator_pre_lie_to_lie(&first.coder_pair()?)?)
        }
        ConstructKind::CommutatorAss => {
            Bundle::from_coder_pair(&commutator_ass_to_lie(&first.coder_pair()?)?)
        }
        ConstructKind::RbTwist => {
            let pair = first.coder_pair()?;
            let weight = match lambda {
                Some(text) => parse_rational("--lambda", &text)?,
                None => first
                    .lambda
                    .clone()
                    .ok_or_else(|| Failure::input("rb-twist needs --lambda or a bundle lambda"))?,
            };
            let r = match r {
                Some(text) => parse_operator("--R", &text, pair.n())?,
                None => first
                    .r
                    .clone()
                    .ok_or_else(|| Failure::input("rb-twist needs --R or a bundle R"))?,
            };
            metadata.insert("lambda".into(), Value::String(weight.to_string()));
            metadata.insert("R".into(), matrix_value(&r));
            Bundle::from_coder_pair(&rb_twist(&pair, &RotaBaxterData { r, weight })?)
        }
        ConstructKind::EndoTwist => {
            let pair = first.coder_pair()?;
            let t = match t {
                Some(text) => parse_operator("--T", &text, pair.n())?,
                None => first
                    .t
                    .clone()
                    .ok_or_else(|| Failure::input("endo-twist needs --T or a bundle T"))?,
            };
            metadata.insert("T".into(), matrix_value(&t));
            let endo = EndoOp {
                t,
                require_idempotent: true,
                require_commute_phi: true,
            };
            Bundle::from_coder_pair(&endo_twist(&pair, &endo)?)
        }
        ConstructKind::AdjointComodule => {
            Bundle::from_coder_comodule(&adjoint_comodule(&first.coder_pair()?)?)
        }
        ConstructKind::Dualize => {
            let (dual, cert) = dualize_bundle(first)?;
            metadata.insert(
                "certificate".into(),
                json!({
                    "direction": cert.direction.tag(),
                    "note": cert.note,
                    "source_id": cert.source_id,
                    "target_id": cert.target_id,
                }),
            );
            dual
        }
    };
    let reports = check_bundle(&built)?;
    metadata.insert("construction".into(), Value::String(kind_tag(kind).into()));
    metadata.insert(
        "reports".into(),
        serde_json::to_value(records(&reports)).expect("records"),
    );
    let text = serialize(&Document {
        bundle: built,
        metadata,
    });
    match target {
        Some(path) => {
            fs::write(path, &text).map_err(|e| io_failure(path, e))?;
            for rec in records(&reports) {
                let _ = writeln!(out, "{}", rec.line());
            }
        }
        None => {
            let _ = write!(out, "{text}");
        }
    }
    Ok(verdict(&reports))
}

fn kind_tag(kind: ConstructKind) -> &'static str {
    match kind {
        ConstructKind::Semidirect => "semidirect",
        ConstructKind::Dsum => "dsum",
        ConstructKind::DsumAlg => "dsum-alg",
        ConstructKind::CommutatorPrelie => "commutator-prelie",
        ConstructKind::CommutatorAss => "commutator-ass",
        ConstructKind::RbTwist => "rb-twist",
        ConstructKind::EndoTwist => "endo-twist",
        ConstructKind::AdjointComodule => "adjoint-comodule",
        ConstructKind::Dualize => "dualize",
    }
}

fn solve(kind: SolveKind, path: &Path, out: &mut dyn Write) -> Outcome {
    let doc = read_document(path)?;
    let wrong_side = |e: Error| Failure::input(format!("{}: {e}", path.display()));
    let basis = match kind {
        SolveKind::Coder => coderivation_basis(&doc.bundle.coalgebra().map_err(wrong_side)?),
        SolveKind::Der => derivation_basis(&doc.bundle.algebra().map_err(wrong_side)?),
    };
    let _ = writeln!(out, "dimension {}", basis.dim());
    for (i, map) in basis.basis.iter().enumerate() {
        let _ = write!(out, "basis {i}: {}", canonical_json(&matrix_value(map)));
    }
    Ok(EXIT_PASS)
}

struct SearchArgs {
    flavor: Option<String>,
    input: Option<PathBuf>,
    dim: usize,
    seed: u64,
    strategy: String,
    count: usize,
    kind: Option<SearchKindArg>,
    lambda: Option<String>,
    grid: Option<String>,
    target: Option<PathBuf>,
}

fn search(args: SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let grid = match &args.grid {
        Some(text) => text
            .split(',')
            .map(|x| parse_rational("--grid", x.trim()))
            .collect::<Result<Vec<_>, _>>()?,
        None => default_grid(),
    };
    let strategy = Strategy::from_tag(&args.strategy)?;
    let flavor = match &args.flavor {
        Some(tag) => CoalgebraFlavor::from_tag(tag)?,
        None => CoalgebraFlavor::Lie,
    };
    let mut stream = String::new();
    let mut failed = false;
    match args.kind {
        None => {
            if args.input.is_some() {
                return Err(Failure::input(
                    "--input only applies to operator search (--kind)",
                ));
            }
            let mut generator = Generator::new();
            for k in 0..args.count as u64 {
                let recipe = GenerationRecipe {
                    flavor,
                    strategy,
                    seed: args.seed.wrapping_add(k),
                    dim: args.dim,
                };
                let pair = generator.generate(&recipe)?;
                let bundle = Bundle::from_coder_pair(&pair);
                let reports = check_bundle(&bundle)?;
                failed |= !all_passed(&reports);
                let mut metadata = Map::new();
                metadata.insert(
                    "recipe".into(),
                    json!({
                        "dim": recipe.dim,
                        "flavor": flavor.tag(),
                        "seed": recipe.seed,
                        "strategy": strategy.tag(),
                    }),
                );
                metadata.insert(
                    "reports".into(),
                    serde_json::to_value(records(&reports)).expect("records"),
                );
                stream.push_str(&serialize(&Document { bundle, metadata }));
            }
        }
        Some(kind) => {
            let dim = match &args.input {
                Some(_) => None,
                None => Some(args.dim),
            };
            if let Some(n) = dim {
                let candidates = candidate_count(n, sorted_len(&grid));
                if candidates > SEARCH_LIMIT {
                    let shown = if candidates == u128::MAX {
                        format!("{}^{}", sorted_len(&grid), n * n)
                    } else {
                        candidates.to_string()
                    };
                    return Err(Failure {
                        code: EXIT_FAIL,
                        message: format!(
                            "search space of {shown} candidates exceeds the limit of {SEARCH_LIMIT}"
                        ),
                    });
                }
            }
            let (pair, source) = match &args.input {
                Some(path) => (
                    read_document(path)?.bundle.coder_pair()?,
                    json!(path.display().to_string()),
                ),
                None => {
                    let recipe = GenerationRecipe {
                        flavor,
                        strategy,
                        seed: args.seed,
                        dim: args.dim,
                    };
                    (
                        Generator::new().generate(&recipe)?,
                        json!({
                            "dim": recipe.dim,
                            "flavor": flavor.tag(),
                            "seed": recipe.seed,
                            "strategy": strategy.tag(),
                        }),
                    )
                }
            };
            let (operators, lambda) = match kind {
                SearchKindArg::Rb => {
                    let weight = match &args.lambda {
                        Some(text) => parse_rational("--lambda", text)?,
                        None => return Err(Failure::input("--kind rb needs --lambda")),
                    };
                    (rb_operators(&pair, &weight, &grid)?, Some(weight))
                }
                SearchKindArg::Endo => (idempotent_endo_operators(&pair, &grid)?, None),
            };
            let _ = writeln!(err, "{} operator(s) found", operators.len());
            for op in operators {
                let bundle = with_operator(&pair, op, lambda.clone());
                let reports = check_bundle(&bundle)?;
                failed |= !all_passed(&reports);
                let mut metadata = Map::new();
                metadata.insert("source".into(), source.clone());
                metadata.insert(
                    "reports".into(),
                    serde_json::to_value(records(&reports)).expect("records"),
                );
                stream.push_str(&serialize(&Document { bundle, metadata }));
            }
        }
    }
    match &args.target {
        Some(path) => fs::write(path, &stream).map_err(|e| io_failure(path, e))?,
        None => {
            let _ = write!(out, "{stream}");
        }
    }
    Ok(if failed { EXIT_FAIL } else { EXIT_PASS })
}

fn sorted_len(grid: &[Scalar]) -> usize {
    let mut values = grid.to_vec();
    values.sort();
    values.dedup();
    values.len()
}

/// The pair with `R` (and its weight) or `T` attached.
fn with_operator(pair: &CoDerPair, op: LinMap, lambda: Option<Scalar>) -> Bundle {
    let mut bundle = Bundle::from_coder_pair(pair);
    match lambda {
        Some(weight) => {
            bundle.r = Some(op);
            bundle.lambda = Some(weight);
        }
        None => bundle.t = Some(op),
    }
    bundle
}
