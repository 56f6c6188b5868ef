//! `tropmat`: checks on matroids, valuated matroids, adjoints and Lorentzian
//! polynomials. Exit code 0 means the property holds, 1 that it fails (with a
//! witness in the report), 2 that the input could not be used.

mod builtins;
mod io;
mod verbs;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tropmat::Limits;

use verbs::{Ctx, Report};

/// Inputs are JSON files, `-` for stdin, inline JSON, or `builtin:NAME`.
#[derive(Parser)]
#[command(name = "tropmat", version, about)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads for the per-exponent Lorentzian checks.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Verb {
    /// Basis exchange for {"n", "bases"}.
    ValidateMatroid { input: String },
    /// Support exchange and three-term relations for {"n", "d", "entries"}.
    ValidateValuated { input: String },
    /// Every Plücker relation, checked directly.
    PluckerCheck { input: String },
    /// Whether the second input is a quotient of the first.
    QuotientCheck { m: String, n: String },
    /// All linear subclasses of the hyperplanes.
    LinearSubclasses { input: String },
    /// The lattice of elementary quotients.
    QuotientLattice {
        input: String,
        /// Also test isomorphism with the order dual of this matroid's flats.
        #[arg(long)]
        dual_of: Option<String>,
    },
    /// Whether some d-1 hyperplanes generate every hyperplane.
    LeviCheck { input: String },
    /// A common elementary quotient of two matroids.
    CommonQuotient { m1: String, m2: String },
    /// Whether a polynomial is Lorentzian.
    LorentzianCheck { input: String },
    /// Whether h ≪ f, i.e. f + w_{n+1} h is Lorentzian.
    ProperPosition { h: String, f: String },
    /// The q-weighted basis generating polynomial of a valuated matroid.
    Fq {
        input: String,
        #[arg(long = "q", default_values_t = ["1/2".to_string(), "1/3".to_string()])]
        q: Vec<String>,
    },
    /// The slices of f between two powers of one variable.
    Segment {
        input: String,
        /// 1-based variable.
        #[arg(long)]
        var: usize,
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
    },
    /// Adjoint test for two matroids or two valuated matroids.
    AdjointCheck { m: String, w: String },
    /// The cofactor identity on a matrix, or on seeded random matrices.
    CofactorVerify {
        input: Option<String>,
        /// D N COUNT random integer matrices.
        #[arg(long, num_args = 3, value_names = ["D", "N", "COUNT"])]
        random: Option<Vec<usize>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compatibility of the cofactor map with Plücker coordinates.
    PlethysmCheck { input: String },
    /// Valuations of minors and of generalized cofactors of a Laurent matrix.
    Tropicalize { input: String },
    /// A codimension-one tropical linear subspace through d-1 points.
    Interpolate { mu: String, sigma: String, points: String },
    /// Points on Trop M that no codimension-one subspace interpolates.
    LeviWitness {
        input: String,
        /// Hyperplanes as 1-based digit strings, e.g. "1234,1256,3456".
        #[arg(long)]
        hyperplanes: String,
        #[arg(long, default_value = "1")]
        c: String,
    },
    /// A common point of two tropical lines.
    LinesIntersect { t1: String, t2: String },
    /// A flag of elementary quotients ending at a point.
    FlagComplete { mu: String, point: String },
    /// Reproduces a worked example by name.
    PaperExample { name: String },
}

fn run(cli: &Cli) -> Result<Report, io::InputError> {
    let ctx = Ctx {
        limits: Limits::from_env(),
        jobs: cli.jobs.max(1),
    };
    match &cli.verb {
        Verb::ValidateMatroid { input } => verbs::validate_matroid(input),
        Verb::ValidateValuated { input } => verbs::validate_valuated(input),
        Verb::PluckerCheck { input } => verbs::plucker_check(input),
        Verb::QuotientCheck { m, n } => verbs::quotient_check(m, n),
        Verb::LinearSubclasses { input } => verbs::linear_subclasses(input, &ctx),
        Verb::QuotientLattice { input, dual_of } => verbs::quotient_lattice_verb(input, dual_of.as_deref(), &ctx),
        Verb::LeviCheck { input } => verbs::levi_check(input, &ctx),
        Verb::CommonQuotient { m1, m2 } => verbs::common_quotient(m1, m2, &ctx),
        Verb::LorentzianCheck { input } => verbs::lorentzian_check(input, &ctx),
        Verb::ProperPosition { h, f } => verbs::proper_position(h, f, &ctx),
        Verb::Fq { input, q } => verbs::fq(input, q, &ctx),
        Verb::Segment { input, var, from, to } => verbs::segment_verb(input, *var, *from, *to, &ctx),
        Verb::AdjointCheck { m, w } => verbs::adjoint_check(m, w),
        Verb::CofactorVerify { input, random, seed } => {
            verbs::cofactor_verify(input.as_deref(), random.as_deref(), *seed, &ctx)
        }
        Verb::PlethysmCheck { input } => verbs::plethysm_check(input, &ctx),
        Verb::Tropicalize { input } => verbs::tropicalize(input),
        Verb::Interpolate { mu, sigma, points } => verbs::interpolate_verb(mu, sigma, points),
        Verb::LeviWitness { input, hyperplanes, c } => verbs::levi_witness(input, hyperplanes, c),
        Verb::LinesIntersect { t1, t2 } => verbs::lines_intersect_verb(t1, t2),
        Verb::FlagComplete { mu, point } => verbs::flag_complete(mu, point),
        Verb::PaperExample { name } => verbs::paper_example(name, &ctx),
    }
}

fn verb_name(v: &Verb) -> &'static str {
    match v {
        Verb::ValidateMatroid { .. } => "validate-matroid",
        Verb::ValidateValuated { .. } => "validate-valuated",
        Verb::PluckerCheck { .. } => "plucker-check",
        Verb::QuotientCheck { .. } => "quotient-check",
        Verb::LinearSubclasses { .. } => "linear-subclasses",
        Verb::QuotientLattice { .. } => "quotient-lattice",
        Verb::LeviCheck { .. } => "levi-check",
        Verb::CommonQuotient { .. } => "common-quotient",
        Verb::LorentzianCheck { .. } => "lorentzian-check",
        Verb::ProperPosition { .. } => "proper-position",
        Verb::Fq { .. } => "fq",
        Verb::Segment { .. } => "segment",
        Verb::AdjointCheck { .. } => "adjoint-check",
        Verb::CofactorVerify { .. } => "cofactor-verify",
        Verb::PlethysmCheck { .. } => "plethysm-check",
        Verb::Tropicalize { .. } => "tropicalize",
        Verb::Interpolate { .. } => "interpolate",
        Verb::LeviWitness { .. } => "levi-witness",
        Verb::LinesIntersect { .. } => "lines-intersect",
        Verb::FlagComplete { .. } => "flag-complete",
        Verb::PaperExample { .. } => "paper-example",
    }
}

fn emit(format: Format, v: &Value) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(v).expect("serializable")),
        Format::Text => {
            println!("{}: {}", v["verb"].as_str().unwrap_or("?"), text_value(&v["verdict"]));
            for key in ["witness", "stats"] {
                if let Some(o) = v[key].as_object() {
                    for (k, x) in o {
                        println!("  {k}: {}", text_value(x));
                    }
                } else if !v[key].is_null() {
                    println!("  {key}: {}", text_value(&v[key]));
                }
            }
        }
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        _ => v.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let verb = verb_name(&cli.verb);
    match run(&cli) {
        Ok(r) => {
            let v = json!({ "verb": r.verb, "verdict": r.verdict, "witness": r.witness, "stats": r.stats });
            emit(cli.format, &v);
            ExitCode::from(if r.verdict { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("tropmat {verb}: {}", e.0);
            let v = json!({ "verb": verb, "verdict": "error", "witness": { "message": e.0 }, "stats": {} });
            emit(cli.format, &v);
            ExitCode::from(2)
        }
    }
}
