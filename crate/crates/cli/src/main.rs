//! Batch verifier CLI.
//!
//! Subcommands consume an instance file (JSON), run the requested pipeline
//! and emit a deterministic report as JSON or a text summary. Exit codes:
//! 0 consistent / verified up to the bound, 1 refuted or inconsistent,
//! 2 inconclusive, 3 input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use trideq_core::catalog::{self, CatalogKind};
use trideq_core::dualising::dualising;
use trideq_core::engine::{witness, Instance};
use trideq_core::error::{AnalysisError, Error};
use trideq_core::hypothesis::Verdict;
use trideq_core::instance::{load, parse, Loaded, Overrides};
use trideq_core::report::{
    self, render_dualising, render_generator, render_hypotheses, render_witness, DualisingDto,
    GeneratorDto, GlueDims, GlueDto, Meta, WitnessDto,
};
use trideq_core::triangular::{build_triangular, generator_check};

#[derive(Parser)]
#[command(name = "trideq", version, about = "Triangular gluings, tilting hypotheses and derived-equivalence certificates over a prime field")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Override the field prime of the instance file.
    #[arg(long, global = true)]
    field_prime: Option<u64>,
    /// Override the certification degree bound.
    #[arg(long, global = true)]
    degree_bound: Option<usize>,
    /// Seed for the randomized idempotent-splitting search.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the JSON report to this path.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an instance file and validate every declared object.
    Validate { file: PathBuf },
    /// Build tri(S, R, M) and verify the compact-generator computation.
    Glue { file: PathBuf },
    /// Check compactness, Ext-vanishing and tilting hypotheses.
    Hypotheses { file: PathBuf },
    /// Run the full equivalence certificate.
    Witness { file: PathBuf },
    /// Compute dualising bimodule data (absolute and relative).
    Dualising { file: PathBuf },
    /// Run the built-in example catalog.
    Examples {
        /// Run a single named entry (self-eq, apr, one-point, smooth).
        #[arg(long)]
        name: Option<String>,
    },
}

struct Outcome {
    exit: i32,
    verdict: String,
    body: Value,
    text: String,
}

fn classify(e: &Error) -> (i32, String) {
    let hint = match e {
        Error::Analysis(AnalysisError::IdempotentsUnavailable { p, dim }) => {
            format!("{e}; rerun with --field-prime above {dim} (got {p})")
        }
        _ => format!("{e}"),
    };
    match e {
        Error::Engine(trideq_core::error::EngineError::HypothesisRefuted(_)) => (1, hint),
        Error::Engine(_) => (2, hint),
        _ => (3, hint),
    }
}

fn load_file(path: &PathBuf, over: Overrides) -> Result<Loaded, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Instance {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let file = parse(&text)?;
    load(&file, over)
}

fn run_validate(loaded: &Loaded) -> Outcome {
    let algebras: Value = loaded
        .algebras
        .iter()
        .map(|(k, a)| (k.clone(), json!({ "dim": a.dim })))
        .collect::<serde_json::Map<_, _>>()
        .into();
    let modules: Value = loaded
        .modules
        .iter()
        .map(|(k, m)| (k.clone(), json!({ "dim": m.dim })))
        .collect::<serde_json::Map<_, _>>()
        .into();
    let bimodules: Value = loaded
        .bimodules
        .iter()
        .map(|(k, m)| (k.clone(), json!({ "dim": m.dim })))
        .collect::<serde_json::Map<_, _>>()
        .into();
    let text = format!(
        "validated {} algebras, {} modules, {} bimodules\n",
        loaded.algebras.len(),
        loaded.modules.len(),
        loaded.bimodules.len()
    );
    Outcome {
        exit: 0,
        verdict: "valid".into(),
        body: json!({ "algebras": algebras, "modules": modules, "bimodules": bimodules }),
        text,
    }
}

fn run_glue(loaded: &Loaded) -> Result<Outcome, Error> {
    let (s, r, m, _t) = loaded.roles()?;
    let tri = build_triangular(&s, &r, &m)?;
    let rep = generator_check(&tri);
    let dto = GeneratorDto::from(&rep);
    let n = tri.lambda.dim;
    let mut sc = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                sc.push(tri.lambda.sc(i, j, k) as i64);
            }
        }
    }
    let ok = rep.ok();
    let text = format!(
        "tri(S, R, M): dim {} + {} + {} = {}\n{}",
        tri.s_dim(),
        tri.m_dim(),
        tri.r_dim(),
        n,
        render_generator(&dto)
    );
    Ok(Outcome {
        exit: if ok { 0 } else { 1 },
        verdict: if ok { "consistent".into() } else { "inconsistent".into() },
        body: serde_json::to_value(GlueDto {
            dims: GlueDims { s: tri.s_dim(), m: tri.m_dim(), r: tri.r_dim(), total: n },
            structure_constants: sc,
            generator: dto,
        })
        .unwrap(),
        text,
    })
}

fn build_instance(loaded: &Loaded) -> Result<Instance, Error> {
    let (s, r, m, t) = loaded.roles()?;
    Instance::new(&s, &r, &m, &t, loaded.degree_bound, loaded.seed)
}

fn run_hypotheses(loaded: &Loaded) -> Result<Outcome, Error> {
    let instance = build_instance(loaded)?;
    let rep = &instance.hypotheses;
    let exit = report::verdict_exit(rep.verdict);
    Ok(Outcome {
        exit,
        verdict: report::verdict_str(rep.verdict).into(),
        body: serde_json::to_value(rep).unwrap(),
        text: render_hypotheses(rep),
    })
}

fn run_witness(loaded: &Loaded) -> Result<Outcome, Error> {
    let instance = build_instance(loaded)?;
    if instance.hypotheses.verdict == Verdict::Refuted {
        let text = format!(
            "hypotheses refuted: {}\n{}",
            instance.hypotheses.reason,
            render_hypotheses(&instance.hypotheses)
        );
        return Ok(Outcome {
            exit: 1,
            verdict: "refuted".into(),
            body: serde_json::to_value(&instance.hypotheses).unwrap(),
            text,
        });
    }
    let rep = witness(&instance)?;
    let dto = WitnessDto::from(&rep);
    let exit = if rep.consistent { 0 } else { 1 };
    Ok(Outcome {
        exit,
        verdict: if rep.consistent { "consistent".into() } else { "inconsistent".into() },
        text: render_witness(&dto),
        body: serde_json::to_value(dto).unwrap(),
    })
}

fn run_dualising(loaded: &Loaded) -> Result<Outcome, Error> {
    let (a, rel) = loaded.dualising_data()?;
    let rep = dualising(
        &a,
        rel.as_ref().map(|(b, f)| (b, f)),
        loaded.degree_bound,
        loaded.seed,
    )?;
    let dto = DualisingDto::from(&rep);
    let ok = rep.smooth_within_bound;
    Ok(Outcome {
        exit: if ok { 0 } else { 2 },
        verdict: if ok { "verified-up-to-bound".into() } else { "inconclusive".into() },
        text: render_dualising(&dto),
        body: serde_json::to_value(dto).unwrap(),
    })
}

fn run_examples(name: Option<&str>, over: Overrides) -> Outcome {
    let mut results = Vec::new();
    let mut exit = 0;
    let mut text = String::new();
    let entries: Vec<_> = catalog::ENTRIES
        .iter()
        .filter(|e| name.is_none_or(|n| n == e.name))
        .collect();
    if entries.is_empty() {
        return Outcome {
            exit: 3,
            verdict: "input-error".into(),
            body: json!({ "error": format!("unknown example '{}'", name.unwrap_or("")) }),
            text: format!(
                "unknown example; available: {:?}\n",
                catalog::ENTRIES.iter().map(|e| e.name).collect::<Vec<_>>()
            ),
        };
    }
    for entry in entries {
        let outcome = match catalog::load_entry(entry, over) {
            Err(e) => {
                let (code, msg) = classify(&e);
                Outcome {
                    exit: code,
                    verdict: "input-error".into(),
                    body: json!({ "error": msg }),
                    text: msg,
                }
            }
            Ok(loaded) => {
                let run = match entry.kind {
                    CatalogKind::Witness => run_witness(&loaded),
                    CatalogKind::Dualising => run_dualising(&loaded),
                };
                match run {
                    Ok(o) => o,
                    Err(e) => {
                        let (code, msg) = classify(&e);
                        Outcome {
                            exit: code,
                            verdict: "error".into(),
                            body: json!({ "error": msg }),
                            text: msg,
                        }
                    }
                }
            }
        };
        text.push_str(&format!("== {} ({})\n{}\n", entry.name, entry.summary, outcome.text));
        exit = exit.max(outcome.exit);
        results.push(json!({
            "name": entry.name,
            "verdict": outcome.verdict,
            "exit_code": outcome.exit,
            "report": outcome.body,
        }));
    }
    Outcome {
        exit,
        verdict: if exit == 0 { "consistent".into() } else { "mixed".into() },
        body: Value::Array(results),
        text,
    }
}

#[derive(Serialize)]
struct EnvelopeOut {
    meta: Meta,
    verdict: String,
    exit_code: i32,
    report: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let over = Overrides {
        prime: cli.field_prime,
        degree_bound: cli.degree_bound,
        seed: cli.seed,
    };
    let (subcommand, outcome, params) = match &cli.command {
        Command::Validate { file } => match load_file(file, over) {
            Ok(loaded) => {
                let params = (loaded.prime, loaded.degree_bound, loaded.seed);
                ("validate", run_validate(&loaded), params)
            }
            Err(e) => ("validate", input_error(&e), fallback_params(over)),
        },
        Command::Glue { file } => dispatch("glue", file, over, run_glue),
        Command::Hypotheses { file } => dispatch("hypotheses", file, over, run_hypotheses),
        Command::Witness { file } => dispatch("witness", file, over, run_witness),
        Command::Dualising { file } => dispatch("dualising", file, over, run_dualising),
        Command::Examples { name } => (
            "examples",
            run_examples(name.as_deref(), over),
            fallback_params(over),
        ),
    };
    let meta = report::meta(subcommand, params.0, params.1, params.2);
    let envelope = EnvelopeOut {
        meta,
        verdict: outcome.verdict.clone(),
        exit_code: outcome.exit,
        report: outcome.body,
    };
    let json_text = serde_json::to_string_pretty(&envelope).expect("report serializes");
    if let Some(path) = &cli.report {
        if let Err(e) = fs::write(path, format!("{json_text}\n")) {
            eprintln!("cannot write report to {}: {e}", path.display());
            return ExitCode::from(3);
        }
    }
    match cli.format {
        Format::Json => println!("{json_text}"),
        Format::Text => {
            print!("{}", outcome.text);
            println!("verdict: {} (exit {})", outcome.verdict, outcome.exit);
        }
    }
    ExitCode::from(outcome.exit as u8)
}

fn fallback_params(over: Overrides) -> (u64, usize, u64) {
    (
        over.prime.unwrap_or(trideq_core::fp::DEFAULT_PRIME),
        over.degree_bound.unwrap_or(trideq_core::instance::DEFAULT_DEGREE_BOUND),
        over.seed.unwrap_or(0),
    )
}

fn input_error(e: &Error) -> Outcome {
    let (exit, msg) = classify(e);
    Outcome {
        exit,
        verdict: if exit == 3 { "input-error".into() } else { "error".into() },
        body: json!({ "error": msg }),
        text: format!("{msg}\n"),
    }
}

fn dispatch(
    name: &'static str,
    file: &PathBuf,
    over: Overrides,
    f: impl Fn(&Loaded) -> Result<Outcome, Error>,
) -> (&'static str, Outcome, (u64, usize, u64)) {
    match load_file(file, over) {
        Ok(loaded) => {
            let params = (loaded.prime, loaded.degree_bound, loaded.seed);
            match f(&loaded) {
                Ok(o) => (name, o, params),
                Err(e) => (name, input_error(&e), params),
            }
        }
        Err(e) => (name, input_error(&e), fallback_params(over)),
    }
}
