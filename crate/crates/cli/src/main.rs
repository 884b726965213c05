use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use singq_core::affine::{
    alexander_to_affine, build_affine, check_affine_conditions, parse_affine_spec, parse_element, parse_group,
    parse_matrix, search_affine, AffineSpec, AlexanderSpec, Endomorphism, SearchMode, DEFAULT_SEARCH_BUDGET,
};
use singq_core::axioms::compiled_suite;
use singq_core::enumerate::{enumerate_models, SearchConfig, MAX_ORDER};
use singq_core::fixtures::verify_paper_examples;
use singq_core::links::{count_colorings_with, parse_pd, present, resolve, ColorOptions, Mode};
use singq_core::structure::property_flags;
use singq_core::tbl::{format_structure, format_table, parse_structure};
use singq_core::{Error, Exec, Structure};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "singq", version, about = "Finite singquandles, their axioms and singular link colorings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a structure against an axiom suite (or print its properties).
    Check {
        #[arg(long, value_name = "FILE")]
        structure: String,
        #[arg(long, value_name = "NAME")]
        suite: Option<String>,
        /// Print the first violating assignment of each failing axiom.
        #[arg(long)]
        report_witness: bool,
    },
    /// List all models of a suite at one order.
    Enumerate {
        #[arg(long, value_name = "NAME")]
        suite: String,
        #[arg(long, value_name = "N")]
        order: usize,
        #[arg(long)]
        up_to_iso: bool,
        #[arg(long)]
        count_only: bool,
    },
    /// Build, check or search affine structures x·y = f(x) + g(y) + c.
    Affine(AffineArgs),
    /// Count colorings of a PD diagram.
    Color {
        #[arg(long, value_name = "FILE")]
        pd: String,
        #[arg(long, value_name = "FILE")]
        structure: String,
        /// Oriented singquandle colorings (default: unoriented).
        #[arg(long)]
        oriented: bool,
        /// Count only colorings using every element.
        #[arg(long)]
        surjective: bool,
    },
    /// Replace every singular crossing by a regular one.
    Resolve {
        #[arg(long, value_name = "FILE")]
        pd: String,
        #[arg(long, value_enum, allow_hyphen_values = true)]
        sign: Sign,
    },
    /// Print the fundamental (sing)quandle presentation of a diagram.
    Present {
        #[arg(long, value_name = "FILE")]
        pd: String,
    },
    /// Re-check the embedded example tables against their claimed profiles.
    VerifyPaper,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sign {
    #[value(name = "+")]
    Plus,
    #[value(name = "-")]
    Minus,
}

#[derive(Args)]
struct AffineArgs {
    /// Cyclic factors, e.g. `5` or `2,4`.
    #[arg(long, value_name = "LIST")]
    group: Option<String>,
    /// Matrix rows separated by `;`, entries by `,`.
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// Alexander parameter B; takes the place of f, g and c.
    #[arg(long = "alexander-B", value_name = "B", allow_hyphen_values = true)]
    alexander_b: Option<String>,
    /// Use g = 1 - f and c = 0.
    #[arg(long)]
    idempotent: bool,
    /// Read group, f, g and c from a spec file.
    #[arg(long, value_name = "FILE")]
    spec: Option<String>,
    /// List every spec on the group satisfying the mode's conditions.
    #[arg(long, value_name = "MODE")]
    search: Option<String>,
    /// Print the condition report instead of the table.
    #[arg(long)]
    report: bool,
}

/// Successful run; `failed` selects exit code 1.
struct Outcome {
    text: String,
    json: Value,
    failed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match Exec::with_jobs(cli.jobs, || run(cli.command)) {
        Ok(out) => {
            let body =
                if json { serde_json::to_string_pretty(&out.json).expect("serializable") + "\n" } else { out.text };
            // A closed pipe (`| head`) is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse { line: 0, column: 0, message: format!("{path}: {e}") })
}

fn rows(s: &Structure) -> Value {
    let t = s.tables();
    match t.as_slice() {
        [dot] => json!({ "dot": dot.rows() }),
        [dot, star] => json!({ "dot": dot.rows(), "star": star.rows() }),
        _ => unreachable!("one or two tables"),
    }
}

/// `SINGQ_BUDGET` raises search budgets and lifts the default order limits.
fn env_budget() -> Option<u64> {
    std::env::var("SINGQ_BUDGET").ok().and_then(|v| v.trim().parse().ok())
}

fn run(cmd: Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Check { structure, suite, report_witness } => {
            let s = parse_structure(&read(&structure)?)?;
            match suite {
                None => {
                    let flags = property_flags(s.dot());
                    let v = serde_json::to_value(flags).expect("serializable");
                    let text =
                        v.as_object().expect("object").iter().map(|(k, b)| format!("{k}: {b}\n")).collect::<String>();
                    Ok(Outcome { text, json: json!({ "flags": v }), failed: false })
                }
                Some(name) => {
                    let report = compiled_suite(&name)?.check(&s)?;
                    let mut text = String::new();
                    for v in &report.violations {
                        if report_witness {
                            text.push_str(&format!("{v}\n"));
                        } else {
                            text.push_str(&format!("FAIL {}\n", v.identity));
                        }
                    }
                    for name in &report.skipped {
                        text.push_str(&format!("SKIP {name}\n"));
                    }
                    let passes = report.passes();
                    if passes {
                        text.push_str(&format!("PASS {}\n", report.suite));
                    }
                    let mut json = serde_json::to_value(&report).expect("serializable");
                    json["passes"] = json!(passes);
                    Ok(Outcome { text, json, failed: !passes })
                }
            }
        }
        Command::Enumerate { suite, order, up_to_iso, count_only } => {
            let mut cfg = SearchConfig::new(order, &suite).up_to_iso(up_to_iso).count_only(count_only);
            if let Some(b) = env_budget() {
                cfg = cfg.node_budget(b);
                cfg.max_order = Some(MAX_ORDER);
            }
            let stream = enumerate_models(&cfg)?;
            let text = if count_only {
                format!("{}\n", stream.count)
            } else {
                let blocks: Vec<String> = stream
                    .models
                    .iter()
                    .enumerate()
                    .map(|(k, m)| format!("MODEL {}/{}\n{}", k + 1, stream.count, format_structure(m)))
                    .collect();
                blocks.join("\n")
            };
            let models: Vec<Value> = stream.models.iter().map(rows).collect();
            let json = json!({
                "suite": stream.suite,
                "order": stream.order,
                "up_to_iso": stream.up_to_iso,
                "count": stream.count,
                "models": models,
            });
            Ok(Outcome { text, json, failed: false })
        }
        Command::Affine(a) => affine(a),
        Command::Color { pd, structure, oriented, surjective } => {
            let d = parse_pd(&read(&pd)?)?;
            let s = parse_structure(&read(&structure)?)?;
            let mode = if oriented { Mode::Oriented } else { Mode::Unoriented };
            let opts = ColorOptions { surjective, ..ColorOptions::default() };
            let n = count_colorings_with(&d, &s, mode, &opts)?;
            let mode_name = if oriented { "oriented" } else { "unoriented" };
            let json = json!({ "count": n, "mode": mode_name, "surjective": surjective });
            Ok(Outcome { text: format!("{n}\n"), json, failed: false })
        }
        Command::Resolve { pd, sign } => {
            let d = parse_pd(&read(&pd)?)?;
            let r = resolve(&d, if matches!(sign, Sign::Plus) { 1 } else { -1 })?;
            let text = r.to_string();
            Ok(Outcome { json: json!({ "pd": text, "components": r.components() }), text, failed: false })
        }
        Command::Present { pd } => {
            let p = present(&parse_pd(&read(&pd)?)?);
            let json = serde_json::to_value(&p).expect("serializable");
            Ok(Outcome { text: p.to_string(), json, failed: false })
        }
        Command::VerifyPaper => {
            let r = verify_paper_examples(Exec::default())?;
            let json = json!({ "fixtures": r.fixtures, "verified": r.verified(), "total": r.fixtures.len() });
            Ok(Outcome { text: r.to_string(), json, failed: !r.all_ok() })
        }
    }
}

fn affine(a: AffineArgs) -> Result<Outcome, Error> {
    let usage = |m: &str| Error::Parse { line: 0, column: 0, message: m.to_string() };
    if let Some(mode) = &a.search {
        let group = parse_group(a.group.as_deref().ok_or_else(|| usage("--search needs --group"))?)?;
        let mode: SearchMode = mode.parse()?;
        let specs = search_affine(&group, mode, env_budget().unwrap_or(DEFAULT_SEARCH_BUDGET), Exec::default())?;
        let text: String = specs.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("\n");
        let json = json!({ "group": group.factors(), "mode": mode, "count": specs.len(), "specs": specs });
        return Ok(Outcome { text, json, failed: false });
    }
    let spec = if let Some(path) = &a.spec {
        parse_affine_spec(&read(path)?)?
    } else {
        let group = parse_group(a.group.as_deref().ok_or_else(|| usage("--group or --spec is required"))?)?;
        if let Some(b) = &a.alexander_b {
            alexander_to_affine(&AlexanderSpec { b: parse_matrix(&group, b)?, group })?
        } else {
            let f = parse_matrix(&group, a.f.as_deref().ok_or_else(|| usage("--f is required"))?)?;
            let (g, c) = if a.idempotent {
                (&Endomorphism::identity(&group) - &f, group.zero())
            } else {
                let g =
                    parse_matrix(&group, a.g.as_deref().ok_or_else(|| usage("--g is required (or --idempotent)"))?)?;
                let c = match &a.c {
                    Some(c) => parse_element(&group, c)?,
                    None => group.zero(),
                };
                (g, c)
            };
            AffineSpec::new(group, f, g, c)?
        }
    };
    let conditions = check_affine_conditions(&spec);
    let table = build_affine(&spec)?.into_mul();
    let mut cond_json = serde_json::to_value(conditions).expect("serializable");
    cond_json["singquandle"] = json!(conditions.singquandle());
    let json = json!({
        "spec": spec,
        "conditions": cond_json,
        "table": table.rows(),
    });
    let text = if a.report {
        let mut t = spec.to_string();
        for (k, v) in cond_json.as_object().expect("object") {
            t.push_str(&format!("{k}: {v}\n"));
        }
        t
    } else {
        format_table(&table)
    };
    Ok(Outcome { text, json, failed: false })
}
