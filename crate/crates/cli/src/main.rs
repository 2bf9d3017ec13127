//! Command-line front end: validate choice datasets, simulate tables from a
//! preference and distortion weights, detect composing orders, identify
//! justifications, measure the degree of self-punishment, and probe the wider
//! random-utility landscape. Reports are deterministic JSON on stdout.
//!
//! Exit codes: 0 success, 1 property absent (e.g. the data is not explained
//! by self-punishment), 2 input error, 3 size guard exceeded.

mod report;

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use harmful_rum::{
    all_justifications, classify, composing_orders, composition_witness,
    degree_of_self_punishment, first_composing_order, is_harmful, is_regular, is_rum,
    max_correlation_bound, parse_rational, simulate, single_peaked_support, support_set,
    DegreeError, GroundSet, HarmfulWeights, IdentificationClass, Justification, LinearOrder,
    ProbeError, RawDataset, StochasticChoice, Tolerance, DEFAULT_SIZE_GUARD,
};

use report::*;

/// Default ceiling on the ground-set size for full-table simulation (the
/// table has 2^n − 1 menus).
const DEFAULT_SIMULATE_GUARD: usize = 12;

#[derive(Parser)]
#[command(
    name = "harmful-rum",
    version,
    about = "Detect, elicit and measure self-punishment structure in stochastic choice data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Relax every equality test to |lhs - rhs| <= EPS (rational or decimal,
    /// e.g. 1e-9). Exact comparison by default.
    #[arg(long, global = true, value_name = "EPS")]
    tolerance: Option<String>,

    /// Render probabilities as decimals with K places instead of exact
    /// fractions (reports only; dataset output stays exact).
    #[arg(long, global = true, value_name = "K")]
    decimals: Option<u32>,

    /// Override the size guards: scans over all n! orders (default ceiling
    /// 5) and full-table simulation (default ceiling 12).
    #[arg(long, global = true, value_name = "N")]
    max_n: Option<usize>,

    /// Dataset file format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a dataset file and summarize it.
    Validate { path: String },
    /// Emit the full choice table induced by a preference and its distortion
    /// weights.
    Simulate {
        /// Item labels best first, comma-separated (defines the ground set).
        #[arg(long)]
        order: String,
        /// Distortion weights, comma-separated; entry 0 weights the
        /// undistorted preference.
        #[arg(long)]
        weights: String,
    },
    /// Test for composing orders; exit 1 when there is none.
    Detect {
        path: String,
        /// Enumerate every composing order instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// Enumerate all justifications and classify identification uniqueness.
    Identify { path: String },
    /// Compute the degree of self-punishment.
    Degree { path: String },
    /// Subclass probes: exact rationalizability, max correlation bound,
    /// single-peaked support.
    Classify { path: String },
    /// Full analysis in one JSON document.
    Report { path: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let tolerance = match &cli.tolerance {
        None => Tolerance::exact(),
        Some(spec) => Tolerance::new(
            parse_rational(spec).with_context(|| format!("invalid tolerance `{spec}`"))?,
        )?,
    };
    let decimals = cli.decimals;
    let order_guard = cli.max_n.unwrap_or(DEFAULT_SIZE_GUARD);
    let simulate_guard = cli.max_n.unwrap_or(DEFAULT_SIMULATE_GUARD);

    match &cli.command {
        Command::Validate { path } => {
            let rho = load(path, cli.format, &tolerance)?;
            let ground = rho.ground();
            print_json(&ValidateReport {
                valid: true,
                items: ground.labels().to_vec(),
                menu_count: rho.menu_count(),
                support: labels_of(ground, support_set(&rho).items()),
                regular: is_regular(&rho, &tolerance),
            });
            Ok(0)
        }
        Command::Simulate { order, weights } => {
            let (ground, order) = parse_order_spec(order)?;
            if ground.len() > simulate_guard {
                eprintln!(
                    "error: ground set of size {} exceeds the simulation guard {} (raise with --max-n)",
                    ground.len(),
                    simulate_guard
                );
                return Ok(3);
            }
            let weights = parse_weights_spec(weights, &tolerance)?;
            let rho = simulate(&ground, &order, &weights)?;
            match cli.format {
                Format::Json => println!("{}", rho.to_raw().to_json()),
                Format::Csv => print!("{}", rho.to_raw().to_csv()),
            }
            Ok(0)
        }
        Command::Detect { path, all } => {
            let rho = load(path, cli.format, &tolerance)?;
            let found = if *all {
                composing_orders(&rho, &tolerance)
            } else {
                first_composing_order(&rho, &tolerance)
                    .into_iter()
                    .collect()
            };
            let witness = found
                .first()
                .and_then(|order| composition_witness(&rho, order, &tolerance))
                .map(|w| witness_doc(&rho, &w, decimals));
            let harmful = !found.is_empty();
            print_json(&DetectReport {
                harmful,
                composing_orders: found
                    .iter()
                    .map(|o| o.label_string(rho.ground()))
                    .collect(),
                witness,
            });
            Ok(if harmful { 0 } else { 1 })
        }
        Command::Identify { path } => {
            let rho = load(path, cli.format, &tolerance)?;
            let justifications = all_justifications(&rho, &tolerance);
            let class = classify(&rho, &tolerance)?;
            print_json(&IdentifyReport {
                identification: class_doc(&class),
                justifications: justifications
                    .iter()
                    .map(|j| justification_doc(&rho, j, decimals))
                    .collect(),
            });
            Ok(if justifications.is_empty() { 1 } else { 0 })
        }
        Command::Degree { path } => {
            let rho = load(path, cli.format, &tolerance)?;
            match degree_of_self_punishment(&rho, &tolerance) {
                Ok(report) => {
                    print_json(&DegreeDoc {
                        degree: report.degree,
                        witness_order: report.witness_order.label_string(rho.ground()),
                        method_agreement: report.method_agreement,
                    });
                    Ok(0)
                }
                Err(DegreeError::NotHarmful) => {
                    eprintln!("dataset is not explained by self-punishment");
                    Ok(1)
                }
                Err(err) => Err(err.into()),
            }
        }
        Command::Classify { path } => {
            let rho = load(path, cli.format, &tolerance)?;
            let harmful = is_harmful(&rho, &tolerance);
            let feasibility = match is_rum(&rho, order_guard) {
                Ok(f) => f,
                Err(ProbeError::SizeGuardExceeded { n, max_n }) => {
                    eprintln!(
                        "error: ground set of size {n} exceeds the order-scan guard {max_n} (raise with --max-n)"
                    );
                    return Ok(3);
                }
                Err(err) => return Err(err.into()),
            };
            let correlation_max = match max_correlation_bound(&rho, order_guard) {
                Ok((order, value)) => Some(CorrelationDoc {
                    order: order.label_string(rho.ground()),
                    value: fmt_rational(&value, decimals),
                }),
                Err(ProbeError::GroundSetTooSmall { .. }) => None,
                Err(ProbeError::SizeGuardExceeded { n, max_n }) => {
                    eprintln!(
                        "error: ground set of size {n} exceeds the order-scan guard {max_n} (raise with --max-n)"
                    );
                    return Ok(3);
                }
            };
            let single_peaked = harmful.then(|| {
                all_justifications(&rho, &tolerance)
                    .iter()
                    .all(single_peaked_support)
            });
            print_json(&ClassifyReport {
                harmful,
                rum: feasibility.feasible,
                correlation_max,
                single_peaked,
            });
            Ok(0)
        }
        Command::Report { path } => {
            let rho = load(path, cli.format, &tolerance)?;
            let doc = build_report(&rho, &tolerance, decimals, order_guard)?;
            print_json(&doc);
            Ok(0)
        }
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading stdin")?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading `{path}`"))
    }
}

fn load(path: &str, format: Format, tolerance: &Tolerance) -> Result<StochasticChoice> {
    let text = read_input(path)?;
    let raw = match format {
        Format::Json => RawDataset::from_json(&text),
        Format::Csv => RawDataset::from_csv(&text),
    }
    .with_context(|| format!("parsing `{path}`"))?;
    StochasticChoice::validate(&raw, tolerance).with_context(|| format!("validating `{path}`"))
}

fn parse_order_spec(spec: &str) -> Result<(GroundSet, LinearOrder)> {
    let labels: Vec<&str> = spec.split(',').map(str::trim).collect();
    let ground = GroundSet::new(labels.iter().map(|s| s.to_string()))
        .map_err(|e| anyhow!("invalid --order `{spec}`: {e}"))?;
    let order = LinearOrder::from_labels(&ground, &labels)
        .map_err(|e| anyhow!("invalid --order `{spec}`: {e}"))?;
    Ok((ground, order))
}

fn parse_weights_spec(spec: &str, tolerance: &Tolerance) -> Result<HarmfulWeights> {
    let values = spec
        .split(',')
        .map(|token| parse_rational(token).map_err(|e| anyhow!("invalid --weights `{spec}`: {e}")))
        .collect::<Result<Vec<_>>>()?;
    HarmfulWeights::new(values, tolerance).map_err(|e| anyhow!("invalid --weights `{spec}`: {e}"))
}

fn witness_doc(
    rho: &StochasticChoice,
    witness: &harmful_rum::CompositionWitness,
    decimals: Option<u32>,
) -> WitnessDoc {
    let ground = rho.ground();
    WitnessDoc {
        order: witness.order.label_string(ground),
        checks: witness
            .checks
            .iter()
            .map(|c| CheckLine {
                menu: c.menu.key(ground),
                item: ground.label(c.item).to_owned(),
                rank: c.rank,
                lhs: fmt_rational(&c.lhs, decimals),
                rhs: fmt_rational(&c.rhs, decimals),
            })
            .collect(),
    }
}

fn justification_doc(
    rho: &StochasticChoice,
    justification: &Justification,
    decimals: Option<u32>,
) -> JustificationDoc {
    JustificationDoc {
        order: justification.order.label_string(rho.ground()),
        weights: justification
            .weights
            .weights()
            .iter()
            .map(|w| fmt_rational(w, decimals))
            .collect(),
    }
}

fn class_doc(class: &IdentificationClass) -> ClassDoc {
    let (j, count) = match class {
        IdentificationClass::TwoStarPaired { j } => (Some(*j), None),
        IdentificationClass::Degenerate { count } => (None, Some(*count)),
        _ => (None, None),
    };
    ClassDoc {
        class: class.name().to_owned(),
        j,
        count,
    }
}

fn build_report(
    rho: &StochasticChoice,
    tolerance: &Tolerance,
    decimals: Option<u32>,
    order_guard: usize,
) -> Result<AnalysisReport> {
    let ground = rho.ground();
    let canonical = serde_json::to_string(&rho.to_raw()).expect("dataset serializes");
    let digest = format!("sha256:{:x}", Sha256::digest(canonical.as_bytes()));
    let mode = if tolerance.is_exact() {
        "exact".to_owned()
    } else {
        format!(
            "tolerance {}",
            harmful_rum::render_rational(tolerance.epsilon())
        )
    };

    let orders = composing_orders(rho, tolerance);
    let justifications = all_justifications(rho, tolerance);
    let class = classify(rho, tolerance)?;
    let harmful = !orders.is_empty();
    let degree = match degree_of_self_punishment(rho, tolerance) {
        Ok(report) => Some(DegreeDoc {
            degree: report.degree,
            witness_order: report.witness_order.label_string(ground),
            method_agreement: report.method_agreement,
        }),
        Err(DegreeError::NotHarmful) => None,
        Err(err) => return Err(err.into()),
    };

    let probes = match is_rum(rho, order_guard) {
        Err(ProbeError::SizeGuardExceeded { n, max_n }) => ProbesDoc {
            rum: None,
            correlation_max: None,
            single_peaked: None,
            skipped: Some(format!(
                "order scans skipped: {n} items exceed the guard {max_n} (raise with --max-n)"
            )),
        },
        Err(err) => return Err(err.into()),
        Ok(feasibility) => {
            let witness = feasibility.witness.as_ref().map(|lottery| {
                lottery
                    .entries()
                    .map(|(order, weight)| LotteryEntryDoc {
                        order: order.label_string(ground),
                        weight: fmt_rational(weight, decimals),
                    })
                    .collect()
            });
            let correlation_max = match max_correlation_bound(rho, order_guard) {
                Ok((order, value)) => Some(CorrelationDoc {
                    order: order.label_string(ground),
                    value: fmt_rational(&value, decimals),
                }),
                Err(ProbeError::GroundSetTooSmall { .. }) => None,
                Err(err) => return Err(err.into()),
            };
            ProbesDoc {
                rum: Some(RumDoc {
                    feasible: feasibility.feasible,
                    witness,
                }),
                correlation_max,
                single_peaked: harmful
                    .then(|| justifications.iter().all(single_peaked_support)),
                skipped: None,
            }
        }
    };

    Ok(AnalysisReport {
        digest,
        mode,
        items: ground.labels().to_vec(),
        harmful,
        composing_orders: orders.iter().map(|o| o.label_string(ground)).collect(),
        justifications: justifications
            .iter()
            .map(|j| justification_doc(rho, j, decimals))
            .collect(),
        identification: class_doc(&class),
        degree,
        probes,
    })
}
