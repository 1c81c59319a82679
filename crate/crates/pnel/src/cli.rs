//! Command-line surface.
//!
//! Five subcommands cover the pipeline: `convert` turns CSV tables into the
//! native formats, `learn` fits one classifier, `predict` applies a stored
//! classifier, `eval` cross-validates one or more targets, and `export`
//! re-renders a classifier document. Exit codes: 0 on success, 1 when
//! inputs fail validation, 2 on command-line usage errors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::eval::cross_validate;
use crate::fuzzy;
use crate::io::csv_import::{csv_to_kb, ColumnKind, CsvOptions, PositiveFlag};
use crate::io::{
    load_examples, load_kb, load_model, write_document, write_examples, write_kb, write_model,
    RunConfig,
};
use crate::learn::learn_classifier;
use crate::reasoner::Evaluator;

#[derive(Parser)]
#[command(
    name = "pnel",
    version,
    about = "Learn weighted fuzzy class-inclusion rules from a knowledge base"
)]
pub struct Cli {
    /// Random seed; overrides the configuration file.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Configuration file with `key = value` lines.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Single configuration override, repeatable (applied after --config).
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Convert a CSV table into a knowledge base plus an examples file.
    Convert {
        /// Input CSV with a header row.
        #[arg(long, value_name = "PATH")]
        csv: PathBuf,
        /// Column holding the class label (excluded from the features).
        #[arg(long)]
        target: String,
        /// Positive label: a literal value, or `>=N` / `<=N` for numbers.
        #[arg(long)]
        positive: String,
        /// Column holding individual names (default: row1, row2, ...).
        #[arg(long)]
        id: Option<String>,
        /// Force a column to be numeric (repeatable).
        #[arg(long, value_name = "COLUMN")]
        numeric: Vec<String>,
        /// Force a column to be categorical (repeatable).
        #[arg(long, value_name = "COLUMN")]
        categorical: Vec<String>,
        /// Force a column to be boolean (repeatable).
        #[arg(long, value_name = "COLUMN")]
        boolean: Vec<String>,
        /// Where to write the knowledge base.
        #[arg(long, value_name = "PATH")]
        kb_out: PathBuf,
        /// Where to write the examples file.
        #[arg(long, value_name = "PATH")]
        examples_out: PathBuf,
    },
    /// Learn a classifier and write it as a fuzzy-concept document.
    Learn {
        /// Knowledge base (falls back to the `kb` configuration key).
        #[arg(long, value_name = "PATH")]
        kb: Option<PathBuf>,
        /// Examples file (falls back to the `examples` configuration key).
        #[arg(long, value_name = "PATH")]
        examples: Option<PathBuf>,
        /// Name of the class to learn (falls back to the `target` key).
        #[arg(long)]
        target: Option<String>,
        /// Output path; prints to stdout when absent.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Apply a stored classifier to individuals of a knowledge base.
    Predict {
        #[arg(long, value_name = "PATH")]
        kb: Option<PathBuf>,
        /// Classifier document produced by `learn`.
        #[arg(long, value_name = "PATH")]
        model: PathBuf,
        /// Individuals to score (repeatable; default: all).
        #[arg(long, value_name = "NAME")]
        individuals: Vec<String>,
        /// Output path; prints to stdout when absent.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Cross-validate one or more targets and report macro metrics.
    Eval {
        #[arg(long, value_name = "PATH")]
        kb: Option<PathBuf>,
        /// Target with its examples file, as `TARGET=PATH` (repeatable).
        #[arg(long, value_name = "TARGET=PATH")]
        examples: Vec<String>,
        /// Number of folds (falls back to the `folds` configuration key).
        #[arg(long)]
        folds: Option<usize>,
        /// Write a tab-separated per-fold record file.
        #[arg(long, value_name = "PATH")]
        record: Option<PathBuf>,
    },
    /// Parse a classifier document and re-render it canonically.
    Export {
        #[arg(long, value_name = "PATH")]
        model: PathBuf,
        /// Output path; prints to stdout when absent.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

/// Run the program; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn effective_config(cli: &Cli) -> Result<RunConfig> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    for pair in &cli.overrides {
        config.set_pair(pair)?;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    Ok(config)
}

fn required<T>(flag: Option<T>, fallback: Option<T>, what: &str) -> Result<T> {
    flag.or(fallback)
        .ok_or_else(|| Error::Config(format!("no {what} given (flag or configuration key)")))
}

fn emit(out: &Option<PathBuf>, text: &str, summary: String) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            println!("{summary} -> {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<()> {
    let config = effective_config(&cli)?;
    match cli.command {
        Command::Convert {
            csv,
            target,
            positive,
            id,
            numeric,
            categorical,
            boolean,
            kb_out,
            examples_out,
        } => {
            let mut kinds = BTreeMap::new();
            for (names, kind) in [
                (numeric, ColumnKind::Numeric),
                (categorical, ColumnKind::Categorical),
                (boolean, ColumnKind::Boolean),
            ] {
                for name in names {
                    kinds.insert(name, kind);
                }
            }
            let options = CsvOptions {
                target,
                positive: PositiveFlag::parse(&positive)?,
                id,
                kinds,
            };
            let text = std::fs::read_to_string(&csv)?;
            let (kb, labels) = csv_to_kb(&text, &options)?;
            std::fs::write(&kb_out, write_kb(&kb))?;
            std::fs::write(&examples_out, write_examples(&labels))?;
            let positives = labels
                .values()
                .filter(|l| **l == crate::kb::Label::Positive)
                .count();
            println!(
                "{} individuals -> {}; {positives} positives of {} examples -> {}",
                kb.individual_count(),
                kb_out.display(),
                labels.len(),
                examples_out.display()
            );
            Ok(())
        }
        Command::Learn {
            kb,
            examples,
            target,
            out,
        } => {
            let kb_path = required(kb, config.kb.clone().map(PathBuf::from), "knowledge base")?;
            let examples_path = required(
                examples,
                config.examples.clone().map(PathBuf::from),
                "examples file",
            )?;
            let target = required(target, config.target.clone(), "target name")?;
            let out = out.or_else(|| config.out.clone().map(PathBuf::from));

            let kb = load_kb(&kb_path)?;
            let labels = load_examples(&examples_path)?;
            let task = config.to_task(target, labels);
            let outcome = learn_classifier(&kb, &task)?;
            for warning in &outcome.warnings {
                eprintln!("warning: {warning}");
            }
            let text = write_model(&outcome.hypothesis, &outcome.families);
            let summary = format!(
                "{}: {} positive and {} negative rules",
                task.target,
                outcome.hypothesis.p_rules.len(),
                outcome.hypothesis.n_rules.len()
            );
            emit(&out, &text, summary)
        }
        Command::Predict {
            kb,
            model,
            individuals,
            out,
        } => {
            let kb_path = required(kb, config.kb.clone().map(PathBuf::from), "knowledge base")?;
            let kb = load_kb(&kb_path)?;
            let document = load_model(&model)?;
            let evaluator = evaluator_for(&config, &kb)?;
            let names: Vec<String> = if individuals.is_empty() {
                kb.individuals().to_vec()
            } else {
                for name in &individuals {
                    if !kb.has_individual(name) {
                        return Err(Error::Undeclared {
                            kind: "individual",
                            name: name.clone(),
                        });
                    }
                }
                individuals
            };
            let mut text = String::new();
            for name in &names {
                let (degree, _) = evaluator.classify(&document.hypothesis, name);
                text.push_str(&format!("{name}\t{degree:.6}\n"));
            }
            emit(&out, &text, format!("{} predictions", names.len()))
        }
        Command::Eval {
            kb,
            examples,
            folds,
            record,
        } => {
            let kb_path = required(kb, config.kb.clone().map(PathBuf::from), "knowledge base")?;
            let pairs = examples_pairs(&examples, &config)?;
            let k = folds.unwrap_or(config.folds);
            let kb = load_kb(&kb_path)?;

            let mut record_text =
                String::from("target\tfold\ttp\tfp\tprecision\trecall\tf1\tseconds\n");
            for (target, path) in pairs {
                let labels = load_examples(&path)?;
                let task = config.to_task(target.clone(), labels);
                let report = cross_validate(&kb, &task, k, config.seed)?;
                for fold in &report.folds {
                    println!(
                        "{target} fold {}: tp={} fp={} P={:.3} R={:.3} F1={:.3} ({:.3}s, {}p+{}n rules)",
                        fold.fold,
                        fold.tp,
                        fold.fp,
                        fold.precision,
                        fold.recall,
                        fold.f1,
                        fold.seconds,
                        fold.hypothesis.p_rules.len(),
                        fold.hypothesis.n_rules.len(),
                    );
                    record_text.push_str(&format!(
                        "{target}\t{}\t{}\t{}\t{:.6}\t{:.6}\t{:.6}\t{}\n",
                        fold.fold,
                        fold.tp,
                        fold.fp,
                        fold.precision,
                        fold.recall,
                        fold.f1,
                        fold.seconds.floor() as u64,
                    ));
                }
                println!(
                    "{target} macro: P={:.3} R={:.3} F1={:.3}",
                    report.macro_precision, report.macro_recall, report.macro_f1
                );
            }
            if let Some(path) = record {
                std::fs::write(&path, record_text)?;
                println!("record -> {}", path.display());
            }
            Ok(())
        }
        Command::Export { model, out } => {
            let document = load_model(&model)?;
            let text = write_document(&document.target, &document.sets, &document.hypothesis);
            emit(
                &out,
                &text,
                format!(
                    "{}: {} positive and {} negative rules",
                    document.target,
                    document.hypothesis.p_rules.len(),
                    document.hypothesis.n_rules.len()
                ),
            )
        }
    }
}

fn evaluator_for<'k>(config: &RunConfig, kb: &'k crate::kb::KnowledgeBase) -> Result<Evaluator<'k>> {
    let conj = fuzzy::family(&config.conjunction_family).ok_or_else(|| {
        Error::Config(format!(
            "unknown truth-function family `{}`",
            config.conjunction_family
        ))
    })?;
    let gci = fuzzy::family(&config.gci_family).ok_or_else(|| {
        Error::Config(format!(
            "unknown truth-function family `{}`",
            config.gci_family
        ))
    })?;
    Ok(Evaluator::new(kb, conj, gci))
}

/// Resolve `TARGET=PATH` pairs from flags, falling back to the
/// comma-separated `examples` configuration key.
fn examples_pairs(flags: &[String], config: &RunConfig) -> Result<Vec<(String, PathBuf)>> {
    let raw: Vec<String> = if !flags.is_empty() {
        flags.to_vec()
    } else if let Some(joined) = &config.examples {
        joined.split(',').map(|s| s.trim().to_string()).collect()
    } else {
        Vec::new()
    };
    if raw.is_empty() {
        return Err(Error::Config(
            "no examples given: pass --examples TARGET=PATH".into(),
        ));
    }
    raw.iter()
        .map(|pair| {
            let Some((target, path)) = pair.split_once('=') else {
                return Err(Error::Config(format!(
                    "examples must look like TARGET=PATH, got `{pair}`"
                )));
            };
            Ok((target.trim().to_string(), Path::new(path.trim()).to_path_buf()))
        })
        .collect()
}
