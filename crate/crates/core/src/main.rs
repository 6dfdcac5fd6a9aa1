use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use batchplate::bench::{self, AttributeMode, ExperimentReport};
use batchplate::io::{self, LayoutReport, PackReport};
use batchplate::oracle::{self, OracleConfig};
use batchplate::packer::{self, AreaInsertion, FitRule, PackOptions, SearchConfig};
use batchplate::{search_space_size, Error, Platform};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_INVALID_INSTANCE: u8 = 4;
const EXIT_ORACLE_LIMIT: u8 = 5;
const EXIT_PRECONDITION: u8 = 6;

#[derive(Parser)]
#[command(
    name = "batchplate",
    version,
    about = "Select and lay out a build-plate batch"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderingArg {
    Random,
    Largest,
    Smallest,
    AsGiven,
}

impl From<OrderingArg> for packer::Ordering {
    fn from(o: OrderingArg) -> Self {
        match o {
            OrderingArg::Random => packer::Ordering::Random,
            OrderingArg::Largest => packer::Ordering::LargestFirst,
            OrderingArg::Smallest => packer::Ordering::SmallestFirst,
            OrderingArg::AsGiven => packer::Ordering::AsGiven,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentMode {
    Ordering,
    Height,
    Filling,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(clap::Args)]
struct PackFlags {
    /// Use `<` instead of `≤` when comparing footprints to free areas.
    #[arg(long)]
    strict_fit: bool,
    /// Append new free areas to the back of the list instead of in place.
    #[arg(long)]
    append_areas: bool,
}

impl PackFlags {
    fn options(&self) -> PackOptions {
        PackOptions {
            fit_rule: if self.strict_fit {
                FitRule::Strict
            } else {
                FitRule::Inclusive
            },
            insertion: if self.append_areas {
                AreaInsertion::Append
            } else {
                AreaInsertion::InPlace
            },
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Multi-start search, then pick the batch with the most material.
    Pack {
        instance: PathBuf,
        #[arg(long, default_value_t = packer::DEFAULT_ITERATIONS)]
        iterations: usize,
        #[arg(long, default_value_t = packer::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "random")]
        ordering: OrderingArg,
        /// Candidate layouts kept per ranking.
        #[arg(long, default_value_t = 8)]
        top: usize,
        /// Write the winning layout as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads, 0 for one per core.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[command(flatten)]
        pack: PackFlags,
    },
    /// Enumerate every distinct part ordering and report the optimum.
    Oracle {
        instance: PathBuf,
        #[arg(long, default_value_t = oracle::DEFAULT_LIMIT)]
        limit: u64,
        /// Also enumerate both orientations of every non-square part.
        #[arg(long)]
        full_rotation: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[command(flatten)]
        pack: PackFlags,
    },
    /// Print 2^n · n! exactly.
    Space { n: u32 },
    /// Ordering comparison or attribute study on an instance.
    Experiment {
        instance: PathBuf,
        #[arg(long, value_enum)]
        mode: ExperimentMode,
        #[arg(long, default_value_t = 10_000)]
        iterations: usize,
        #[arg(long, default_value_t = packer::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        top: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Search and oracle on the bundled ten-part case study.
    CaseStudy {
        #[arg(long, default_value_t = packer::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Convert a Name/Length/Width/Height/Filling table into an instance document.
    ImportTable {
        table: PathBuf,
        /// NAME,LENGTH,WIDTH,HEIGHT
        #[arg(long)]
        platform: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) => EXIT_IO,
            Error::OracleLimitExceeded { .. } => EXIT_ORACLE_LIMIT,
            Error::ExperimentPrecondition { .. } => EXIT_PRECONDITION,
            Error::InvalidConfig(_) => EXIT_USAGE,
            Error::NoCandidates => EXIT_FAILURE,
            _ => EXIT_INVALID_INSTANCE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure {
            code: EXIT_IO,
            message: format!("{}: {e}", path.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn experiment_text(report: &ExperimentReport, format: Format) -> String {
    match format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    }
}

#[derive(Serialize)]
struct OracleReport {
    canonical_sequences: u64,
    sequences_evaluated: u64,
    full_rotation: bool,
    best_by_mass: LayoutReport,
    best_by_coverage: LayoutReport,
}

fn parse_platform(text: &str) -> Result<Platform, Failure> {
    let fields: Vec<&str> = text.split(',').map(str::trim).collect();
    let [name, l, w, h] = fields[..] else {
        return Err(usage("--platform expects NAME,LENGTH,WIDTH,HEIGHT"));
    };
    let num = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| usage(format!("--platform: `{s}` is not a number")))
    };
    Ok(Platform::new(name, num(l)?, num(w)?, num(h)?)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Pack {
            instance,
            iterations,
            seed,
            ordering,
            top,
            svg,
            out,
            threads,
            pack,
        } => {
            let inst = io::load_instance(&instance)?;
            let config = SearchConfig {
                iterations,
                master_seed: seed,
                ordering: ordering.into(),
                keep_top: top,
                pack: pack.options(),
                threads,
            };
            let result = packer::multi_start(&inst, &config)?;
            let report = PackReport::new(&result, &config, inst.economics());
            if let Some(path) = svg {
                emit(Some(&path), &io::render_svg(&result.winner().layout))?;
            }
            emit(out.as_deref(), &report.to_json())?;
            let m = &report.winner.metrics;
            eprintln!(
                "winner: {} parts, {}% covered ({} mm2), {} mm3",
                m.part_count,
                io::format_pct(m.coverage_pct),
                m.covered_area_mm2,
                m.total_mass_mm3
            );
            Ok(())
        }
        Command::Oracle {
            instance,
            limit,
            full_rotation,
            out,
            threads,
            pack,
        } => {
            let inst = io::load_instance(&instance)?;
            let res = oracle::enumerate_optimal_with(
                &inst,
                &OracleConfig {
                    limit,
                    full_rotation,
                    pack: pack.options(),
                    threads,
                },
            )?;
            let report = OracleReport {
                canonical_sequences: res.canonical_sequences,
                sequences_evaluated: res.sequences_evaluated,
                full_rotation,
                best_by_mass: LayoutReport::new(&res.best_by_mass, inst.economics(), None),
                best_by_coverage: LayoutReport::new(&res.best_by_coverage, inst.economics(), None),
            };
            let mut text = serde_json::to_string_pretty(&report).expect("serializable");
            text.push('\n');
            emit(out.as_deref(), &text)
        }
        Command::Space { n } => {
            println!("{}", search_space_size(n));
            Ok(())
        }
        Command::Experiment {
            instance,
            mode,
            iterations,
            seed,
            top,
            format,
            out,
            threads,
        } => {
            let inst = io::load_instance(&instance)?;
            let report = match mode {
                ExperimentMode::Ordering => {
                    bench::run_ordering_experiment(&inst, iterations, seed, threads)?
                }
                ExperimentMode::Height => bench::run_attribute_experiment(
                    &inst,
                    AttributeMode::Height,
                    iterations,
                    seed,
                    top,
                    threads,
                )?,
                ExperimentMode::Filling => bench::run_attribute_experiment(
                    &inst,
                    AttributeMode::Filling,
                    iterations,
                    seed,
                    top,
                    threads,
                )?,
            };
            emit(out.as_deref(), &experiment_text(&report, format))
        }
        Command::CaseStudy {
            seed,
            format,
            threads,
        } => {
            let report = bench::run_case_study(seed, threads)?;
            for note in &report.notes {
                eprintln!("{note}");
            }
            emit(None, &experiment_text(&report, format))
        }
        Command::ImportTable {
            table,
            platform,
            out,
        } => {
            let platform = parse_platform(&platform)?;
            let text = std::fs::read_to_string(&table).map_err(|e| Failure {
                code: EXIT_IO,
                message: format!("{}: {e}", table.display()),
            })?;
            let inst = io::import_parts_table(&text, platform)?;
            emit(out.as_deref(), &io::instance_to_json(&inst))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
