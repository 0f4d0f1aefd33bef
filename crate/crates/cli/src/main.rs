//! Command-line surface for compiler provenance recovery on ARM binaries:
//! extract features, train and cross-validate the SVM hierarchy, predict
//! provenance tuples, inspect model weights, and scan directories of
//! unknown binaries.
//!
//! Exit codes: 0 success, 1 user error (bad input, bad labels), 2 internal
//! error (I/O failure, missing disassembler).

mod commands;
mod timing;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use provenance::disasm::{DisassemblerConfig, Isa};
use provenance::hierarchy::OptimizationScheme;
use provenance::learn::{ClassWeighting, TrainConfig};

use commands::cv::Task;
use commands::extract::Format;
use commands::Context;

#[derive(Parser)]
#[command(
    name = "provenance",
    about = "Recover compiler family, version and optimization level of ARM binaries",
    version
)]
struct Cli {
    /// Print the machine-readable JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for every stochastic step (fold shuffling, training order).
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Worker threads for file-level parallelism (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Disassembler executable (overrides $PROVENANCE_OBJDUMP and the
    /// default `objdump`).
    #[arg(long, global = true)]
    objdump: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IsaArg {
    Auto,
    Arm32,
    Aarch64,
}

impl IsaArg {
    fn to_isa(self) -> Option<Isa> {
        match self {
            IsaArg::Auto => None,
            IsaArg::Arm32 => Some(Isa::Arm32),
            IsaArg::Aarch64 => Some(Isa::AArch64),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TaskArg {
    Family,
    Version,
    Optimization,
    Binary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(clap::Args, Debug, Clone)]
struct TrainKnobs {
    /// Regularization strength C.
    #[arg(long, default_value_t = 1.0)]
    c: f64,

    /// Relative objective decrease per epoch that stops training.
    #[arg(long, default_value_t = 1e-4)]
    tolerance: f64,

    #[arg(long, default_value_t = 1000)]
    max_epochs: usize,

    /// Weight classes inversely to their frequency.
    #[arg(long, default_value = "balanced")]
    class_weights: String,
}

impl TrainKnobs {
    fn to_config(&self, seed: u64) -> Result<TrainConfig, String> {
        let class_weighting = match self.class_weights.as_str() {
            "balanced" => ClassWeighting::Balanced,
            "uniform" => ClassWeighting::Uniform,
            other => return Err(format!("unknown class weighting {other:?}")),
        };
        if self.c <= 0.0 || self.tolerance <= 0.0 || self.max_epochs == 0 {
            return Err("c, tolerance and max-epochs must be positive".into());
        }
        Ok(TrainConfig {
            c: self.c,
            tolerance: self.tolerance,
            max_epochs: self.max_epochs,
            class_weighting,
            seed,
        })
    }
}

#[derive(clap::Args, Debug, Clone)]
struct FilterKnobs {
    /// Remove binaries larger than this many bytes (0 disables).
    #[arg(long, default_value_t = provenance::corpus::DEFAULT_SIZE_LIMIT)]
    max_size: u64,

    /// Keep entries with duplicate checksums.
    #[arg(long)]
    keep_duplicates: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Extract per-binary raw features (register profile + opcode TFs).
    Extract {
        /// Binaries or listing files.
        paths: Vec<PathBuf>,

        /// Read inputs from a manifest instead.
        #[arg(long)]
        manifest: Option<PathBuf>,

        /// ISA of the inputs; `auto` reads the ELF header (listing files
        /// need an explicit ISA).
        #[arg(long, value_enum, default_value_t = IsaArg::Auto)]
        isa: IsaArg,

        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,

        /// Write the records to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Stratified k-fold cross-validation of one classification task.
    #[command(alias = "cv")]
    CrossValidate {
        #[arg(long)]
        manifest: PathBuf,

        #[arg(long, value_enum, default_value_t = TaskArg::Family)]
        task: TaskArg,

        /// Optimization label space: 5, 4 (-O2/-O3 merged) or 2 (-O0 vs rest).
        #[arg(long, default_value_t = 5)]
        scheme: u8,

        #[arg(long, default_value_t = 10)]
        k: usize,

        /// Family whose version labels to classify (task=version).
        #[arg(long)]
        family: Option<String>,

        /// Positive family label for the binary task; everything else
        /// becomes "other".
        #[arg(long)]
        positive: Option<String>,

        /// Also drop entries whose extracted feature vectors are identical.
        #[arg(long)]
        dedup_features: bool,

        /// Include wall/CPU timings per phase in the report.
        #[arg(long)]
        timings: bool,

        #[arg(long)]
        out: Option<PathBuf>,

        #[command(flatten)]
        filters: FilterKnobs,

        #[command(flatten)]
        knobs: TrainKnobs,
    },

    /// Train the family/version/optimization hierarchy and save the model.
    Train {
        #[arg(long)]
        manifest: PathBuf,

        #[arg(long, default_value_t = 5)]
        scheme: u8,

        /// Output model file (JSON).
        #[arg(long)]
        out: PathBuf,

        #[command(flatten)]
        filters: FilterKnobs,

        #[command(flatten)]
        knobs: TrainKnobs,
    },

    /// Predict provenance tuples for binaries or listings.
    Predict {
        #[arg(long)]
        model: PathBuf,

        #[arg(required = true)]
        paths: Vec<PathBuf>,

        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Show the heaviest-weighted features of each SVM.
    Explain {
        #[arg(long)]
        model: PathBuf,

        /// family | version | optimization | all
        #[arg(long, default_value = "all")]
        task: String,

        #[arg(long, default_value_t = 5)]
        top: usize,

        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Predict every binary under a directory and report label histograms.
    Scan {
        #[arg(long)]
        model: PathBuf,

        directory: PathBuf,

        /// Write the aggregated report to a file (.json or .csv).
        #[arg(long)]
        report: Option<PathBuf>,

        /// Include per-file predictions in the report.
        #[arg(long)]
        per_file: bool,
    },
}

fn user_error(message: &str) -> ! {
    eprintln!("error: {message}");
    std::process::exit(1);
}

fn scheme_from(arity: u8) -> OptimizationScheme {
    OptimizationScheme::from_arity(arity as usize)
        .unwrap_or_else(|| user_error(&format!("--scheme must be 5, 4 or 2, got {arity}")))
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };

    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            user_error(&format!("cannot configure {jobs} worker threads: {e}"));
        }
    }

    let mut disassembler = DisassemblerConfig::default();
    if let Some(program) = &cli.objdump {
        disassembler.program = program.clone();
    }

    let seed = cli.seed;
    let make_ctx = |json: bool, out: Option<PathBuf>| Context {
        json,
        out,
        seed,
        disassembler: disassembler.clone(),
    };

    let outcome = match cli.command {
        Command::Extract {
            paths,
            manifest,
            isa,
            format,
            out,
        } => {
            let ctx = make_ctx(cli.json, None);
            commands::extract::run(
                commands::extract::ExtractArgs {
                    paths,
                    manifest,
                    isa: isa.to_isa(),
                    format: match format {
                        FormatArg::Json => Format::Json,
                        FormatArg::Csv => Format::Csv,
                    },
                },
                &Context { out, ..ctx },
            )
        }
        Command::CrossValidate {
            manifest,
            task,
            scheme,
            k,
            family,
            positive,
            dedup_features,
            timings,
            out,
            filters,
            knobs,
        } => {
            let config = knobs
                .to_config(seed)
                .unwrap_or_else(|e| user_error(&e));
            let ctx = make_ctx(cli.json, out);
            commands::cv::run(
                commands::cv::CvArgs {
                    manifest,
                    task: match task {
                        TaskArg::Family => Task::Family,
                        TaskArg::Version => Task::Version,
                        TaskArg::Optimization => Task::Optimization,
                        TaskArg::Binary => Task::Binary,
                    },
                    scheme: scheme_from(scheme),
                    k,
                    family,
                    positive,
                    max_size: filters.max_size,
                    keep_duplicates: filters.keep_duplicates,
                    dedup_features,
                    timings,
                    config,
                },
                &ctx,
            )
        }
        Command::Train {
            manifest,
            scheme,
            out,
            filters,
            knobs,
        } => {
            let config = knobs
                .to_config(seed)
                .unwrap_or_else(|e| user_error(&e));
            let ctx = make_ctx(cli.json, None);
            commands::train::run(
                commands::train::TrainArgs {
                    manifest,
                    scheme: scheme_from(scheme),
                    out,
                    max_size: filters.max_size,
                    keep_duplicates: filters.keep_duplicates,
                    config,
                },
                &ctx,
            )
        }
        Command::Predict { model, paths, out } => {
            let ctx = make_ctx(cli.json, out);
            commands::predict::run(commands::predict::PredictArgs { model, paths }, &ctx)
        }
        Command::Explain {
            model,
            task,
            top,
            out,
        } => {
            if !matches!(task.as_str(), "family" | "version" | "optimization" | "all") {
                user_error(&format!(
                    "--task must be family, version, optimization or all, got {task:?}"
                ));
            }
            let ctx = make_ctx(cli.json, out);
            commands::explain::run(
                commands::explain::ExplainArgs { model, task, top },
                &ctx,
            )
        }
        Command::Scan {
            model,
            directory,
            report,
            per_file,
        } => {
            let ctx = make_ctx(cli.json, None);
            commands::scan::run(
                commands::scan::ScanArgs {
                    model,
                    directory,
                    report,
                    per_file,
                },
                &ctx,
            )
        }
    };

    match outcome {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
