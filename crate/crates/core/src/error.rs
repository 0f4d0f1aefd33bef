use std::path::PathBuf;

use thiserror::Error;

/// Crate-wide error type. Variants map one-to-one onto the failure modes of
/// the pipeline stages: ingestion, feature extraction, training, persistence
/// and corpus management.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: not an ELF file")]
    NotAnElf { path: PathBuf },

    #[error("{path}: no executable section")]
    NoExecutableSection { path: PathBuf },

    #[error("disassembler unavailable: {detail}")]
    DisassemblerUnavailable { detail: String },

    #[error("{path}: unsupported ELF machine {machine:#x} (expected ARM or AArch64)")]
    UnsupportedMachine { path: PathBuf, machine: u16 },

    #[error("{path}: ELF is {found}, expected {expected}")]
    IsaMismatch {
        path: PathBuf,
        expected: crate::disasm::Isa,
        found: crate::disasm::Isa,
    },

    #[error("listing contains no instruction lines")]
    EmptyListing,

    #[error("{path}: ISA must be given explicitly for listing inputs")]
    IsaRequired { path: PathBuf },

    #[error("empty instruction stream")]
    EmptyStream,

    #[error("empty corpus")]
    EmptyCorpus,

    #[error("layout mismatch: {detail}")]
    LayoutMismatch { detail: String },

    #[error("training requires two classes, got {found}")]
    SingleClassInput { found: usize },

    #[error("dimension mismatch: {detail}")]
    DimensionMismatch { detail: String },

    #[error("class {label:?} has {count} samples, fewer than k={k} folds")]
    ClassTooSmall { label: String, count: usize, k: usize },

    #[error("fold count must be at least 2, got {k}")]
    InvalidFoldCount { k: usize },

    #[error("insufficient labels: {detail}")]
    InsufficientLabels { detail: String },

    #[error("malformed manifest: {detail}")]
    MalformedManifest { detail: String },

    #[error("unknown {column} label {value:?}")]
    UnknownLabel { column: String, value: String },

    #[error("model schema mismatch: {detail}")]
    ModelSchemaMismatch { detail: String },

    #[error("i/o failure on {path}: {source}")]
    IoFailure {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::IoFailure {
            path: path.into(),
            source,
        }
    }

    /// Process exit code the CLI maps this error to: 1 for bad user input,
    /// 2 for system/internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotAnElf { .. }
            | Error::NoExecutableSection { .. }
            | Error::UnsupportedMachine { .. }
            | Error::IsaMismatch { .. }
            | Error::EmptyListing
            | Error::IsaRequired { .. }
            | Error::EmptyStream
            | Error::EmptyCorpus
            | Error::SingleClassInput { .. }
            | Error::ClassTooSmall { .. }
            | Error::InvalidFoldCount { .. }
            | Error::InsufficientLabels { .. }
            | Error::MalformedManifest { .. }
            | Error::UnknownLabel { .. }
            | Error::ModelSchemaMismatch { .. } => 1,
            Error::DisassemblerUnavailable { .. }
            | Error::LayoutMismatch { .. }
            | Error::DimensionMismatch { .. }
            | Error::IoFailure { .. } => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
