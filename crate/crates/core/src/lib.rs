//! Recovery of compiler provenance (family, version, optimization level)
//! for stripped 32- and 64-bit ARM binaries.
//!
//! The pipeline disassembles a binary with an external objdump-compatible
//! tool, profiles register usage and opcode frequencies, scores opcodes with
//! corpus-fit TF-IDF, and classifies the concatenated feature vector with a
//! hierarchy of L1-penalized linear SVMs: family and optimization level in
//! parallel, with the family prediction routing to a per-family version
//! classifier.

pub mod corpus;
pub mod disasm;
pub mod error;
pub mod features;
pub mod hierarchy;
pub mod learn;

pub use error::{Error, Result};
