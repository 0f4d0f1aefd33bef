//! Deterministic fixture corpora for the provenance pipeline.
//!
//! Two generators live here:
//!
//! * [`listing`] writes objdump-style ARM32/AArch64 listings whose register
//!   and opcode habits vary by compiler family, version and optimization
//!   level, with per-binary noise. They stand in for cross-compiled ground
//!   truth corpora on machines without an ARM toolchain.
//! * [`elf`] writes small valid ELF executables filled with real ARM
//!   encodings, for driving an actual disassembler subprocess.

pub mod elf;
pub mod listing;

pub use listing::{generate_corpus, CorpusSpec, GenIsa, GeneratedCorpus};
