//! Disassembly ingestion: obtain objdump-style listings of ARM32/AArch64
//! ELF binaries via a configurable external disassembler, or read listing
//! files directly, and parse them into a normalized instruction stream with
//! operand roles.
//!
//! All operations are pure or subprocess-spawning with no shared mutable
//! state; results are immutable values.

pub mod elf;
mod parser;
mod registers;
mod roles;

use std::path::Path;
use std::process::Command;

use crate::error::{Error, Result};

pub use parser::{parse_line, parse_listing, Instruction};
pub use registers::{canonicalize_register, Isa, RegisterName};
pub use roles::{classify_operand_roles, Operand, OperandKind, RawOperand, Role};

/// Environment variable that overrides the disassembler executable.
pub const OBJDUMP_ENV: &str = "PROVENANCE_OBJDUMP";

/// External disassembler invocation: `program` is run with `args`, where
/// the literal `{path}` argument is replaced by the input file.
#[derive(Debug, Clone)]
pub struct DisassemblerConfig {
    pub program: String,
    pub args: Vec<String>,
}

impl Default for DisassemblerConfig {
    fn default() -> Self {
        let program =
            std::env::var(OBJDUMP_ENV).unwrap_or_else(|_| "objdump".to_string());
        DisassemblerConfig {
            program,
            args: vec!["-d".to_string(), "{path}".to_string()],
        }
    }
}

impl DisassemblerConfig {
    pub fn with_program(program: impl Into<String>) -> Self {
        DisassemblerConfig {
            program: program.into(),
            ..Default::default()
        }
    }
}

/// Disassemble all executable sections of an ELF binary by invoking the
/// configured external disassembler. When `isa` is `None` the ISA is read
/// from the ELF header machine field.
///
/// Fails with `NotAnElf`, `UnsupportedMachine`, `NoExecutableSection`
/// before spawning, and `DisassemblerUnavailable` when the tool is missing
/// or exits nonzero.
pub fn disassemble_binary(
    path: &Path,
    isa: Option<Isa>,
    config: &DisassemblerConfig,
) -> Result<(String, Isa)> {
    let info = elf::inspect(path)?;
    let detected = info.isa().ok_or(Error::UnsupportedMachine {
        path: path.into(),
        machine: info.machine,
    })?;
    if let Some(requested) = isa {
        if requested != detected {
            return Err(Error::IsaMismatch {
                path: path.into(),
                expected: requested,
                found: detected,
            });
        }
    }
    let isa = detected;
    if !info.has_exec_section {
        return Err(Error::NoExecutableSection { path: path.into() });
    }

    let args: Vec<String> = config
        .args
        .iter()
        .map(|a| {
            if a == "{path}" {
                path.display().to_string()
            } else {
                a.clone()
            }
        })
        .collect();
    let output = Command::new(&config.program)
        .args(&args)
        .output()
        .map_err(|e| Error::DisassemblerUnavailable {
            detail: format!("{}: {e}", config.program),
        })?;
    if !output.status.success() {
        let stderr = String::from_utf8_lossy(&output.stderr);
        return Err(Error::DisassemblerUnavailable {
            detail: format!(
                "{} exited with {}: {}",
                config.program,
                output.status,
                stderr.trim()
            ),
        });
    }
    let listing = String::from_utf8_lossy(&output.stdout).into_owned();
    Ok((listing, isa))
}

/// True when the path looks like a pre-made listing rather than a binary.
pub fn is_listing_path(path: &Path) -> bool {
    matches!(
        path.extension().and_then(|e| e.to_str()),
        Some("s") | Some("txt") | Some("asm") | Some("lst")
    )
}

/// Ingest a binary or a listing file into an instruction stream.
///
/// `.s`/`.txt`/`.asm`/`.lst` files bypass the disassembler subprocess and
/// require an explicit ISA; anything else must be an ARM/AArch64 ELF.
pub fn ingest_path(
    path: &Path,
    isa: Option<Isa>,
    config: &DisassemblerConfig,
) -> Result<(Vec<Instruction>, Isa)> {
    if is_listing_path(path) {
        let isa = isa.ok_or_else(|| Error::IsaRequired { path: path.into() })?;
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let instructions = parse_listing(&text, isa)?;
        Ok((instructions, isa))
    } else {
        let (listing, isa) = disassemble_binary(path, isa, config)?;
        let instructions = parse_listing(&listing, isa)?;
        Ok((instructions, isa))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn zero_length_file_is_not_elf() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.bin");
        std::fs::File::create(&path).unwrap();
        let err = disassemble_binary(&path, None, &DisassemblerConfig::default()).unwrap_err();
        assert!(matches!(err, Error::NotAnElf { .. }));
    }

    #[test]
    fn x86_64_elf_is_unsupported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x86.elf");
        let mut bytes = vec![0u8; 0x40];
        bytes[..4].copy_from_slice(b"\x7fELF");
        bytes[4] = 2; // 64-bit
        bytes[5] = 1; // little endian
        bytes[18] = 62; // EM_X86_64
        std::fs::File::create(&path)
            .unwrap()
            .write_all(&bytes)
            .unwrap();
        let err = disassemble_binary(&path, None, &DisassemblerConfig::default()).unwrap_err();
        assert!(matches!(err, Error::UnsupportedMachine { machine: 62, .. }));
    }

    #[test]
    fn elf_without_exec_section_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("noexec.elf");
        let mut bytes = vec![0u8; 0x40];
        bytes[..4].copy_from_slice(b"\x7fELF");
        bytes[4] = 2;
        bytes[5] = 1;
        bytes[18] = elf::EM_AARCH64 as u8;
        std::fs::File::create(&path)
            .unwrap()
            .write_all(&bytes)
            .unwrap();
        let err = disassemble_binary(&path, None, &DisassemblerConfig::default()).unwrap_err();
        assert!(matches!(err, Error::NoExecutableSection { .. }));
    }

    #[test]
    fn listing_files_bypass_the_subprocess() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("listing.txt");
        std::fs::write(&path, "  8000:\te3a03000 \tmov\tr3, #0\n").unwrap();
        let (insts, isa) =
            ingest_path(&path, Some(Isa::Arm32), &DisassemblerConfig::default()).unwrap();
        assert_eq!(isa, Isa::Arm32);
        assert_eq!(insts.len(), 1);

        let err = ingest_path(&path, None, &DisassemblerConfig::default()).unwrap_err();
        assert!(matches!(err, Error::IsaRequired { .. }));
    }

    #[test]
    fn missing_disassembler_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ok.elf");
        // minimal AArch64 ELF with one executable section
        let bytes = test_elf_aarch64();
        std::fs::write(&path, bytes).unwrap();
        let config = DisassemblerConfig::with_program("/nonexistent/disassembler");
        let err = disassemble_binary(&path, None, &config).unwrap_err();
        assert!(matches!(err, Error::DisassemblerUnavailable { .. }));
    }

    /// Tiny handwritten ELF64 (AArch64) with a 4-byte executable .text.
    fn test_elf_aarch64() -> Vec<u8> {
        let mut out = vec![0u8; 0x40];
        out[..4].copy_from_slice(b"\x7fELF");
        out[4] = 2;
        out[5] = 1;
        out[6] = 1;
        out[16] = 2; // ET_EXEC
        out[18..20].copy_from_slice(&(elf::EM_AARCH64).to_le_bytes());
        out[20..24].copy_from_slice(&1u32.to_le_bytes());
        // code at 0x40
        out.extend_from_slice(&0xd65f03c0u32.to_le_bytes()); // ret
        let shoff = out.len() as u64;
        // section 0: null
        out.extend_from_slice(&[0u8; 0x40]);
        // section 1: .text, SHF_ALLOC|SHF_EXECINSTR, offset 0x40, size 4
        let mut sh = [0u8; 0x40];
        sh[0x04..0x08].copy_from_slice(&1u32.to_le_bytes()); // SHT_PROGBITS
        sh[0x08..0x10].copy_from_slice(&0x6u64.to_le_bytes()); // flags
        sh[0x18..0x20].copy_from_slice(&0x40u64.to_le_bytes()); // offset
        sh[0x20..0x28].copy_from_slice(&4u64.to_le_bytes()); // size
        out.extend_from_slice(&sh);
        // patch ELF header: e_shoff, e_shentsize, e_shnum
        out[0x28..0x30].copy_from_slice(&shoff.to_le_bytes());
        out[0x3a..0x3c].copy_from_slice(&0x40u16.to_le_bytes());
        out[0x3c..0x3e].copy_from_slice(&2u16.to_le_bytes());
        out
    }
}
