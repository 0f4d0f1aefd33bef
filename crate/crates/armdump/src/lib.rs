//! objdump-compatible disassembly of ARM32/AArch64 ELF binaries.
//!
//! GNU binutils builds are frequently configured without ARM support; this
//! tool accepts the same `-d <file>` invocation and prints the same listing
//! shape for all executable sections:
//!
//! ```text
//! Disassembly of section .text:
//!
//! 0000000000400078 <.text>:
//!   400078:	d2800000 	mov	x0, #0
//! ```
//!
//! Words that do not decode are printed as `.word` data lines, matching how
//! binutils renders literal pools.

use std::io::Write;

use anyhow::{bail, Context, Result};
use capstone::prelude::*;
use object::read::elf::{ElfFile32, ElfFile64};
use object::{Endianness, Object, ObjectSection, SectionFlags};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Machine {
    Arm32,
    AArch64,
}

struct ExecSection {
    name: String,
    address: u64,
    data: Vec<u8>,
}

fn executable_sections(bytes: &[u8]) -> Result<(Machine, Vec<ExecSection>)> {
    if bytes.len() < 20 || &bytes[..4] != b"\x7fELF" {
        bail!("not an ELF file");
    }
    let machine = u16::from_le_bytes([bytes[18], bytes[19]]);
    let machine = match machine {
        40 => Machine::Arm32,
        183 => Machine::AArch64,
        other => bail!("unsupported ELF machine {other} (expected ARM or AArch64)"),
    };

    fn collect<'a, O: Object<'a>>(file: &O) -> Vec<ExecSection> {
        file.sections()
            .filter(|s| match s.flags() {
                SectionFlags::Elf { sh_flags, .. } => {
                    sh_flags.contains(object::elf::SHF_EXECINSTR)
                }
                _ => false,
            })
            .filter_map(|s| {
                let data = s.data().ok()?;
                if data.is_empty() {
                    return None;
                }
                Some(ExecSection {
                    name: s.name().unwrap_or(".text").to_string(),
                    address: s.address(),
                    data: data.to_vec(),
                })
            })
            .collect()
    }

    let sections = match machine {
        Machine::Arm32 => {
            let file = ElfFile32::<Endianness>::parse(bytes).context("parsing ELF32")?;
            collect(&file)
        }
        Machine::AArch64 => {
            let file = ElfFile64::<Endianness>::parse(bytes).context("parsing ELF64")?;
            collect(&file)
        }
    };
    if sections.is_empty() {
        bail!("no executable section");
    }
    Ok((machine, sections))
}

fn build_capstone(machine: Machine) -> Result<Capstone> {
    let cs = match machine {
        Machine::Arm32 => Capstone::new()
            .arm()
            .mode(arch::arm::ArchMode::Arm)
            .build(),
        Machine::AArch64 => Capstone::new()
            .arm64()
            .mode(arch::arm64::ArchMode::Arm)
            .build(),
    };
    cs.map_err(|e| anyhow::anyhow!("capstone init: {e}"))
}

/// Disassemble an in-memory ELF image and write the listing.
pub fn write_listing(bytes: &[u8], out: &mut dyn Write, path_label: &str) -> Result<()> {
    let (machine, sections) = executable_sections(bytes)?;
    let cs = build_capstone(machine)?;
    let format = match machine {
        Machine::Arm32 => "elf32-littlearm",
        Machine::AArch64 => "elf64-littleaarch64",
    };
    writeln!(out, "\n{path_label}:     file format {format}\n")?;

    for section in &sections {
        writeln!(out, "\nDisassembly of section {}:", section.name)?;
        writeln!(out, "\n{:016x} <{}>:", section.address, section.name)?;
        let mut offset = 0usize;
        let data = &section.data;
        while offset < data.len() {
            let address = section.address + offset as u64;
            let remaining = &data[offset..];
            let decoded = cs
                .disasm_count(remaining, address, 1)
                .ok()
                .filter(|insns| !insns.is_empty());
            match decoded {
                Some(insns) => {
                    let insn = insns.iter().next().unwrap();
                    let size = insn.len();
                    let encoding = render_encoding(&data[offset..offset + size]);
                    let mnemonic = insn.mnemonic().unwrap_or("??");
                    match insn.op_str().filter(|s| !s.is_empty()) {
                        Some(ops) => writeln!(
                            out,
                            "  {:x}:\t{} \t{}\t{}",
                            address, encoding, mnemonic, ops
                        )?,
                        None => {
                            writeln!(out, "  {:x}:\t{} \t{}", address, encoding, mnemonic)?
                        }
                    }
                    offset += size;
                }
                None => {
                    // undecodable word: emit a data line like binutils does
                    let chunk = remaining.len().min(4);
                    let mut word = [0u8; 4];
                    word[..chunk].copy_from_slice(&remaining[..chunk]);
                    let value = u32::from_le_bytes(word);
                    writeln!(
                        out,
                        "  {:x}:\t{:08x} \t.word\t0x{:08x}",
                        address, value, value
                    )?;
                    offset += chunk;
                }
            }
        }
    }
    Ok(())
}

fn render_encoding(bytes: &[u8]) -> String {
    match bytes.len() {
        4 => format!("{:08x}", u32::from_le_bytes(bytes.try_into().unwrap())),
        2 => format!("{:04x}", u16::from_le_bytes(bytes.try_into().unwrap())),
        _ => bytes.iter().map(|b| format!("{b:02x}")).collect(),
    }
}
