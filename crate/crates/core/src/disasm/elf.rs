//! Minimal ELF header/section inspection: enough to check the magic, read
//! the machine field for ISA auto-detection, and confirm an executable
//! section exists before handing the file to the external disassembler.

use std::path::Path;

use crate::error::{Error, Result};

use super::registers::Isa;

pub const EM_ARM: u16 = 40;
pub const EM_AARCH64: u16 = 183;
const SHF_EXECINSTR: u64 = 0x4;

#[derive(Debug, Clone, Copy)]
pub struct ElfInfo {
    pub machine: u16,
    pub is_64: bool,
    pub has_exec_section: bool,
}

impl ElfInfo {
    pub fn isa(&self) -> Option<Isa> {
        match self.machine {
            EM_ARM => Some(Isa::Arm32),
            EM_AARCH64 => Some(Isa::AArch64),
            _ => None,
        }
    }
}

pub fn inspect(path: &Path) -> Result<ElfInfo> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    inspect_bytes(&bytes).ok_or_else(|| Error::NotAnElf { path: path.into() })
}

pub fn inspect_bytes(bytes: &[u8]) -> Option<ElfInfo> {
    if bytes.len() < 0x34 || &bytes[..4] != b"\x7fELF" {
        return None;
    }
    let is_64 = match bytes[4] {
        1 => false,
        2 => true,
        _ => return None,
    };
    if bytes[5] != 1 {
        // Big-endian ARM ELFs are out of scope; reject at the magic level.
        return None;
    }
    let machine = u16::from_le_bytes([bytes[18], bytes[19]]);
    let has_exec_section = scan_exec_sections(bytes, is_64).unwrap_or(false);
    Some(ElfInfo {
        machine,
        is_64,
        has_exec_section,
    })
}

fn scan_exec_sections(bytes: &[u8], is_64: bool) -> Option<bool> {
    let (shoff, shentsize, shnum) = if is_64 {
        let shoff = u64::from_le_bytes(bytes.get(0x28..0x30)?.try_into().ok()?) as usize;
        let shentsize = u16::from_le_bytes(bytes.get(0x3a..0x3c)?.try_into().ok()?) as usize;
        let shnum = u16::from_le_bytes(bytes.get(0x3c..0x3e)?.try_into().ok()?) as usize;
        (shoff, shentsize, shnum)
    } else {
        let shoff = u32::from_le_bytes(bytes.get(0x20..0x24)?.try_into().ok()?) as usize;
        let shentsize = u16::from_le_bytes(bytes.get(0x2e..0x30)?.try_into().ok()?) as usize;
        let shnum = u16::from_le_bytes(bytes.get(0x30..0x32)?.try_into().ok()?) as usize;
        (shoff, shentsize, shnum)
    };
    if shoff == 0 || shnum == 0 || shentsize < if is_64 { 0x40 } else { 0x28 } {
        return Some(false);
    }
    for i in 0..shnum {
        let base = shoff.checked_add(i.checked_mul(shentsize)?)?;
        let header = bytes.get(base..base + shentsize)?;
        let (flags, size) = if is_64 {
            (
                u64::from_le_bytes(header.get(0x08..0x10)?.try_into().ok()?),
                u64::from_le_bytes(header.get(0x20..0x28)?.try_into().ok()?),
            )
        } else {
            (
                u32::from_le_bytes(header.get(0x08..0x0c)?.try_into().ok()?) as u64,
                u32::from_le_bytes(header.get(0x14..0x18)?.try_into().ok()?) as u64,
            )
        };
        if flags & SHF_EXECINSTR != 0 && size > 0 {
            return Some(true);
        }
    }
    Some(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_short_and_non_elf_input() {
        assert!(inspect_bytes(b"").is_none());
        assert!(inspect_bytes(b"\x7fELF").is_none());
        assert!(inspect_bytes(&[0u8; 64]).is_none());
    }
}
