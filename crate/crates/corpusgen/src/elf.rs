//! Minimal ELF executables carrying real ARM machine code.
//!
//! The files have a null section, one executable `.text` built from the
//! supplied instruction words, and a `.shstrtab`. That is enough for
//! section-walking disassemblers; the binaries are not runnable.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const EM_ARM: u16 = 40;
pub const EM_AARCH64: u16 = 183;

const SHSTRTAB: &[u8] = b"\0.text\0.shstrtab\0";
const TEXT_NAME_OFF: u32 = 1;
const SHSTRTAB_NAME_OFF: u32 = 7;

/// Build an ELF64 (AArch64) or ELF32 (ARM) image with `code` as .text.
pub fn write_minimal_elf(machine: u16, code: &[u32]) -> Vec<u8> {
    let bytes: Vec<u8> = code.iter().flat_map(|w| w.to_le_bytes()).collect();
    match machine {
        EM_AARCH64 => elf64(machine, &bytes),
        EM_ARM => elf32(machine, &bytes),
        _ => panic!("unsupported machine {machine}"),
    }
}

fn elf64(machine: u16, code: &[u8]) -> Vec<u8> {
    let ehsize = 0x40usize;
    let text_off = ehsize;
    let shstr_off = text_off + code.len();
    let shoff = shstr_off + SHSTRTAB.len();
    let vaddr = 0x400000u64 + text_off as u64;

    let mut out = vec![0u8; ehsize];
    out[..4].copy_from_slice(b"\x7fELF");
    out[4] = 2; // ELFCLASS64
    out[5] = 1; // little endian
    out[6] = 1; // EV_CURRENT
    out[16..18].copy_from_slice(&2u16.to_le_bytes()); // ET_EXEC
    out[18..20].copy_from_slice(&machine.to_le_bytes());
    out[20..24].copy_from_slice(&1u32.to_le_bytes());
    out[24..32].copy_from_slice(&vaddr.to_le_bytes()); // e_entry
    out[40..48].copy_from_slice(&(shoff as u64).to_le_bytes());
    out[52..54].copy_from_slice(&(ehsize as u16).to_le_bytes());
    out[58..60].copy_from_slice(&0x40u16.to_le_bytes()); // e_shentsize
    out[60..62].copy_from_slice(&3u16.to_le_bytes()); // e_shnum
    out[62..64].copy_from_slice(&2u16.to_le_bytes()); // e_shstrndx

    out.extend_from_slice(code);
    out.extend_from_slice(SHSTRTAB);

    out.extend_from_slice(&[0u8; 0x40]); // null section
    out.extend_from_slice(&section64(
        TEXT_NAME_OFF,
        1, // SHT_PROGBITS
        0x6, // ALLOC | EXECINSTR
        vaddr,
        text_off as u64,
        code.len() as u64,
    ));
    out.extend_from_slice(&section64(
        SHSTRTAB_NAME_OFF,
        3, // SHT_STRTAB
        0,
        0,
        shstr_off as u64,
        SHSTRTAB.len() as u64,
    ));
    out
}

fn section64(name: u32, kind: u32, flags: u64, addr: u64, offset: u64, size: u64) -> [u8; 0x40] {
    let mut sh = [0u8; 0x40];
    sh[0..4].copy_from_slice(&name.to_le_bytes());
    sh[4..8].copy_from_slice(&kind.to_le_bytes());
    sh[8..16].copy_from_slice(&flags.to_le_bytes());
    sh[16..24].copy_from_slice(&addr.to_le_bytes());
    sh[24..32].copy_from_slice(&offset.to_le_bytes());
    sh[32..40].copy_from_slice(&size.to_le_bytes());
    sh[56..64].copy_from_slice(&4u64.to_le_bytes()); // alignment
    sh
}

fn elf32(machine: u16, code: &[u8]) -> Vec<u8> {
    let ehsize = 0x34usize;
    let text_off = ehsize;
    let shstr_off = text_off + code.len();
    let shoff = shstr_off + SHSTRTAB.len();
    let vaddr = 0x8000u32 + text_off as u32;

    let mut out = vec![0u8; ehsize];
    out[..4].copy_from_slice(b"\x7fELF");
    out[4] = 1; // ELFCLASS32
    out[5] = 1;
    out[6] = 1;
    out[16..18].copy_from_slice(&2u16.to_le_bytes());
    out[18..20].copy_from_slice(&machine.to_le_bytes());
    out[20..24].copy_from_slice(&1u32.to_le_bytes());
    out[24..28].copy_from_slice(&vaddr.to_le_bytes());
    out[32..36].copy_from_slice(&(shoff as u32).to_le_bytes());
    out[40..42].copy_from_slice(&(ehsize as u16).to_le_bytes());
    out[46..48].copy_from_slice(&0x28u16.to_le_bytes()); // e_shentsize
    out[48..50].copy_from_slice(&3u16.to_le_bytes());
    out[50..52].copy_from_slice(&2u16.to_le_bytes());

    out.extend_from_slice(code);
    out.extend_from_slice(SHSTRTAB);

    out.extend_from_slice(&[0u8; 0x28]);
    out.extend_from_slice(&section32(
        TEXT_NAME_OFF,
        1,
        0x6,
        vaddr,
        text_off as u32,
        code.len() as u32,
    ));
    out.extend_from_slice(&section32(
        SHSTRTAB_NAME_OFF,
        3,
        0,
        0,
        shstr_off as u32,
        SHSTRTAB.len() as u32,
    ));
    out
}

fn section32(name: u32, kind: u32, flags: u32, addr: u32, offset: u32, size: u32) -> [u8; 0x28] {
    let mut sh = [0u8; 0x28];
    sh[0..4].copy_from_slice(&name.to_le_bytes());
    sh[4..8].copy_from_slice(&kind.to_le_bytes());
    sh[8..12].copy_from_slice(&flags.to_le_bytes());
    sh[12..16].copy_from_slice(&addr.to_le_bytes());
    sh[16..20].copy_from_slice(&offset.to_le_bytes());
    sh[20..24].copy_from_slice(&size.to_le_bytes());
    sh[32..36].copy_from_slice(&4u32.to_le_bytes());
    sh
}

/// Valid AArch64 instruction words with varied register fields.
pub fn aarch64_code_words(count: usize, seed: u64) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut words = Vec::with_capacity(count);
    for _ in 0..count {
        let d = rng.random_range(0u32..16);
        let n = rng.random_range(0u32..16);
        let m = rng.random_range(0u32..16);
        let imm12 = rng.random_range(0u32..256);
        let imm16 = rng.random_range(0u32..4096);
        let word = match rng.random_range(0..12) {
            0 => 0x9100_0000 | imm12 << 10 | n << 5 | d, // add xd, xn, #imm
            1 => 0xD100_0000 | imm12 << 10 | n << 5 | d, // sub xd, xn, #imm
            2 => 0xD280_0000 | imm16 << 5 | d,           // mov xd, #imm
            3 => 0xF940_0000 | imm12 << 10 | n << 5 | d, // ldr xd, [xn, #imm*8]
            4 => 0xF900_0000 | imm12 << 10 | n << 5 | d, // str xd, [xn, #imm*8]
            5 => 0xB940_0000 | imm12 << 10 | n << 5 | d, // ldr wd, [xn, #imm*4]
            6 => 0x0B00_0000 | m << 16 | n << 5 | d,     // add wd, wn, wm
            7 => 0x9B00_7C00 | m << 16 | n << 5 | d,     // mul xd, xn, xm
            8 => 0xF100_001F | imm12 << 10 | n << 5,     // cmp xn, #imm
            9 => 0x5400_0000 | rng.random_range(1u32..64) << 5 | rng.random_range(0u32..14),
            10 => 0xD503_201F,                           // nop
            _ => 0xAA00_03E0 | m << 16 | d,              // mov xd, xm
        };
        words.push(word);
    }
    words.push(0xD65F_03C0); // ret
    words
}

/// Valid always-executed ARM32 instruction words.
pub fn arm32_code_words(count: usize, seed: u64) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut words = Vec::with_capacity(count);
    for _ in 0..count {
        let d = rng.random_range(0u32..11);
        let n = rng.random_range(0u32..11);
        let m = rng.random_range(0u32..11);
        let imm8 = rng.random_range(0u32..256);
        let word = match rng.random_range(0..10) {
            0 => 0xE3A0_0000 | d << 12 | imm8,            // mov rd, #imm
            1 => 0xE280_0000 | n << 16 | d << 12 | imm8,  // add rd, rn, #imm
            2 => 0xE240_0000 | n << 16 | d << 12 | imm8,  // sub rd, rn, #imm
            3 => 0xE080_0000 | n << 16 | d << 12 | m,     // add rd, rn, rm
            4 => 0xE590_0000 | n << 16 | d << 12 | imm8,  // ldr rd, [rn, #imm]
            5 => 0xE580_0000 | n << 16 | d << 12 | imm8,  // str rd, [rn, #imm]
            6 => 0xE350_0000 | n << 16 | imm8,            // cmp rn, #imm
            7 => 0xE92D_4810,                             // push {r4, fp, lr}
            8 => 0xE8BD_8810,                             // pop {r4, fp, pc}
            _ => 0xE320_F000,                             // nop
        };
        words.push(word);
    }
    words.push(0xE12F_FF1E); // bx lr
    words
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn images_have_elf_magic_and_machine() {
        let a64 = write_minimal_elf(EM_AARCH64, &aarch64_code_words(16, 1));
        assert_eq!(&a64[..4], b"\x7fELF");
        assert_eq!(u16::from_le_bytes([a64[18], a64[19]]), EM_AARCH64);

        let a32 = write_minimal_elf(EM_ARM, &arm32_code_words(16, 1));
        assert_eq!(&a32[..4], b"\x7fELF");
        assert_eq!(a32[4], 1);
        assert_eq!(u16::from_le_bytes([a32[18], a32[19]]), EM_ARM);
    }
}
