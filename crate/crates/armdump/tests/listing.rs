use std::io::Write;
use std::process::Command;

use corpusgen::elf::{aarch64_code_words, arm32_code_words, write_minimal_elf, EM_AARCH64, EM_ARM};

fn run_armdump(bytes: &[u8], name: &str) -> String {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join(name);
    std::fs::File::create(&path)
        .unwrap()
        .write_all(bytes)
        .unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_armdump"))
        .arg("-d")
        .arg(&path)
        .output()
        .unwrap();
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout).unwrap()
}

#[test]
fn disassembles_aarch64_sections() {
    let words = vec![0xd2800000u32, 0x91000421, 0xd503201f, 0xd65f03c0];
    let listing = run_armdump(&write_minimal_elf(EM_AARCH64, &words), "a64.elf");
    assert!(listing.contains("file format elf64-littleaarch64"));
    assert!(listing.contains("Disassembly of section .text:"));
    assert!(listing.contains("\tmov\tx0, #0"));
    assert!(listing.contains("\tnop"));
    assert!(listing.contains("\tret"));
    // every word produced exactly one line
    let lines = listing
        .lines()
        .filter(|l| l.trim_start().starts_with(|c: char| c.is_ascii_hexdigit()) && l.contains(":\t"))
        .count();
    assert_eq!(lines, words.len());
}

#[test]
fn disassembles_arm32_with_condition_suffixes() {
    let words = vec![0xe3a03000u32, 0xe92d4800, 0x012fff1e, 0xe8bd8800];
    let listing = run_armdump(&write_minimal_elf(EM_ARM, &words), "a32.elf");
    assert!(listing.contains("file format elf32-littlearm"));
    assert!(listing.contains("\tmov\tr3, #0"));
    assert!(listing.contains("\tpush\t{fp, lr}"));
    assert!(listing.contains("\tbxeq\tlr"));
    assert!(listing.contains("\tpop\t{fp, pc}"));
}

#[test]
fn undecodable_words_become_data_lines() {
    // 0xffffffff is not a valid always-condition ARM32 instruction
    let words = vec![0xe3a03000u32, 0xffffffff, 0xe12fff1e];
    let listing = run_armdump(&write_minimal_elf(EM_ARM, &words), "data.elf");
    assert!(listing.contains(".word\t0xffffffff"), "listing:\n{listing}");
}

#[test]
fn non_elf_input_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("not-elf");
    std::fs::write(&path, b"plain text").unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_armdump"))
        .arg("-d")
        .arg(&path)
        .output()
        .unwrap();
    assert!(!output.status.success());
}

#[test]
fn random_code_round_trips_through_generator() {
    for (machine, words) in [
        (EM_AARCH64, aarch64_code_words(512, 3)),
        (EM_ARM, arm32_code_words(512, 4)),
    ] {
        let listing = run_armdump(&write_minimal_elf(machine, &words), "gen.elf");
        let instruction_lines = listing
            .lines()
            .filter(|l| l.contains(":\t") && !l.contains("file format"))
            .count();
        assert!(
            instruction_lines >= words.len() * 9 / 10,
            "{machine}: only {instruction_lines} lines for {} words",
            words.len()
        );
    }
}
