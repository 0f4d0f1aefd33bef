//! Parser for objdump-style disassembly listings.
//!
//! Instruction lines look like
//!
//! ```text
//!    1a2c:	e3a03000 	mov	r3, #0
//! ```
//!
//! Section headers, symbol labels, data directives (`.word`, `.inst`, ...),
//! ellipsis lines and blank lines are skipped. Thumb encodings printed as
//! two halfword groups are accepted.

use crate::error::{Error, Result};

use super::registers::{canonicalize_register, Isa, RegisterName};
use super::roles::{classify_operand_roles, Operand, OperandKind, RawOperand};

/// One disassembled instruction: byte offset, full printed mnemonic
/// (including condition/size suffixes, lowercase) and operands in printed
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instruction {
    pub address: u64,
    pub mnemonic: String,
    pub operands: Vec<Operand>,
}

impl Instruction {
    /// All registers with role Source or Both, in printed order.
    pub fn source_registers(&self) -> impl Iterator<Item = &RegisterName> {
        self.operands
            .iter()
            .filter(|o| matches!(o.role, super::roles::Role::Source | super::roles::Role::Both))
            .flat_map(|o| o.registers.iter())
    }

    /// All registers with role Destination or Both, in printed order.
    pub fn destination_registers(&self) -> impl Iterator<Item = &RegisterName> {
        self.operands
            .iter()
            .filter(|o| {
                matches!(
                    o.role,
                    super::roles::Role::Destination | super::roles::Role::Both
                )
            })
            .flat_map(|o| o.registers.iter())
    }

    /// All register occurrences regardless of role.
    pub fn all_registers(&self) -> impl Iterator<Item = &RegisterName> {
        self.operands.iter().flat_map(|o| o.registers.iter())
    }

    /// Render back to `mnemonic op1, op2, ...` form with canonical register
    /// names. Lossy for immediates and labels, stable for mnemonics and
    /// register sets.
    pub fn render(&self) -> String {
        let mut out = self.mnemonic.clone();
        let ops: Vec<String> = self
            .operands
            .iter()
            .map(|o| match o.kind {
                OperandKind::Register => o.registers[0].as_str().to_string(),
                OperandKind::RegisterList => {
                    let names: Vec<&str> = o.registers.iter().map(|r| r.as_str()).collect();
                    format!("{{{}}}", names.join(", "))
                }
                OperandKind::MemoryRef => {
                    let names: Vec<&str> = o.registers.iter().map(|r| r.as_str()).collect();
                    format!("[{}]", names.join(", "))
                }
                OperandKind::Immediate => "#0".to_string(),
                OperandKind::Label => "0".to_string(),
                OperandKind::Other => {
                    if o.registers.is_empty() {
                        "xx".to_string()
                    } else {
                        format!("xx {}", o.registers[0].as_str())
                    }
                }
            })
            .collect();
        if !ops.is_empty() {
            out.push('\t');
            out.push_str(&ops.join(", "));
        }
        out
    }
}

/// Parse a full listing into an instruction stream. Returns
/// [`Error::EmptyListing`] when no line matches the instruction grammar.
pub fn parse_listing(text: &str, isa: Isa) -> Result<Vec<Instruction>> {
    let mut instructions = Vec::new();
    for line in text.lines() {
        if let Some(inst) = parse_line(line, isa) {
            instructions.push(inst);
        }
    }
    if instructions.is_empty() {
        return Err(Error::EmptyListing);
    }
    Ok(instructions)
}

/// Parse one listing line; `None` for anything that is not an instruction.
pub fn parse_line(line: &str, isa: Isa) -> Option<Instruction> {
    let line = line.trim_end();
    if line.is_empty() {
        return None;
    }
    let colon = line.find(':')?;
    let address = u64::from_str_radix(line[..colon].trim(), 16).ok()?;
    let rest = line.get(colon + 1..)?;
    if rest.is_empty() {
        return None;
    }

    // Field split: GNU objdump separates encoding, mnemonic and operands
    // with tabs; fall back to whitespace tokens for space-formatted tools.
    let fields: Vec<&str> = rest
        .split('\t')
        .map(str::trim)
        .filter(|f| !f.is_empty())
        .collect();
    let (mnemonic, operand_text) = if fields.len() >= 2 && is_encoding(fields[0]) {
        (fields[1], fields.get(2).copied().unwrap_or(""))
    } else {
        let mut tokens = rest.split_whitespace().peekable();
        let mut saw_encoding = false;
        while let Some(tok) = tokens.peek() {
            if is_encoding_group(tok) {
                saw_encoding = true;
                tokens.next();
            } else {
                break;
            }
        }
        if !saw_encoding {
            return None;
        }
        let mnemonic = tokens.next()?;
        let rest_text = tokens.collect::<Vec<_>>().join(" ");
        return build_instruction(address, mnemonic, &rest_text, isa);
    };
    build_instruction(address, mnemonic, operand_text, isa)
}

fn build_instruction(
    address: u64,
    mnemonic: &str,
    operand_text: &str,
    isa: Isa,
) -> Option<Instruction> {
    let mnemonic = mnemonic.to_ascii_lowercase();
    // Data directives and ellipsis markers are not instructions.
    if mnemonic.starts_with('.') || mnemonic.is_empty() {
        return None;
    }
    let cleaned = strip_annotations(operand_text);
    let raw_operands = split_operands(&cleaned)
        .into_iter()
        .map(|op| parse_operand(op, isa))
        .collect();
    let operands = classify_operand_roles(&mnemonic, raw_operands, isa);
    Some(Instruction {
        address,
        mnemonic,
        operands,
    })
}

/// Encoding field: one or more groups of hex digits ("e3a03000", "f7ff fffe").
fn is_encoding(field: &str) -> bool {
    let mut any = false;
    for group in field.split_whitespace() {
        if !is_encoding_group(group) {
            return false;
        }
        any = true;
    }
    any
}

fn is_encoding_group(group: &str) -> bool {
    matches!(group.len(), 2 | 4 | 8) && group.chars().all(|c| c.is_ascii_hexdigit())
}

/// Drop trailing comments (`; ...`, `// ...`, `@ ...`) and symbol
/// annotations (`<main+0x1c>`).
fn strip_annotations(text: &str) -> String {
    let mut s = text;
    for marker in [";", "//", " @ "] {
        if let Some(pos) = s.find(marker) {
            s = &s[..pos];
        }
    }
    if let Some(pos) = s.find('<') {
        s = &s[..pos];
    }
    s.trim().to_string()
}

/// Split an operand string on top-level commas, respecting `[]`/`{}`/`()`.
fn split_operands(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    if text.is_empty() {
        return out;
    }
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '[' | '{' | '(' => depth += 1,
            ']' | '}' | ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                let piece = text[start..i].trim();
                if !piece.is_empty() {
                    out.push(piece);
                }
                start = i + 1;
            }
            _ => {}
        }
    }
    let piece = text[start..].trim();
    if !piece.is_empty() {
        out.push(piece);
    }
    out
}

fn parse_operand(text: &str, isa: Isa) -> RawOperand {
    let mut t = text.trim();
    let mut writeback = false;
    if let Some(stripped) = t.strip_suffix('!') {
        writeback = true;
        t = stripped.trim_end();
    }

    if let Some(inner) = t.strip_prefix('[') {
        let inner = inner.strip_suffix(']').unwrap_or(inner);
        return RawOperand {
            kind: OperandKind::MemoryRef,
            registers: extract_registers(inner, isa),
            writeback,
        };
    }
    if let Some(inner) = t.strip_prefix('{') {
        let inner = inner.strip_suffix('}').unwrap_or(inner);
        return RawOperand {
            kind: OperandKind::RegisterList,
            registers: register_list(inner, isa),
            writeback,
        };
    }
    if t.starts_with('#') {
        return RawOperand {
            kind: OperandKind::Immediate,
            registers: vec![],
            writeback,
        };
    }
    if let Some(reg) = canonicalize_register(t, isa) {
        return RawOperand {
            kind: OperandKind::Register,
            registers: vec![reg],
            writeback,
        };
    }
    let hex = t.strip_prefix("0x").unwrap_or(t);
    if !hex.is_empty() && hex.chars().all(|c| c.is_ascii_hexdigit()) {
        return RawOperand {
            kind: OperandKind::Label,
            registers: vec![],
            writeback,
        };
    }
    RawOperand {
        kind: OperandKind::Other,
        registers: extract_registers(t, isa),
        writeback,
    }
}

/// Registers referenced anywhere in a free-form operand piece (memory
/// expression, shifted-register spec).
fn extract_registers(text: &str, isa: Isa) -> Vec<RegisterName> {
    text.split(|c: char| !c.is_ascii_alphanumeric())
        .filter(|tok| !tok.is_empty())
        .filter_map(|tok| canonicalize_register(tok, isa))
        .collect()
}

/// Items of a register list, expanding `rN-rM` ranges.
fn register_list(inner: &str, isa: Isa) -> Vec<RegisterName> {
    let mut out = Vec::new();
    for item in inner.split(',') {
        let item = item.trim().trim_end_matches('^').trim();
        if item.is_empty() {
            continue;
        }
        if let Some((lo, hi)) = item.split_once('-') {
            if let Some(range) = expand_range(lo.trim(), hi.trim(), isa) {
                out.extend(range);
                continue;
            }
        }
        if let Some(reg) = canonicalize_register(item, isa) {
            out.push(reg);
        }
    }
    out
}

fn expand_range(lo: &str, hi: &str, isa: Isa) -> Option<Vec<RegisterName>> {
    let order = isa.register_names();
    let lo_pos = position_of(lo, order, isa)?;
    let hi_pos = position_of(hi, order, isa)?;
    if lo_pos > hi_pos {
        return None;
    }
    Some(
        order[lo_pos..=hi_pos]
            .iter()
            .filter_map(|name| canonicalize_register(name, isa))
            .collect(),
    )
}

fn position_of(token: &str, order: &[&str], isa: Isa) -> Option<usize> {
    let canon = canonicalize_register(token, isa)?;
    order.iter().position(|n| *n == canon.as_str())
}

#[cfg(test)]
mod tests {
    use super::super::roles::Role;
    use super::*;

    #[test]
    fn parses_arm32_mov_line() {
        let inst = parse_line("1a2c:\te3a03000\tmov\tr3, #0", Isa::Arm32).unwrap();
        assert_eq!(inst.address, 0x1a2c);
        assert_eq!(inst.mnemonic, "mov");
        assert_eq!(inst.operands.len(), 2);
        assert_eq!(inst.operands[0].kind, OperandKind::Register);
        assert_eq!(inst.operands[0].role, Role::Destination);
        assert_eq!(inst.operands[0].registers[0].as_str(), "r3");
        assert_eq!(inst.operands[1].kind, OperandKind::Immediate);
        assert_eq!(inst.operands[1].role, Role::Source);
    }

    #[test]
    fn skips_non_instruction_lines() {
        assert!(parse_line("Disassembly of section .text:", Isa::Arm32).is_none());
        assert!(parse_line("", Isa::Arm32).is_none());
        assert!(parse_line("0001244c <main>:", Isa::Arm32).is_none());
        assert!(parse_line("foo.elf:     file format elf32-littlearm", Isa::Arm32).is_none());
        assert!(parse_line("\t...", Isa::Arm32).is_none());
        // data directives inside executable sections
        assert!(parse_line("  1a30:\t00021df4 \t.word\t0x00021df4", Isa::Arm32).is_none());
        assert!(parse_line("  1a34:\t00000000 \t.inst\t0x00000000", Isa::AArch64).is_none());
    }

    #[test]
    fn empty_listing_is_an_error() {
        let text = "Disassembly of section .text:\n\n0001244c <main>:\n";
        assert!(matches!(
            parse_listing(text, Isa::Arm32),
            Err(Error::EmptyListing)
        ));
    }

    #[test]
    fn counts_match_instruction_lines() {
        let text = "\
x: file format elf32-littlearm

Disassembly of section .text:

00008000 <.text>:
    8000:\te92d4800 \tpush\t{fp, lr}
    8004:\te28db004 \tadd\tfp, sp, #4
    8008:\te24dd008 \tsub\tsp, sp, #8
    800c:\te3a03000 \tmov\tr3, #0
    8010:\te50b3008 \tstr\tr3, [fp, #-8]
    8014:\te24bd004 \tsub\tsp, fp, #4
    8018:\te8bd8800 \tpop\t{fp, pc}
";
        let insts = parse_listing(text, Isa::Arm32).unwrap();
        assert_eq!(insts.len(), 7);
        assert_eq!(insts[0].mnemonic, "push");
        assert_eq!(insts[6].mnemonic, "pop");
    }

    #[test]
    fn strips_symbol_annotations_and_comments() {
        let inst =
            parse_line("  8f4:\te59f3014 \tldr\tr3, [pc, #20]\t; 910 <x+0x18>", Isa::Arm32)
                .unwrap();
        assert_eq!(inst.mnemonic, "ldr");
        assert_eq!(inst.operands.len(), 2);
        assert_eq!(inst.operands[1].registers[0].as_str(), "pc");

        let inst = parse_line("  400398:\t94000250 \tbl\t400edc <call_weak_fn>", Isa::AArch64)
            .unwrap();
        assert_eq!(inst.mnemonic, "bl");
        assert_eq!(inst.operands.len(), 1);
        assert_eq!(inst.operands[0].kind, OperandKind::Label);
    }

    #[test]
    fn thumb_halfword_encodings_are_accepted() {
        let inst = parse_line("  1000:\tf7ff fffe\tbl\t1000 <f>", Isa::Arm32).unwrap();
        assert_eq!(inst.mnemonic, "bl");
    }

    #[test]
    fn writeback_and_post_index() {
        let inst = parse_line("  10:\te52db004 \tstr\tfp, [sp, #-4]!", Isa::Arm32).unwrap();
        assert_eq!(inst.operands[1].role, Role::Both);

        let inst =
            parse_line("  14:\ta8c17bfd \tldp\tx29, x30, [sp], #16", Isa::AArch64).unwrap();
        assert_eq!(inst.operands[0].role, Role::Destination);
        assert_eq!(inst.operands[1].role, Role::Destination);
        assert_eq!(inst.operands[2].role, Role::Source);
    }

    #[test]
    fn shifted_register_operand_reads_register() {
        let inst = parse_line("  18:\te7912103 \tldr\tr2, [r1, r3, lsl #2]", Isa::Arm32).unwrap();
        assert_eq!(inst.operands[1].kind, OperandKind::MemoryRef);
        let regs: Vec<&str> = inst.operands[1].registers.iter().map(|r| r.as_str()).collect();
        assert_eq!(regs, ["r1", "r3"]);

        let inst = parse_line("  1c:\te0813142 \tadd\tr3, r1, r2, asr #2", Isa::Arm32).unwrap();
        assert_eq!(inst.operands.len(), 4);
        assert_eq!(inst.operands[3].kind, OperandKind::Other);
    }

    #[test]
    fn register_list_ranges_expand() {
        let inst = parse_line("  20:\te92d4ff0 \tpush\t{r4-r9, sl, fp, lr}", Isa::Arm32).unwrap();
        let regs: Vec<&str> = inst.operands[0].registers.iter().map(|r| r.as_str()).collect();
        assert_eq!(regs, ["r4", "r5", "r6", "r7", "r8", "r9", "r10", "fp", "lr"]);
    }

    #[test]
    fn udf_counts_as_an_instruction() {
        // The zero word decodes as udf on recent disassemblers; it is an
        // opcode in its own right, not a data directive.
        let inst = parse_line("  24:\t00000000 \tudf\t#0", Isa::AArch64).unwrap();
        assert_eq!(inst.mnemonic, "udf");
    }

    #[test]
    fn vector_registers_are_ignored() {
        let inst = parse_line("  28:\t4ea11c20 \tmov\tv0.16b, v1.16b", Isa::AArch64).unwrap();
        assert_eq!(inst.mnemonic, "mov");
        assert!(inst.all_registers().next().is_none());
    }

    #[test]
    fn deterministic_parse() {
        let text = "  8000:\te92d4800 \tpush\t{fp, lr}\n  8004:\te3a03000 \tmov\tr3, #0\n";
        let a = parse_listing(text, Isa::Arm32).unwrap();
        let b = parse_listing(text, Isa::Arm32).unwrap();
        assert_eq!(a, b);
    }
}
