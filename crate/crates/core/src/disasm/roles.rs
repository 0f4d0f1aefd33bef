//! Source/destination role assignment for parsed operands.
//!
//! Roles follow architectural dataflow via a per-mnemonic-class rule table:
//! the default rule marks the first register operand as the destination and
//! everything else as sources; store, compare and branch classes read all of
//! their registers; load classes write the loaded registers and read the
//! address registers; writeback addressing marks the base register as both
//! read and written.

use serde::{Deserialize, Serialize};

use super::registers::{Isa, RegisterName};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperandKind {
    Register,
    Immediate,
    MemoryRef,
    RegisterList,
    Label,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Source,
    Destination,
    Both,
}

/// Operand as parsed from listing text, before roles are known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawOperand {
    pub kind: OperandKind,
    /// Canonical general-purpose registers referenced by this operand, in
    /// printed order. Non-GP register tokens are dropped at parse time.
    pub registers: Vec<RegisterName>,
    /// True for writeback addressing (`[sp, #8]!`, `sp!`).
    pub writeback: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Operand {
    pub kind: OperandKind,
    pub registers: Vec<RegisterName>,
    pub role: Role,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MnemonicClass {
    Store,
    Load,
    LoadMultiple,
    Compare,
    Branch,
    Default,
}

const CONDITION_SUFFIXES: [&str; 17] = [
    "eq", "ne", "cs", "hs", "cc", "lo", "mi", "pl", "vs", "vc", "hi", "ls", "ge", "lt", "gt",
    "le", "al",
];

fn is_condition(suffix: &str) -> bool {
    CONDITION_SUFFIXES.contains(&suffix)
}

/// True for branch mnemonics: b/bl/bx/blx/bxj plus condition suffix on
/// ARM32, and b/b.cond/bl/br/blr/ret/cbz/cbnz/tbz/tbnz on AArch64.
fn is_branch(mnemonic: &str) -> bool {
    if matches!(
        mnemonic,
        "b" | "bl" | "bx" | "blx" | "bxj" | "br" | "blr" | "ret" | "retaa" | "retab" | "cbz"
            | "cbnz" | "tbz" | "tbnz"
    ) {
        return true;
    }
    if mnemonic.starts_with("b.") {
        return true;
    }
    for base in ["blx", "bxj", "bl", "bx", "b"] {
        if let Some(suffix) = mnemonic.strip_prefix(base) {
            if is_condition(suffix) {
                return true;
            }
        }
    }
    if let Some(suffix) = mnemonic.strip_prefix("cbz").or_else(|| mnemonic.strip_prefix("cbnz")) {
        if is_condition(suffix) {
            return true;
        }
    }
    false
}

fn classify_mnemonic(mnemonic: &str) -> MnemonicClass {
    if is_branch(mnemonic) {
        return MnemonicClass::Branch;
    }
    for prefix in ["cmp", "cmn", "tst", "teq", "ccmp", "ccmn"] {
        if mnemonic.starts_with(prefix) {
            return MnemonicClass::Compare;
        }
    }
    for prefix in ["str", "stm", "stp", "stur", "stlr", "push"] {
        if mnemonic.starts_with(prefix) {
            return MnemonicClass::Store;
        }
    }
    if mnemonic.starts_with("ldm") {
        return MnemonicClass::LoadMultiple;
    }
    for prefix in ["ldr", "ldp", "ldur", "ldar", "ldxr", "ldaxr", "ldtr", "pop"] {
        if mnemonic.starts_with(prefix) {
            return MnemonicClass::Load;
        }
    }
    MnemonicClass::Default
}

/// Assign source/destination roles to a parsed operand list. Pure function
/// of `(mnemonic, operand syntax, isa)`; unknown mnemonics fall through to
/// the default rule.
pub fn classify_operand_roles(
    mnemonic: &str,
    operands: Vec<RawOperand>,
    _isa: Isa,
) -> Vec<Operand> {
    let class = classify_mnemonic(mnemonic);
    let mut roles: Vec<Role> = vec![Role::Source; operands.len()];

    match class {
        MnemonicClass::Store | MnemonicClass::Compare | MnemonicClass::Branch => {}
        MnemonicClass::Load => {
            // Register and list operands before the memory reference are the
            // loaded values; the memory reference and anything after it (a
            // post-index increment) are address computation.
            let mem_at = operands.iter().position(|o| o.kind == OperandKind::MemoryRef);
            for (i, op) in operands.iter().enumerate() {
                let before_mem = mem_at.map_or(true, |m| i < m);
                if before_mem
                    && matches!(op.kind, OperandKind::Register | OperandKind::RegisterList)
                {
                    roles[i] = Role::Destination;
                }
            }
        }
        MnemonicClass::LoadMultiple => {
            // ldm base, {list}: the base is read, the list is written.
            for (i, op) in operands.iter().enumerate() {
                if op.kind == OperandKind::RegisterList {
                    roles[i] = Role::Destination;
                }
            }
        }
        MnemonicClass::Default => {
            if let Some(first_reg) =
                operands.iter().position(|o| o.kind == OperandKind::Register)
            {
                roles[first_reg] = Role::Destination;
            }
        }
    }

    operands
        .into_iter()
        .zip(roles)
        .map(|(op, role)| {
            let role = if op.writeback && !op.registers.is_empty() {
                Role::Both
            } else {
                role
            };
            Operand {
                kind: op.kind,
                registers: op.registers,
                role,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::registers::canonicalize_register;
    use super::*;

    fn reg(name: &str, isa: Isa) -> RawOperand {
        RawOperand {
            kind: OperandKind::Register,
            registers: vec![canonicalize_register(name, isa).unwrap()],
            writeback: false,
        }
    }

    fn mem(names: &[&str], isa: Isa, writeback: bool) -> RawOperand {
        RawOperand {
            kind: OperandKind::MemoryRef,
            registers: names
                .iter()
                .map(|n| canonicalize_register(n, isa).unwrap())
                .collect(),
            writeback,
        }
    }

    fn imm() -> RawOperand {
        RawOperand {
            kind: OperandKind::Immediate,
            registers: vec![],
            writeback: false,
        }
    }

    #[test]
    fn store_reads_everything() {
        // str r3, [fp, #-8]
        let ops = classify_operand_roles(
            "str",
            vec![reg("r3", Isa::Arm32), mem(&["fp"], Isa::Arm32, false)],
            Isa::Arm32,
        );
        assert_eq!(ops[0].role, Role::Source);
        assert_eq!(ops[1].role, Role::Source);
    }

    #[test]
    fn default_rule_first_register_is_destination() {
        // add r3, r3, r1
        let ops = classify_operand_roles(
            "add",
            vec![reg("r3", Isa::Arm32), reg("r3", Isa::Arm32), reg("r1", Isa::Arm32)],
            Isa::Arm32,
        );
        assert_eq!(ops[0].role, Role::Destination);
        assert_eq!(ops[1].role, Role::Source);
        assert_eq!(ops[2].role, Role::Source);
    }

    #[test]
    fn load_with_writeback_marks_base_both() {
        // ldr w8, [sp, #12]!
        let ops = classify_operand_roles(
            "ldr",
            vec![reg("w8", Isa::AArch64), mem(&["sp"], Isa::AArch64, true)],
            Isa::AArch64,
        );
        assert_eq!(ops[0].role, Role::Destination);
        assert_eq!(ops[1].role, Role::Both);
    }

    #[test]
    fn load_post_index_addresses_are_sources() {
        // ldp x29, x30, [sp], #32
        let ops = classify_operand_roles(
            "ldp",
            vec![
                reg("x29", Isa::AArch64),
                reg("x30", Isa::AArch64),
                mem(&["sp"], Isa::AArch64, false),
                imm(),
            ],
            Isa::AArch64,
        );
        assert_eq!(ops[0].role, Role::Destination);
        assert_eq!(ops[1].role, Role::Destination);
        assert_eq!(ops[2].role, Role::Source);
    }

    #[test]
    fn compare_has_no_destination() {
        let ops = classify_operand_roles(
            "cmp",
            vec![reg("r0", Isa::Arm32), imm()],
            Isa::Arm32,
        );
        assert_eq!(ops[0].role, Role::Source);
    }

    #[test]
    fn branches_read_their_registers() {
        for m in ["bx", "bxeq", "bxls", "blx", "blne", "blt", "bmi", "br", "ret"] {
            let ops = classify_operand_roles(m, vec![reg("lr", Isa::Arm32)], Isa::Arm32);
            assert_eq!(ops[0].role, Role::Source, "mnemonic {m}");
        }
    }

    #[test]
    fn data_processing_b_mnemonics_are_not_branches() {
        // bic/bfi start with 'b' but write their first register.
        for m in ["bic", "bfi", "bfc"] {
            let ops = classify_operand_roles(
                m,
                vec![reg("r0", Isa::Arm32), reg("r1", Isa::Arm32)],
                Isa::Arm32,
            );
            assert_eq!(ops[0].role, Role::Destination, "mnemonic {m}");
        }
    }

    #[test]
    fn push_reads_pop_writes_lists() {
        let list = RawOperand {
            kind: OperandKind::RegisterList,
            registers: vec![
                canonicalize_register("r4", Isa::Arm32).unwrap(),
                canonicalize_register("lr", Isa::Arm32).unwrap(),
            ],
            writeback: false,
        };
        let pushed = classify_operand_roles("push", vec![list.clone()], Isa::Arm32);
        assert_eq!(pushed[0].role, Role::Source);
        let popped = classify_operand_roles("pop", vec![list], Isa::Arm32);
        assert_eq!(popped[0].role, Role::Destination);
    }

    #[test]
    fn ldm_base_read_list_written() {
        let base = RawOperand {
            kind: OperandKind::Register,
            registers: vec![canonicalize_register("sp", Isa::Arm32).unwrap()],
            writeback: true,
        };
        let list = RawOperand {
            kind: OperandKind::RegisterList,
            registers: vec![canonicalize_register("r4", Isa::Arm32).unwrap()],
            writeback: false,
        };
        let ops = classify_operand_roles("ldmia", vec![base, list], Isa::Arm32);
        assert_eq!(ops[0].role, Role::Both); // writeback base
        assert_eq!(ops[1].role, Role::Destination);
    }
}
