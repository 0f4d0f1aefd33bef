use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Instruction set of a binary. Every instruction stream is tagged with
/// exactly one of these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Isa {
    Arm32,
    AArch64,
}

impl Isa {
    pub fn as_str(&self) -> &'static str {
        match self {
            Isa::Arm32 => "arm32",
            Isa::AArch64 => "aarch64",
        }
    }

    /// Canonical general-purpose register names for this ISA, in the fixed
    /// order used for feature layouts. On AArch64 the wN and xN views of a
    /// register are separate bins.
    pub fn register_names(&self) -> &'static [&'static str] {
        match self {
            Isa::Arm32 => &ARM32_REGISTERS,
            Isa::AArch64 => &AARCH64_REGISTERS,
        }
    }

    /// Canonical name of the frame pointer on this ISA.
    pub fn frame_pointer(&self) -> &'static str {
        match self {
            Isa::Arm32 => "fp",
            Isa::AArch64 => "x29",
        }
    }

    /// Canonical name of the stack pointer on this ISA.
    pub fn stack_pointer(&self) -> &'static str {
        "sp"
    }
}

impl fmt::Display for Isa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Isa {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "arm32" | "arm" | "armv7" => Ok(Isa::Arm32),
            "aarch64" | "arm64" => Ok(Isa::AArch64),
            other => Err(format!("unknown ISA {other:?}")),
        }
    }
}

const ARM32_REGISTERS: [&str; 16] = [
    "r0", "r1", "r2", "r3", "r4", "r5", "r6", "r7", "r8", "r9", "r10", "fp", "ip", "sp", "lr",
    "pc",
];

const AARCH64_REGISTERS: [&str; 65] = [
    "x0", "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9", "x10", "x11", "x12", "x13",
    "x14", "x15", "x16", "x17", "x18", "x19", "x20", "x21", "x22", "x23", "x24", "x25", "x26",
    "x27", "x28", "x29", "x30", "w0", "w1", "w2", "w3", "w4", "w5", "w6", "w7", "w8", "w9",
    "w10", "w11", "w12", "w13", "w14", "w15", "w16", "w17", "w18", "w19", "w20", "w21", "w22",
    "w23", "w24", "w25", "w26", "w27", "w28", "w29", "w30", "sp", "xzr", "wzr",
];

/// Canonical name of a general-purpose register, as produced by
/// [`canonicalize_register`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RegisterName(String);

impl RegisterName {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for RegisterName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for RegisterName {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Map a printed register token to its canonical name, or `None` when the
/// token is not a general-purpose register (vector/FP registers, status
/// registers, coprocessor names). Canonicalization is idempotent.
///
/// ARM32 keeps the conventional alias names `fp`/`ip`/`sp`/`lr`/`pc` for
/// r11-r15; AArch64 maps `fp` to x29 and `lr` to x30 and keeps wN and xN
/// distinct for every N.
pub fn canonicalize_register(token: &str, isa: Isa) -> Option<RegisterName> {
    let t = token.trim().to_ascii_lowercase();
    let canonical: Option<String> = match isa {
        Isa::Arm32 => match t.as_str() {
            "fp" | "r11" => Some("fp".into()),
            "ip" | "r12" => Some("ip".into()),
            "sp" | "r13" => Some("sp".into()),
            "lr" | "r14" => Some("lr".into()),
            "pc" | "r15" => Some("pc".into()),
            "sb" => Some("r9".into()),
            "sl" => Some("r10".into()),
            _ => numbered(&t, 'r', 10).map(|n| format!("r{n}")),
        },
        Isa::AArch64 => match t.as_str() {
            "fp" | "x29" => Some("x29".into()),
            "lr" | "x30" => Some("x30".into()),
            "sp" | "wsp" => Some("sp".into()),
            "xzr" => Some("xzr".into()),
            "wzr" => Some("wzr".into()),
            _ => numbered(&t, 'x', 30)
                .map(|n| format!("x{n}"))
                .or_else(|| numbered(&t, 'w', 30).map(|n| format!("w{n}"))),
        },
    };
    canonical.map(RegisterName)
}

/// Parse "`<prefix><n>`" with n in 0..=max (no leading zeros beyond "0").
fn numbered(token: &str, prefix: char, max: u32) -> Option<u32> {
    let rest = token.strip_prefix(prefix)?;
    if rest.is_empty() || (rest.len() > 1 && rest.starts_with('0')) {
        return None;
    }
    let n: u32 = rest.parse().ok()?;
    (n <= max).then_some(n)
}
