//! Styled disassembly listing generator.
//!
//! Each (family, version, optimization) cell owns a bank of weighted
//! instruction templates; a binary samples a noisy multiplier per template
//! so no two binaries share a distribution, then emits a few dozen
//! functions of prologue/body/epilogue lines in objdump text format.

use std::io;
use std::ops::Range;
use std::path::{Path, PathBuf};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenIsa {
    Arm32,
    AArch64,
}

impl GenIsa {
    pub fn as_str(&self) -> &'static str {
        match self {
            GenIsa::Arm32 => "arm32",
            GenIsa::AArch64 => "aarch64",
        }
    }

    fn elf_format(&self) -> &'static str {
        match self {
            GenIsa::Arm32 => "elf32-littlearm",
            GenIsa::AArch64 => "elf64-littleaarch64",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusSpec {
    pub isa: GenIsa,
    pub seed: u64,
    /// (family, versions within that family)
    pub families: Vec<(String, Vec<String>)>,
    pub opt_levels: Vec<String>,
    /// Binaries per (family, version, optimization) cell.
    pub binaries_per_cell: usize,
    pub functions_per_binary: Range<usize>,
}

impl CorpusSpec {
    /// Two families with two versions each at -O0/-O2; the default desk
    /// corpus shape.
    pub fn desk_default(isa: GenIsa, seed: u64, binaries_per_cell: usize) -> Self {
        CorpusSpec {
            isa,
            seed,
            families: vec![
                (
                    "gcc".to_string(),
                    vec!["gcc-6".to_string(), "gcc-8".to_string()],
                ),
                (
                    "clang".to_string(),
                    vec!["clang-5".to_string(), "clang-7".to_string()],
                ),
            ],
            opt_levels: vec!["-O0".to_string(), "-O2".to_string()],
            binaries_per_cell,
            functions_per_binary: 6..28,
        }
    }

    /// All five optimization levels, for scheme experiments.
    pub fn five_level(isa: GenIsa, seed: u64, binaries_per_cell: usize) -> Self {
        CorpusSpec {
            opt_levels: vec![
                "-O0".to_string(),
                "-O1".to_string(),
                "-O2".to_string(),
                "-O3".to_string(),
                "-Os".to_string(),
            ],
            ..CorpusSpec::desk_default(isa, seed, binaries_per_cell)
        }
    }
}

#[derive(Debug, Clone)]
pub struct GeneratedRow {
    pub path: PathBuf,
    pub isa: GenIsa,
    pub family: String,
    pub version: String,
    pub optimization: String,
}

#[derive(Debug, Clone)]
pub struct GeneratedCorpus {
    pub dir: PathBuf,
    pub manifest_path: PathBuf,
    pub rows: Vec<GeneratedRow>,
}

/// Generate a corpus of listings plus a `manifest.csv` into `dir`.
pub fn generate_corpus(dir: &Path, spec: &CorpusSpec) -> io::Result<GeneratedCorpus> {
    std::fs::create_dir_all(dir)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut rows = Vec::new();
    let mut manifest = String::from("path,isa,family,version,optimization\n");
    for (family, versions) in &spec.families {
        for version in versions {
            for opt in &spec.opt_levels {
                for index in 0..spec.binaries_per_cell {
                    let name = format!(
                        "{}_{}_{}_{:04}.txt",
                        family,
                        version.replace(['.', '-'], ""),
                        opt.trim_start_matches('-'),
                        index
                    );
                    let path = dir.join(&name);
                    let text =
                        render_listing(&mut rng, spec.isa, family, version, opt, &name, spec);
                    std::fs::write(&path, text)?;
                    manifest.push_str(&format!(
                        "{},{},{},{},{}\n",
                        name,
                        spec.isa.as_str(),
                        family,
                        version,
                        opt
                    ));
                    rows.push(GeneratedRow {
                        path,
                        isa: spec.isa,
                        family: family.clone(),
                        version: version.clone(),
                        optimization: opt.clone(),
                    });
                }
            }
        }
    }
    let manifest_path = dir.join("manifest.csv");
    std::fs::write(&manifest_path, manifest)?;
    Ok(GeneratedCorpus {
        dir: dir.to_path_buf(),
        manifest_path,
        rows,
    })
}

/// One weighted instruction template. `lines` receives the emitted operand
/// text(s) for a single use of the template.
struct Template {
    weight: f64,
    emit: fn(&mut ChaCha8Rng, &mut Emitter),
}

struct Emitter {
    lines: Vec<String>,
}

impl Emitter {
    fn push(&mut self, mnemonic: &str, operands: String) {
        if operands.is_empty() {
            self.lines.push(mnemonic.to_string());
        } else {
            self.lines.push(format!("{mnemonic}\t{operands}"));
        }
    }
}

fn gp32(rng: &mut ChaCha8Rng, pool: &[&'static str]) -> &'static str {
    pool[rng.random_range(0..pool.len())]
}

fn imm8(rng: &mut ChaCha8Rng) -> u32 {
    rng.random_range(0..256)
}

fn off(rng: &mut ChaCha8Rng) -> u32 {
    4 * rng.random_range(1..16)
}

mod arm32 {
    use super::*;

    pub fn mem_fp(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let reg = gp32(rng, &["r0", "r1", "r2", "r3"]);
        let m = if rng.random_bool(0.5) { "str" } else { "ldr" };
        e.push(m, format!("{reg}, [fp, #-{}]", off(rng)));
    }

    pub fn mem_sp(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let reg = gp32(rng, &["r0", "r1", "r2"]);
        let m = if rng.random_bool(0.5) { "str" } else { "ldr" };
        e.push(m, format!("{reg}, [sp, #{}]", off(rng)));
    }

    pub fn mov_imm(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let reg = gp32(rng, &["r0", "r1", "r2", "r3"]);
        e.push("mov", format!("{reg}, #{}", imm8(rng)));
    }

    pub fn movw_movt(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let reg = gp32(rng, &["r0", "r1", "r2", "r3"]);
        e.push("movw", format!("{reg}, #{}", rng.random_range(0..65536)));
        if rng.random_bool(0.6) {
            e.push("movt", format!("{reg}, #{}", rng.random_range(0..1024)));
        }
    }

    pub fn alu(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let ops = ["add", "sub", "and", "orr", "eor", "mul"];
        let m = ops[rng.random_range(0..ops.len())];
        let d = gp32(rng, &["r0", "r1", "r2", "r3", "r4", "r5"]);
        let a = gp32(rng, &["r0", "r1", "r2", "r3", "r4", "r5"]);
        if rng.random_bool(0.5) {
            let b = gp32(rng, &["r0", "r1", "r2", "r3"]);
            e.push(m, format!("{d}, {a}, {b}"));
        } else {
            e.push(m, format!("{d}, {a}, #{}", imm8(rng)));
        }
    }

    pub fn alu_wide(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let ops = ["add", "sub", "rsb", "bic", "orr", "eor"];
        let m = ops[rng.random_range(0..ops.len())];
        let d = gp32(rng, &["r0", "r2", "r4", "r6", "r8", "r9", "sl"]);
        let a = gp32(rng, &["r1", "r3", "r5", "r7", "r9", "sl"]);
        let b = gp32(rng, &["r0", "r1", "r2", "r3", "r4", "r5"]);
        if rng.random_bool(0.25) {
            e.push(m, format!("{d}, {a}, {b}, lsl #{}", rng.random_range(1..4)));
        } else {
            e.push(m, format!("{d}, {a}, {b}"));
        }
    }

    pub fn alu_flags(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let ops = ["ands", "subs", "adds", "orrs"];
        let m = ops[rng.random_range(0..ops.len())];
        let d = gp32(rng, &["r0", "r1", "r2", "r3", "r4"]);
        let a = gp32(rng, &["r0", "r1", "r2", "r3"]);
        e.push(m, format!("{d}, {a}, #{}", imm8(rng)));
    }

    pub fn cond_alu(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let ops = ["andne", "addne", "moveq", "movne", "subne"];
        let m = ops[rng.random_range(0..ops.len())];
        let d = gp32(rng, &["r0", "r1", "r2", "r3"]);
        let a = gp32(rng, &["r0", "r1", "r2", "r3"]);
        e.push(m, format!("{d}, {a}"));
    }

    pub fn cond_load(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let ops = ["ldreq", "ldrbeq", "ldrbne", "ldrne"];
        let m = ops[rng.random_range(0..ops.len())];
        let d = gp32(rng, &["r0", "r1", "r2", "r3"]);
        let b = gp32(rng, &["r0", "r1", "r4", "r5"]);
        e.push(m, format!("{d}, [{b}, #{}]", off(rng)));
    }

    pub fn cmp_branch(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let reg = gp32(rng, &["r0", "r1", "r2", "r3"]);
        e.push("cmp", format!("{reg}, #{}", imm8(rng)));
        let branches = ["bne", "beq", "blt", "bge", "bgt", "ble"];
        let b = branches[rng.random_range(0..branches.len())];
        e.push(b, format!("{:x}", 0x8000 + 4 * rng.random_range(0..4096)));
    }

    pub fn cmp_branch_unsigned(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let reg = gp32(rng, &["r0", "r1", "r2", "r3", "r4"]);
        e.push("cmp", format!("{reg}, #{}", imm8(rng)));
        let branches = ["bcs", "bhi", "bls", "bcc"];
        let b = branches[rng.random_range(0..branches.len())];
        e.push(b, format!("{:x}", 0x8000 + 4 * rng.random_range(0..4096)));
    }

    pub fn branch_mi(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let b = if rng.random_bool(0.7) { "bmi" } else { "bpl" };
        e.push(b, format!("{:x}", 0x8000 + 4 * rng.random_range(0..4096)));
    }

    pub fn call(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        e.push("bl", format!("{:x}", 0x8000 + 4 * rng.random_range(0..8192)));
    }

    pub fn clz(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let d = gp32(rng, &["r0", "r1", "r2", "r3"]);
        let a = gp32(rng, &["r0", "r1", "r2", "r3"]);
        e.push("clz", format!("{d}, {a}"));
    }

    pub fn ldm_stm(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let base = gp32(rng, &["r0", "r1", "r4", "sp"]);
        let m = if rng.random_bool(0.5) { "ldmia" } else { "stmia" };
        e.push(m, format!("{base}!, {{r2, r3, r4}}"));
    }

    pub fn cond_return(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let ops = ["bxeq", "bxls", "bxne", "bxcs"];
        let m = ops[rng.random_range(0..ops.len())];
        e.push(m, "lr".to_string());
    }

    pub fn mrc(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let d = gp32(rng, &["r0", "r3"]);
        e.push("mrc", format!("15, 0, {d}, cr13, cr0, {{3}}"));
    }

    pub fn nop(_rng: &mut ChaCha8Rng, e: &mut Emitter) {
        e.push("nop", String::new());
    }

    pub fn push_pop_wide(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        if rng.random_bool(0.5) {
            e.push("push", "{r4, r5, r6, r7, r8, r9, sl, lr}".to_string());
        } else {
            e.push("pop", "{r4, r5, r6, r7, r8, r9, sl, pc}".to_string());
        }
    }

    pub fn ldrcc(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let d = gp32(rng, &["r0", "r1", "r3"]);
        let b = gp32(rng, &["r2", "r4"]);
        e.push("ldrcc", format!("{d}, [{b}]"));
    }

    pub fn ip_shuffle(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        if rng.random_bool(0.5) {
            e.push("mov", "ip, sp".to_string());
        } else {
            let r = gp32(rng, &["r0", "r1", "r2"]);
            e.push("mov", format!("{r}, ip"));
        }
    }
}

mod a64 {
    use super::*;

    fn w(rng: &mut ChaCha8Rng, hi: u32) -> String {
        format!("w{}", rng.random_range(0..hi))
    }

    fn x(rng: &mut ChaCha8Rng, hi: u32) -> String {
        format!("x{}", rng.random_range(0..hi))
    }

    pub fn mem_sp(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let reg = if rng.random_bool(0.6) { w(rng, 3) } else { x(rng, 3) };
        let m = if rng.random_bool(0.5) { "str" } else { "ldr" };
        e.push(m, format!("{reg}, [sp, #{}]", off(rng)));
    }

    pub fn mem_frame(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let reg = if rng.random_bool(0.6) { w(rng, 2) } else { x(rng, 2) };
        let m = if rng.random_bool(0.5) { "str" } else { "ldr" };
        e.push(m, format!("{reg}, [x29, #-{}]", off(rng)));
    }

    pub fn x8_result(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        if rng.random_bool(0.5) {
            e.push("mov", format!("x8, {}", x(rng, 3)));
        } else {
            e.push("ldr", format!("w8, [sp, #{}]", off(rng)));
        }
    }

    pub fn wzr_store(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        if rng.random_bool(0.6) {
            e.push("str", format!("wzr, [sp, #{}]", off(rng)));
        } else {
            e.push("mov", format!("{}, wzr", w(rng, 4)));
        }
    }

    pub fn stur(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let reg = if rng.random_bool(0.5) { w(rng, 3) } else { x(rng, 3) };
        e.push("stur", format!("{reg}, [x29, #-{}]", off(rng)));
    }

    pub fn mov_imm(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        e.push("mov", format!("{}, #{}", w(rng, 6), imm8(rng)));
    }

    pub fn alu(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let ops = ["add", "sub", "and", "orr", "eor", "mul"];
        let m = ops[rng.random_range(0..ops.len())];
        let wide = rng.random_bool(0.4);
        let (d, a, b) = if wide {
            (x(rng, 10), x(rng, 10), x(rng, 6))
        } else {
            (w(rng, 10), w(rng, 10), w(rng, 6))
        };
        if rng.random_bool(0.4) {
            e.push(m, format!("{d}, {a}, #{}", imm8(rng)));
        } else {
            e.push(m, format!("{d}, {a}, {b}"));
        }
    }

    pub fn alu_callee_saved(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let ops = ["add", "sub", "orr", "madd", "lsl", "lsr"];
        let m = ops[rng.random_range(0..ops.len())];
        let d = format!("x{}", rng.random_range(19..29));
        let a = format!("x{}", rng.random_range(19..29));
        let b = x(rng, 8);
        if m == "madd" {
            e.push(m, format!("{d}, {a}, {b}, xzr"));
        } else {
            e.push(m, format!("{d}, {a}, {b}"));
        }
    }

    pub fn csel(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let conds = ["ne", "eq", "lt", "gt", "cs"];
        let c = conds[rng.random_range(0..conds.len())];
        e.push(
            "csel",
            format!("{}, {}, {}, {c}", w(rng, 8), w(rng, 8), w(rng, 8)),
        );
    }

    pub fn cmp_branch(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        e.push("cmp", format!("{}, #{}", w(rng, 6), imm8(rng)));
        let conds = ["b.ne", "b.eq", "b.lt", "b.ge", "b.cs", "b.hi"];
        let b = conds[rng.random_range(0..conds.len())];
        e.push(b, format!("{:x}", 0x400000 + 4 * rng.random_range(0..8192)));
    }

    pub fn cbz(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        let m = if rng.random_bool(0.5) { "cbz" } else { "cbnz" };
        e.push(
            m,
            format!("{}, {:x}", w(rng, 6), 0x400000 + 4 * rng.random_range(0..8192)),
        );
    }

    pub fn call(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        e.push("bl", format!("{:x}", 0x400000 + 4 * rng.random_range(0..8192)));
    }

    pub fn nop(_rng: &mut ChaCha8Rng, e: &mut Emitter) {
        e.push("nop", String::new());
    }

    pub fn dmb(_rng: &mut ChaCha8Rng, e: &mut Emitter) {
        e.push("dmb", "ish".to_string());
    }

    pub fn sdiv(rng: &mut ChaCha8Rng, e: &mut Emitter) {
        e.push(
            "sdiv",
            format!("{}, {}, {}", w(rng, 4), w(rng, 4), w(rng, 4)),
        );
    }
}

/// Weighted template bank for one (isa, family, version, optimization)
/// cell. Weights are habit frequencies, not guarantees; every binary
/// perturbs them with lognormal noise.
fn template_bank(
    isa: GenIsa,
    family: &str,
    version: &str,
    opt: &str,
) -> Vec<Template> {
    let gcc = family == "gcc";
    let new_version = version.ends_with('8') || version.ends_with('7');
    let o0 = opt == "-O0";
    let os = opt == "-Os";
    let o1 = opt == "-O1";
    let high = opt == "-O2" || opt == "-O3" || os || o1;
    let o3 = opt == "-O3";

    let mut t: Vec<Template> = Vec::new();
    let mut add = |weight: f64, emit: fn(&mut ChaCha8Rng, &mut Emitter)| {
        if weight > 0.0 {
            t.push(Template { weight, emit });
        }
    };

    match isa {
        GenIsa::Arm32 => {
            // shared base habits
            add(10.0, arm32::mov_imm);
            add(12.0, arm32::alu);
            add(6.0, arm32::cmp_branch);
            add(5.0, arm32::call);
            if o0 {
                // unoptimized code spills everything
                add(if gcc { 30.0 } else { 12.0 }, arm32::mem_fp);
                add(if gcc { 6.0 } else { 26.0 }, arm32::mem_sp);
                add(if gcc { 2.5 } else { 1.0 }, arm32::mrc);
                add(if gcc { 1.0 } else { 3.5 }, arm32::ip_shuffle);
                add(0.8, arm32::nop);
            }
            if high {
                add(10.0, arm32::alu_wide);
                add(if gcc { 7.0 } else { 2.0 }, arm32::alu_flags);
                add(if gcc { 5.0 } else { 1.2 }, arm32::cond_alu);
                add(if gcc { 4.5 } else { 0.8 }, arm32::clz);
                add(if gcc { 3.0 } else { 0.6 }, arm32::cmp_branch_unsigned);
                add(if gcc { 1.0 } else { 6.0 }, arm32::cond_load);
                add(if gcc { 0.5 } else { 4.0 }, arm32::branch_mi);
                add(3.0, arm32::ldm_stm);
                add(2.0, arm32::mem_sp);
            }
            if o3 {
                add(6.0, arm32::alu_wide);
                add(2.0, arm32::cmp_branch_unsigned);
            }
            if os {
                add(7.0, arm32::push_pop_wide);
                add(4.0, arm32::ldrcc);
            }
            if o1 {
                add(2.0, arm32::nop);
            }
            // family habits independent of optimization
            add(if gcc { 5.0 } else { 0.4 }, arm32::cond_return);
            let movw_weight = match (gcc, new_version) {
                (true, true) => 4.0,
                (true, false) => 1.0,
                (false, true) => 7.0,
                (false, false) => 3.0,
            };
            add(movw_weight, arm32::movw_movt);
            if !gcc {
                add(if new_version { 6.5 } else { 1.5 }, arm32::cond_load);
                add(if new_version { 1.0 } else { 3.0 }, arm32::branch_mi);
            } else {
                add(if new_version { 4.0 } else { 1.0 }, arm32::cmp_branch_unsigned);
            }
        }
        GenIsa::AArch64 => {
            add(10.0, a64::mov_imm);
            add(14.0, a64::alu);
            add(6.0, a64::cmp_branch);
            add(5.0, a64::call);
            if o0 {
                add(if gcc { 26.0 } else { 10.0 }, a64::mem_frame);
                add(if gcc { 8.0 } else { 24.0 }, a64::mem_sp);
                add(3.0, a64::nop);
                add(0.7, a64::dmb);
            }
            if high {
                add(9.0, a64::alu_callee_saved);
                add(5.0, a64::cbz);
                add(if gcc { 4.0 } else { 1.5 }, a64::csel);
                add(2.0, a64::mem_sp);
                if os {
                    add(4.0, a64::sdiv);
                }
                if o3 {
                    add(5.0, a64::alu_callee_saved);
                }
            }
            add(if gcc { 0.8 } else { 6.0 }, a64::x8_result);
            add(if gcc { 0.7 } else { 5.0 }, a64::wzr_store);
            let stur_weight = match (gcc, new_version) {
                (true, _) => 0.3,
                (false, true) => 5.0,
                (false, false) => 2.0,
            };
            add(stur_weight, a64::stur);
            if gcc {
                add(if new_version { 3.5 } else { 1.0 }, a64::csel);
            }
        }
    }
    t
}

fn prologue(isa: GenIsa, family: &str, opt: &str, rng: &mut ChaCha8Rng) -> Vec<String> {
    let gcc = family == "gcc";
    let o0 = opt == "-O0";
    match isa {
        GenIsa::Arm32 => {
            if o0 && gcc {
                vec![
                    "push\t{fp, lr}".to_string(),
                    "add\tfp, sp, #4".to_string(),
                    format!("sub\tsp, sp, #{}", 8 * rng.random_range(1..8)),
                ]
            } else if o0 {
                vec![
                    "push\t{fp, lr}".to_string(),
                    "mov\tfp, sp".to_string(),
                    format!("sub\tsp, sp, #{}", 8 * rng.random_range(1..8)),
                ]
            } else {
                let lists = ["{r4, lr}", "{r4, r5, lr}", "{r4, r5, r6, lr}"];
                vec![format!(
                    "push\t{}",
                    lists[rng.random_range(0..lists.len())]
                )]
            }
        }
        GenIsa::AArch64 => {
            if o0 {
                vec![
                    format!("stp\tx29, x30, [sp, #-{}]!", 16 * rng.random_range(1..5)),
                    "mov\tx29, sp".to_string(),
                ]
            } else if rng.random_bool(0.5) {
                vec![format!("sub\tsp, sp, #{}", 16 * rng.random_range(1..5))]
            } else {
                vec![
                    format!("stp\tx29, x30, [sp, #-{}]!", 16 * rng.random_range(1..3)),
                ]
            }
        }
    }
}

fn epilogue(isa: GenIsa, family: &str, opt: &str, rng: &mut ChaCha8Rng) -> Vec<String> {
    let gcc = family == "gcc";
    let o0 = opt == "-O0";
    match isa {
        GenIsa::Arm32 => {
            if o0 && gcc {
                vec![
                    "sub\tsp, fp, #4".to_string(),
                    "pop\t{fp, pc}".to_string(),
                ]
            } else if o0 {
                vec![
                    "mov\tsp, fp".to_string(),
                    "pop\t{fp, lr}".to_string(),
                    "bx\tlr".to_string(),
                ]
            } else if gcc && rng.random_bool(0.4) {
                vec!["pop\t{r4, r5, pc}".to_string()]
            } else if rng.random_bool(0.5) {
                vec!["pop\t{r4, lr}".to_string(), "bx\tlr".to_string()]
            } else {
                vec!["pop\t{r4, r5, pc}".to_string()]
            }
        }
        GenIsa::AArch64 => {
            if o0 {
                vec![
                    format!("ldp\tx29, x30, [sp], #{}", 16 * rng.random_range(1..5)),
                    "ret".to_string(),
                ]
            } else if rng.random_bool(0.5) {
                vec![
                    format!("add\tsp, sp, #{}", 16 * rng.random_range(1..5)),
                    "ret".to_string(),
                ]
            } else {
                vec![
                    format!("ldp\tx29, x30, [sp], #{}", 16 * rng.random_range(1..3)),
                    "ret".to_string(),
                ]
            }
        }
    }
}

fn render_listing(
    rng: &mut ChaCha8Rng,
    isa: GenIsa,
    family: &str,
    version: &str,
    opt: &str,
    name: &str,
    spec: &CorpusSpec,
) -> String {
    let bank = template_bank(isa, family, version, opt);
    // per-binary habit drift: lognormal noise on every template weight
    let weights: Vec<f64> = bank
        .iter()
        .map(|t| {
            let noise: f64 = rng.random_range(-0.45..0.45);
            t.weight * noise.exp()
        })
        .collect();
    let picker = WeightedIndex::new(&weights).expect("weights are positive");

    let mut out = String::new();
    out.push_str(&format!("\n{name}:     file format {}\n\n\n", isa.elf_format()));
    out.push_str("Disassembly of section .text:\n");

    let base = if isa == GenIsa::Arm32 { 0x8000u64 } else { 0x400000u64 };
    let mut address = base;
    let functions = rng
        .random_range(spec.functions_per_binary.start..spec.functions_per_binary.end);
    for f in 0..functions {
        out.push_str(&format!("\n{:08x} <fn_{f}>:\n", address));
        let mut lines = prologue(isa, family, opt, rng);
        let body_len = rng.random_range(8..60);
        let mut emitter = Emitter { lines: Vec::new() };
        while emitter.lines.len() < body_len {
            let template = &bank[picker.sample(rng)];
            (template.emit)(rng, &mut emitter);
        }
        lines.append(&mut emitter.lines);
        lines.extend(epilogue(isa, family, opt, rng));
        for line in &lines {
            let encoding: u32 = rng.random();
            out.push_str(&format!("    {:x}:\t{:08x} \t{}\n", address, encoding, line));
            address += 4;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_complete() {
        let dir_a = std::env::temp_dir().join("corpusgen_test_a");
        let dir_b = std::env::temp_dir().join("corpusgen_test_b");
        let _ = std::fs::remove_dir_all(&dir_a);
        let _ = std::fs::remove_dir_all(&dir_b);
        let spec = CorpusSpec::desk_default(GenIsa::Arm32, 7, 2);
        let a = generate_corpus(&dir_a, &spec).unwrap();
        let b = generate_corpus(&dir_b, &spec).unwrap();
        assert_eq!(a.rows.len(), 2 * 2 * 2 * 2);
        for (ra, rb) in a.rows.iter().zip(&b.rows) {
            let ta = std::fs::read_to_string(&ra.path).unwrap();
            let tb = std::fs::read_to_string(&rb.path).unwrap();
            assert_eq!(ta, tb);
            assert!(ta.contains("Disassembly of section .text:"));
        }
        let _ = std::fs::remove_dir_all(&dir_a);
        let _ = std::fs::remove_dir_all(&dir_b);
    }
}
