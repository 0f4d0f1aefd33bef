//! Feature engineering: per-binary register-usage distributions, the fp/sp
//! ratio, and corpus-fit TF-IDF opcode scores, concatenated into a
//! fixed-layout feature vector.
//!
//! The TF-IDF statistic is corpus-relative: `fit_tfidf` freezes a sorted
//! opcode vocabulary and an IDF vector (natural log of corpus size over
//! document frequency); `transform_tfidf` scores a single binary against a
//! frozen model and L2-normalizes the result. Fitting is a sequential
//! reduction; all transforms are pure.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::disasm::{Instruction, Isa, RegisterName, Role};
use crate::error::{Error, Result};

/// Per-binary relative frequency distributions over registers, split by
/// source/destination role, plus the fp/sp ratio feature.
///
/// Each distribution sums to 1 when at least one occurrence of that role
/// exists, and is all-zero otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegisterProfile {
    pub src_freq: BTreeMap<RegisterName, f64>,
    pub dst_freq: BTreeMap<RegisterName, f64>,
    /// `fp / (fp + sp)` over all role-agnostic references, 0 when both are 0.
    pub fp_sp_ratio: f64,
}

/// Relative opcode frequencies of one binary. Counts are kept exact; `tf`
/// values are derived as `count / instruction_count`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermFrequencies {
    counts: BTreeMap<String, u64>,
    instruction_count: u64,
}

impl TermFrequencies {
    pub fn tf(&self, opcode: &str) -> f64 {
        match self.counts.get(opcode) {
            Some(&c) => c as f64 / self.instruction_count as f64,
            None => 0.0,
        }
    }

    pub fn contains(&self, opcode: &str) -> bool {
        self.counts.contains_key(opcode)
    }

    pub fn opcodes(&self) -> impl Iterator<Item = &str> {
        self.counts.keys().map(String::as_str)
    }

    pub fn instruction_count(&self) -> u64 {
        self.instruction_count
    }

    /// tf map for export; values sum to 1 up to rounding.
    pub fn tf_map(&self) -> BTreeMap<String, f64> {
        self.counts
            .iter()
            .map(|(op, &c)| (op.clone(), c as f64 / self.instruction_count as f64))
            .collect()
    }

    /// Build directly from opcode counts (used by tests and tools).
    pub fn from_counts(counts: BTreeMap<String, u64>) -> Result<Self> {
        let total: u64 = counts.values().sum();
        if total == 0 {
            return Err(Error::EmptyStream);
        }
        Ok(TermFrequencies {
            counts,
            instruction_count: total,
        })
    }
}

/// Frozen opcode vocabulary (sorted) and paired IDF vector learned from a
/// training corpus. Immutable after fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TfidfModel {
    pub vocabulary: Vec<String>,
    pub idf: Vec<f64>,
    pub corpus_size: usize,
}

/// Ordered dimension names: `src_*` register bins, `dst_*` register bins,
/// the singleton `fp_sp_ratio`, then `op_<mnemonic>` per vocabulary entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureLayout {
    isa: Isa,
    names: Vec<String>,
    register_count: usize,
}

impl FeatureLayout {
    pub fn new(isa: Isa, vocabulary: &[String]) -> Self {
        let registers = isa.register_names();
        let mut names = Vec::with_capacity(registers.len() * 2 + 1 + vocabulary.len());
        for r in registers {
            names.push(format!("src_{r}"));
        }
        for r in registers {
            names.push(format!("dst_{r}"));
        }
        names.push("fp_sp_ratio".to_string());
        for op in vocabulary {
            names.push(format!("op_{op}"));
        }
        FeatureLayout {
            isa,
            names,
            register_count: registers.len(),
        }
    }

    /// Rebuild from persisted dimension names, validating the structure.
    pub fn from_names(isa: Isa, names: Vec<String>) -> Result<Self> {
        let expected_regs = isa.register_names().len();
        let rebuilt = FeatureLayout {
            isa,
            names,
            register_count: expected_regs,
        };
        let vocab: Vec<String> = rebuilt.vocabulary_names().map(str::to_string).collect();
        let check = FeatureLayout::new(isa, &vocab);
        if check.names != rebuilt.names {
            return Err(Error::LayoutMismatch {
                detail: "persisted layout names do not match the ISA register set".into(),
            });
        }
        Ok(rebuilt)
    }

    pub fn isa(&self) -> Isa {
        self.isa
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Number of TF-IDF dimensions at the tail of the layout.
    pub fn vocab_len(&self) -> usize {
        self.names.len() - 2 * self.register_count - 1
    }

    pub fn vocabulary_names(&self) -> impl Iterator<Item = &str> {
        self.names[2 * self.register_count + 1..]
            .iter()
            .map(|n| n.strip_prefix("op_").unwrap_or(n))
    }

    fn register_index(&self, name: &RegisterName) -> Option<usize> {
        self.isa
            .register_names()
            .iter()
            .position(|r| *r == name.as_str())
    }

    pub fn src_index(&self, name: &RegisterName) -> Option<usize> {
        self.register_index(name)
    }

    pub fn dst_index(&self, name: &RegisterName) -> Option<usize> {
        self.register_index(name).map(|i| i + self.register_count)
    }

    pub fn ratio_index(&self) -> usize {
        2 * self.register_count
    }

    pub fn vocab_start(&self) -> usize {
        2 * self.register_count + 1
    }
}

/// Real vector aligned to a [`FeatureLayout`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector(pub Vec<f64>);

impl FeatureVector {
    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

/// Raw per-binary features before any corpus-relative scoring: the register
/// profile and the opcode term frequencies. This is what `extract` emits;
/// TF-IDF is applied later against a fitted model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawFeatures {
    pub profile: RegisterProfile,
    pub terms: TermFrequencies,
}

/// Count register occurrences per role and normalize to relative
/// frequencies. Every register occurrence with role Source (or Both)
/// increments its source counter, Destination (or Both) its destination
/// counter; occurrences are counted per mention, not per instruction.
pub fn profile_registers(instructions: &[Instruction], isa: Isa) -> Result<RegisterProfile> {
    if instructions.is_empty() {
        return Err(Error::EmptyStream);
    }
    let mut src: BTreeMap<RegisterName, u64> = BTreeMap::new();
    let mut dst: BTreeMap<RegisterName, u64> = BTreeMap::new();
    let mut fp_count = 0u64;
    let mut sp_count = 0u64;
    let fp = isa.frame_pointer();
    let sp = isa.stack_pointer();

    for inst in instructions {
        for operand in &inst.operands {
            for reg in &operand.registers {
                if matches!(operand.role, Role::Source | Role::Both) {
                    *src.entry(reg.clone()).or_default() += 1;
                }
                if matches!(operand.role, Role::Destination | Role::Both) {
                    *dst.entry(reg.clone()).or_default() += 1;
                }
                if reg.as_str() == fp {
                    fp_count += 1;
                } else if reg.as_str() == sp {
                    sp_count += 1;
                }
            }
        }
    }

    let fp_sp_ratio = if fp_count + sp_count == 0 {
        0.0
    } else {
        fp_count as f64 / (fp_count + sp_count) as f64
    };
    Ok(RegisterProfile {
        src_freq: normalize(src),
        dst_freq: normalize(dst),
        fp_sp_ratio,
    })
}

fn normalize(counts: BTreeMap<RegisterName, u64>) -> BTreeMap<RegisterName, f64> {
    let total: u64 = counts.values().sum();
    if total == 0 {
        return BTreeMap::new();
    }
    counts
        .into_iter()
        .map(|(reg, c)| (reg, c as f64 / total as f64))
        .collect()
}

/// Relative term frequency of every opcode present: `tf = count / k` over
/// `k` instructions. Absent opcodes are simply not in the map.
pub fn opcode_term_frequencies(instructions: &[Instruction]) -> Result<TermFrequencies> {
    if instructions.is_empty() {
        return Err(Error::EmptyStream);
    }
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for inst in instructions {
        *counts.entry(inst.mnemonic.clone()).or_default() += 1;
    }
    Ok(TermFrequencies {
        counts,
        instruction_count: instructions.len() as u64,
    })
}

/// Extract the raw features of one instruction stream.
pub fn extract_raw(instructions: &[Instruction], isa: Isa) -> Result<RawFeatures> {
    Ok(RawFeatures {
        profile: profile_registers(instructions, isa)?,
        terms: opcode_term_frequencies(instructions)?,
    })
}

/// Fit a TF-IDF model on a corpus of per-binary term frequencies. The
/// vocabulary is the sorted union of opcodes; `idf_i = ln(N / n_i)` where
/// `n_i` is the number of corpus entries containing opcode `i`.
pub fn fit_tfidf(corpus: &[TermFrequencies]) -> Result<TfidfModel> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let n = corpus.len();
    let mut document_counts: BTreeMap<&str, usize> = BTreeMap::new();
    for doc in corpus {
        for op in doc.opcodes() {
            *document_counts.entry(op).or_default() += 1;
        }
    }
    let vocabulary: Vec<String> = document_counts.keys().map(|s| s.to_string()).collect();
    let idf: Vec<f64> = vocabulary
        .iter()
        .map(|op| (n as f64 / document_counts[op.as_str()] as f64).ln())
        .collect();
    Ok(TfidfModel {
        vocabulary,
        idf,
        corpus_size: n,
    })
}

/// Score one binary against a frozen model: `raw_i = tf(vocab_i) * idf_i`
/// (tf of opcodes absent from the binary is zero; opcodes outside the
/// vocabulary are ignored), then divide by the L2 norm, or return all-zero
/// when the norm is 0.
pub fn transform_tfidf(tf: &TermFrequencies, model: &TfidfModel) -> Vec<f64> {
    let mut raw: Vec<f64> = model
        .vocabulary
        .iter()
        .zip(&model.idf)
        .map(|(op, idf)| tf.tf(op) * idf)
        .collect();
    let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        for v in &mut raw {
            *v /= norm;
        }
    }
    raw
}

/// Place profile and TF-IDF values in layout order: all `src_` register
/// bins, all `dst_` bins, `fp_sp_ratio`, then `op_` scores. Bins for
/// registers never seen are 0.
pub fn assemble_feature_vector(
    profile: &RegisterProfile,
    tfidf: &[f64],
    layout: &FeatureLayout,
) -> Result<FeatureVector> {
    if tfidf.len() != layout.vocab_len() {
        return Err(Error::LayoutMismatch {
            detail: format!(
                "tfidf length {} does not match layout vocabulary span {}",
                tfidf.len(),
                layout.vocab_len()
            ),
        });
    }
    let mut values = vec![0.0; layout.len()];
    for (reg, freq) in &profile.src_freq {
        if let Some(i) = layout.src_index(reg) {
            values[i] = *freq;
        }
    }
    for (reg, freq) in &profile.dst_freq {
        if let Some(i) = layout.dst_index(reg) {
            values[i] = *freq;
        }
    }
    values[layout.ratio_index()] = profile.fp_sp_ratio;
    values[layout.vocab_start()..].copy_from_slice(tfidf);
    Ok(FeatureVector(values))
}

/// Transform + assemble in one step.
pub fn feature_vector_for(
    raw: &RawFeatures,
    tfidf: &TfidfModel,
    layout: &FeatureLayout,
) -> Result<FeatureVector> {
    let scores = transform_tfidf(&raw.terms, tfidf);
    assemble_feature_vector(&raw.profile, &scores, layout)
}
