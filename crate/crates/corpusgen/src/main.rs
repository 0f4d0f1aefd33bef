//! Generate a fixture corpus of styled listings plus manifest.csv.
//!
//! Usage: corpusgen <out-dir> [--isa arm32|aarch64] [--seed N]
//!        [--per-cell N] [--levels 2|5]

use corpusgen::{generate_corpus, CorpusSpec, GenIsa};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut dir = None;
    let mut isa = GenIsa::Arm32;
    let mut seed = 42u64;
    let mut per_cell = 30usize;
    let mut levels = 2usize;

    let mut i = 0;
    while i < args.len() {
        match args[i].as_str() {
            "--isa" => {
                i += 1;
                isa = match args.get(i).map(String::as_str) {
                    Some("arm32") => GenIsa::Arm32,
                    Some("aarch64") => GenIsa::AArch64,
                    other => {
                        eprintln!("unknown ISA {other:?}");
                        std::process::exit(1);
                    }
                };
            }
            "--seed" => {
                i += 1;
                seed = args.get(i).and_then(|s| s.parse().ok()).unwrap_or_else(|| {
                    eprintln!("bad --seed");
                    std::process::exit(1);
                });
            }
            "--per-cell" => {
                i += 1;
                per_cell = args.get(i).and_then(|s| s.parse().ok()).unwrap_or_else(|| {
                    eprintln!("bad --per-cell");
                    std::process::exit(1);
                });
            }
            "--levels" => {
                i += 1;
                levels = args.get(i).and_then(|s| s.parse().ok()).unwrap_or_else(|| {
                    eprintln!("bad --levels");
                    std::process::exit(1);
                });
            }
            other if dir.is_none() && !other.starts_with("--") => {
                dir = Some(std::path::PathBuf::from(other));
            }
            other => {
                eprintln!("unknown argument {other:?}");
                std::process::exit(1);
            }
        }
        i += 1;
    }

    let Some(dir) = dir else {
        eprintln!("usage: corpusgen <out-dir> [--isa arm32|aarch64] [--seed N] [--per-cell N] [--levels 2|5]");
        std::process::exit(1);
    };
    let spec = match levels {
        2 => CorpusSpec::desk_default(isa, seed, per_cell),
        5 => CorpusSpec::five_level(isa, seed, per_cell),
        other => {
            eprintln!("--levels must be 2 or 5, got {other}");
            std::process::exit(1);
        }
    };
    match generate_corpus(&dir, &spec) {
        Ok(corpus) => {
            println!(
                "wrote {} listings and {}",
                corpus.rows.len(),
                corpus.manifest_path.display()
            );
        }
        Err(e) => {
            eprintln!("generation failed: {e}");
            std::process::exit(2);
        }
    }
}
