use std::io::Write;

fn main() {
    let mut files = Vec::new();
    for arg in std::env::args().skip(1) {
        match arg.as_str() {
            // accepted for objdump command-line compatibility
            "-d" | "--disassemble" => {}
            "-h" | "--help" => {
                eprintln!("usage: armdump [-d] <elf-file>...");
                return;
            }
            _ => files.push(arg),
        }
    }
    if files.is_empty() {
        eprintln!("usage: armdump [-d] <elf-file>...");
        std::process::exit(1);
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for file in &files {
        let bytes = match std::fs::read(file) {
            Ok(b) => b,
            Err(e) => {
                eprintln!("armdump: {file}: {e}");
                std::process::exit(1);
            }
        };
        if let Err(e) = armdump::write_listing(&bytes, &mut out, file) {
            eprintln!("armdump: {file}: {e}");
            std::process::exit(1);
        }
    }
    out.flush().ok();
}
