use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let outcome = unipoiss_cli::run_command(&args);
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(outcome.text.as_bytes());
    let _ = out.flush();
    std::process::exit(outcome.code);
}
