use std::io::Write;

fn main() {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let status = reducta_cli::run(std::env::args_os(), &mut out);
    let _ = out.flush();
    std::process::exit(status);
}
