use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Err(msg) = seplinf_cli::configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(seplinf_cli::exit::USAGE as u8);
    }
    let code = seplinf_cli::run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
