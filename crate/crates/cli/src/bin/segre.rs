use std::io::{Read, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = segre_cli::run(std::env::args_os(), || {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    });
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
