use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = macdonald_hc_cli::run_args(std::env::args_os());
    eprint!("{}", out.stderr);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.stdout.as_bytes());
    let _ = stdout.flush();
    ExitCode::from(out.exit_code as u8)
}
