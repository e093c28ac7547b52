use std::process::ExitCode;

fn main() -> ExitCode {
    waring_lab::cli::run(std::env::args_os())
}
