use std::process::ExitCode;

fn main() -> ExitCode {
    psl_maniplex::cli::main_with_args(std::env::args_os())
}
