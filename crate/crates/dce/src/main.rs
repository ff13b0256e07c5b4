use std::process::ExitCode;

fn main() -> ExitCode {
    dce::cli::main()
}
