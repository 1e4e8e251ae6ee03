use std::process::ExitCode;

fn main() -> ExitCode {
    msglex::cli::main()
}
