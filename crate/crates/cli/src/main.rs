fn main() -> std::process::ExitCode {
    wald_cli::main_with(std::env::args_os())
}
