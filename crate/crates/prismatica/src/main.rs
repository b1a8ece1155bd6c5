use std::process::ExitCode;

fn main() -> ExitCode {
    if let Err(e) = prismatica::cli::configure_threads() {
        eprintln!("{e}");
        return ExitCode::from(2);
    }
    ExitCode::from(prismatica::cli::main_with_args(std::env::args_os()) as u8)
}
