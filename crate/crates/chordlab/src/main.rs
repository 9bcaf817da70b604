use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(chordlab::cli::main_entry() as u8)
}
