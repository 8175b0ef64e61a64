use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (text, code) = cy3kit_cli::main_with_args(std::env::args_os());
    let ok = if code == 0 {
        std::io::stdout().write_all(text.as_bytes())
    } else {
        std::io::stderr().write_all(text.as_bytes())
    };
    if ok.is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
