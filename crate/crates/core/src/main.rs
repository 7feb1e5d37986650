use std::io::Write;

fn main() {
    let (out, code) = orbvir::cli::run(std::env::args_os());
    if !out.is_empty() {
        // a closed pipe is not an error worth reporting
        let _ = if code == 2 {
            writeln!(std::io::stderr(), "{out}")
        } else {
            writeln!(std::io::stdout(), "{out}")
        };
    }
    std::process::exit(code);
}
