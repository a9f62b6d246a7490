use std::io::Write;

fn main() {
    let outcome = logsym::cli::run(std::env::args_os());
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    if outcome.code == 2 {
        eprint!("{}", outcome.output);
    } else {
        print!("{}", outcome.output);
        let _ = std::io::stdout().flush();
    }
    std::process::exit(outcome.code);
}
