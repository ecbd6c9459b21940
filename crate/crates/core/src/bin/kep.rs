use std::io::Write;

fn main() {
    let outcome = kep::cli::run(std::env::args_os(), &mut std::io::stdin());
    print!("{}", outcome.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.code);
}
