use std::io::Write;

fn main() {
    let run = qplane::catalog_cli::cli::run_command(std::env::args_os());
    print!("{}", run.stdout);
    eprint!("{}", run.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(run.code);
}
