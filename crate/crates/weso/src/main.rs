fn main() {
    let args: Vec<String> = std::env::args().collect();
    let (code, out) = weso::cli::run_cli(&args);
    if code >= weso::cli::EXIT_USAGE {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    std::process::exit(code);
}
