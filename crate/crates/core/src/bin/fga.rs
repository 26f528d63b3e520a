fn main() {
    let (code, output) = fga_core::cli::run(std::env::args_os());
    if code == fga_core::cli::EXIT_OK {
        print!("{output}");
    } else {
        eprint!("{output}");
    }
    std::process::exit(code);
}
