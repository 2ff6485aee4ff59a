fn main() {
    std::process::exit(pan_galactic_division::cli::main_with_args(std::env::args_os()));
}
