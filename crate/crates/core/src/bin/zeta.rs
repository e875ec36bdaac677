fn main() {
    std::process::exit(doubling_zeta::cli::main_with_args(std::env::args_os()));
}
