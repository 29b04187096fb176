fn main() {
    std::process::exit(brier_core::cli::run(std::env::args_os()));
}
