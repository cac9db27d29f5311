fn main() {
    std::process::exit(jones_rational::cli::run_main());
}
