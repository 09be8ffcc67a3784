fn main() {
    std::process::exit(pain4::cli::run(std::env::args()));
}
