fn main() {
    std::process::exit(bacsat::cli::run(std::env::args().collect()));
}
