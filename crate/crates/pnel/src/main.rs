fn main() {
    std::process::exit(pnel::cli::run());
}
