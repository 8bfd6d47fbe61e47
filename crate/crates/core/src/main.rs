fn main() {
    std::process::exit(slocc::cli::run());
}
