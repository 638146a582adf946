fn main() {
    std::process::exit(freering::cli::run());
}
