fn main() {
    std::process::exit(envlab::cli::run());
}
