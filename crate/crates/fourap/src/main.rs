fn main() {
    std::process::exit(fourap::cli::run());
}
