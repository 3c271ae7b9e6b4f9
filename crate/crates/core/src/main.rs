fn main() {
    std::process::exit(dephase::cli::run());
}
