fn main() {
    std::process::exit(vclde::cli::run());
}
