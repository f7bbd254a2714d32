fn main() {
    std::process::exit(framelet::cli::run());
}
