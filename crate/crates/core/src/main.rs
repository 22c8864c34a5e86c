fn main() {
    std::process::exit(lbl::cli::run());
}
