fn main() {
    std::process::exit(jetdiagram::cli::run());
}
