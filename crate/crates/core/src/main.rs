fn main() {
    std::process::exit(nclab::cli::main());
}
