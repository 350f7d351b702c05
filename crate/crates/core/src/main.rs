fn main() {
    std::process::exit(tridiss::cli::main());
}
