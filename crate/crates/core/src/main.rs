fn main() {
    std::process::exit(lowdeg::cli::main());
}
