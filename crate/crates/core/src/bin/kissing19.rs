fn main() {
    std::process::exit(kissing19::cli::main());
}
