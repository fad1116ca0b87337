fn main() {
    std::process::exit(hfactor::cli::main());
}
