fn main() {
    std::process::exit(symtangent_cli::main_with(std::env::args()));
}
