fn main() {
    std::process::exit(pubyear::cli::main_with_args(std::env::args_os()));
}
