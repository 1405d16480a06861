fn main() {
    std::process::exit(gorenstein_k::cli::main_from(std::env::args_os()));
}
