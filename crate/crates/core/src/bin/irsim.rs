fn main() {
    std::process::exit(irsim::cli::main_with_args(std::env::args_os()));
}
