fn main() {
    std::process::exit(berezin::cli::main_with_args(std::env::args_os()));
}
