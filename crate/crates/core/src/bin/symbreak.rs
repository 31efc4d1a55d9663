fn main() {
    std::process::exit(symbreak::cli::main_with_args(std::env::args_os()));
}
