fn main() {
    std::process::exit(trigzeros::cli::main_with_args(std::env::args_os()));
}
