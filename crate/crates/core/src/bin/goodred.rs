fn main() {
    std::process::exit(goodred::cli::commands::main_with_args(std::env::args_os()));
}
