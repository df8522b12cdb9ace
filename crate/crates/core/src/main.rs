fn main() {
    std::process::exit(marked_hawkes::cli::main_with_args(std::env::args_os()));
}
