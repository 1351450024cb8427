fn main() {
    std::process::exit(luttinger_ff::cli::main_with_args(std::env::args_os()));
}
