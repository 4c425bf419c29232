fn main() {
    std::process::exit(twedge::cli::main_with_args(std::env::args_os()));
}
