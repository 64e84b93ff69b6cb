fn main() {
    std::process::exit(tiltlab::cli::main_with(std::env::args_os()));
}
