fn main() {
    std::process::exit(zariski::cli::main_with(std::env::args_os()));
}
