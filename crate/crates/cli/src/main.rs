fn main() {
    std::process::exit(lietriv_cli::run(std::env::args_os()));
}
