fn main() {
    std::process::exit(mprod_cli::run(std::env::args_os()));
}
