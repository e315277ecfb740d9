fn main() {
    std::process::exit(progate::cli::run(std::env::args_os()));
}
