fn main() {
    std::process::exit(apnlab::cli::run(std::env::args_os()));
}
