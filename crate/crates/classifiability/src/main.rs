fn main() {
    std::process::exit(classifiability::cli::run_cli(std::env::args_os()));
}
