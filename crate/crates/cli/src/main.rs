fn main() {
    std::process::exit(cosetq_cli::run(std::env::args_os()));
}
