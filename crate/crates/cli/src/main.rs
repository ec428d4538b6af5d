fn main() {
    std::process::exit(copolar_cli::run(std::env::args_os()));
}
