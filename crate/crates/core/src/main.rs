fn main() {
    std::process::exit(niho::cli::run(std::env::args_os()));
}
