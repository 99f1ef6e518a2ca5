fn main() {
    std::process::exit(grassmann::cli::run(std::env::args_os()));
}
