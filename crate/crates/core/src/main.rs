fn main() {
    std::process::exit(fiberknot::cli::run(std::env::args_os()));
}
