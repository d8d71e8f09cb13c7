fn main() {
    std::process::exit(gendih::cli::run(std::env::args_os()));
}
