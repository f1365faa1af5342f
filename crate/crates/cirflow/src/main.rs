fn main() {
    std::process::exit(cirflow::cli::run(std::env::args_os()));
}
