fn main() {
    std::process::exit(qseal::cli::run(std::env::args_os()));
}
