fn main() {
    std::process::exit(pucorrect::cli::run(std::env::args_os()));
}
