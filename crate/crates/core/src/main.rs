fn main() {
    std::process::exit(troplp::cli::run(std::env::args_os()));
}
