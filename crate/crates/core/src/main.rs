fn main() {
    std::process::exit(qmix::cli::run(std::env::args_os()));
}
