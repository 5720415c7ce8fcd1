fn main() {
    std::process::exit(weyllab::cli_io::run(std::env::args_os()));
}
