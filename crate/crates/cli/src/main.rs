fn main() {
    std::process::exit(sp4r_cli::run(std::env::args_os()));
}
