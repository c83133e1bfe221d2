fn main() {
    std::process::exit(real_lagrangian::cli::run_cli(std::env::args_os()));
}
