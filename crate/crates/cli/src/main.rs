fn main() {
    std::process::exit(dfsopt_cli::run_cli(std::env::args_os()));
}
