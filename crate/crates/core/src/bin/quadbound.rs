fn main() {
    std::process::exit(quadbound::cli::cli_main(std::env::args_os()));
}
