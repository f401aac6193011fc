fn main() {
    std::process::exit(isospec_cli::parse_and_dispatch(std::env::args_os()));
}
