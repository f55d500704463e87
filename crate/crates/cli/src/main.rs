fn main() {
    mixed_ehrhart_cli::init_logging();
    std::process::exit(mixed_ehrhart_cli::dispatch(std::env::args_os()));
}
