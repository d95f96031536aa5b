fn main() {
    std::process::exit(modunits_cli::run(std::env::args_os()));
}
