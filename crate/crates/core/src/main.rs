fn main() {
    std::process::exit(bn_spectral::cli::run(std::env::args_os()));
}
