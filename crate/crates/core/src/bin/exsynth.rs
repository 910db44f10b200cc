fn main() {
    std::process::exit(exsynth::cli::run(std::env::args_os()));
}
