fn main() {
    std::process::exit(agewatch_cli::run(std::env::args_os()));
}
