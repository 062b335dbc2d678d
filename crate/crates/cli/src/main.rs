fn main() {
    std::process::exit(bernoulli_cli::run(std::env::args_os()));
}
