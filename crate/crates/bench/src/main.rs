fn main() {
    std::process::exit(gssl_bench::cli::run(std::env::args_os()));
}
