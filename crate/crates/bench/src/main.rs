fn main() {
    std::process::exit(gig_bench::cli::run(std::env::args_os()));
}
