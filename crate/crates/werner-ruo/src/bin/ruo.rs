fn main() {
    std::process::exit(werner_ruo::cli::run(std::env::args()));
}
