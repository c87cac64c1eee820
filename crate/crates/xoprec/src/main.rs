fn main() {
    std::process::exit(xoprec::cli::run());
}
