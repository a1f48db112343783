fn main() {
    std::process::exit(pmt_cli::run(std::env::args_os()));
}
