fn main() {
    std::process::exit(fica_sata::cli::run(std::env::args_os()));
}
