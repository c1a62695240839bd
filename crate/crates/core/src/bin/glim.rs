fn main() {
    std::process::exit(glim_core::cli::run(std::env::args_os()));
}
