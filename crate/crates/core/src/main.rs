fn main() {
    std::process::exit(supertree_spectra::cli::run(std::env::args_os()));
}
