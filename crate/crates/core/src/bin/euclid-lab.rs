fn main() {
    std::process::exit(euclid_lab::cli::run_cli());
}
