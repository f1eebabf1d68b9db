fn main() {
    std::process::exit(dirac_series::cli::main_entry());
}
