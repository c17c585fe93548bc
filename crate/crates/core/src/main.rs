fn main() {
    std::process::exit(epr_auth::cli::main());
}
