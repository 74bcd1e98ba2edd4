fn main() {
    std::process::exit(easywg_cli::app::run_from_env());
}
