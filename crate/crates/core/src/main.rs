fn main() {
    env_logger::init();
    std::process::exit(commitment_power::cli::run(std::env::args()));
}
