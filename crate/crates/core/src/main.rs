fn main() {
    env_logger::init();
    std::process::exit(swcalc::cli::run(std::env::args_os()));
}
