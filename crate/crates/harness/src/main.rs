use clap::Parser;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = jpda_harness::cli::Cli::parse();
    std::process::exit(jpda_harness::cli::main_with(cli));
}
