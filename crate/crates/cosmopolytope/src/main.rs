use clap::Parser;

fn main() {
    let cli = cosmopolytope::cli::Cli::parse();
    std::process::exit(cosmopolytope::cli::run(cli));
}
