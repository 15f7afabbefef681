use clap::Parser;
use purecubic::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
