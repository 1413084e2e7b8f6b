use clap::Parser;

fn main() {
    let cli = kitree::cli::Cli::parse();
    std::process::exit(kitree::cli::run(&cli));
}
