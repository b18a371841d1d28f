use clap::Parser;

fn main() {
    let cli = app_cli::cli::Cli::parse();
    std::process::exit(app_cli::cli::main_with(&cli));
}
