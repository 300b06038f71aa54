use asm_binaural_cli::{execute, Cli};
use clap::Parser;

fn main() {
    let cli = Cli::parse();
    match execute(&cli, |k| std::env::var(k).ok()) {
        Ok(m) => {
            println!("{}: wrote {} files to {}", m.command, m.outputs.len(), m.config.output_dir.display());
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
