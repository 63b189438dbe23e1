use clap::Parser;
use diffuse_cli::{commands, Cli};

fn main() {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = commands::run(cli, &mut out) {
        eprintln!("error: {e}");
        std::process::exit(e.code as i32);
    }
}
