use clap::Parser;

use thetakp_core::cli::{run, Cli, JobConfig};

fn main() {
    let cli = Cli::parse();
    let code = match JobConfig::from_cli(cli) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.code
        }
    };
    std::process::exit(code);
}
