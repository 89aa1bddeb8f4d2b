use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use symbreak::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("symbreak: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
