use clap::Parser;

use ikdetect::{run, RunConfig};

fn main() {
    let out = run(&RunConfig::parse());
    if out.exit_code == 1 {
        eprintln!("error: {}", out.report);
    } else {
        print!("{}", out.report);
    }
    std::process::exit(out.exit_code);
}
