// Run every stage and print the certificate bundle, as `run --all` does.

use kissing19::golay::PaperGenerators;
use kissing19::pipeline::{run_pipeline, PipelineOptions};

pub fn run_example() -> Result<(), String> {
    let bundle = run_pipeline(&PaperGenerators::compiled(), &PipelineOptions::default());
    for c in &bundle.certificates {
        println!("{c}");
    }
    match bundle.first_failure() {
        None => Ok(()),
        Some(c) => Err(format!("claim {} failed", c.claim_id)),
    }
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
