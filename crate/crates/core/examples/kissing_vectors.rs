// Turn A into 1280 sign vectors in dimension 19 and verify them exactly as a
// kissing configuration, after a round trip through the point-file format.

use kissing19::error::Result;
use kissing19::golay::{self, PaperGenerators};
use kissing19::{kissing, lift, pipeline};

pub fn run_example() -> Result<()> {
    let gens = PaperGenerators::compiled();
    let m = golay::build_m(&gens)?;
    let b = lift::build_b(&m, &gens.coset_reps())?;
    let a = lift::build_a(&b, gens.r[0], gens.r[1])?;

    let code_file = lift::render_code_file(&a)?;
    let vectors = kissing::emit_vectors(&a, &pipeline::code_digest(&code_file))?;
    for line in vectors.lines().take(5) {
        println!("{line}");
    }

    let points = kissing::ingest_points(&vectors)?;
    let cert = kissing::verify_configuration(&points)?;
    println!("{cert}");
    assert!(cert.passed());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
