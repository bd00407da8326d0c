// Lift the 5-coclique Sigma to the 320-word code B and the 1280-word code A,
// then compute the minimum distance of A exactly.

use kissing19::error::Result;
use kissing19::golay::{self, PaperGenerators};
use kissing19::lift;

pub fn run_example() -> Result<()> {
    let gens = PaperGenerators::compiled();
    let m = golay::build_m(&gens)?;
    let b = lift::build_b(&m, &gens.coset_reps())?;
    let a = lift::build_a(&b, gens.r[0], gens.r[1])?;
    println!("|B| = {}, |A| = {}", b.len(), a.len());

    let report = a.min_distance()?;
    println!(
        "d(A) = {} over {} pairs, first minimal pair {} {}",
        report.min_distance, report.pairs_checked, report.witness.0, report.witness.1
    );

    let file = lift::render_code_file(&a)?;
    println!("{}", file.lines().next().unwrap_or(""));
    assert_eq!(report.min_distance, 5);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
