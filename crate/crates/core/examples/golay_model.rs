// Build the length-19 code D and its 24-coordinate extension, then check the
// extension is the extended Golay code and punctures back to D.

use kissing19::error::Result;
use kissing19::golay::{self, PaperGenerators, PUNCTURED};

pub fn run_example() -> Result<()> {
    let gens = PaperGenerators::compiled();
    let d = golay::build_d(&gens)?;
    let dt = golay::build_d_tilde(&gens)?;
    println!("D: length {} dim {}", d.length(), d.dim());
    println!("D~: length {} dim {}", dt.length(), dt.dim());

    let spectrum = golay::weight_enumerator(&dt)?;
    for (w, n) in &spectrum.counts {
        println!("  weight {w:>2}: {n}");
    }

    let punctured = golay::puncture(&dt, &PUNCTURED)?;
    println!("puncture(D~) == D: {}", punctured.same_codewords(&d)?);

    let (_, certs) = golay::verify_golay(&gens)?;
    for c in &certs {
        println!("{c}");
    }
    assert!(certs.iter().all(|c| c.passed()));
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
