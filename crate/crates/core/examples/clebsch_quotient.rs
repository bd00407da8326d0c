// The Cayley graph on K/M with connection set Sigma is the Clebsch graph,
// and the difference graph on K maps onto it.

use kissing19::error::Result;
use kissing19::golay::{self, PaperGenerators};
use kissing19::graph::verify_srg;
use kissing19::quotient::{self, QuotientCoords, SIGMA};

pub fn run_example() -> Result<()> {
    let q = quotient::build_clebsch(&SIGMA)?;
    for row in q.adjacency_bitstrings() {
        println!("{row}");
    }
    let srg = verify_srg(&q, (16, 5, 0, 2));
    println!("{srg}");

    let gens = PaperGenerators::compiled();
    let d = golay::build_d(&gens)?;
    let m = golay::build_m(&gens)?;
    let s = quotient::extract_s(&d)?;
    let k = quotient::build_k(&s)?;
    let gamma_k = quotient::build_gamma_on_k(&k, &s)?;
    let coords = QuotientCoords::new(&m, gens.s)?;
    let map = quotient::verify_quotient_map(&gamma_k, &coords, &q)?;
    println!("{map}");
    assert!(srg.passed() && map.passed());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
