// Extract the 21 words of weight 3 or 4 from D and sort them into the five
// M-cosets they occupy, labelled by their image in K/M.

use kissing19::error::Result;
use kissing19::golay::{self, PaperGenerators};
use kissing19::quotient::{self, QuotientCoords};

pub fn run_example() -> Result<()> {
    let gens = PaperGenerators::compiled();
    let d = golay::build_d(&gens)?;
    let m = golay::build_m(&gens)?;
    let s = quotient::extract_s(&d)?;
    let k = quotient::build_k(&s)?;
    println!(
        "|S| = {}, dim M = {}, dim K = {}",
        s.len(),
        m.dim(),
        k.dim()
    );

    let coords = QuotientCoords::new(&m, gens.s)?;
    let table = quotient::classify_cosets(&s, &m, &coords)?;
    for cell in &table.cells {
        let words: Vec<String> = cell.words.iter().map(|w| w.to_string()).collect();
        println!(
            "{:<3} {:<12} {}",
            cell.alias.unwrap_or("-"),
            cell.image_label,
            words.join(" ")
        );
    }
    assert!(table.matches_sigma());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
