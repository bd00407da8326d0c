// Exact and heuristic coclique search on the Clebsch graph, plus a
// heuristic run on the difference graph of D.

use kissing19::coclique::{enumerate_max_cocliques, heuristic_coclique, max_coclique_exact};
use kissing19::error::Result;
use kissing19::golay::{self, PaperGenerators};
use kissing19::graph::BinaryGraph;
use kissing19::quotient::{self, SIGMA};

pub fn run_example() -> Result<()> {
    let q = quotient::build_clebsch(&SIGMA)?;
    let exact = max_coclique_exact(&q)?;
    println!(
        "Clebsch: alpha = {} via {} nodes, {:?}",
        exact.size, exact.node_count, exact.members
    );
    let fives = enumerate_max_cocliques(&q, 5)?;
    let sixes = enumerate_max_cocliques(&q, 6)?;
    println!("5-cocliques: {}, 6-cocliques: {}", fives.len(), sixes.len());

    let gens = PaperGenerators::compiled();
    let d = golay::build_d(&gens)?;
    let s = quotient::extract_s(&d)?;
    let gamma = BinaryGraph::difference(d.sorted_codewords()?, s.words())?;
    let found = heuristic_coclique(&gamma, 7, 2_000, None)?;
    println!(
        "Gamma on D: heuristic coclique of size {} after {} steps",
        found.size, found.node_count
    );
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
