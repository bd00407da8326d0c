//! The ambient code `D ≤ F₂¹⁹` and its length-24 extension `D̃`.
//!
//! The twelve generators, `s5` and the 12×5 extension block are the only
//! transcribed data in the crate. Everything else is computed from them.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::gf2::{row_reduce, GenMatrix, LinearCode};
use crate::word::Word;

/// Length of `D`.
pub const N: usize = 19;
/// Width of the extension block; `D̃` has length `N + EXT`.
pub const EXT: usize = 5;
/// Coordinates deleted when puncturing `D̃` back to `D`.
pub const PUNCTURED: [usize; 5] = [20, 21, 22, 23, 24];

/// SHA-256 of [`PaperGenerators::canonical_text`] for the compiled-in data.
pub const GOLDEN_CHECKSUM: &str =
    "f5c24f5d04c049120ccf8ccc6c3120196d783bbf5331c0854db25f860dd4b27e";

const M_ROWS: [&[usize]; 6] = [
    &[1, 8, 9, 12, 16, 17, 18, 19],
    &[2, 10, 11, 14, 15, 17, 18],
    &[3, 7, 9, 13, 15, 16, 17, 19],
    &[4, 7, 8, 10, 12, 15, 16, 19],
    &[5, 10, 12, 13, 15, 16, 17, 18],
    &[6, 7, 8, 9, 10, 13, 16, 18],
];
const S_ROWS: [&[usize]; 4] = [
    &[1, 4, 7, 9],
    &[1, 5, 6, 18],
    &[1, 3, 12, 15],
    &[1, 10, 13, 19],
];
const R_ROWS: [&[usize]; 2] = [
    &[1, 3, 5, 6, 7, 13, 14, 15, 18],
    &[2, 4, 6, 7, 8, 13, 14, 16, 17, 18],
];
const S5: &[usize] = &[3, 5, 7, 10];
const P_ROWS: [&str; 12] = [
    "00000", "00001", "00000", "00000", "00000", "00000", "11110", "01111", "10111", "11011",
    "10101", "00110",
];

/// Number of individually addressable generator words (see [`PaperGenerators::slot`]).
pub const SLOT_COUNT: usize = 25;

/// The transcribed generator data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaperGenerators {
    pub m: [Word; 6],
    pub s: [Word; 4],
    pub r: [Word; 2],
    pub s5: Word,
    /// Extension block rows, one per generator in `rows()` order.
    pub p_rows: [Word; 12],
}

impl PaperGenerators {
    pub fn compiled() -> Self {
        let w = |s: &[usize]| Word::from_support(N, s).expect("golden word");
        Self {
            m: M_ROWS.map(w),
            s: S_ROWS.map(w),
            r: R_ROWS.map(w),
            s5: w(S5),
            p_rows: P_ROWS.map(|b| Word::parse(b, EXT).expect("golden row")),
        }
    }

    /// `m1..m6, s1..s4, r1, r2`, the row order of `G`.
    pub fn rows(&self) -> [Word; 12] {
        let mut out = [self.m[0]; 12];
        out[..6].copy_from_slice(&self.m);
        out[6..10].copy_from_slice(&self.s);
        out[10..].copy_from_slice(&self.r);
        out
    }

    /// `s1..s5`.
    pub fn coset_reps(&self) -> [Word; 5] {
        [self.s[0], self.s[1], self.s[2], self.s[3], self.s5]
    }

    pub fn generator_matrix(&self) -> GenMatrix {
        GenMatrix::new(N, self.rows().to_vec()).expect("rows have length 19")
    }

    /// `[G | P]`.
    pub fn extended_matrix(&self) -> Result<GenMatrix> {
        let rows = self
            .rows()
            .iter()
            .zip(&self.p_rows)
            .map(|(g, p)| g.concat(*p))
            .collect::<Result<Vec<_>>>()?;
        GenMatrix::new(N + EXT, rows)
    }

    pub fn slot_name(slot: usize) -> String {
        match slot {
            0..=5 => format!("m{}", slot + 1),
            6..=9 => format!("s{}", slot - 5),
            10..=11 => format!("r{}", slot - 9),
            12 => "s5".into(),
            13..=24 => format!("p{}", slot - 12),
            _ => format!("slot{slot}"),
        }
    }

    /// Word in generator slot `0..SLOT_COUNT`: the twelve rows of `G`, then
    /// `s5`, then the twelve rows of `P`.
    pub fn slot(&self, slot: usize) -> Option<Word> {
        match slot {
            0..=11 => Some(self.rows()[slot]),
            12 => Some(self.s5),
            13..=24 => Some(self.p_rows[slot - 13]),
            _ => None,
        }
    }

    fn slot_mut(&mut self, slot: usize) -> Option<&mut Word> {
        match slot {
            0..=5 => Some(&mut self.m[slot]),
            6..=9 => Some(&mut self.s[slot - 6]),
            10..=11 => Some(&mut self.r[slot - 10]),
            12 => Some(&mut self.s5),
            13..=24 => Some(&mut self.p_rows[slot - 13]),
            _ => None,
        }
    }

    /// Flip 1-based `coordinate` of the word in `slot`.
    pub fn flip(&mut self, slot: usize, coordinate: usize) -> Result<()> {
        let w = self.slot_mut(slot).ok_or(Error::VertexOutOfRange {
            vertex: slot,
            n: SLOT_COUNT,
        })?;
        *w = w.flip(coordinate)?;
        Ok(())
    }

    /// One `name=support` line per slot.
    pub fn canonical_text(&self) -> String {
        (0..SLOT_COUNT)
            .map(|i| format!("{}={}\n", Self::slot_name(i), self.slot(i).expect("slot")))
            .collect()
    }

    pub fn checksum(&self) -> String {
        hex_digest(self.canonical_text().as_bytes())
    }
}

pub(crate) fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn build_m(gens: &PaperGenerators) -> Result<LinearCode> {
    LinearCode::span(N, &gens.m)
}

pub fn build_d(gens: &PaperGenerators) -> Result<LinearCode> {
    LinearCode::span(N, &gens.rows())
}

pub fn build_d_tilde(gens: &PaperGenerators) -> Result<LinearCode> {
    LinearCode::span(N + EXT, gens.extended_matrix()?.rows())
}

/// Self-orthogonality of the basis plus `2·dim = length`.
pub fn verify_self_dual(c: &LinearCode) -> Certificate {
    let basis = c.basis();
    let mut pair = None;
    'outer: for i in 0..basis.len() {
        for j in i..basis.len() {
            if basis[i].dot(basis[j]).unwrap_or(true) {
                pair = Some([basis[i], basis[j]]);
                break 'outer;
            }
        }
    }
    let self_orthogonal = pair.is_none();
    let dims_match = 2 * c.dim() == c.length();
    let violation = (!self_orthogonal || !dims_match).then(|| {
        let mut w = serde_json::Map::new();
        if let Some(p) = pair {
            w.insert("non_orthogonal_pair".into(), json!(p));
        }
        if !dims_match {
            w.insert(
                "dimension".into(),
                json!({"reason": "2*dim != length", "dim": c.dim(), "length": c.length()}),
            );
        }
        serde_json::Value::Object(w)
    });
    Certificate::from_check("self_dual", violation)
        .metric("self_orthogonal", self_orthogonal)
        .metric("dim", c.dim())
        .metric("length", c.length())
}

pub fn verify_doubly_even(c: &LinearCode) -> Result<Certificate> {
    let words = c.enumerate()?;
    let bad = words
        .par_iter()
        .position_first(|w| w.weight() % 4 != 0)
        .map(|i| json!({"word": words[i], "weight": words[i].weight()}));
    Ok(Certificate::from_check("doubly_even", bad).metric("codewords", words.len()))
}

/// Number of codewords of each weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightEnumerator {
    pub counts: std::collections::BTreeMap<u32, u64>,
}

impl WeightEnumerator {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn min_nonzero_weight(&self) -> Option<u32> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    pub fn count(&self, weight: u32) -> u64 {
        self.counts.get(&weight).copied().unwrap_or(0)
    }
}

pub fn weight_enumerator(c: &LinearCode) -> Result<WeightEnumerator> {
    let words = c.enumerate()?;
    let hist = words
        .par_chunks(1024)
        .map(|chunk| {
            let mut h = [0u64; 25];
            for w in chunk {
                h[w.weight() as usize] += 1;
            }
            h
        })
        .reduce(
            || [0u64; 25],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let counts = hist
        .iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(w, &n)| (w as u32, n))
        .collect();
    Ok(WeightEnumerator { counts })
}

/// Delete the 1-based `columns` from every basis row and re-reduce.
pub fn puncture(c: &LinearCode, columns: &[usize]) -> Result<LinearCode> {
    let rows = c
        .basis()
        .iter()
        .map(|w| w.delete_coordinates(columns))
        .collect::<Result<Vec<_>>>()?;
    let mut cols = columns.to_vec();
    cols.sort_unstable();
    cols.dedup();
    LinearCode::span(c.length() - cols.len(), &rows)
}

/// Summary emitted by `verify-golay`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GolayReport {
    /// Rank of `G`.
    pub rank: usize,
    /// Rank of `[G | P]`.
    pub rank_extended: usize,
    pub self_orthogonal: bool,
    pub self_dual: bool,
    pub doubly_even: bool,
    pub min_weight: Option<u32>,
    pub spectrum: std::collections::BTreeMap<u32, u64>,
}

/// Every check on `D̃` plus the puncturing identity, as certificates.
pub fn verify_golay(gens: &PaperGenerators) -> Result<(GolayReport, Vec<Certificate>)> {
    let g = gens.generator_matrix();
    let gt = gens.extended_matrix()?;
    let rank = row_reduce(&g).rank;
    let rank_extended = row_reduce(&gt).rank;
    let d = build_d(gens)?;
    let dt = build_d_tilde(gens)?;

    let mut certs = Vec::new();
    let checksum = gens.checksum();
    certs.push(
        Certificate::from_check(
            "golden.checksum",
            (checksum != GOLDEN_CHECKSUM).then(|| {
                let pristine = PaperGenerators::compiled();
                let changed: Vec<_> = (0..SLOT_COUNT)
                    .filter(|&i| gens.slot(i) != pristine.slot(i))
                    .map(|i| json!({"slot": PaperGenerators::slot_name(i), "expected": pristine.slot(i), "actual": gens.slot(i)}))
                    .collect();
                json!({"expected": GOLDEN_CHECKSUM, "actual": checksum, "changed_slots": changed})
            }),
        )
        .metric("sha256", &checksum),
    );
    certs.push(
        Certificate::from_check(
            "prop2.1.rank",
            (rank != 12 || rank_extended != 12)
                .then(|| json!({"rank_G": rank, "rank_G_tilde": rank_extended})),
        )
        .metric("rank_G", rank)
        .metric("rank_G_tilde", rank_extended),
    );

    let gram = gt.gram_violation();
    let self_orthogonal = gram.is_none();
    certs.push(
        Certificate::from_check(
            "prop2.1.self_orthogonal",
            gram.map(|(i, j)| {
                json!({"rows": [i + 1, j + 1], "row_i": gt.rows()[i], "row_j": gt.rows()[j]})
            }),
        )
        .metric("row_pairs_checked", 78),
    );

    let row_weights: Vec<u32> = gt.rows().iter().map(|w| w.weight()).collect();
    let bad_row = row_weights.iter().position(|w| *w != 8 && *w != 12);
    certs.push(
        Certificate::from_check(
            "prop2.1.row_weights",
            bad_row.map(|i| json!({"row": i + 1, "weight": row_weights[i]})),
        )
        .metric("weights", &row_weights),
    );

    let sd = verify_self_dual(&dt).with_id("prop2.1.self_dual");
    let self_dual = sd.passed();
    certs.push(sd);

    let de = verify_doubly_even(&dt)?.with_id("prop2.1.doubly_even");
    let doubly_even = de.passed();
    certs.push(de);

    let spectrum = weight_enumerator(&dt)?;
    let min_weight = spectrum.min_nonzero_weight();
    certs.push(
        Certificate::from_check(
            "prop2.1.min_weight",
            (min_weight != Some(8)).then(|| json!({"min_weight": min_weight})),
        )
        .metric("min_weight", min_weight),
    );
    let expected = [(0u32, 1u64), (8, 759), (12, 2576), (16, 759), (24, 1)];
    let spectrum_ok = spectrum.counts.len() == expected.len()
        && expected.iter().all(|&(w, n)| spectrum.count(w) == n);
    certs.push(
        Certificate::from_check(
            "prop2.1.spectrum",
            (!spectrum_ok).then(|| json!({"spectrum": &spectrum.counts})),
        )
        .metric("spectrum", &spectrum.counts)
        .metric("total", spectrum.total()),
    );

    let punctured = puncture(&dt, &PUNCTURED)?;
    let same = punctured.same_codewords(&d)?;
    certs.push(
        Certificate::from_check(
            "prop2.1.puncture",
            (!same).then(|| json!({"punctured_dim": punctured.dim(), "d_dim": d.dim()})),
        )
        .metric("punctured_size", punctured.size())
        .metric("d_size", d.size()),
    );

    let report = GolayReport {
        rank,
        rank_extended,
        self_orthogonal,
        self_dual,
        doubly_even,
        min_weight,
        spectrum: spectrum.counts,
    };
    Ok((report, certs))
}
