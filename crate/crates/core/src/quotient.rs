//! Low-weight words of `D`, the chain `M ≤ K ≤ D`, coordinates on `K/M`,
//! and the two graphs built from them: the 16-vertex Cayley graph on
//! `K/M ≅ F₂⁴` and the difference graph `Γ` restricted to `K`.

use serde::Serialize;
use serde_json::json;

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::gf2::{LinearCode, WordTable};
use crate::graph::BinaryGraph;
use crate::word::Word;

/// Connection set `{e1, e2, e3, e4, e1+e2+e3+e4}` in `F₂⁴`, bit `i` = `e_{i+1}`.
pub const SIGMA: [u8; 5] = [0b0001, 0b0010, 0b0100, 0b1000, 0b1111];

/// Forbidden-difference weights.
pub const LOW_WEIGHTS: [u32; 2] = [3, 4];

/// The published classification of the 21 low-weight words, one row per
/// coset `s1+M .. s5+M`.
pub const TABLE1: [&[&[usize]]; 5] = [
    &[
        &[2, 11, 14],
        &[1, 4, 7, 9],
        &[3, 6, 8, 19],
        &[5, 12, 13, 16],
        &[10, 15, 17, 18],
    ],
    &[
        &[1, 5, 6, 18],
        &[3, 9, 13, 17],
        &[4, 8, 10, 12],
        &[7, 15, 16, 19],
    ],
    &[
        &[1, 3, 12, 15],
        &[4, 5, 17, 19],
        &[6, 9, 10, 16],
        &[7, 8, 13, 18],
    ],
    &[
        &[1, 10, 13, 19],
        &[3, 4, 16, 18],
        &[5, 8, 9, 15],
        &[6, 7, 12, 17],
    ],
    &[
        &[1, 8, 16, 17],
        &[3, 5, 7, 10],
        &[4, 6, 13, 15],
        &[9, 12, 18, 19],
    ],
];

/// The displayed two-word decompositions of `m1..m6`.
pub const M_IDENTITIES: [[&[usize]; 2]; 6] = [
    [&[1, 8, 16, 17], &[9, 12, 18, 19]],
    [&[2, 11, 14], &[10, 15, 17, 18]],
    [&[3, 9, 13, 17], &[7, 15, 16, 19]],
    [&[4, 8, 10, 12], &[7, 15, 16, 19]],
    [&[5, 12, 13, 16], &[10, 15, 17, 18]],
    [&[6, 9, 10, 16], &[7, 8, 13, 18]],
];

pub fn table1_words(length: usize) -> Result<Vec<Vec<Word>>> {
    TABLE1
        .iter()
        .map(|row| row.iter().map(|s| Word::from_support(length, s)).collect())
        .collect()
}

/// Codewords of weight 3 or 4, in (weight, support) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowWeightSet {
    length: usize,
    words: Vec<Word>,
}

impl LowWeightSet {
    pub fn new(length: usize, mut words: Vec<Word>) -> Result<Self> {
        if let Some(w) = words.iter().find(|w| w.len() != length) {
            return Err(Error::LengthMismatch(length, w.len()));
        }
        words.sort_by(|a, b| a.support_cmp(*b));
        words.dedup();
        Ok(Self { length, words })
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Direct-indexed membership over all `2^length` words.
    pub fn table(&self) -> WordTable {
        WordTable::from_words(self.length, &self.words).expect("lengths checked on construction")
    }
}

pub fn extract_s(d: &LinearCode) -> Result<LowWeightSet> {
    let words = d
        .enumerate()?
        .into_iter()
        .filter(|w| LOW_WEIGHTS.contains(&w.weight()))
        .collect();
    LowWeightSet::new(d.length(), words)
}

pub fn build_k(s: &LowWeightSet) -> Result<LinearCode> {
    LinearCode::span(s.length(), s.words())
}

/// For each target, the first pair `a < b` of `S` (in `S` order) with
/// `a + b = target`.
pub fn two_word_sums(s: &LowWeightSet, targets: &[Word]) -> Vec<Option<(Word, Word)>> {
    let table = s.table();
    targets
        .iter()
        .map(|&t| {
            s.words().iter().enumerate().find_map(|(i, &a)| {
                let b = Word::from_bits(t.len(), a.bits() ^ t.bits()).ok()?;
                let j = s.words().iter().position(|&x| x == b)?;
                (j > i && table.contains(b)).then_some((a, b))
            })
        })
        .collect()
}

/// Every target is a sum of two words of `S`, and each `displayed` pair
/// (when given, aligned with `targets`) lies in `S` and sums to its target.
pub fn verify_m_in_k(
    s: &LowWeightSet,
    targets: &[Word],
    displayed: &[(Word, Word)],
) -> Certificate {
    let found = two_word_sums(s, targets);
    let table = s.table();
    let mut failures = Vec::new();
    for (k, f) in found.iter().enumerate() {
        if f.is_none() {
            failures.push(json!({"target": targets[k], "reason": "no pair in S sums to target"}));
        }
    }
    for (k, &(a, b)) in displayed.iter().enumerate() {
        let Some(&t) = targets.get(k) else {
            failures.push(json!({"displayed_pair": [a, b], "reason": "no matching target"}));
            continue;
        };
        let in_s = table.contains(a) && table.contains(b);
        let sums = a.checked_add(b).map(|x| x == t).unwrap_or(false);
        if !in_s || !sums {
            failures.push(json!({"target": t, "displayed_pair": [a, b], "in_s": in_s, "sums_to_target": sums}));
        }
    }
    let pairs: Vec<_> = targets
        .iter()
        .zip(&found)
        .map(|(t, f)| json!({"target": t, "pair": f.map(|(a, b)| [a, b])}))
        .collect();
    Certificate::from_check("m_in_k", (!failures.is_empty()).then(|| json!(failures)))
        .metric("found_pairs", pairs)
        .metric("displayed_checked", displayed.len())
}

/// Coordinates on `K/M` with respect to the classes of four words `s1..s4`.
#[derive(Clone, Debug)]
pub struct QuotientCoords {
    length: usize,
    /// Row-reduced `[word | tag]`, tag in bits 32..36 of the `u64`.
    rows: Vec<u64>,
    pivots: Vec<u32>,
    basis_images: [Word; 4],
}

const TAG_SHIFT: u32 = 32;

impl QuotientCoords {
    /// Row-reduce `[M basis | 0]` stacked on `[s_i | e_i]` once; a query is
    /// then one back-substitution pass.
    pub fn new(m: &LinearCode, s: [Word; 4]) -> Result<Self> {
        let length = m.length();
        if let Some(w) = s.iter().find(|w| w.len() != length) {
            return Err(Error::LengthMismatch(length, w.len()));
        }
        let mut input: Vec<u64> = m.basis().iter().map(|w| w.bits() as u64).collect();
        for (i, w) in s.iter().enumerate() {
            input.push(w.bits() as u64 | 1 << (TAG_SHIFT + i as u32));
        }
        let mut rows: Vec<u64> = Vec::new();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..length as u32 {
            let bit = 1u64 << col;
            let Some(p) = (rank..input.len()).find(|&r| input[r] & bit != 0) else {
                continue;
            };
            input.swap(rank, p);
            let pr = input[rank];
            for (r, row) in input.iter_mut().enumerate() {
                if r != rank && *row & bit != 0 {
                    *row ^= pr;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        rows.extend_from_slice(&input[..rank]);
        if rank != m.dim() + 4 {
            return Err(Error::CosetCollision(format!(
                "s1..s4 are dependent modulo M (rank {rank}, expected {})",
                m.dim() + 4
            )));
        }
        Ok(Self {
            length,
            rows,
            pivots,
            basis_images: s,
        })
    }

    /// Image of `w` in `F₂⁴` (bit `i` = coefficient of `e_{i+1}`), or
    /// `NotContained` when `w ∉ K`.
    pub fn coord_of(&self, w: Word) -> Result<u8> {
        if w.len() != self.length {
            return Err(Error::LengthMismatch(self.length, w.len()));
        }
        let mut acc = w.bits() as u64;
        let mut tag = 0u64;
        for (&row, &p) in self.rows.iter().zip(&self.pivots) {
            if acc >> p & 1 == 1 {
                acc ^= row;
                tag ^= row >> TAG_SHIFT;
            }
        }
        if acc & 0xffff_ffff != 0 {
            return Err(Error::NotContained(format!("{w} in span(M, s1..s4)")));
        }
        Ok((tag & 0xf) as u8)
    }

    pub fn basis_images(&self) -> [Word; 4] {
        self.basis_images
    }
}

/// Render a vector of `F₂⁴` as `e1+e3`, or `0`.
pub fn render_f2_4(v: u8) -> String {
    if v == 0 {
        return "0".into();
    }
    (0..4)
        .filter(|i| v >> i & 1 == 1)
        .map(|i| format!("e{}", i + 1))
        .collect::<Vec<_>>()
        .join("+")
}

/// Alias used in the printed table: `s_i` for `e_i`, `s5` for `e1+e2+e3+e4`.
pub fn alias_of(image: u8) -> Option<&'static str> {
    match image {
        0b0001 => Some("s1"),
        0b0010 => Some("s2"),
        0b0100 => Some("s3"),
        0b1000 => Some("s4"),
        0b1111 => Some("s5"),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetCell {
    /// Image in `F₂⁴`.
    pub image: u8,
    pub image_label: String,
    pub alias: Option<&'static str>,
    /// Numerically smallest word of the `M`-coset.
    pub representative: Word,
    /// Low-weight words in this coset, in (weight, support) order.
    pub words: Vec<Word>,
}

/// `S` partitioned by `M`-coset; cells in alias order `s1..s5` then by image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetClassification {
    pub cells: Vec<CosetCell>,
}

impl CosetClassification {
    pub fn images(&self) -> Vec<u8> {
        self.cells.iter().map(|c| c.image).collect()
    }

    /// Images are exactly `SIGMA` as a set.
    pub fn matches_sigma(&self) -> bool {
        let mut got = self.images();
        got.sort_unstable();
        let mut want = SIGMA.to_vec();
        want.sort_unstable();
        got == want
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.words.len()).collect()
    }
}

pub fn classify_cosets(
    s: &LowWeightSet,
    m: &LinearCode,
    coords: &QuotientCoords,
) -> Result<CosetClassification> {
    let m_words = m.enumerate()?;
    let mut cells: Vec<CosetCell> = Vec::new();
    for &w in s.words() {
        let image = coords.coord_of(w)?;
        if let Some(c) = cells.iter_mut().find(|c| c.image == image) {
            c.words.push(w);
            continue;
        }
        let representative = m_words
            .iter()
            .map(|&x| x + w)
            .min_by_key(|x| x.bits())
            .expect("M is nonempty");
        cells.push(CosetCell {
            image,
            image_label: render_f2_4(image),
            alias: alias_of(image),
            representative,
            words: vec![w],
        });
    }
    let order = |c: &CosetCell| {
        SIGMA
            .iter()
            .position(|&x| x == c.image)
            .unwrap_or(SIGMA.len() + c.image as usize)
    };
    cells.sort_by_key(order);
    Ok(CosetClassification { cells })
}

/// `Cay(F₂⁴, sigma)`; vertex `v` is the vector with bits `v`.
pub fn build_clebsch(sigma: &[u8]) -> Result<BinaryGraph> {
    if sigma.contains(&0) {
        return Err(Error::LoopInConnectionSet);
    }
    if let Some(&x) = sigma.iter().find(|&&x| x >= 16) {
        return Err(Error::VertexOutOfRange {
            vertex: x as usize,
            n: 16,
        });
    }
    Ok(BinaryGraph::from_fn(16, |u, v| {
        sigma.contains(&((u ^ v) as u8))
    }))
}

/// `Γ|_K`: vertices are the codewords of `K` in enumeration order, adjacent
/// when their sum lies in `S`.
pub fn build_gamma_on_k(k: &LinearCode, s: &LowWeightSet) -> Result<BinaryGraph> {
    if let Some(w) = s.words().iter().find(|&&w| !k.contains(w)) {
        return Err(Error::NotContained(format!("{w} in K")));
    }
    BinaryGraph::difference(k.enumerate()?, s.words())
}

/// The projection `K → K/M` against the Cayley graph `q`:
/// every `Γ|_K` edge maps to a `q` edge, no edge stays inside one coset,
/// and every `q` edge is hit by at least one `Γ|_K` edge.
pub fn verify_quotient_map(
    gamma_k: &BinaryGraph,
    coords: &QuotientCoords,
    q: &BinaryGraph,
) -> Result<Certificate> {
    let n = gamma_k.n_vertices();
    let mut images = Vec::with_capacity(n);
    for v in 0..n {
        let w = gamma_k
            .label(v)
            .ok_or_else(|| Error::NotContained("word-labelled graph".into()))?;
        images.push(coords.coord_of(w)? as usize);
    }
    let mut hit = [[false; 16]; 16];
    let mut edges = 0usize;
    let mut non_hom = None;
    let mut internal = None;
    for x in 0..n {
        for y in gamma_k.neighbors(x) {
            if y <= x {
                continue;
            }
            edges += 1;
            let (a, b) = (images[x], images[y]);
            hit[a][b] = true;
            hit[b][a] = true;
            if a == b && internal.is_none() {
                internal = Some(
                    json!({"edge": [gamma_k.label(x), gamma_k.label(y)], "coset": render_f2_4(a as u8)}),
                );
            } else if a != b && !q.adjacent(a, b) && non_hom.is_none() {
                non_hom = Some(
                    json!({"edge": [gamma_k.label(x), gamma_k.label(y)], "images": [render_f2_4(a as u8), render_f2_4(b as u8)]}),
                );
            }
        }
    }
    let unhit = (0..16)
        .flat_map(|a| (a + 1..16).map(move |b| (a, b)))
        .find(|&(a, b)| q.adjacent(a, b) != hit[a][b])
        .map(|(a, b)| {
            json!({"pair": [render_f2_4(a as u8), render_f2_4(b as u8)], "q_adjacent": q.adjacent(a, b), "lifted_edge_exists": hit[a][b]})
        });
    let violation = match (non_hom, internal, unhit) {
        (None, None, None) => None,
        (h, i, u) => {
            Some(json!({"non_homomorphic_edge": h, "edge_inside_coset": i, "quotient_mismatch": u}))
        }
    };
    Ok(Certificate::from_check("quotient_map", violation)
        .metric("gamma_k_edges", edges)
        .metric("gamma_k_vertices", n))
}
