//! Linear algebra over GF(2) on [`Word`]s: row reduction, linear codes,
//! span enumeration and coset decomposition.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::word::{Word, MAX_LEN};

/// Largest dimension [`LinearCode::enumerate`] will expand.
pub const ENUMERATION_BUDGET_DIM: usize = 24;

/// An ordered list of rows of equal length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenMatrix {
    width: usize,
    rows: Vec<Word>,
}

impl GenMatrix {
    pub fn new(width: usize, rows: Vec<Word>) -> Result<Self> {
        if width > MAX_LEN {
            return Err(Error::LengthTooLarge(width));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != width) {
            return Err(Error::LengthMismatch(width, bad.len()));
        }
        Ok(Self { width, rows })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[Word] {
        &self.rows
    }

    /// First row pair `(i, j)`, `i <= j`, with nonzero inner product, if any.
    /// `None` means `M Mᵀ = 0`.
    pub fn gram_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows.len() {
            for j in i..self.rows.len() {
                if (self.rows[i].bits() & self.rows[j].bits()).count_ones() & 1 == 1 {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduction {
    /// Reduced row-echelon form; zero rows are moved to the bottom.
    pub rref: GenMatrix,
    pub rank: usize,
    /// 1-based pivot coordinates, one per nonzero row of `rref`.
    pub pivot_columns: Vec<usize>,
}

/// Gauss-Jordan elimination. Columns are scanned from coordinate 1 upward and
/// the first available row (top-down) becomes the pivot.
pub fn row_reduce(m: &GenMatrix) -> RowReduction {
    let mut rows: Vec<u32> = m.rows.iter().map(|w| w.bits()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..m.width {
        let bit = 1u32 << col;
        let Some(p) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && *row & bit != 0 {
                *row ^= pivot_row;
            }
        }
        pivots.push(col + 1);
        rank += 1;
    }
    let rows = rows
        .into_iter()
        .map(|b| Word::from_bits(m.width, b).expect("row stays in range"))
        .collect();
    RowReduction {
        rref: GenMatrix {
            width: m.width,
            rows,
        },
        rank,
        pivot_columns: pivots,
    }
}

/// A binary linear code held as a row-reduced basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    length: usize,
    basis: Vec<Word>,
    /// 0-based pivot column of each basis row.
    pivots: Vec<u32>,
}

impl LinearCode {
    /// The span of `generators`; dependent generators are dropped.
    pub fn span(length: usize, generators: &[Word]) -> Result<Self> {
        let m = GenMatrix::new(length, generators.to_vec())?;
        let red = row_reduce(&m);
        let basis: Vec<Word> = red.rref.rows[..red.rank].to_vec();
        let pivots = red.pivot_columns.iter().map(|&c| c as u32 - 1).collect();
        Ok(Self {
            length,
            basis,
            pivots,
        })
    }

    /// The zero code of the given length.
    pub fn trivial(length: usize) -> Result<Self> {
        Self::span(length, &[])
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    /// Number of codewords, `2^dim`.
    pub fn size(&self) -> u64 {
        1u64 << self.dim()
    }

    /// Canonical normal form of `w` modulo this code: clears every pivot
    /// coordinate. Two words share a coset iff their normal forms agree.
    pub fn reduce(&self, w: Word) -> Result<Word> {
        if w.len() != self.length {
            return Err(Error::LengthMismatch(self.length, w.len()));
        }
        let mut bits = w.bits();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if bits >> p & 1 == 1 {
                bits ^= row.bits();
            }
        }
        Word::from_bits(self.length, bits)
    }

    pub fn contains(&self, w: Word) -> bool {
        self.reduce(w).map(Word::is_zero).unwrap_or(false)
    }

    pub fn contains_code(&self, other: &LinearCode) -> bool {
        other.length == self.length && other.basis.iter().all(|&w| self.contains(w))
    }

    /// All `2^dim` codewords. Word `i` is the combination whose coefficient
    /// vector, read with the first basis row most significant, is `i`; so the
    /// output is in lexicographic order of coefficient vectors.
    pub fn enumerate(&self) -> Result<Vec<Word>> {
        let k = self.dim();
        if k > ENUMERATION_BUDGET_DIM {
            return Err(Error::EnumerationBudget(k));
        }
        let mut bits = vec![0u32; 1 << k];
        for i in 1..bits.len() {
            let low = i.trailing_zeros() as usize;
            bits[i] = bits[i & (i - 1)] ^ self.basis[k - 1 - low].bits();
        }
        bits.into_iter()
            .map(|b| Word::from_bits(self.length, b))
            .collect()
    }

    /// Sorted codeword set; two codes are equal iff these agree.
    pub fn sorted_codewords(&self) -> Result<Vec<Word>> {
        let mut words = self.enumerate()?;
        words.sort_unstable();
        Ok(words)
    }

    /// Codeword-set equality by sorted enumeration.
    pub fn same_codewords(&self, other: &LinearCode) -> Result<bool> {
        Ok(self.length == other.length && self.sorted_codewords()? == other.sorted_codewords()?)
    }
}

/// One coset `representative + small` inside a larger code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    /// Numerically smallest word of the coset.
    pub representative: Word,
    /// Indices into the supplied `reps` whose sum lies in this coset; the
    /// first such subset in (size, index) order.
    pub generated_by: Vec<usize>,
    /// Members, in the enumeration order of the larger code.
    pub words: Vec<Word>,
}

/// Partition `big` into cosets of `small`. `reps` together with `small` must
/// generate `big`; each coset is labelled by the smallest subset of `reps`
/// landing in it.
pub fn coset_decompose(big: &LinearCode, small: &LinearCode, reps: &[Word]) -> Result<Vec<Coset>> {
    if small.length != big.length {
        return Err(Error::LengthMismatch(big.length, small.length));
    }
    if !big.contains_code(small) {
        return Err(Error::NotContained("subcode".into()));
    }
    if let Some(r) = reps.iter().find(|&&r| !big.contains(r)) {
        return Err(Error::NotContained(format!("representative {r}")));
    }
    let mut gens = small.basis.clone();
    gens.extend_from_slice(reps);
    let generated = LinearCode::span(big.length, &gens)?;
    if generated.dim() != big.dim() {
        return Err(Error::InsufficientReps {
            got: generated.dim(),
            need: big.dim(),
        });
    }

    let mut cells: BTreeMap<u32, Vec<Word>> = BTreeMap::new();
    for w in big.enumerate()? {
        cells.entry(small.reduce(w)?.bits()).or_default().push(w);
    }

    let mut subsets: Vec<u64> = (0..1u64 << reps.len().min(20)).collect();
    subsets.sort_by_key(|&s| (s.count_ones(), std::cmp::Reverse(s.reverse_bits())));
    let mut labels: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for s in subsets {
        let sum = (0..reps.len())
            .filter(|i| s >> i & 1 == 1)
            .fold(0u32, |acc, i| acc ^ reps[i].bits());
        let key = small.reduce(Word::from_bits(big.length, sum)?)?.bits();
        labels
            .entry(key)
            .or_insert_with(|| (0..reps.len()).filter(|i| s >> i & 1 == 1).collect());
        if labels.len() == cells.len() {
            break;
        }
    }

    let mut out: Vec<Coset> = cells
        .into_iter()
        .map(|(key, words)| Coset {
            representative: *words
                .iter()
                .min_by_key(|w| w.bits())
                .expect("nonempty coset"),
            generated_by: labels.get(&key).cloned().unwrap_or_default(),
            words,
        })
        .collect();
    out.sort_by_key(|c| c.representative.bits());
    Ok(out)
}

/// Direct-indexed membership table over all `2^length` words.
#[derive(Clone, Debug)]
pub struct WordTable {
    length: usize,
    blocks: Vec<u64>,
}

impl WordTable {
    pub fn new(length: usize) -> Result<Self> {
        if length > MAX_LEN {
            return Err(Error::LengthTooLarge(length));
        }
        let n = 1usize << length;
        Ok(Self {
            length,
            blocks: vec![0; n.div_ceil(64)],
        })
    }

    pub fn from_words(length: usize, words: &[Word]) -> Result<Self> {
        let mut t = Self::new(length)?;
        for &w in words {
            t.insert(w)?;
        }
        Ok(t)
    }

    pub fn insert(&mut self, w: Word) -> Result<()> {
        if w.len() != self.length {
            return Err(Error::LengthMismatch(self.length, w.len()));
        }
        let b = w.bits() as usize;
        self.blocks[b / 64] |= 1 << (b % 64);
        Ok(())
    }

    pub fn contains(&self, w: Word) -> bool {
        w.len() == self.length && self.contains_bits(w.bits())
    }

    #[inline]
    pub fn contains_bits(&self, bits: u32) -> bool {
        let b = bits as usize;
        self.blocks
            .get(b / 64)
            .is_some_and(|blk| blk >> (b % 64) & 1 == 1)
    }

    pub fn length(&self) -> usize {
        self.length
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(len: usize, s: &[usize]) -> Word {
        Word::from_support(len, s).unwrap()
    }

    #[test]
    fn zero_row_has_rank_zero() {
        let m = GenMatrix::new(5, vec![Word::zero(5).unwrap()]).unwrap();
        let r = row_reduce(&m);
        assert_eq!(r.rank, 0);
        assert!(r.pivot_columns.is_empty());
    }

    #[test]
    fn rref_is_reduced() {
        let m = GenMatrix::new(
            4,
            vec![w(4, &[2, 3]), w(4, &[1, 2]), w(4, &[1, 3]), w(4, &[4])],
        )
        .unwrap();
        let r = row_reduce(&m);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_columns, vec![1, 2, 4]);
        assert_eq!(r.rref.rows()[0], w(4, &[1, 3]));
        assert_eq!(r.rref.rows()[1], w(4, &[2, 3]));
        assert_eq!(r.rref.rows()[2], w(4, &[4]));
        assert!(r.rref.rows()[3].is_zero());
    }

    #[test]
    fn mismatched_rows_rejected() {
        assert!(GenMatrix::new(4, vec![w(4, &[1]), w(5, &[1])]).is_err());
    }

    #[test]
    fn trivial_code_enumerates_zero() {
        let c = LinearCode::trivial(7).unwrap();
        assert_eq!(c.enumerate().unwrap(), vec![Word::zero(7).unwrap()]);
        let empty = LinearCode::trivial(0).unwrap();
        assert_eq!(empty.enumerate().unwrap().len(), 1);
    }

    #[test]
    fn enumeration_is_lexicographic_in_coefficients() {
        let c = LinearCode::span(3, &[w(3, &[1]), w(3, &[2])]).unwrap();
        let words = c.enumerate().unwrap();
        assert_eq!(
            words,
            vec![w(3, &[]), w(3, &[2]), w(3, &[1]), w(3, &[1, 2])]
        );
    }

    #[test]
    fn cosets_of_self_and_errors() {
        let c = LinearCode::span(4, &[w(4, &[1, 2]), w(4, &[3, 4])]).unwrap();
        let cells = coset_decompose(&c, &c, &[]).unwrap();
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].words.len(), 4);

        let sub = LinearCode::span(4, &[w(4, &[1, 2])]).unwrap();
        assert!(matches!(
            coset_decompose(&c, &sub, &[]),
            Err(Error::InsufficientReps { got: 1, need: 2 })
        ));
        let outside = LinearCode::span(4, &[w(4, &[1])]).unwrap();
        assert!(matches!(
            coset_decompose(&c, &outside, &[]),
            Err(Error::NotContained(_))
        ));
        assert!(matches!(
            coset_decompose(&c, &sub, &[w(4, &[1])]),
            Err(Error::NotContained(_))
        ));

        let cells = coset_decompose(&c, &sub, &[w(4, &[3, 4])]).unwrap();
        assert_eq!(cells.len(), 2);
        assert_eq!(cells[0].generated_by, Vec::<usize>::new());
        assert_eq!(cells[1].generated_by, vec![0]);
        assert_eq!(cells[1].representative, w(4, &[3, 4]));
    }

    #[test]
    fn word_table_membership() {
        let mut t = WordTable::new(19).unwrap();
        let a = w(19, &[2, 11, 14]);
        t.insert(a).unwrap();
        assert!(t.contains(a));
        assert!(!t.contains(w(19, &[2, 11])));
        assert!(!t.contains(w(18, &[2, 11, 14])));
    }

    fn matrix() -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(0u32..1 << 10, 0..8)
    }

    fn code(rows: &[u32]) -> LinearCode {
        let words: Vec<Word> = rows
            .iter()
            .map(|&b| Word::from_bits(10, b).unwrap())
            .collect();
        LinearCode::span(10, &words).unwrap()
    }

    proptest! {
        #[test]
        fn rank_invariant_under_row_permutation(rows in matrix(), seed in any::<u64>()) {
            let mut perm = rows.clone();
            let n = perm.len();
            for i in (1..n).rev() {
                let j = (seed.wrapping_mul(6364136223846793005).wrapping_add(i as u64) >> 33) as usize % (i + 1);
                perm.swap(i, j);
            }
            prop_assert_eq!(code(&rows).dim(), code(&perm).dim());
            prop_assert!(code(&rows).same_codewords(&code(&perm)).unwrap());
        }

        #[test]
        fn span_has_no_duplicates_and_is_closed(rows in matrix()) {
            let c = code(&rows);
            let words = c.enumerate().unwrap();
            prop_assert_eq!(words.len() as u64, c.size());
            let mut sorted = words.clone();
            sorted.sort();
            sorted.dedup();
            prop_assert_eq!(sorted.len(), words.len());
            for &a in words.iter().take(16) {
                for &b in &words {
                    prop_assert!(c.contains(a + b));
                }
            }
        }

        #[test]
        fn cosets_partition_exactly(rows in matrix(), split in 0usize..8) {
            let big = code(&rows);
            let k = split.min(big.dim());
            let small = LinearCode::span(10, &big.basis()[..k]).unwrap();
            let cells = coset_decompose(&big, &small, &big.basis()[k..]).unwrap();
            prop_assert_eq!(cells.len() as u64, big.size() / small.size());
            let mut all: Vec<Word> = cells.iter().flat_map(|c| c.words.clone()).collect();
            prop_assert_eq!(all.len() as u64, big.size());
            all.sort();
            all.dedup();
            prop_assert_eq!(all.len() as u64, big.size());
            for c in &cells {
                prop_assert_eq!(c.words.len() as u64, small.size());
            }
        }
    }
}
