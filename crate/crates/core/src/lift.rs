//! Unions of cosets: the 320-word code `B ⊆ K` and the 1280-word code
//! `A ⊆ D`, with exact minimum-distance computation.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::gf2::LinearCode;
use crate::quotient::LowWeightSet;
use crate::word::Word;

/// Minimum distance of a code and the first pair attaining it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    pub min_distance: u32,
    pub witness: (Word, Word),
    pub pairs_checked: u64,
}

/// A set of words of equal length, kept sorted by (weight, bitmask).
#[derive(Clone, Debug)]
pub struct NonlinearCode {
    length: usize,
    words: Vec<Word>,
    distance: OnceLock<DistanceReport>,
}

impl PartialEq for NonlinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.length == other.length && self.words == other.words
    }
}

impl NonlinearCode {
    pub fn new(length: usize, mut words: Vec<Word>) -> Result<Self> {
        if let Some(w) = words.iter().find(|w| w.len() != length) {
            return Err(Error::LengthMismatch(length, w.len()));
        }
        words.sort_unstable();
        words.dedup();
        Ok(Self {
            length,
            words,
            distance: OnceLock::new(),
        })
    }

    pub fn length(&self) -> usize {
        self.length
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

    pub fn contains(&self, w: Word) -> bool {
        self.words.binary_search(&w).is_ok()
    }

    /// `self ∪ {w}`.
    pub fn with_word(&self, w: Word) -> Result<Self> {
        let mut words = self.words.clone();
        words.push(w);
        Self::new(self.length, words)
    }

    /// `self + t`.
    pub fn translate(&self, t: Word) -> Result<Self> {
        let words = self
            .words
            .iter()
            .map(|&w| w.checked_add(t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.length, words)
    }

    /// Exact minimum distance over all unordered pairs. Cached.
    pub fn min_distance(&self) -> Result<DistanceReport> {
        if let Some(r) = self.distance.get() {
            return Ok(*r);
        }
        let r = min_distance(self)?;
        Ok(*self.distance.get_or_init(|| r))
    }
}

/// Scan every unordered pair; the witness is the lexicographically first
/// `(i, j)` attaining the minimum, independent of thread scheduling.
pub fn min_distance(c: &NonlinearCode) -> Result<DistanceReport> {
    let n = c.words.len();
    if n < 2 {
        return Err(Error::TooFewWords(n));
    }
    let bits: Vec<u32> = c.words.iter().map(|w| w.bits()).collect();
    let (d, i, j) = (0..n - 1)
        .into_par_iter()
        .map(|i| {
            let x = bits[i];
            let mut best = (u32::MAX, i, 0);
            for (j, &y) in bits.iter().enumerate().skip(i + 1) {
                let d = (x ^ y).count_ones();
                if d < best.0 {
                    best = (d, i, j);
                }
            }
            best
        })
        .min()
        .expect("at least one pair");
    Ok(DistanceReport {
        min_distance: d,
        witness: (c.words[i], c.words[j]),
        pairs_checked: (n as u64) * (n as u64 - 1) / 2,
    })
}

/// First pair (in sorted order) at distance below `bound`, stopping early.
pub fn first_pair_below(c: &NonlinearCode, bound: u32) -> Option<(Word, Word)> {
    let bits: Vec<u32> = c.words.iter().map(|w| w.bits()).collect();
    (0..bits.len()).into_par_iter().find_map_first(|i| {
        bits[i + 1..]
            .iter()
            .position(|&y| (bits[i] ^ y).count_ones() < bound)
            .map(|k| (c.words[i], c.words[i + 1 + k]))
    })
}

/// `(r_1 + M) ∪ … ∪ (r_k + M)`; the representatives must be distinct mod `M`.
pub fn build_b(m: &LinearCode, reps: &[Word]) -> Result<NonlinearCode> {
    let mut seen = Vec::with_capacity(reps.len());
    for (i, &r) in reps.iter().enumerate() {
        let key = m.reduce(r)?;
        if let Some(j) = seen.iter().position(|&k| k == key) {
            return Err(Error::CosetCollision(format!(
                "representatives {} and {} share an M-coset",
                j + 1,
                i + 1
            )));
        }
        seen.push(key);
    }
    let m_words = m.enumerate()?;
    let words = reps
        .iter()
        .flat_map(|&r| m_words.iter().map(move |&x| x + r))
        .collect();
    NonlinearCode::new(m.length(), words)
}

/// `B ∪ (B + r1) ∪ (B + r2) ∪ (B + r1 + r2)`; fails if translates meet.
pub fn build_a(b: &NonlinearCode, r1: Word, r2: Word) -> Result<NonlinearCode> {
    let shifts = [r1.checked_add(r1)?, r1, r2, r1.checked_add(r2)?];
    let mut words = Vec::with_capacity(4 * b.len());
    for t in shifts {
        words.extend(b.translate(t)?.words);
    }
    let a = NonlinearCode::new(b.length, words)?;
    if a.len() != 4 * b.len() {
        return Err(Error::CosetCollision(format!(
            "translates of B overlap: {} distinct words, expected {}",
            a.len(),
            4 * b.len()
        )));
    }
    Ok(a)
}

/// No pairwise difference lies in `S`, computed with the `S` membership
/// table; the popcount minimum distance is computed alongside and both
/// outcomes are recorded. Status follows the table route.
pub fn verify_independent_in_gamma(c: &NonlinearCode, s: &LowWeightSet) -> Certificate {
    let table = s.table();
    let bits: Vec<u32> = c.words.iter().map(|w| w.bits()).collect();
    let violation = (0..bits.len()).into_par_iter().find_map_first(|i| {
        bits[i + 1..]
            .iter()
            .position(|&y| table.contains_bits(bits[i] ^ y))
            .map(|k| (c.words[i], c.words[i + 1 + k]))
    });
    let independent = violation.is_none();
    let popcount = c.min_distance().ok();
    let popcount_ok = popcount.is_none_or(|r| r.min_distance >= 5);
    let mut cert = Certificate::from_check(
        "independent_in_gamma",
        violation.map(|(x, y)| json!({"pair": [x, y], "difference": x + y})),
    )
    .metric("words", c.len())
    .metric("routes_agree", independent == popcount_ok);
    if let Some(r) = popcount {
        cert = cert.metric("popcount_min_distance", r.min_distance);
    }
    cert
}

/// Header line of a code file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct CodeHeader {
    pub size: usize,
    pub length: usize,
    pub min_distance: Option<u32>,
    pub witness: Option<(String, String)>,
}

/// Code file text: `# <header JSON>` followed by one word per line in
/// support-set form, in canonical order.
pub fn render_code_file(c: &NonlinearCode) -> Result<String> {
    let report = if c.len() >= 2 {
        Some(c.min_distance()?)
    } else {
        None
    };
    let header = CodeHeader {
        size: c.len(),
        length: c.length(),
        min_distance: report.map(|r| r.min_distance),
        witness: report.map(|r| (r.witness.0.to_string(), r.witness.1.to_string())),
    };
    let mut out = format!("# {}\n", serde_json::to_string(&header)?);
    for w in c.words() {
        out.push_str(&w.to_string());
        out.push('\n');
    }
    Ok(out)
}

/// Parse a code file. The length comes from the header when present,
/// otherwise from `default_length`. Other `#` lines and blank lines are
/// ignored.
pub fn parse_code_file(
    text: &str,
    default_length: usize,
) -> Result<(Option<CodeHeader>, NonlinearCode)> {
    let mut header: Option<CodeHeader> = None;
    let mut length = default_length;
    let mut words = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if header.is_none() && words.is_empty() && comment.starts_with('{') {
                let h: CodeHeader =
                    serde_json::from_str(comment).map_err(|e| Error::ParseLine {
                        line: k + 1,
                        message: format!("bad header: {e}"),
                    })?;
                length = h.length;
                header = Some(h);
            }
            continue;
        }
        words.push(Word::parse(line, length).map_err(|e| Error::ParseLine {
            line: k + 1,
            message: e.to_string(),
        })?);
    }
    let n = words.len();
    let code = NonlinearCode::new(length, words)?;
    if code.len() != n {
        return Err(Error::Parse(format!("{} duplicate words", n - code.len())));
    }
    if let Some(h) = &header {
        if h.size != code.len() {
            return Err(Error::Parse(format!(
                "header size {} but {} words",
                h.size,
                code.len()
            )));
        }
    }
    Ok((header, code))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golay::{build_d, build_m, PaperGenerators};
    use crate::quotient::{build_k, extract_s};

    fn w(s: &[usize]) -> Word {
        Word::from_support(19, s).unwrap()
    }

    fn codes() -> (PaperGenerators, NonlinearCode, NonlinearCode) {
        let g = PaperGenerators::compiled();
        let m = build_m(&g).unwrap();
        let b = build_b(&m, &g.coset_reps()).unwrap();
        let a = build_a(&b, g.r[0], g.r[1]).unwrap();
        (g, b, a)
    }

    #[test]
    fn sizes_and_membership() {
        let (g, b, a) = codes();
        assert_eq!(b.len(), 320);
        assert!(b.contains(g.s5));
        assert!(!b.contains(Word::zero(19).unwrap()));
        assert_eq!(a.len(), 1280);
        let d = build_d(&g).unwrap();
        assert!(a.words().iter().all(|&x| d.contains(x)));
        let k = build_k(&extract_s(&d).unwrap()).unwrap();
        for t in [g.r[0], g.r[1], g.r[0] + g.r[1]] {
            let shifted = b.translate(t).unwrap();
            assert!(shifted.words().iter().all(|&x| !k.contains(x)));
        }
    }

    #[test]
    fn distance_of_a_is_five() {
        let (g, _, a) = codes();
        let r = a.min_distance().unwrap();
        assert_eq!(r.min_distance, 5);
        assert_eq!(r.pairs_checked, 818_560);
        assert_eq!(r.witness.0.distance(r.witness.1).unwrap(), 5);
        let x = g.s[1];
        let y = g.s[2] + g.r[0];
        assert!(a.contains(x) && a.contains(y));
        assert_eq!(x + y, w(&[1, 7, 12, 13, 14]));
        assert_eq!(first_pair_below(&a, 5), None);
        assert!(first_pair_below(&a, 6).is_some());
    }

    #[test]
    fn small_distance_cases() {
        let c = NonlinearCode::new(19, vec![Word::zero(19).unwrap(), w(&[1, 2, 3])]).unwrap();
        assert_eq!(c.min_distance().unwrap().min_distance, 3);
        let one = NonlinearCode::new(19, vec![w(&[1])]).unwrap();
        assert!(matches!(one.min_distance(), Err(Error::TooFewWords(1))));
    }

    #[test]
    fn coincident_cosets_rejected() {
        let g = PaperGenerators::compiled();
        let m = build_m(&g).unwrap();
        assert!(matches!(
            build_b(&m, &[g.s[0], g.s[0] + g.m[2]]),
            Err(Error::CosetCollision(_))
        ));
        let b = build_b(&m, &g.coset_reps()).unwrap();
        assert!(matches!(
            build_a(&b, g.r[0], g.r[0]),
            Err(Error::CosetCollision(_))
        ));
    }

    #[test]
    fn code_file_round_trip() {
        let (_, _, a) = codes();
        let text = render_code_file(&a).unwrap();
        assert_eq!(text.lines().count(), 1281);
        let (h, back) = parse_code_file(&text, 7).unwrap();
        let h = h.unwrap();
        assert_eq!((h.size, h.length, h.min_distance), (1280, 19, Some(5)));
        assert_eq!(back, a);
        assert!(parse_code_file("{1,2}\n{1,2}\n", 19).is_err());
        match parse_code_file("{1,2}\n{3,30}\n", 19) {
            Err(Error::ParseLine { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn gamma_independence() {
        let (g, b, a) = codes();
        let s = extract_s(&build_d(&g).unwrap()).unwrap();
        let cb = verify_independent_in_gamma(&b, &s);
        assert!(cb.passed());
        let ca = verify_independent_in_gamma(&a, &s);
        assert!(ca.passed());
        assert_eq!(ca.metrics["routes_agree"], true);
        let bad = b.with_word(Word::zero(19).unwrap()).unwrap();
        let c = verify_independent_in_gamma(&bad, &s);
        assert!(!c.passed());
        assert_eq!(c.witness.unwrap()["pair"], json!(["{}", "{2,11,14}"]));
        assert_eq!(c.metrics["routes_agree"], true);
    }
}
