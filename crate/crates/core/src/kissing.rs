//! Kissing vectors `v(c) = √(8/19)·((-1)^{c_1}, …, (-1)^{c_19})` and exact
//! verification of point configurations.
//!
//! Points are stored as `√σ · u` with `σ` and every entry of `u` rational, so
//! sign vectors with an irrational scale and rational base points live in the
//! same exact representation. No floating point is used anywhere here.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::json;

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::lift::NonlinearCode;
use crate::word::Word;

/// Ambient dimension.
pub const DIM: usize = 19;

/// Squared scale `8/19` applied to sign vectors.
pub fn sign_scale_sq() -> BigRational {
    BigRational::new(8.into(), 19.into())
}

/// `±1` vector attached to a codeword, before scaling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignVector {
    pub signs: Vec<i8>,
    pub provenance: Word,
}

impl SignVector {
    /// Unscaled inner product `Σ signs_i · other_i`.
    pub fn dot(&self, other: &SignVector) -> i64 {
        self.signs
            .iter()
            .zip(&other.signs)
            .map(|(&a, &b)| (a * b) as i64)
            .sum()
    }

    /// Squared norm with the `8/19` scale applied; always `8`.
    pub fn norm_sq(&self) -> BigRational {
        sign_scale_sq() * BigRational::from_integer(self.signs.len().into())
    }

    pub fn to_point(&self) -> RationalPoint {
        RationalPoint {
            coords: self
                .signs
                .iter()
                .map(|&s| BigRational::from_integer(s.into()))
                .collect(),
            scale_sq: sign_scale_sq(),
        }
    }
}

pub fn v_of(c: Word) -> Result<SignVector> {
    if c.len() != DIM {
        return Err(Error::Dimension {
            expected: DIM,
            got: c.len(),
        });
    }
    let signs = (1..=DIM)
        .map(|i| if c.contains(i) { -1 } else { 1 })
        .collect();
    Ok(SignVector {
        signs,
        provenance: c,
    })
}

/// `⟨v(a), v(b)⟩ / 8 = (19 − 2d) / 19`, from the Hamming distance of the
/// source codewords.
pub fn pair_cosine(a: &SignVector, b: &SignVector) -> Result<Ratio<i64>> {
    let d = a.provenance.distance(b.provenance)? as i64;
    let n = a.signs.len() as i64;
    Ok(Ratio::new(n - 2 * d, n))
}

/// Every pair of `v(c)`, `c ∈ A`, is at angle at least 60°.
///
/// The direct sign dot product and the distance formula are both evaluated
/// for every pair and must agree.
pub fn verify_code_vectors(a: &NonlinearCode) -> Result<Certificate> {
    if a.length() != DIM {
        return Err(Error::Dimension {
            expected: DIM,
            got: a.length(),
        });
    }
    let vectors: Vec<SignVector> = a.words().iter().map(|&w| v_of(w)).collect::<Result<_>>()?;
    let n = vectors.len();

    #[derive(Clone, Copy)]
    struct Row {
        max_dot: i64,
        max_at: (usize, usize),
        violation: Option<(usize, usize)>,
        mismatch: Option<(usize, usize)>,
    }
    let empty = Row {
        max_dot: i64::MIN,
        max_at: (0, 0),
        violation: None,
        mismatch: None,
    };
    let rows: Vec<Row> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut r = empty;
            let vi = &vectors[i];
            for (j, vj) in vectors.iter().enumerate().skip(i + 1) {
                let dot = vi.dot(vj);
                let d = (vi.provenance.bits() ^ vj.provenance.bits()).count_ones() as i64;
                if dot != DIM as i64 - 2 * d && r.mismatch.is_none() {
                    r.mismatch = Some((i, j));
                }
                if dot > r.max_dot {
                    r.max_dot = dot;
                    r.max_at = (i, j);
                }
                // cos = dot/19 ≤ 1/2
                if 2 * dot > DIM as i64 && r.violation.is_none() {
                    r.violation = Some((i, j));
                }
            }
            r
        })
        .collect();
    let first = |f: fn(&Row) -> Option<(usize, usize)>| rows.iter().find_map(f);
    let violation = first(|r| r.violation);
    let mismatch = first(|r| r.mismatch);
    let best = rows.iter().fold(
        empty,
        |acc, r| if r.max_dot > acc.max_dot { *r } else { acc },
    );

    let pair_json = |(i, j): (usize, usize)| {
        let cos = pair_cosine(&vectors[i], &vectors[j]).expect("equal lengths");
        json!({"pair": [vectors[i].provenance, vectors[j].provenance], "cosine": cos.to_string()})
    };
    let witness = match (violation, mismatch) {
        (None, None) => None,
        (v, m) => Some(json!({
            "angle_violation": v.map(pair_json),
            "dot_formula_mismatch": m.map(pair_json),
        })),
    };
    let mut cert = Certificate::from_check("code_vectors", witness)
        .metric("count", n)
        .metric("norm_sq", "8")
        .metric("pairs_checked", n * n.saturating_sub(1) / 2);
    if n >= 2 {
        cert = cert
            .metric(
                "max_cosine",
                Ratio::new(best.max_dot, DIM as i64).to_string(),
            )
            .metric("max_cosine_pair", pair_json(best.max_at)["pair"].clone());
    }
    Ok(cert)
}

/// A point `√scale_sq · coords` with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoint {
    pub coords: Vec<BigRational>,
    pub scale_sq: BigRational,
}

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Self {
            coords,
            scale_sq: BigRational::one(),
        }
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Self::new(
            coords
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn norm_sq(&self) -> BigRational {
        let s: BigRational = self.coords.iter().map(|c| c * c).sum();
        s * &self.scale_sq
    }
}

fn parse_rational(token: &str) -> std::result::Result<BigRational, String> {
    let (p, q) = match token.split_once('/') {
        Some((p, q)) => (p, q),
        None => (token, "1"),
    };
    let p: BigInt = p
        .parse()
        .map_err(|_| format!("bad numerator in `{token}`"))?;
    let q: BigInt = q
        .parse()
        .map_err(|_| format!("bad denominator in `{token}`"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in `{token}`"));
    }
    Ok(BigRational::new(p, q))
}

/// Parse a point file: one point per line, `DIM` tokens `p` or `p/q`.
/// `#` starts a comment line; `# scale sqrt(p/q)` sets the squared scale for
/// the points that follow. Blank lines are skipped.
pub fn ingest_points(text: &str) -> Result<Vec<RationalPoint>> {
    let mut scale_sq = BigRational::one();
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(rest) = comment.trim().strip_prefix("scale ") {
                let rest = rest.trim();
                let inner = rest
                    .strip_prefix("sqrt(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::ParseLine {
                        line: line_no,
                        message: format!("scale must read `sqrt(p/q)`, got `{rest}`"),
                    })?;
                scale_sq = parse_rational(inner.trim()).map_err(|message| Error::ParseLine {
                    line: line_no,
                    message,
                })?;
                if !scale_sq.is_positive() {
                    return Err(Error::ParseLine {
                        line: line_no,
                        message: "scale must be positive".into(),
                    });
                }
            }
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != DIM {
            return Err(Error::ParseLine {
                line: line_no,
                message: format!("expected {DIM} coordinates, found {}", tokens.len()),
            });
        }
        let coords = tokens
            .iter()
            .map(|t| parse_rational(t))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|message| Error::ParseLine {
                line: line_no,
                message,
            })?;
        out.push(RationalPoint {
            coords,
            scale_sq: scale_sq.clone(),
        });
    }
    Ok(out)
}

pub fn ingest_file(path: &Path) -> Result<Vec<RationalPoint>> {
    let mut text = String::new();
    std::fs::File::open(path)?.read_to_string(&mut text)?;
    ingest_points(&text)
}

/// Point file for `v(c)`, `c ∈ A`: signs as `1`/`-1` after a header naming
/// the scale and the source digest.
pub fn emit_vectors(a: &NonlinearCode, source_digest: &str) -> Result<String> {
    let mut out = String::new();
    out.push_str("# kissing vectors v(c) = sqrt(8/19) * ((-1)^c_1, ..., (-1)^c_19)\n");
    out.push_str(&format!("# source sha256:{source_digest}\n"));
    out.push_str(&format!("# count {}\n", a.len()));
    out.push_str("# scale sqrt(8/19)\n");
    for &w in a.words() {
        let v = v_of(w)?;
        let line: Vec<&str> = v
            .signs
            .iter()
            .map(|&s| if s > 0 { "1" } else { "-1" })
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    Ok(out)
}

/// An exact cosine `± √square`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCosine {
    pub negative: bool,
    pub square: BigRational,
}

impl ExactCosine {
    fn signed_key(&self) -> (bool, BigRational) {
        (
            !self.negative,
            if self.negative {
                -self.square.clone()
            } else {
                self.square.clone()
            },
        )
    }

    /// `Some(q)` when the cosine is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        let p = self.square.numer().sqrt();
        let q = self.square.denom().sqrt();
        (&p * &p == *self.square.numer() && &q * &q == *self.square.denom()).then(|| {
            let r = BigRational::new(p, q);
            if self.negative {
                -r
            } else {
                r
            }
        })
    }
}

impl Ord for ExactCosine {
    fn cmp(&self, other: &Self) -> Ordering {
        self.signed_key().cmp(&other.signed_key())
    }
}

impl PartialOrd for ExactCosine {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExactCosine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{r}"),
            None => write!(
                f,
                "{}sqrt({})",
                if self.negative { "-" } else { "" },
                self.square
            ),
        }
    }
}

struct Normalized {
    ints: Vec<Vec<i128>>,
    class: Vec<usize>,
    scales: Vec<BigRational>,
}

/// Rewrite each point as `√σ' · w` with `w` integral.
fn normalize(points: &[RationalPoint]) -> Result<Normalized> {
    let mut classes: BTreeMap<BigRational, usize> = BTreeMap::new();
    let mut ints = Vec::with_capacity(points.len());
    let mut class_of = Vec::with_capacity(points.len());
    for (idx, p) in points.iter().enumerate() {
        let l = p
            .coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let row = p
            .coords
            .iter()
            .map(|c| {
                (c.numer() * (&l / c.denom()))
                    .to_i128()
                    .filter(|v| v.unsigned_abs() < 1 << 40)
                    .ok_or_else(|| {
                        Error::Parse(format!("point {idx}: coordinate too large for exact scan"))
                    })
            })
            .collect::<Result<Vec<i128>>>()?;
        let scale = &p.scale_sq / BigRational::from_integer(&l * &l);
        let next = classes.len();
        class_of.push(*classes.entry(scale).or_insert(next));
        ints.push(row);
    }
    let mut scales = vec![BigRational::zero(); classes.len()];
    for (s, i) in classes {
        scales[i] = s;
    }
    Ok(Normalized {
        ints,
        class: class_of,
        scales,
    })
}

/// Equal norms and pairwise inner products at most half the common squared
/// norm, in exact arithmetic. Reports the count, the largest cosine and the
/// first violating pair by index.
pub fn verify_configuration(points: &[RationalPoint]) -> Result<Certificate> {
    let id = "configuration";
    let n = points.len();
    if n == 0 {
        return Ok(Certificate::fail(id, json!("no points")).metric("count", 0));
    }
    if let Some((i, p)) = points
        .iter()
        .enumerate()
        .find(|(_, p)| p.coords.len() != points[0].coords.len())
    {
        return Ok(
            Certificate::fail(id, json!({"point": i, "dimension": p.coords.len()}))
                .metric("count", n),
        );
    }
    let norm = points[0].norm_sq();
    if norm.is_zero() {
        return Ok(
            Certificate::fail(id, json!({"point": 0, "reason": "zero vector"})).metric("count", n),
        );
    }
    if let Some(i) = (1..n).find(|&i| points[i].norm_sq() != norm) {
        return Ok(Certificate::fail(
            id,
            json!({"point": i, "norm_sq": points[i].norm_sq().to_string(), "expected": norm.to_string()}),
        )
        .metric("count", n));
    }

    let nz = normalize(points)?;
    let c = nz.scales.len();
    // positive dot t passes iff σ_a σ_b t² ≤ N²/4
    let quarter_norm_sq = &norm * &norm / BigRational::from_integer(4.into());
    let mut t_max = vec![0i128; c * c];
    for a in 0..c {
        for b in 0..c {
            let bound = &quarter_norm_sq / (&nz.scales[a] * &nz.scales[b]);
            let floor = bound.numer().div_floor(bound.denom());
            t_max[a * c + b] = floor.sqrt().to_i128().unwrap_or(i128::MAX);
        }
    }

    struct Row {
        max_dot: Vec<Option<(i128, usize, usize)>>,
        violation: Option<(usize, usize, i128)>,
    }
    let rows: Vec<Row> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut r = Row {
                max_dot: vec![None; c * c],
                violation: None,
            };
            let xi = &nz.ints[i];
            let ci = nz.class[i];
            for j in i + 1..n {
                let dot: i128 = xi.iter().zip(&nz.ints[j]).map(|(a, b)| a * b).sum();
                let key = ci * c + nz.class[j];
                if r.max_dot[key].is_none_or(|(m, _, _)| dot > m) {
                    r.max_dot[key] = Some((dot, i, j));
                }
                if dot > t_max[key] && r.violation.is_none() {
                    r.violation = Some((i, j, dot));
                }
            }
            r
        })
        .collect();

    let cosine = |dot: i128, a: usize, b: usize| ExactCosine {
        negative: dot < 0,
        square: BigRational::from_integer(BigInt::from(dot) * BigInt::from(dot))
            * &nz.scales[a]
            * &nz.scales[b]
            / (&norm * &norm),
    };
    let mut best: Option<(ExactCosine, usize, usize)> = None;
    for r in &rows {
        for (key, m) in r.max_dot.iter().enumerate() {
            if let Some((dot, i, j)) = *m {
                let cos = cosine(dot, key / c, key % c);
                if best
                    .as_ref()
                    .is_none_or(|(b, bi, bj)| cos > *b || (cos == *b && (i, j) < (*bi, *bj)))
                {
                    best = Some((cos, i, j));
                }
            }
        }
    }
    let violation = rows.iter().find_map(|r| r.violation).map(|(i, j, dot)| {
        json!({"pair": [i, j], "cosine": cosine(dot, nz.class[i], nz.class[j]).to_string()})
    });
    let mut cert = Certificate::from_check(id, violation)
        .metric("count", n)
        .metric("norm_sq", norm.to_string())
        .metric("scale_classes", c);
    if let Some((cos, i, j)) = best {
        cert = cert
            .metric("max_cosine", cos.to_string())
            .metric("max_cosine_pair", [i, j]);
    }
    Ok(cert)
}
