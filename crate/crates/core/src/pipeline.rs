//! The full chain of checks, stage by stage, producing one certificate per
//! claim. Stage order follows the data dependencies:
//! golay → table1 → clebsch → cocliques → build-code → check-distance →
//! emit-vectors → verify-config.

use std::path::{Path, PathBuf};

use serde_json::json;

use crate::certificate::Certificate;
use crate::coclique::{enumerate_max_cocliques, is_coclique, max_coclique_exact, CocliqueResult};
use crate::error::{Error, Result};
use crate::gf2::{coset_decompose, LinearCode};
use crate::golay::{self, hex_digest, GolayReport, PaperGenerators, N};
use crate::graph::{verify_srg, BinaryGraph};
use crate::kissing::{self, RationalPoint};
use crate::lift::{self, NonlinearCode};
use crate::quotient::{self, CosetClassification, LowWeightSet, QuotientCoords, SIGMA};
use crate::word::Word;

/// Size of the base configuration the added vectors extend.
pub const BASE_CONFIGURATION_SIZE: usize = 10668;

#[derive(Clone, Debug, Default)]
pub struct PipelineOptions {
    /// Optional base point file, verified together with the added vectors.
    pub base: Option<PathBuf>,
}

/// Certificates in stage order plus the two emitted artifacts.
#[derive(Clone, Debug, Default)]
pub struct Bundle {
    pub certificates: Vec<Certificate>,
    pub code_file: Option<String>,
    pub vectors_file: Option<String>,
}

impl Bundle {
    pub fn all_passed(&self) -> bool {
        !self.certificates.is_empty() && self.certificates.iter().all(Certificate::passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn first_failure(&self) -> Option<&Certificate> {
        self.certificates.iter().find(|c| !c.passed())
    }

    pub fn get(&self, claim_id: &str) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.claim_id == claim_id)
    }

    /// One `<claim_id>.json` per certificate, plus `code_A.txt` and
    /// `vectors.txt` when present.
    pub fn write_json_dir(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        for c in &self.certificates {
            std::fs::write(dir.join(format!("{}.json", c.claim_id)), c.to_json())?;
        }
        if let Some(t) = &self.code_file {
            std::fs::write(dir.join("code_A.txt"), t)?;
        }
        if let Some(t) = &self.vectors_file {
            std::fs::write(dir.join("vectors.txt"), t)?;
        }
        Ok(())
    }
}

/// Quotient data shared by later stages.
#[derive(Clone, Debug)]
pub struct Structure {
    pub d: LinearCode,
    pub m: LinearCode,
    pub s: LowWeightSet,
    pub k: LinearCode,
    pub coords: QuotientCoords,
    pub classification: CosetClassification,
}

pub fn stage_golay(gens: &PaperGenerators) -> Result<(GolayReport, Vec<Certificate>)> {
    golay::verify_golay(gens)
}

/// Low-weight words, `K`, `K/M` coordinates and the coset structure.
pub fn stage_table1(gens: &PaperGenerators) -> Result<(Structure, Vec<Certificate>)> {
    let mut certs = Vec::new();
    let d = golay::build_d(gens)?;
    let m = golay::build_m(gens)?;
    let s = quotient::extract_s(&d)?;
    let spectrum = golay::weight_enumerator(&d)?;

    let mut table: Vec<Word> = quotient::table1_words(N)?.concat();
    table.sort();
    let mut got = s.words().to_vec();
    got.sort();
    let weight3: Vec<Word> = s
        .words()
        .iter()
        .copied()
        .filter(|w| w.weight() == 3)
        .collect();
    let expected3 = Word::from_support(N, &[2, 11, 14])?;
    certs.push(
        Certificate::from_check(
            "prop3.1.1",
            (got != table || weight3 != [expected3] || spectrum.min_nonzero_weight() != Some(3))
                .then(|| {
                    let missing: Vec<_> = table.iter().filter(|w| !got.contains(w)).collect();
                    let extra: Vec<_> = got.iter().filter(|w| !table.contains(w)).collect();
                    json!({"missing": missing, "extra": extra, "weight3": weight3,
                       "min_weight_d": spectrum.min_nonzero_weight()})
                }),
        )
        .metric("low_weight_words", s.len())
        .metric("weight3_words", &weight3)
        .metric("min_weight_d", spectrum.min_nonzero_weight()),
    );

    let k = quotient::build_k(&s)?;
    let mut gens_k0 = m.basis().to_vec();
    gens_k0.extend_from_slice(&gens.s);
    let k0 = LinearCode::span(N, &gens_k0)?;
    let k_equal = k.same_codewords(&k0)?;
    certs.push(
        Certificate::from_check(
            "prop3.1.2",
            (m.dim() != 6 || k.dim() != 10 || !k_equal)
                .then(|| json!({"dim_m": m.dim(), "dim_k": k.dim(), "k_equals_span_m_s": k_equal})),
        )
        .metric("dim_m", m.dim())
        .metric("dim_k", k.dim())
        .metric("size_m", m.size()),
    );

    let displayed: Vec<(Word, Word)> = quotient::M_IDENTITIES
        .iter()
        .map(|[a, b]| Ok((Word::from_support(N, a)?, Word::from_support(N, b)?)))
        .collect::<Result<_>>()?;
    certs.push(quotient::verify_m_in_k(&s, &gens.m, &displayed).with_id("prop3.1.m_in_k"));

    let s5_sum = gens.s[0] + gens.s[1] + gens.s[2] + gens.s[3] + gens.m[3] + gens.m[5];
    let s5_expected = Word::from_support(N, &[3, 5, 7, 10])?;
    certs.push(
        Certificate::from_check(
            "prop3.1.s5_identity",
            (s5_sum != gens.s5 || gens.s5 != s5_expected)
                .then(|| json!({"s1+s2+s3+s4+m4+m6": s5_sum, "s5": gens.s5})),
        )
        .metric("s5", gens.s5),
    );

    let coords = match QuotientCoords::new(&m, gens.s) {
        Ok(c) => c,
        Err(e) => {
            certs.push(Certificate::fail(
                "prop3.1.3",
                json!({"error": e.to_string()}),
            ));
            return Err(e);
        }
    };
    let images: Vec<u8> = gens
        .s
        .iter()
        .map(|&w| coords.coord_of(w))
        .collect::<Result<_>>()?;
    let s5_image = coords.coord_of(gens.s5).ok();
    certs.push(
        Certificate::from_check(
            "prop3.1.3",
            (images != [1, 2, 4, 8] || s5_image != Some(0b1111))
                .then(|| json!({"images": images, "s5_image": s5_image})),
        )
        .metric("quotient_dim", k.dim() - m.dim()),
    );

    let classification = quotient::classify_cosets(&s, &m, &coords)?;
    let table_rows = quotient::table1_words(N)?;
    let rows_match = classification.cells.len() == table_rows.len()
        && classification
            .cells
            .iter()
            .zip(&table_rows)
            .all(|(c, r)| &c.words == r);
    let meets_m = s.words().iter().any(|&w| m.contains(w));
    let sizes = classification.cell_sizes();
    certs.push(
        Certificate::from_check(
            "prop3.1.4",
            (!classification.matches_sigma() || sizes != [5, 4, 4, 4, 4] || !rows_match || meets_m).then(|| {
                json!({"images": classification.cells.iter().map(|c| &c.image_label).collect::<Vec<_>>(),
                       "cell_sizes": sizes, "rows_match_table": rows_match, "s_meets_m": meets_m})
            }),
        )
        .metric("cells", &classification.cells)
        .metric("cell_sizes", &sizes),
    );

    let cosets = coset_decompose(&d, &k, &gens.r)?;
    let sizes: Vec<usize> = cosets.iter().map(|c| c.words.len()).collect();
    let labels: Vec<Vec<usize>> = cosets.iter().map(|c| c.generated_by.clone()).collect();
    let mut sorted_labels = labels.clone();
    sorted_labels.sort();
    certs.push(
        Certificate::from_check(
            "prop3.1.5",
            (sizes != [1024; 4] || sorted_labels != [vec![], vec![0], vec![0, 1], vec![1]])
                .then(|| json!({"coset_sizes": sizes, "labels": labels})),
        )
        .metric("coset_sizes", &sizes)
        .metric(
            "representatives",
            cosets.iter().map(|c| c.representative).collect::<Vec<_>>(),
        ),
    );

    Ok((
        Structure {
            d,
            m,
            s,
            k,
            coords,
            classification,
        },
        certs,
    ))
}

/// The Cayley graph on `K/M` and its relation to `Γ|_K`.
pub fn stage_clebsch(st: &Structure) -> Result<(BinaryGraph, Vec<Certificate>)> {
    let mut certs = Vec::new();
    let q = quotient::build_clebsch(&SIGMA)?;
    let triangle_free = (0..16).all(|u| {
        q.neighbors(u)
            .iter()
            .all(|&v| q.neighbors(v).iter().all(|&w| !q.adjacent(u, w)))
    });
    certs.push(
        verify_srg(&q, (16, 5, 0, 2))
            .with_id("lemma3.2")
            .and_require(triangle_free, json!("triangle found"))
            .metric("triangle_free", triangle_free)
            .metric("edges", q.edge_count()),
    );

    let gamma = quotient::build_gamma_on_k(&st.k, &st.s)?;
    let degrees: Vec<usize> = (0..gamma.n_vertices()).map(|v| gamma.degree(v)).collect();
    let bad = degrees.iter().position(|&d| d != st.s.len());
    certs.push(
        quotient::verify_quotient_map(&gamma, &st.coords, &q)?
            .with_id("lemma3.2.quotient_map")
            .and_require(
                bad.is_none(),
                json!({"vertex": bad, "degree": bad.map(|i| degrees[i])}),
            )
            .metric("gamma_k_degree", st.s.len()),
    );
    Ok((q, certs))
}

/// Exact coclique facts on the Cayley graph.
pub fn stage_cocliques(q: &BinaryGraph) -> Result<(CocliqueResult, Vec<Certificate>)> {
    let mut certs = Vec::new();
    let sigma: Vec<usize> = SIGMA.iter().map(|&x| x as usize).collect();
    let independent = is_coclique(q, &sigma)?;
    let sum_free = SIGMA
        .iter()
        .all(|&a| SIGMA.iter().all(|&b| a == b || !SIGMA.contains(&(a ^ b))));
    certs.push(
        Certificate::from_check(
            "lemma4.1",
            (!independent || !sum_free)
                .then(|| json!({"coclique": independent, "sum_free": sum_free})),
        )
        .metric("members", &sigma),
    );

    let exact = max_coclique_exact(q)?;
    let fives = enumerate_max_cocliques(q, 5)?;
    let sixes = enumerate_max_cocliques(q, 6)?;
    let contains_sigma = fives.contains(&sigma);
    certs.push(
        Certificate::from_check(
            "lemma4.1.maximum",
            (exact.size != 5 || !sixes.is_empty() || !contains_sigma)
                .then(|| json!({"alpha": exact.size, "six_cocliques": sixes.len(), "sigma_listed": contains_sigma})),
        )
        .metric("alpha", exact.size)
        .metric("node_count", exact.node_count)
        .metric("five_cocliques", fives.len())
        .metric("six_cocliques", sixes.len()),
    );
    Ok((exact, certs))
}

/// `B`, `A` and the distance facts about them.
pub fn stage_build_code(
    gens: &PaperGenerators,
    st: &Structure,
) -> Result<((NonlinearCode, NonlinearCode), Vec<Certificate>)> {
    let mut certs = Vec::new();
    let b = lift::build_b(&st.m, &gens.coset_reps())?;
    let a = lift::build_a(&b, gens.r[0], gens.r[1])?;
    let in_d = a.words().iter().all(|&w| st.d.contains(w));
    let b_in_k = b.words().iter().all(|&w| st.k.contains(w));
    let mut coset_keys = Vec::new();
    for t in [Word::zero(N)?, gens.r[0], gens.r[1], gens.r[0] + gens.r[1]] {
        let shifted = b.translate(t)?;
        let keys: Vec<Word> = shifted
            .words()
            .iter()
            .map(|&w| st.k.reduce(w))
            .collect::<Result<_>>()?;
        let first = keys[0];
        coset_keys.push(keys.iter().all(|&k| k == first).then_some(first));
    }
    let mut distinct = coset_keys.clone();
    distinct.sort();
    distinct.dedup();
    let distinct_cosets = coset_keys.iter().all(Option::is_some) && distinct.len() == 4;
    certs.push(
        Certificate::from_check(
            "prop4.2.size",
            (b.len() != 320
                || a.len() != 1280
                || st.m.size() != 64
                || !in_d
                || !b_in_k
                || !distinct_cosets)
                .then(|| {
                    json!({"size_b": b.len(), "size_a": a.len(), "a_in_d": in_d, "b_in_k": b_in_k,
                       "translates_in_distinct_k_cosets": distinct_cosets})
                }),
        )
        .metric("size_m", st.m.size())
        .metric("size_b", b.len())
        .metric("size_a", a.len()),
    );

    let report = a.min_distance()?;
    let gamma = lift::verify_independent_in_gamma(&a, &st.s);
    let gamma_b = lift::verify_independent_in_gamma(&b, &st.s);
    let routes_agree = gamma.metrics.get("routes_agree") == Some(&json!(true));
    let s_in_k = st.s.words().iter().all(|&w| st.k.contains(w));
    certs.push(
        Certificate::from_check(
            "prop4.2.distance",
            (report.min_distance != 5 || !gamma.passed() || !gamma_b.passed() || !routes_agree || !s_in_k).then(|| {
                json!({"min_distance": report.min_distance, "gamma_independent_a": gamma.passed(),
                       "gamma_independent_b": gamma_b.passed(), "routes_agree": routes_agree,
                       "gamma_witness": gamma.witness, "s_in_k": s_in_k})
            }),
        )
        .metric("min_distance", report.min_distance)
        .metric("pairs_checked", report.pairs_checked)
        .metric("first_minimal_pair", [report.witness.0, report.witness.1])
        .metric("routes_agree", routes_agree),
    );

    let x = gens.s[1];
    let y = gens.s[2] + gens.r[0];
    let diff = x + y;
    let expected = Word::from_support(N, &[1, 7, 12, 13, 14])?;
    certs.push(
        Certificate::from_check(
            "prop4.2.witness",
            (!a.contains(x) || !a.contains(y) || diff != expected)
                .then(|| json!({"pair": [x, y], "difference": diff, "in_a": [a.contains(x), a.contains(y)]})),
        )
        .metric("pair", [x, y])
        .metric("difference", diff)
        .metric("distance", diff.weight()),
    );
    Ok(((b, a), certs))
}

/// Re-read a rendered code file and check its minimum distance.
pub fn check_distance(code_text: &str, min: u32) -> Result<Certificate> {
    let (header, code) = lift::parse_code_file(code_text, N)?;
    let report = code.min_distance()?;
    let header_ok = header
        .as_ref()
        .is_none_or(|h| h.min_distance.is_none_or(|d| d == report.min_distance));
    Ok(Certificate::from_check(
        "check_distance",
        (report.min_distance < min || !header_ok)
            .then(|| json!({"min_distance": report.min_distance, "pair": [report.witness.0, report.witness.1],
                            "header_agrees": header_ok})),
    )
    .metric("size", code.len())
    .metric("min_distance", report.min_distance)
    .metric("required", min))
}

/// Digest of a code file's header line, recorded in emitted vector files.
pub fn code_digest(code_text: &str) -> String {
    let header = code_text
        .lines()
        .next()
        .and_then(|l| l.strip_prefix('#'))
        .map(str::trim)
        .unwrap_or("");
    hex_digest(header.as_bytes())
}

/// Verify the added vectors, optionally together with a base configuration.
pub fn verify_config(
    added: &[RationalPoint],
    base: Option<&[RationalPoint]>,
) -> Result<Certificate> {
    let mut all: Vec<RationalPoint> = base.map(|b| b.to_vec()).unwrap_or_default();
    all.extend_from_slice(added);
    let expected = base.map_or(added.len(), |_| BASE_CONFIGURATION_SIZE + added.len());
    let cert = kissing::verify_configuration(&all)?.with_id("thm1.1.count");
    let cert = cert
        .and_require(
            all.len() == expected,
            json!({"count": all.len(), "expected": expected}),
        )
        .metric("added_count", added.len())
        .metric("expected_count", expected);
    Ok(match base {
        Some(b) => cert
            .metric("base_count", b.len())
            .metric("scope", "base plus added vectors"),
        None => cert
            .metric("base_count", 0)
            .metric("scope", "base file absent, verified added vectors only"),
    })
}

fn run_stages(gens: &PaperGenerators, opts: &PipelineOptions, out: &mut Bundle) -> Result<()> {
    let (_, certs) = stage_golay(gens)?;
    out.certificates.extend(certs);

    let (st, certs) = stage_table1(gens)?;
    out.certificates.extend(certs);

    let (q, certs) = stage_clebsch(&st)?;
    out.certificates.extend(certs);

    let (_, certs) = stage_cocliques(&q)?;
    out.certificates.extend(certs);

    let ((_, a), certs) = stage_build_code(gens, &st)?;
    out.certificates.extend(certs);

    let code_text = lift::render_code_file(&a)?;
    out.certificates.push(check_distance(&code_text, 5)?);

    let vectors_text = kissing::emit_vectors(&a, &code_digest(&code_text))?;
    out.code_file = Some(code_text);
    let mut vec_cert = kissing::verify_code_vectors(&a)?.with_id("sec5.code_vectors");
    let added = kissing::ingest_points(&vectors_text)?;
    let expected: Vec<RationalPoint> = a
        .words()
        .iter()
        .map(|&w| kissing::v_of(w).map(|v| v.to_point()))
        .collect::<Result<_>>()?;
    vec_cert = vec_cert
        .and_require(
            added == expected,
            json!("emitted vectors do not re-ingest to v(c)"),
        )
        .metric("round_trip", added == expected);
    out.certificates.push(vec_cert);
    out.vectors_file = Some(vectors_text);

    let base = match &opts.base {
        Some(p) => Some(kissing::ingest_file(p)?),
        None => None,
    };
    out.certificates
        .push(verify_config(&added, base.as_deref())?);
    Ok(())
}

/// Run every stage. Errors do not abort: they become a failing
/// `pipeline.error` certificate naming the cause, and later stages are skipped.
pub fn run_pipeline(gens: &PaperGenerators, opts: &PipelineOptions) -> Bundle {
    let mut out = Bundle::default();
    if let Err(e) = run_stages(gens, opts, &mut out) {
        out.certificates.push(Certificate::fail(
            "pipeline.error",
            json!({"error": e.to_string()}),
        ));
    }
    out
}

/// Run `f` on a pool with `threads` workers (0 = rayon default).
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Threads(e.to_string()))?;
    Ok(pool.install(f))
}
