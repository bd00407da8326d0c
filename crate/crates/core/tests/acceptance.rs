// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Reference data below is transcribed directly from the source text
// and checked with brute-force oracles that do not use the library's linear
// algebra.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use kissing19::coclique::{enumerate_max_cocliques, is_coclique, max_coclique_exact};
use kissing19::golay::{self, PaperGenerators, SLOT_COUNT};
use kissing19::kissing;
use kissing19::lift;
use kissing19::pipeline::{self, run_pipeline, PipelineOptions};
use kissing19::quotient::{self, SIGMA};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const M: [&[u32]; 6] = [
    &[1, 8, 9, 12, 16, 17, 18, 19],
    &[2, 10, 11, 14, 15, 17, 18],
    &[3, 7, 9, 13, 15, 16, 17, 19],
    &[4, 7, 8, 10, 12, 15, 16, 19],
    &[5, 10, 12, 13, 15, 16, 17, 18],
    &[6, 7, 8, 9, 10, 13, 16, 18],
];
const S: [&[u32]; 4] = [
    &[1, 4, 7, 9],
    &[1, 5, 6, 18],
    &[1, 3, 12, 15],
    &[1, 10, 13, 19],
];
const R: [&[u32]; 2] = [
    &[1, 3, 5, 6, 7, 13, 14, 15, 18],
    &[2, 4, 6, 7, 8, 13, 14, 16, 17, 18],
];
const S5: &[u32] = &[3, 5, 7, 10];
const P: [&str; 12] = [
    "00000", "00001", "00000", "00000", "00000", "00000", "11110", "01111", "10111", "11011",
    "10101", "00110",
];
const TABLE: [&[&[u32]]; 5] = [
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
const M_SUMS: [(&[u32], &[u32]); 6] = [
    (&[1, 8, 16, 17], &[9, 12, 18, 19]),
    (&[2, 11, 14], &[10, 15, 17, 18]),
    (&[3, 9, 13, 17], &[7, 15, 16, 19]),
    (&[4, 8, 10, 12], &[7, 15, 16, 19]),
    (&[5, 12, 13, 16], &[10, 15, 17, 18]),
    (&[6, 9, 10, 16], &[7, 8, 13, 18]),
];

fn bits(support: &[u32]) -> u32 {
    support.iter().fold(0, |acc, &i| acc | 1 << (i - 1))
}

fn g_rows() -> Vec<u32> {
    M.iter().chain(&S).chain(&R).map(|s| bits(s)).collect()
}

fn extended_rows() -> Vec<u32> {
    g_rows()
        .iter()
        .zip(P)
        .map(|(&g, p)| {
            p.bytes().enumerate().fold(
                g,
                |acc, (j, b)| if b == b'1' { acc | 1 << (19 + j) } else { acc },
            )
        })
        .collect()
}

fn span(rows: &[u32]) -> Vec<u32> {
    (0u32..1 << rows.len())
        .map(|c| {
            (0..rows.len())
                .filter(|&i| c >> i & 1 == 1)
                .fold(0, |acc, i| acc ^ rows[i])
        })
        .collect()
}

fn rank(rows: &[u32]) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for &r in rows {
        let mut x = r;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1_golay() -> Outcome {
    let g = g_rows();
    let gt = extended_rows();
    ensure(rank(&g) == 12 && rank(&gt) == 12, "rank")?;
    for (i, a) in gt.iter().enumerate() {
        for b in &gt[i..] {
            ensure(
                (a & b).count_ones() % 2 == 0,
                format!("rows {a:x} {b:x} not orthogonal"),
            )?;
        }
    }
    let words = span(&gt);
    let mut spectrum = BTreeMap::new();
    for w in &words {
        *spectrum.entry(w.count_ones()).or_insert(0u64) += 1;
    }
    let expected = BTreeMap::from([(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)]);
    ensure(
        spectrum == expected,
        format!("oracle spectrum {spectrum:?}"),
    )?;
    ensure(
        words.iter().all(|w| w.count_ones() % 4 == 0),
        "weight not 0 mod 4",
    )?;

    let gens = PaperGenerators::compiled();
    let (report, certs) = golay::verify_golay(&gens).map_err(|e| e.to_string())?;
    ensure(
        certs.iter().all(|c| c.passed()),
        "library certificate failed",
    )?;
    ensure(
        report.spectrum == expected && report.min_weight == Some(8),
        "library spectrum",
    )?;
    ensure(
        report.rank == 12 && report.rank_extended == 12 && report.self_dual && report.doubly_even,
        "library report",
    )?;
    Ok("rank 12/12, self-orthogonal, spectrum {0:1,8:759,12:2576,16:759,24:1}".into())
}

fn c2_puncture() -> Outcome {
    let punctured: BTreeSet<u32> = span(&extended_rows())
        .iter()
        .map(|w| w & ((1 << 19) - 1))
        .collect();
    let d: BTreeSet<u32> = span(&g_rows()).into_iter().collect();
    ensure(
        punctured.len() == 4096 && d.len() == 4096 && punctured == d,
        "oracle sets differ",
    )?;
    let gens = PaperGenerators::compiled();
    let dt = golay::build_d_tilde(&gens).map_err(|e| e.to_string())?;
    let lib = golay::puncture(&dt, &golay::PUNCTURED).map_err(|e| e.to_string())?;
    let lib_d = golay::build_d(&gens).map_err(|e| e.to_string())?;
    ensure(
        lib.same_codewords(&lib_d).map_err(|e| e.to_string())?,
        "library sets differ",
    )?;
    Ok("4096 = 4096, equal as sets".into())
}

fn c3_low_weight() -> Outcome {
    let d = span(&g_rows());
    let low: BTreeSet<u32> = d
        .iter()
        .copied()
        .filter(|w| matches!(w.count_ones(), 3 | 4))
        .collect();
    let table: BTreeSet<u32> = TABLE
        .iter()
        .flat_map(|r| r.iter().map(|s| bits(s)))
        .collect();
    ensure(
        low.len() == 21 && low == table,
        format!("{} low-weight words", low.len()),
    )?;
    let w3: Vec<u32> = low
        .iter()
        .copied()
        .filter(|w| w.count_ones() == 3)
        .collect();
    ensure(w3 == [bits(&[2, 11, 14])], "weight-3 words")?;
    let min = d.iter().filter(|&&w| w != 0).map(|w| w.count_ones()).min();
    ensure(min == Some(3), "min weight of D")?;

    let gens = PaperGenerators::compiled();
    let s = quotient::extract_s(&golay::build_d(&gens).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let lib: BTreeSet<u32> = s.words().iter().map(|w| w.bits()).collect();
    ensure(lib == table, "library S differs")?;
    Ok("21 words equal to the table, one weight-3 word {2,11,14}, d(D) = 3".into())
}

fn c4_structure() -> Outcome {
    let m: Vec<u32> = M.iter().map(|s| bits(s)).collect();
    let s: Vec<u32> = S.iter().map(|s| bits(s)).collect();
    let low: Vec<u32> = TABLE
        .iter()
        .flat_map(|r| r.iter().map(|x| bits(x)))
        .collect();
    ensure(rank(&m) == 6, "dim M")?;
    ensure(rank(&low) == 10, "dim K")?;
    for (i, (a, b)) in M_SUMS.iter().enumerate() {
        ensure(
            bits(a) ^ bits(b) == m[i],
            format!("identity for m{}", i + 1),
        )?;
    }
    ensure(
        s[0] ^ s[1] ^ s[2] ^ s[3] ^ m[3] ^ m[5] == bits(S5),
        "s5 identity",
    )?;
    // Coordinates on K/M: the coefficient of s_i when a word is written in M ∪ {s_1..s_4}.
    let kwords = span(&[m.clone(), s.clone()].concat());
    let image = |w: u32| -> Option<u32> {
        (0u32..1024)
            .find(|&c| kwords[c as usize] == w)
            .map(|c| c >> 6)
    };
    for (row, expected) in TABLE.iter().zip(SIGMA) {
        for x in row.iter() {
            ensure(
                image(bits(x)) == Some(expected as u32),
                format!("image of {x:?}"),
            )?;
        }
    }
    let k: BTreeSet<u32> = kwords.iter().copied().collect();
    let r = [bits(R[0]), bits(R[1])];
    let mut cosets: BTreeMap<u32, usize> = BTreeMap::new();
    for w in span(&g_rows()) {
        let label = [0, r[0], r[1], r[0] ^ r[1]]
            .into_iter()
            .position(|t| k.contains(&(w ^ t)));
        *cosets
            .entry(label.ok_or("word in no K-coset")? as u32)
            .or_default() += 1;
    }
    ensure(
        cosets.values().copied().collect::<Vec<_>>() == [1024; 4],
        format!("{cosets:?}"),
    )?;

    let (_, certs) =
        pipeline::stage_table1(&PaperGenerators::compiled()).map_err(|e| e.to_string())?;
    if let Some(c) = certs.iter().find(|c| !c.passed()) {
        return Err(format!("{c}"));
    }
    Ok("dim M = 6, dim K = 10, six identities, s5 identity, images = Sigma, 4 x 1024".into())
}

fn c5_clebsch() -> Outcome {
    let adj = |u: usize, v: usize| SIGMA.contains(&((u ^ v) as u8));
    for u in 0..16 {
        ensure((0..16).filter(|&v| adj(u, v)).count() == 5, "degree")?;
        for v in 0..16 {
            if u == v {
                continue;
            }
            let common = (0..16).filter(|&w| adj(u, w) && adj(v, w)).count();
            ensure(
                common == if adj(u, v) { 0 } else { 2 },
                format!("pair {u},{v}"),
            )?;
        }
    }
    let q = quotient::build_clebsch(&SIGMA).map_err(|e| e.to_string())?;
    ensure(
        (0..16).all(|u| (0..16).all(|v| q.adjacent(u, v) == adj(u, v))),
        "library graph differs",
    )?;
    let (st, _) =
        pipeline::stage_table1(&PaperGenerators::compiled()).map_err(|e| e.to_string())?;
    let (_, certs) = pipeline::stage_clebsch(&st).map_err(|e| e.to_string())?;
    if let Some(c) = certs.iter().find(|c| !c.passed()) {
        return Err(format!("{c}"));
    }
    let edges = certs[1]
        .metrics
        .get("gamma_k_edges")
        .cloned()
        .unwrap_or_default();
    Ok(format!(
        "srg(16,5,0,2), triangle-free, homomorphism over {edges} edges of Gamma|K"
    ))
}

fn c6_coclique() -> Outcome {
    let q = quotient::build_clebsch(&SIGMA).map_err(|e| e.to_string())?;
    let sigma: Vec<usize> = SIGMA.iter().map(|&x| x as usize).collect();
    ensure(
        is_coclique(&q, &sigma).map_err(|e| e.to_string())?,
        "Sigma not a coclique",
    )?;
    let exact = max_coclique_exact(&q).map_err(|e| e.to_string())?;
    let masks: Vec<u32> = (0..16)
        .map(|u| {
            (0..16)
                .filter(|&v| q.adjacent(u, v))
                .fold(0, |a, v| a | 1 << v)
        })
        .collect();
    let brute = (0u32..1 << 16)
        .filter(|&set| (0..16).all(|u| set >> u & 1 == 0 || masks[u] & set == 0))
        .map(u32::count_ones)
        .max();
    ensure(
        exact.size == 5 && brute == Some(5),
        format!("exact {} brute {brute:?}", exact.size),
    )?;
    ensure(
        enumerate_max_cocliques(&q, 6)
            .map_err(|e| e.to_string())?
            .is_empty(),
        "6-coclique found",
    )?;
    Ok("alpha = 5 (exact and 2^16 brute force), no 6-coclique".into())
}

fn built_code() -> Result<lift::NonlinearCode, String> {
    let gens = PaperGenerators::compiled();
    let m = golay::build_m(&gens).map_err(|e| e.to_string())?;
    let b = lift::build_b(&m, &gens.coset_reps()).map_err(|e| e.to_string())?;
    lift::build_a(&b, gens.r[0], gens.r[1]).map_err(|e| e.to_string())
}

fn c7_code() -> Outcome {
    let m = span(&M.iter().map(|s| bits(s)).collect::<Vec<_>>());
    let reps: Vec<u32> = S.iter().map(|s| bits(s)).chain([bits(S5)]).collect();
    let b: BTreeSet<u32> = reps
        .iter()
        .flat_map(|&r| m.iter().map(move |&x| x ^ r))
        .collect();
    let r = [bits(R[0]), bits(R[1])];
    let a: BTreeSet<u32> = [0, r[0], r[1], r[0] ^ r[1]]
        .iter()
        .flat_map(|&t| b.iter().map(move |&x| x ^ t))
        .collect();
    let d: BTreeSet<u32> = span(&g_rows()).into_iter().collect();
    ensure(
        b.len() == 320 && a.len() == 1280 && a.is_subset(&d),
        "oracle sizes",
    )?;
    let av: Vec<u32> = a.iter().copied().collect();
    let mut pairs = 0u64;
    let mut min = u32::MAX;
    for i in 0..av.len() {
        for j in i + 1..av.len() {
            pairs += 1;
            min = min.min((av[i] ^ av[j]).count_ones());
        }
    }
    ensure(
        pairs == 818_560 && min == 5,
        format!("oracle d = {min} over {pairs}"),
    )?;
    let (x, y) = (bits(S[1]), bits(S[2]) ^ r[0]);
    ensure(
        a.contains(&x) && a.contains(&y) && x ^ y == bits(&[1, 7, 12, 13, 14]),
        "witness",
    )?;

    let lib = built_code()?;
    let lib_set: BTreeSet<u32> = lib.words().iter().map(|w| w.bits()).collect();
    ensure(lib_set == a, "library code differs")?;
    let report = lib.min_distance().map_err(|e| e.to_string())?;
    ensure(
        report.min_distance == 5 && report.pairs_checked == 818_560,
        "library distance",
    )?;
    let gens = PaperGenerators::compiled();
    let s = quotient::extract_s(&golay::build_d(&gens).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let routes = lift::verify_independent_in_gamma(&lib, &s);
    ensure(
        routes.passed() && routes.metrics.get("routes_agree") == Some(&true.into()),
        "routes disagree",
    )?;
    Ok("|B| = 320, |A| = 1280, A in D, d = 5 over 818560 pairs, witness {1,7,12,13,14}".into())
}

fn c8_vectors() -> Outcome {
    let a = built_code()?;
    // Oracle: <v(c), v(c')> = (8/19)(19 - 2d), so cos = (19 - 2d)/19.
    let ws: Vec<u32> = a.words().iter().map(|w| w.bits()).collect();
    let max_dot = ws
        .iter()
        .enumerate()
        .flat_map(|(i, &x)| {
            ws[i + 1..]
                .iter()
                .map(move |&y| 19 - 2 * (x ^ y).count_ones() as i64)
        })
        .max();
    ensure(
        max_dot == Some(9),
        format!("oracle max cosine {max_dot:?}/19"),
    )?;

    let cert = kissing::verify_code_vectors(&a).map_err(|e| e.to_string())?;
    ensure(
        cert.passed() && cert.metrics.get("max_cosine") == Some(&"9/19".into()),
        format!("{cert}"),
    )?;
    let text = lift::render_code_file(&a).map_err(|e| e.to_string())?;
    let vectors =
        kissing::emit_vectors(&a, &pipeline::code_digest(&text)).map_err(|e| e.to_string())?;
    let points = kissing::ingest_points(&vectors).map_err(|e| e.to_string())?;
    let direct: Vec<_> = a
        .words()
        .iter()
        .map(|&w| kissing::v_of(w).map(|v| v.to_point()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(points == direct, "emit -> ingest is not the identity")?;

    match std::env::var_os("KISSING19_BASE") {
        Some(path) => {
            let base = kissing::ingest_file(Path::new(&path)).map_err(|e| e.to_string())?;
            let c = pipeline::verify_config(&points, Some(&base)).map_err(|e| e.to_string())?;
            ensure(
                c.passed() && c.metrics.get("count") == Some(&11948.into()),
                format!("{c}"),
            )?;
            Ok("max cosine 9/19, round trip exact, base + added = 11948 verified".into())
        }
        None => {
            let c = pipeline::verify_config(&points, None).map_err(|e| e.to_string())?;
            ensure(c.passed(), format!("{c}"))?;
            Ok("max cosine 9/19, round trip exact; base file absent (KISSING19_BASE unset), 1280-only certificate".into())
        }
    }
}

fn c9_fault_injection() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0019);
    let pristine = PaperGenerators::compiled();
    let mut caught = Vec::new();
    for _ in 0..20 {
        let slot = rng.gen_range(0..SLOT_COUNT);
        let len = pristine.slot(slot).ok_or("bad slot")?.len();
        let coord = rng.gen_range(1..=len);
        let mut g = pristine.clone();
        g.flip(slot, coord).map_err(|e| e.to_string())?;
        let bundle = run_pipeline(&g, &PipelineOptions::default());
        let first = bundle
            .certificates
            .iter()
            .find(|c| !c.passed() && c.claim_id != "golden.checksum")
            .ok_or_else(|| {
                format!(
                    "flip {}[{coord}] not caught",
                    PaperGenerators::slot_name(slot)
                )
            })?;
        caught.push(format!(
            "{}[{coord}]->{}",
            PaperGenerators::slot_name(slot),
            first.claim_id
        ));
    }
    Ok(format!(
        "20/20 flips caught, e.g. {}",
        caught[..3].join(", ")
    ))
}

fn c10_determinism() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_kissing19");
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get().max(2));
    let mut dirs = Vec::new();
    for (k, t) in [1, threads].into_iter().enumerate() {
        let dir = tmp.path().join(format!("run{k}"));
        let status = Command::new(exe)
            .args(["run", "--all", "--threads", &t.to_string(), "--json"])
            .arg(&dir)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(
            status.status.success(),
            format!("run at {t} threads exited {:?}", status.status.code()),
        )?;
        dirs.push(dir);
    }
    let read = |d: &Path| -> Result<BTreeMap<String, Vec<u8>>, String> {
        let mut out = BTreeMap::new();
        for e in std::fs::read_dir(d).map_err(|e| e.to_string())? {
            let e = e.map_err(|e| e.to_string())?;
            out.insert(
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read(e.path()).map_err(|e| e.to_string())?,
            );
        }
        Ok(out)
    };
    let (a, b) = (read(&dirs[0])?, read(&dirs[1])?);
    ensure(a == b, "outputs differ between thread counts")?;
    Ok(format!(
        "{} files byte-identical at 1 and {threads} threads",
        a.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("golay", c1_golay, Duration::from_secs(1)),
        ("puncture", c2_puncture, Duration::from_secs(1)),
        ("low-weight", c3_low_weight, Duration::from_secs(1)),
        ("structure", c4_structure, Duration::from_secs(1)),
        ("clebsch", c5_clebsch, Duration::from_secs(1)),
        ("coclique", c6_coclique, Duration::from_secs(5)),
        ("code", c7_code, Duration::from_secs(1)),
        ("vectors", c8_vectors, Duration::from_secs(5)),
        (
            "fault-injection",
            c9_fault_injection,
            Duration::from_secs(30),
        ),
        ("determinism", c10_determinism, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed <= limit {
                Ok(msg)
            } else {
                Err(format!("took {elapsed:?}, limit {limit:?}"))
            }
        });
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name:<16} {:>8.1?}  {msg}", i + 1, elapsed),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name:<16} {:>8.1?}  {msg}", i + 1, elapsed);
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
