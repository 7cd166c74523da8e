//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Run with `cargo test -p augms --test acceptance`.

use std::panic::{self, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use augms::bench::{self, mode_for};
use augms::io::{self, Section};
use augms::oracle::{OracleSuite, MAX_THRESHOLD_TEXT};
use augms::synth;
use augms::{
    compute_ms, compute_ms_verified, BuildContext, Error, LceBackendKind, LceEncoding, LceSide,
    MatchingStatistics, Mode, MsCursor, MsEntry, MsIndex, QueryStats, Text, ThresholdStorage,
    TieBreak, Variant,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SWEEP_TEXTS: usize = 500;
const SWEEP_PATTERNS: usize = 20;
const SWEEP_MIN_N: f64 = 50.0;
const SWEEP_MAX_N: f64 = 10_000.0;
const SWEEP_ALPHABETS: [usize; 3] = [2, 4, 20];
const LETTERS: &[u8] = b"ACGTDEFHIKLMNPQRSVWY";

const PAN_SEED_LEN: usize = 50_000;
const PAN_COPIES: usize = 16;
const PAN_DIVERGENCE: f64 = 0.001;
const PAN_PATTERNS: usize = 100;
const PAN_PATTERN_LEN: usize = 500;
const PAN_PATTERN_MUTATION: f64 = 0.01;
/// Share of patterns on which an augmented variant must issue strictly fewer
/// LCE queries than the baseline.
const SKIP_PATTERN_SHARE: f64 = 0.95;

const ROUNDTRIPS: usize = 100;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("correctness sweep", correctness_sweep),
        ("variant equivalence", variant_equivalence),
        ("threshold validity", threshold_validity),
        ("skip effectiveness", skip_effectiveness),
        ("size ordering", size_ordering),
        ("serialization", serialization),
        ("skip scenario", skip_scenario),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let verdict = if result.pass { "PASS" } else { "FAIL" };
        println!(
            "{verdict} {name}: {} ({:.1}s)",
            result.detail,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!result.pass);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

struct Instance {
    seed: u64,
    ctx: BuildContext,
    patterns: Vec<Vec<u8>>,
}

fn sweep_instance(k: usize) -> Instance {
    let seed = 1_000 + k as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = (SWEEP_MIN_N.ln() + rng.gen::<f64>() * (SWEEP_MAX_N / SWEEP_MIN_N).ln())
        .exp()
        .round() as usize;
    let alphabet = &LETTERS[..SWEEP_ALPHABETS[k % SWEEP_ALPHABETS.len()]];
    let body = if k % 2 == 0 {
        synth::random_sequence(&mut rng, n, alphabet)
    } else {
        // repetitive: mutated copies of a shorter seed
        let copies = rng.gen_range(2..=8);
        let rate = rng.gen_range(0.0..0.05);
        let mut body = synth::pangenome(&mut rng, n.div_ceil(copies), copies, rate, alphabet).concat();
        body.truncate(n.max(2));
        body
    };
    let mut patterns = Vec::with_capacity(SWEEP_PATTERNS);
    for p in 0..SWEEP_PATTERNS {
        let len = rng.gen_range(5..=60);
        if p < SWEEP_PATTERNS / 2 {
            let mut pat = synth::random_sequence(&mut rng, len, alphabet);
            if p == 0 {
                // one symbol the text never contains
                let at = rng.gen_range(0..len);
                pat[at] = b'Z';
            }
            patterns.push(pat);
        } else {
            let rate = rng.gen_range(0.01..=0.05);
            patterns.extend(synth::sample_patterns(&mut rng, &body, 1, len, rate, alphabet));
        }
    }
    Instance {
        seed,
        ctx: BuildContext::new(Text::from_sequence(&body).unwrap(), TieBreak::default()),
        patterns,
    }
}

/// Runs `f` over every sweep instance on all cores and collects failures.
fn over_sweep<F>(f: F) -> Vec<String>
where
    F: Fn(&Instance) -> Vec<String> + Sync,
{
    let next = AtomicUsize::new(0);
    let failures = Mutex::new(Vec::new());
    let threads = std::thread::available_parallelism().map_or(4, |t| t.get());
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= SWEEP_TEXTS {
                    break;
                }
                let found = f(&sweep_instance(k));
                failures.lock().unwrap().extend(found);
            });
        }
    });
    let mut out = failures.into_inner().unwrap();
    out.sort();
    out
}

fn summarize(failures: &[String], ok: String) -> Outcome {
    match failures.first() {
        None => outcome(true, ok),
        Some(first) => outcome(false, format!("{} failures, first: {first}", failures.len())),
    }
}

fn configurations() -> Vec<(Variant, LceBackendKind, Mode)> {
    let mut out = Vec::new();
    for backend in LceBackendKind::ALL {
        for variant in Variant::ALL {
            for mode in [Mode::Baseline, Mode::Augmented] {
                out.push((variant, backend, mode));
            }
        }
    }
    out
}

fn correctness_sweep() -> Outcome {
    let configs = configurations();
    let failures = over_sweep(|inst| {
        let oracle = OracleSuite::new(inst.ctx.text().as_bytes());
        let mut found = Vec::new();
        for (b, &(variant, backend, mode)) in configs.iter().enumerate() {
            // alternate storage per variant; the two backends get opposite choices
            let storage = if (b / 2) % 2 == 0 {
                ThresholdStorage::Array
            } else {
                ThresholdStorage::SigmaBv
            };
            let index = inst.ctx.index(variant, backend, storage);
            for (p, pat) in inst.patterns.iter().enumerate() {
                let mut stats = QueryStats::default();
                let result = if mode == Mode::Augmented && backend == LceBackendKind::Naive {
                    compute_ms_verified(&index, pat, mode, &mut stats)
                } else {
                    compute_ms(&index, pat, mode, &mut stats)
                };
                let check = result
                    .map_err(|e| e.to_string())
                    .and_then(|ms| oracle.check_ms(pat, &ms));
                if let Err(e) = check {
                    found.push(format!(
                        "seed {} pattern {p} {variant}/{backend}/{}: {e}",
                        inst.seed,
                        mode.name()
                    ));
                }
            }
        }
        found
    });
    summarize(
        &failures,
        format!(
            "{SWEEP_TEXTS} texts x {SWEEP_PATTERNS} patterns x {} configurations agree with the brute-force oracle",
            configs.len()
        ),
    )
}

fn variant_equivalence() -> Outcome {
    let failures = over_sweep(|inst| {
        let mut found = Vec::new();
        for backend in LceBackendKind::ALL {
            let outputs: Vec<Vec<MatchingStatistics>> = Variant::ALL
                .iter()
                .map(|&v| {
                    let index = inst.ctx.index(v, backend, ThresholdStorage::Array);
                    bench::query_all(&index, &inst.patterns, mode_for(v)).unwrap().0
                })
                .collect();
            for (v, out) in Variant::ALL.iter().zip(&outputs).skip(1) {
                if *out != outputs[0] {
                    found.push(format!("seed {} {v}/{backend} differs from phoni", inst.seed));
                }
            }
        }
        found
    });
    summarize(
        &failures,
        format!("all 7 variants identical on {SWEEP_TEXTS} texts, both LCE backends"),
    )
}

fn threshold_validity() -> Outcome {
    let checked = AtomicUsize::new(0);
    let failures = over_sweep(|inst| {
        let text = inst.ctx.text();
        if text.len() > MAX_THRESHOLD_TEXT {
            return Vec::new();
        }
        checked.fetch_add(1, Ordering::Relaxed);
        let oracle = OracleSuite::new(text.as_bytes());
        let raw = inst.ctx.raw_thresholds();
        let mut found = Vec::new();
        if let Err(v) = oracle.check_thresholds(raw.entries()) {
            found.push(format!("seed {}: {v}", inst.seed));
        }
        // encoded values never disagree with the raw ones, and the full
        // encoding always knows them
        let full = Variant::Augmented(LceEncoding::Full);
        for variant in Variant::ALL {
            for storage in [ThresholdStorage::Array, ThresholdStorage::SigmaBv] {
                let index = inst.ctx.index(variant, LceBackendKind::Naive, storage);
                for (x, entry) in raw.entries().iter().enumerate() {
                    if index.thresholds().get(index.rlbwt(), x) != entry.map(|a| a.threshold) {
                        found.push(format!("seed {} {variant}/{storage}: threshold of run {x}", inst.seed));
                    }
                    let Some(a) = entry else { continue };
                    for (side, want) in [(LceSide::E, a.lce_e), (LceSide::S, a.lce_s)] {
                        // sides that can never be consulted hold no meaningful value
                        let Some(want) = want else { continue };
                        let got = index.threshold_lce(x, side).unwrap();
                        if got.is_some_and(|g| g != want) || (variant == full && got.is_none()) {
                            found.push(format!(
                                "seed {} {variant}: run {x} side {side:?} stored {got:?} raw {want:?}",
                                inst.seed
                            ));
                        }
                    }
                }
            }
        }
        found
    });
    let checked = checked.load(Ordering::Relaxed);
    summarize(
        &failures,
        format!("{checked} texts with n <= {MAX_THRESHOLD_TEXT} pass the exhaustive gap check"),
    )
}

struct Pangenome {
    ctx: BuildContext,
    patterns: Vec<Vec<u8>>,
}

fn pangenome() -> &'static Pangenome {
    static CELL: std::sync::OnceLock<Pangenome> = std::sync::OnceLock::new();
    CELL.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let copies = synth::pangenome(&mut rng, PAN_SEED_LEN, PAN_COPIES, PAN_DIVERGENCE, synth::DNA);
        let body = copies.concat();
        let patterns = synth::sample_patterns(
            &mut rng,
            &body,
            PAN_PATTERNS,
            PAN_PATTERN_LEN,
            PAN_PATTERN_MUTATION,
            synth::DNA,
        );
        Pangenome {
            ctx: BuildContext::new(Text::from_sequence(&body).unwrap(), TieBreak::default()),
            patterns,
        }
    })
}

fn per_pattern_stats(index: &MsIndex, patterns: &[Vec<u8>], mode: Mode) -> (Vec<QueryStats>, Vec<MatchingStatistics>) {
    patterns
        .iter()
        .map(|p| {
            let mut s = QueryStats::default();
            let ms = compute_ms(index, p, mode, &mut s).unwrap();
            (s, ms)
        })
        .unzip()
}

fn skip_effectiveness() -> Outcome {
    let pan = pangenome();
    let backend = LceBackendKind::Naive;
    let phoni = pan.ctx.index(Variant::Phoni, backend, ThresholdStorage::Array);
    let (base_stats, base_ms) = per_pattern_stats(&phoni, &pan.patterns, Mode::Baseline);
    let mut rows = vec![bench::bench_index(&phoni, &pan.patterns, 1).unwrap()];
    let mut pass = true;
    let mut notes = Vec::new();
    for variant in &Variant::ALL[1..] {
        let index = pan.ctx.index(*variant, backend, ThresholdStorage::Array);
        let (stats, ms) = per_pattern_stats(&index, &pan.patterns, Mode::Augmented);
        let skips: u64 = stats.iter().map(|s| s.lce_skips).sum();
        let fewer = stats
            .iter()
            .zip(&base_stats)
            .filter(|(a, b)| a.lce_calls < b.lce_calls)
            .count();
        let share = fewer as f64 / pan.patterns.len() as f64;
        let row = bench::bench_index(&index, &pan.patterns, 1).unwrap();
        let ok = skips > 0 && share >= SKIP_PATTERN_SHARE && ms == base_ms;
        pass &= ok;
        notes.push(format!("{variant} skip {} fewer {:.0}%", row.skip_fraction, share * 100.0));
        rows.push(row);
    }
    let csv_path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("skip_effectiveness.csv");
    bench::write_csv(&rows, std::fs::File::create(&csv_path).unwrap()).unwrap();
    outcome(
        pass,
        format!(
            "n = {}, r = {}, phoni lce calls {}; {}; csv {}",
            phoni.len(),
            phoni.runs(),
            base_stats.iter().map(|s| s.lce_calls).sum::<u64>(),
            notes.join(", "),
            csv_path.display()
        ),
    )
}

fn size_ordering() -> Outcome {
    let pan = pangenome();
    let mut pass = true;
    let mut lines = Vec::new();
    for backend in LceBackendKind::ALL {
        for storage in [ThresholdStorage::Array, ThresholdStorage::SigmaBv] {
            let reports: Vec<_> = Variant::ALL
                .iter()
                .map(|&v| (v, io::size_report(&pan.ctx.index(v, backend, storage))))
                .collect();
            let phoni = reports[0].1.total;
            let full = reports[1].1.total;
            for (v, rep) in &reports {
                let ok = match v {
                    Variant::Phoni => true,
                    Variant::Augmented(LceEncoding::Full) => phoni < rep.total,
                    Variant::Augmented(_) => phoni < rep.total && rep.total <= full,
                };
                pass &= ok;
                let sections: Vec<String> = Section::ALL
                    .iter()
                    .map(|&s| format!("{s}={}", rep.section(s)))
                    .collect();
                lines.push(format!(
                    "    {}{v}/{backend}/{storage}: {} bytes ({})",
                    if ok { "" } else { "VIOLATION " },
                    rep.total,
                    sections.join(" ")
                ));
            }
        }
    }
    outcome(
        pass,
        format!("phoni < augmented, compact encodings <= full\n{}", lines.join("\n")),
    )
}

fn serialization() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    for k in 0..ROUNDTRIPS {
        let n = rng.gen_range(20..4_000);
        let alphabet = &LETTERS[..*SWEEP_ALPHABETS.choose(&mut rng).unwrap()];
        let body = synth::random_sequence(&mut rng, n, alphabet);
        let patterns = synth::sample_patterns(&mut rng, &body, 10, 40, 0.03, alphabet);
        let variant = *Variant::ALL.choose(&mut rng).unwrap();
        let backend = *LceBackendKind::ALL.choose(&mut rng).unwrap();
        let storage = *[ThresholdStorage::Array, ThresholdStorage::SigmaBv].choose(&mut rng).unwrap();
        let ctx = BuildContext::new(Text::from_sequence(&body).unwrap(), TieBreak::default());
        let index = ctx.index(variant, backend, storage);
        let path = dir.path().join(format!("{k}.idx"));
        let report = io::save(&index, &path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        let tag = format!("round-trip {k} {variant}/{backend}/{storage}");
        if report.total != bytes.len() {
            failures.push(format!("{tag}: reported {} bytes, wrote {}", report.total, bytes.len()));
        }
        let loaded = match io::load(&path) {
            Ok(l) => l,
            Err(e) => {
                failures.push(format!("{tag}: {e}"));
                continue;
            }
        };
        for mode in [Mode::Baseline, Mode::Augmented] {
            if bench::query_all(&index, &patterns, mode).unwrap() != bench::query_all(&loaded, &patterns, mode).unwrap() {
                failures.push(format!("{tag}: query output changed"));
            }
        }

        let cut = rng.gen_range(0..bytes.len());
        if io::from_bytes(&bytes[..cut]).is_ok() {
            failures.push(format!("{tag}: truncation at {cut} accepted"));
        }
        let mut flipped = bytes.clone();
        let at = rng.gen_range(report.header..bytes.len());
        flipped[at] ^= 1 << rng.gen_range(0..8);
        if !matches!(io::from_bytes(&flipped), Err(Error::ChecksumMismatch(_) | Error::Malformed(_) | Error::Truncated)) {
            failures.push(format!("{tag}: flipped byte {at} not detected"));
        }
        let mut magic = bytes.clone();
        magic[rng.gen_range(0..8)] ^= 0x20;
        if !matches!(io::from_bytes(&magic), Err(Error::BadMagic)) {
            failures.push(format!("{tag}: bad magic not reported"));
        }
    }
    summarize(
        &failures,
        format!("{ROUNDTRIPS} save/load round-trips identical; truncation, flipped byte and bad magic all rejected"),
    )
}

// Suffix neighbourhood of the scenario: (preceding symbol, suffix prefix).
const SCENARIO_ROWS: [(u8, &[u8]); 10] = [
    (b'A', b"GAGACATCA"),
    (b'A', b"GATACATTA"),
    (b'C', b"GATAGATTA"),
    (b'G', b"GATATAGAA"),
    (b'G', b"GATCCAATA"),
    (b'G', b"GATTACATA"),
    (b'T', b"GATTACTTA"),
    (b'T', b"GATTAGATA"),
    (b'A', b"GATTATCAT"),
    (b'A', b"GATTATGAA"),
];
const SCENARIO_E1: usize = 1;
const SCENARIO_J: usize = 3;
const SCENARIO_T: usize = 5;
const SCENARIO_S2: usize = 8;

/// Each row's suffix prefix is embedded once, preceded by its BWT symbol
/// and followed by a separator. Separators keep the inner "GATTA" and "GATA"
/// occurrences out of the gap: 'X' sorts after every "GATTAT", 'B' before
/// every "GATAC".
fn scenario_text() -> (Vec<u8>, Vec<usize>) {
    let mut body = Vec::new();
    let mut starts = Vec::new();
    for &(c, s) in &SCENARIO_ROWS {
        body.push(c);
        starts.push(body.len());
        body.extend_from_slice(s);
        body.push(if s == b"GATTAGATA" { b'B' } else { b'X' });
    }
    (body, starts)
}

fn skip_scenario() -> Outcome {
    let (body, starts) = scenario_text();
    let ctx = BuildContext::new(Text::from_sequence(&body).unwrap(), TieBreak::Rightmost);
    let isa = &ctx.bundle().isa;
    let rows: Vec<usize> = starts.iter().map(|&p| isa[p]).collect();
    // the inner "GATA" sorts just above e1, so only the gap itself is contiguous
    if rows[SCENARIO_E1..].windows(2).any(|w| w[1] != w[0] + 1) {
        return outcome(false, format!("rows {rows:?} are not contiguous"));
    }
    let (e1, j, t, s2) = (rows[SCENARIO_E1], rows[SCENARIO_J], rows[SCENARIO_T], rows[SCENARIO_S2]);
    let rlbwt = ctx.rlbwt();
    let x = rlbwt.run_of_position(s2).unwrap();
    let a = ctx.raw_thresholds().get(x).copied().unwrap();
    let mut notes = vec![format!(
        "gap ({}, {}) threshold {} lce_e {:?} lce_s {:?}",
        a.e1, a.s2, a.threshold, a.lce_e, a.lce_s
    )];
    let mut pass = (a.e1, a.threshold, a.s2) == (e1, t, s2) && a.lce_e == Some(3) && a.lce_s == Some(5);

    let sa = &ctx.bundle().sa;
    for variant in &Variant::ALL[1..] {
        let index = ctx.index(*variant, LceBackendKind::Naive, ThresholdStorage::Array);
        // current match "GA" at row j, next symbol 'A'
        let entry = MsEntry {
            pos: Some(sa[j]),
            len: 2,
        };
        let step = |mode| {
            let mut stats = QueryStats::default();
            let mut cur = MsCursor::with_state(&index, mode, j, entry).unwrap().verify_skips(true);
            (cur.push(b'A', &mut stats).unwrap(), stats)
        };
        let (aug, aug_stats) = step(Mode::Augmented);
        let (base, base_stats) = step(Mode::Baseline);
        let ok = aug.len == 3
            && aug == base
            && aug_stats.lce_skips == 1
            && aug_stats.lce_calls == 0
            && base_stats.lce_calls == 1;
        pass &= ok;
        if !ok {
            notes.push(format!("{variant}: augmented {aug:?} {aug_stats:?}, baseline {base:?} {base_stats:?}"));
        }
    }

    // Whole patterns cannot reach this state: a length-1 match at a row
    // between "ATATAGAA" and "ATCCAATA" would need an LCE-0 jump onto the
    // first or last 'A'-preceded suffix starting with 'T', and the scenario's
    // own "TACATTA" and "TTATGAA" bound those. The search below confirms it
    // and, should the text ever change, checks any pattern it finds.
    let index = ctx.index(Variant::Augmented(LceEncoding::Full), LceBackendKind::Naive, ThresholdStorage::Array);
    match find_scenario_query(&index, e1, t) {
        (Some(p), _) => {
            let mut s1 = QueryStats::default();
            let mut s2s = QueryStats::default();
            let aug = compute_ms(&index, &p, Mode::Augmented, &mut s1).unwrap();
            let base = compute_ms(&index, &p, Mode::Baseline, &mut s2s).unwrap();
            pass &= aug == base && s1.lce_skips > 0;
            notes.push(format!(
                "pattern {} skips {} LCE queries, output matches baseline: {}",
                String::from_utf8_lossy(&p),
                s1.lce_skips,
                aug == base
            ));
        }
        (None, states) => notes.push(format!(
            "step from row {j} with match \"GA\" into 'A' skips its LCE query and matches baseline; \
             no whole pattern reaches that state ({states} cursor states searched)"
        )),
    }
    outcome(pass, notes.join("; "))
}

/// Shortest pattern over the text alphabet whose matching steps from a row
/// strictly between `e1` and `t` with a length-2 match into 'A' and skips
/// that LCE. Breadth-first over cursor states, so the pattern is built from
/// its last symbol backwards; also returns the number of states visited.
fn find_scenario_query(index: &MsIndex, e1: usize, t: usize) -> (Option<Vec<u8>>, usize) {
    use std::collections::{HashSet, VecDeque};
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([(MsCursor::new(index, Mode::Augmented), Vec::new())]);
    while let Some((cur, suffix)) = queue.pop_front() {
        for &c in index.alphabet() {
            let mut next = cur.clone();
            let mut stats = QueryStats::default();
            let before = cur.current();
            next.push(c, &mut stats).unwrap();
            let mut pattern = vec![c];
            pattern.extend_from_slice(&suffix);
            if c == b'A' && before.len == 2 && cur.row() > e1 && cur.row() < t && stats.lce_skips == 1 {
                return (Some(pattern), seen.len());
            }
            if seen.insert((next.row(), next.current())) {
                queue.push_back((next, pattern));
            }
        }
    }
    (None, seen.len())
}
