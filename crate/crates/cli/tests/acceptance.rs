//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the golden JSON/SVG files from the
//! current binary instead of comparing against them.

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use coarray_core::{
    analyze, ies_to_positions, parse_ies, parse_ies_array, round_count, Catalog,
    CoarrayAnalysis, CountIndicator, IesSpec, IesTerm, Indicator64, SensorArray,
};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn arr(p: &[i64]) -> SensorArray {
    SensorArray::new(p.to_vec()).expect("valid array")
}

fn odd_lags_both_signs(max: i64) -> Vec<i64> {
    let mut v: Vec<i64> = (1..=max).step_by(2).flat_map(|m| [-m, m]).collect();
    v.sort();
    v
}

// Naive reference: every ordered difference listed explicitly.
struct Reference {
    dca: Vec<i64>,
    holes: Vec<i64>,
    weights: Vec<u32>,
}

fn reference(p: &[i64]) -> Reference {
    let mut diffs = Vec::new();
    for &x in p {
        for &y in p {
            diffs.push(x - y);
        }
    }
    let a = p.iter().max().unwrap() - p.iter().min().unwrap();
    let weights: Vec<u32> = (-a..=a)
        .map(|m| diffs.iter().filter(|&&d| d == m).count() as u32)
        .collect();
    let dca = (-a..=a).filter(|&m| weights[(m + a) as usize] > 0).collect();
    let holes = (-a..=a).filter(|&m| weights[(m + a) as usize] == 0).collect();
    Reference { dca, holes, weights }
}

fn c1_mra4() -> Outcome {
    let a = analyze(&arr(&[0, 1, 4, 6]));
    ensure(a.hole_free(), || "expected hole-free".into())?;
    let full: Vec<i64> = (-6..=6).collect();
    ensure(a.dca() == full.as_slice(), || format!("DCA {:?}", a.dca()))?;
    Ok(format!("hole_free, DCA = [-6..6] ({} lags)", a.dca().len()))
}

fn c2_holey4() -> Outcome {
    let a = analyze(&arr(&[0, 1, 2, 6]));
    ensure(a.holes() == [-3, 3], || format!("holes {:?}", a.holes()))?;
    Ok("holes = [-3, 3]".into())
}

fn c3_coprime() -> Outcome {
    let a = analyze(&arr(&[0, 2, 3, 4, 6, 9]));
    ensure(a.holes() == [-8, 8], || format!("holes {:?}", a.holes()))?;
    Ok("holes = [-8, 8]".into())
}

fn c4_odnra() -> Outcome {
    let a = analyze(&arr(&[0, 4, 6, 7, 15, 20]));
    ensure(!a.hole_free(), || "expected holes".into())?;
    let positive = a.holes().iter().filter(|&&h| h > 0).count();
    ensure(positive >= 2, || format!("only {positive} positive holes"))?;
    for &m in a.dca() {
        if m != 0 {
            let w = a.weight_function().weight(m);
            ensure(w == 1, || format!("w({m}) = {w}"))?;
        }
    }
    Ok(format!("{positive} positive holes, w(m) = 1 on all nonzero DCA lags"))
}

fn c5_z6() -> Outcome {
    let s = arr(&[-7, -4, 0, 5, 10, 15, 20, 25, 28, 31]);
    let a = analyze(&s);
    let n = s.len();
    ensure(a.aperture() == 38 && a.aperture() == 5 * n - 12, || {
        format!("aperture {}", a.aperture())
    })?;
    Ok("aperture = 38 = 5N - 12".into())
}

fn c6_alt8() -> Outcome {
    let a = analyze(&parse_ies_array("2^7").map_err(|e| e.to_string())?);
    let expected = odd_lags_both_signs(13);
    ensure(a.holes() == expected.as_slice(), || format!("holes {:?}", a.holes()))?;
    let w = a.weight_function();
    ensure(w.weight(1) == 0 && w.weight(3) == 0, || {
        format!("w(1) = {}, w(3) = {}", w.weight(1), w.weight(3))
    })?;
    Ok(format!("{} holes at odd lags, w(1) = w(3) = 0", a.holes().len()))
}

fn c7_augmented() -> Outcome {
    let a = analyze(&parse_ies_array("1,1,2^6").map_err(|e| e.to_string())?);
    ensure(a.hole_free(), || format!("holes {:?}", a.holes()))?;
    Ok("hole_free".into())
}

fn c8_ula() -> Outcome {
    let a = analyze(&parse_ies_array("ones(1,14)").map_err(|e| e.to_string())?);
    ensure(a.hole_free(), || "expected hole-free".into())?;
    for lw in a.weight_function().iter() {
        let expected = 15 - lw.lag.unsigned_abs() as u32;
        ensure(lw.weight == expected, || format!("w({}) = {}", lw.lag, lw.weight))?;
    }
    Ok("hole_free, w(m) = 15 - |m| for |m| <= 14".into())
}

fn random_array(rng: &mut ChaCha8Rng) -> SensorArray {
    let n: usize = rng.random_range(1..=30);
    let aperture: usize = if n == 1 { 0 } else { rng.random_range(n - 1..=200) };
    let mut positions = vec![0i64];
    if n >= 2 {
        positions.push(aperture as i64);
        if n > 2 {
            let interior = sample(rng, aperture - 1, n - 2);
            positions.extend(interior.iter().map(|i| i as i64 + 1));
        }
    }
    let offset: i64 = rng.random_range(-1000..=1000);
    SensorArray::new(positions.into_iter().map(|p| p + offset).collect()).expect("valid")
}

fn coarray_fields(a: &CoarrayAnalysis) -> impl PartialEq {
    (
        a.dca().to_vec(),
        a.holes().to_vec(),
        a.weight_function().clone(),
        a.primary_weights(),
        a.hole_free(),
        a.aperture(),
    )
}

fn c9_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0a7);
    let mut lags_checked = 0usize;
    for case in 0..1000 {
        let s = random_array(&mut rng);
        let ctx = |what: &str| format!("case {case} {:?}: {what}", s.positions());
        let a = analyze(&s);
        let w = a.weight_function();
        let n = s.len() as u32;
        let ap = a.aperture() as i64;

        ensure(w.weight(0) == n, || ctx("w(0) != N"))?;
        ensure(w.total() == u64::from(n * n), || ctx("sum w != N^2"))?;
        for m in 1..=ap {
            ensure(w.weight(m) == w.weight(-m), || ctx(&format!("w({m}) != w(-{m})")))?;
        }

        let c: i64 = rng.random_range(-10_000..=10_000);
        let moved = analyze(&s.translated(c).unwrap());
        ensure(moved.normalized() == a.normalized(), || ctx("translation changed normalized positions"))?;
        ensure(coarray_fields(&moved) == coarray_fields(&a), || ctx("translation changed analysis"))?;
        let mirrored = analyze(&s.mirrored().unwrap());
        ensure(coarray_fields(&mirrored) == coarray_fields(&a), || ctx("mirror changed analysis"))?;

        let exact = CountIndicator::from_array(&s).autocorrelation(a.aperture());
        let fft = Indicator64::from_array(&s).autocorrelation_fft();
        for m in 0..=a.aperture() {
            let pairs = w.weight(m as i64);
            ensure(exact[m] == pairs, || ctx(&format!("direct autocorrelation at {m}")))?;
            ensure(round_count(fft[m]) == pairs, || ctx(&format!("FFT autocorrelation at {m}")))?;
            lags_checked += 1;
        }
        let pw = a.primary_weights().0;
        for (lag, &weight) in (1..).zip(pw.iter()) {
            ensure(weight == w.weight(lag), || ctx("primary weights"))?;
        }
    }
    Ok(format!("1000 arrays, {lags_checked} lags dual-path checked, 0 failures"))
}

fn c10_exhaustive() -> Outcome {
    let start = Instant::now();
    let mut count = 0usize;
    for mask in 0u32..(1 << 12) {
        let n = mask.count_ones() as usize + 1;
        if !(2..=6).contains(&n) {
            continue;
        }
        let mut p = vec![0i64];
        p.extend((1..=12).filter(|i| mask & (1 << (i - 1)) != 0));
        let r = reference(&p);
        let a = analyze(&arr(&p));
        ensure(a.dca() == r.dca.as_slice(), || format!("{p:?}: DCA"))?;
        ensure(a.holes() == r.holes.as_slice(), || format!("{p:?}: holes"))?;
        let w: Vec<u32> = a.weight_function().iter().map(|lw| lw.weight).collect();
        ensure(w == r.weights, || format!("{p:?}: weights"))?;
        count += 1;
    }
    let elapsed = start.elapsed();
    ensure(count == 12 + 66 + 220 + 495 + 792, || format!("enumerated {count} arrays"))?;
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("{count} arrays, 0 mismatches, {:.3} s", elapsed.as_secs_f64()))
}

fn c11_ies_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e5);
    for case in 0..500 {
        let len = rng.random_range(1..=8);
        let terms: Vec<IesTerm> = (0..len)
            .map(|_| IesTerm::new(rng.random_range(1..=9), rng.random_range(1..=12)))
            .collect();
        let spec = IesSpec::new(terms).map_err(|e| e.to_string())?;
        let text = if rng.random_bool(0.5) {
            spec.to_string()
        } else {
            spec.to_ones_notation()
        };
        let parsed = parse_ies(&text).map_err(|e| format!("case {case} '{text}': {e}"))?;
        ensure(parsed == spec, || format!("case {case}: '{text}' parsed differently"))?;
        let array = ies_to_positions(&parsed).map_err(|e| e.to_string())?;
        let back = IesSpec::from_array(&array).ok_or("no gaps")?;
        ensure(back == spec.canonical(), || format!("case {case}: re-derived {back}"))?;
        ensure(array.spacings() == spec.expand(), || format!("case {case}: spacings"))?;
    }
    Ok("500 specs survive render -> parse -> expand -> re-derive".into())
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_coarray"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "coarray {args:?} exited {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(out.stdout)
}

fn c12_determinism() -> Outcome {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let dir = golden_dir();
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let catalog = Catalog::builtin();
    let mut files = 0;
    for entry in catalog.list_entries() {
        let id = entry.id.as_str();
        let mut runs = Vec::new();
        for round in 0..2 {
            let svg_path = tmp.path().join(format!("{id}-{round}.svg"));
            let json = run_cli(&["analyze", "--catalog", id, "--json"])?;
            run_cli(&["analyze", "--catalog", id, "--svg", svg_path.to_str().unwrap()])?;
            let svg = std::fs::read(&svg_path).map_err(|e| e.to_string())?;
            runs.push((json, svg));
        }
        ensure(runs[0] == runs[1], || format!("{id}: repeated runs differ"))?;
        let (json, svg) = &runs[0];
        let json_path = dir.join(format!("{id}.json"));
        let svg_path = dir.join(format!("{id}.svg"));
        if update {
            std::fs::write(&json_path, json).map_err(|e| e.to_string())?;
            std::fs::write(&svg_path, svg).map_err(|e| e.to_string())?;
        }
        let golden_json = std::fs::read(&json_path).map_err(|e| format!("{}: {e}", json_path.display()))?;
        let golden_svg = std::fs::read(&svg_path).map_err(|e| format!("{}: {e}", svg_path.display()))?;
        ensure(*json == golden_json, || format!("{id}: JSON differs from golden"))?;
        ensure(*svg == golden_svg, || format!("{id}: SVG differs from golden"))?;

        let text = String::from_utf8(json.clone()).map_err(|e| e.to_string())?;
        let parsed = CoarrayAnalysis::from_json(&text).map_err(|e| format!("{id}: {e}"))?;
        ensure(parsed == entry.analyze(), || format!("{id}: JSON does not round-trip"))?;
        files += 2;
    }
    Ok(format!("{files} golden files byte-identical across runs"))
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("1. [0,1,4,6] hole-free, DCA = -6..6", c1_mra4),
        ("2. [0,1,2,6] holes = {-3, 3}", c2_holey4),
        ("3. [0,2,3,4,6,9] holes = {-8, 8}", c3_coprime),
        ("4. [0,4,6,7,15,20] holes, nonredundant", c4_odnra),
        ("5. z6 aperture = 38 = 5N - 12", c5_z6),
        ("6. {2^7} odd-lag holes, w(1) = w(3) = 0", c6_alt8),
        ("7. {1,1,2^6} hole-free", c7_augmented),
        ("8. ones(1,14) hole-free, w(m) = 15 - |m|", c8_ula),
        ("9. 1000 random arrays: symmetry, mass, invariances, dual path", c9_properties),
        ("10. exhaustive oracle over subsets of 0..12", c10_exhaustive),
        ("11. 500 IES specs round trip", c11_ies_round_trip),
        ("12. CLI JSON/SVG determinism vs golden files", c12_determinism),
    ];

    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}  ({detail})"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}  ({why})");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
