//! Acceptance gate for the toolkit. Each test checks one release criterion
//! end to end and prints a single summary line with the measured evidence;
//! `cargo test --test acceptance` therefore emits one pass/fail line per
//! criterion.

// 0.3183 is a pinned key parameter, not 1/pi; the direct transforms below
// intentionally mirror summation indices.
#![allow(clippy::approx_constant, clippy::needless_range_loop)]

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::time::Instant;

use chaosmark::attack::{attack_gaussian, attack_jpeg, attack_rotation, attack_zeroing};
use chaosmark::chaos::mix_watermark;
use chaosmark::pnm::{load_pbm, load_pgm};
use chaosmark::rng::splitmix64;
use chaosmark::{
    embed, extract, psnr, similarity, Anchor, EmbedConfig, EmbedMode, GrayImage, SecretKey,
    Watermark,
};

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn bundled_carrier() -> GrayImage {
    load_pgm(repo_root().join("assets/carrier.pgm")).unwrap()
}

fn bundled_logo() -> Watermark {
    load_pbm(repo_root().join("assets/logo.pbm")).unwrap()
}

fn demo_key(authenticated: bool) -> SecretKey {
    SecretKey::new(3.99, 0.3183, 100, 24576, authenticated).unwrap()
}

/// Grid keys used wherever a criterion averages over several keys.
fn fixture_keys(authenticated: bool) -> Vec<SecretKey> {
    [
        (3.99, 0.3183),
        (3.993, 0.1123),
        (3.996, 0.5571),
        (3.999, 0.8228),
        (4.0, 0.41),
    ]
    .into_iter()
    .map(|(mu, u0)| SecretKey::new(mu, u0, 100, 24576, authenticated).unwrap())
    .collect()
}

fn random_image(state: &mut u64, width: u32, height: u32) -> GrayImage {
    let pixels = (0..width as usize * height as usize)
        .map(|_| (splitmix64(state) >> 56) as u8)
        .collect();
    GrayImage::new(width, height, pixels).unwrap()
}

fn random_watermark(state: &mut u64, width: u32, height: u32) -> Watermark {
    let bits = (0..width as usize * height as usize)
        .map(|_| splitmix64(state) & 1 == 1)
        .collect();
    Watermark::new(width, height, bits).unwrap()
}

fn random_key(state: &mut u64, authenticated: bool) -> SecretKey {
    loop {
        let mu = 3.58 + 0.42 * ((splitmix64(state) >> 11) as f64 / (1u64 << 53) as f64);
        let u0 = (splitmix64(state) >> 11) as f64 / (1u64 << 53) as f64;
        let burn_in = (splitmix64(state) % 64) as u32;
        let mix_iters = 256 + (splitmix64(state) % 1024) as u32;
        if let Ok(key) = SecretKey::new(mu, u0, burn_in, mix_iters, authenticated) {
            return key;
        }
    }
}

fn extract_similarity(attacked: &GrayImage, key: &SecretKey, reference: &Watermark) -> f64 {
    let recovered = extract(
        attacked,
        key,
        &EmbedConfig::default(),
        (reference.width(), reference.height()),
        None,
    )
    .unwrap();
    similarity(&recovered, reference).unwrap().percentage()
}

#[test]
fn round_trip_is_exact_for_random_triples() {
    let start = Instant::now();
    let mut state = 0x5EED_0001u64;
    for trial in 0..100 {
        let carrier = random_image(&mut state, 64, 64);
        let watermark = random_watermark(&mut state, 16, 16);
        for authenticated in [false, true] {
            let key = random_key(&mut state, authenticated);
            let config = EmbedConfig::default();
            let marked = embed(&carrier, &watermark, &key, &config).unwrap();
            let recovered = extract(&marked, &key, &config, (16, 16), None).unwrap();
            assert_eq!(
                recovered, watermark,
                "trial {trial} authenticated={authenticated} did not round-trip"
            );
            let pct = similarity(&recovered, &watermark).unwrap().percentage();
            assert_eq!(pct, 100.0);
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "[PASS] substitute round trip: 100 random triples x 2 modes all at 100.00% in {:.2}s",
        elapsed.as_secs_f64()
    );
}

#[test]
fn negate_embedding_twice_restores_random_carriers() {
    let mut state = 0x5EED_0002u64;
    for trial in 0..50 {
        let carrier = random_image(&mut state, 32, 32);
        let watermark = random_watermark(&mut state, 16, 16);
        let key = random_key(&mut state, trial % 2 == 1);
        let config = EmbedConfig {
            mode: EmbedMode::Negate,
            ..EmbedConfig::default()
        };
        let once = embed(&carrier, &watermark, &key, &config).unwrap();
        assert_ne!(once, carrier, "trial {trial} flipped nothing");
        let twice = embed(&once, &watermark, &key, &config).unwrap();
        assert_eq!(twice, carrier, "trial {trial} is not an involution");
    }
    println!("[PASS] negate involution: 50 random carriers restored byte-identically");
}

#[test]
fn mixing_is_an_involution_for_every_short_strategy() {
    let mut strategies: Vec<Vec<u32>> = vec![vec![]];
    for s1 in 1..=8u32 {
        strategies.push(vec![s1]);
        for s2 in 1..=8u32 {
            strategies.push(vec![s1, s2]);
            for s3 in 1..=8u32 {
                strategies.push(vec![s1, s2, s3]);
            }
        }
    }
    let mut checks = 0usize;
    for value in 0..=255u8 {
        let bits: Vec<bool> = (0..8).map(|i| value >> i & 1 == 1).collect();
        let watermark = Watermark::new(8, 1, bits).unwrap();
        for strategy in &strategies {
            let mixed = mix_watermark(&watermark, strategy).unwrap();
            let unmixed = mix_watermark(&mixed, strategy).unwrap();
            assert_eq!(unmixed, watermark, "value {value} strategy {strategy:?}");
            checks += 1;
        }
    }
    assert_eq!(checks, 256 * 585);
    println!("[PASS] mixing involution: {checks} vector/strategy combinations verified");
}

#[test]
fn embedding_stays_imperceptible_on_the_bundled_carrier() {
    let carrier = bundled_carrier();
    let key = demo_key(false);
    let mut state = 0x5EED_0004u64;
    let mut worst = f64::INFINITY;
    for _ in 0..20 {
        let watermark = random_watermark(&mut state, 64, 64);
        let marked = embed(&carrier, &watermark, &key, &EmbedConfig::default()).unwrap();
        let db = psnr(&carrier, &marked).unwrap();
        assert!(db >= 37.0, "psnr {db:.2} dB below 37 dB");
        worst = worst.min(db);
    }
    println!("[PASS] imperceptibility: 20 random watermarks, worst PSNR {worst:.2} dB >= 37 dB");
}

#[test]
fn unauthenticated_extraction_survives_zeroing() {
    let carrier = bundled_carrier();
    let logo = bundled_logo();
    let key = demo_key(false);
    let marked = embed(&carrier, &logo, &key, &EmbedConfig::default()).unwrap();

    let small = attack_zeroing(&marked, 10, Anchor::Center).unwrap();
    let side10 = extract_similarity(&small, &key, &logo);
    assert!(side10 >= 95.0, "side 10 similarity {side10:.2}%");

    let large = attack_zeroing(&marked, 100, Anchor::Center).unwrap();
    let side100 = extract_similarity(&large, &key, &logo);
    assert!(side100 >= 85.0, "side 100 similarity {side100:.2}%");

    println!(
        "[PASS] zeroing robustness: side 10 at {side10:.2}% >= 95%, side 100 at {side100:.2}% >= 85%"
    );
}

#[test]
fn authenticated_extraction_collapses_under_the_strongest_attacks() {
    let carrier = bundled_carrier();
    let logo = bundled_logo();
    let key = demo_key(true);
    let marked = embed(&carrier, &logo, &key, &EmbedConfig::default()).unwrap();

    let attacked = [
        (
            "zeroing 100",
            attack_zeroing(&marked, 100, Anchor::Center).unwrap(),
        ),
        ("rotation 25", attack_rotation(&marked, 25.0)),
        ("jpeg 10", attack_jpeg(&marked, 10.0).unwrap()),
        ("gaussian 3", attack_gaussian(&marked, 3.0, 42).unwrap()),
    ];
    let mut report = Vec::new();
    for (label, image) in &attacked {
        let pct = extract_similarity(image, &key, &logo);
        assert!(
            (40.0..=60.0).contains(&pct),
            "{label}: {pct:.2}% outside [40, 60]%"
        );
        report.push(format!("{label} at {pct:.2}%"));
    }
    println!(
        "[PASS] authentication bands: {} all within [40, 60]%",
        report.join(", ")
    );
}

#[test]
fn unauthenticated_similarity_degrades_monotonically() {
    let carrier = bundled_carrier();
    let logo = bundled_logo();
    let keys = fixture_keys(false);
    type AttackFn = Box<dyn Fn(&GrayImage, f64) -> GrayImage>;
    let families: [(&str, AttackFn, [f64; 3]); 4] = [
        (
            "zeroing",
            Box::new(|img, p| attack_zeroing(img, p as u32, Anchor::Center).unwrap()),
            [10.0, 50.0, 100.0],
        ),
        ("rotation", Box::new(attack_rotation), [5.0, 10.0, 25.0]),
        (
            "jpeg",
            Box::new(|img, p| attack_jpeg(img, p).unwrap()),
            [2.0, 5.0, 10.0],
        ),
        (
            "gaussian",
            Box::new(|img, p| attack_gaussian(img, p, 42).unwrap()),
            [1.0, 2.0, 3.0],
        ),
    ];

    let mut report = Vec::new();
    for (name, apply, params) in &families {
        let mut averages = [0.0f64; 3];
        for key in &keys {
            let marked = embed(&carrier, &logo, key, &EmbedConfig::default()).unwrap();
            for (slot, &param) in params.iter().enumerate() {
                averages[slot] += extract_similarity(&apply(&marked, param), key, &logo);
            }
        }
        for avg in &mut averages {
            *avg /= keys.len() as f64;
        }
        assert!(
            averages[0] >= averages[1] && averages[1] >= averages[2],
            "{name}: {averages:?} is not non-increasing"
        );
        report.push(format!(
            "{name} {:.2} >= {:.2} >= {:.2}",
            averages[0], averages[1], averages[2]
        ));
    }
    println!(
        "[PASS] unauthenticated monotonicity over {} keys: {}",
        keys.len(),
        report.join("; ")
    );
}

/// A flipped MSC bit scrambles authenticated extraction through the
/// U-sequence: the strategy prefix that places the 4096 watermark bits
/// consumes 4096 x 12 source bits, so a 40x40 carrier (6400 MSC bits,
/// 4800 LSC slots) cycles its whole MSC stream through that prefix and
/// every possible flip diverts the position walk.
#[test]
fn a_single_msc_flip_breaks_authenticated_extraction() {
    let mut state = 0x5EED_0008u64;
    let trials = 20;
    let mut lowest = f64::INFINITY;
    let mut highest = 0.0f64;
    for trial in 0..trials {
        let carrier = random_image(&mut state, 40, 40);
        let watermark = random_watermark(&mut state, 64, 64);
        let key = loop {
            let mu = 3.58 + 0.42 * ((splitmix64(&mut state) >> 11) as f64 / (1u64 << 53) as f64);
            let u0 = (splitmix64(&mut state) >> 11) as f64 / (1u64 << 53) as f64;
            if let Ok(key) = SecretKey::new(mu, u0, 100, 8192, true) {
                break key;
            }
        };
        let mut marked = embed(&carrier, &watermark, &key, &EmbedConfig::default()).unwrap();
        let pixel = (splitmix64(&mut state) % 1600) as usize;
        let bit = 4 + (splitmix64(&mut state) % 4) as u32;
        marked.pixels_mut()[pixel] ^= 1 << bit;
        let pct = extract_similarity(&marked, &key, &watermark);
        assert!(
            (40.0..=60.0).contains(&pct),
            "trial {trial}: similarity {pct:.2}% outside [40, 60]%"
        );
        lowest = lowest.min(pct);
        highest = highest.max(pct);
    }
    println!(
        "[PASS] tamper sensitivity: one MSC bit flip left every trial in [{lowest:.2}, {highest:.2}]% over {trials} trials, within [40, 60]%"
    );
}

fn scale(k: usize) -> f64 {
    if k == 0 {
        (1.0f64 / 8.0).sqrt()
    } else {
        0.5
    }
}

fn direct_dct(spatial: &[[f64; 8]; 8]) -> [[f64; 8]; 8] {
    let mut freq = [[0.0; 8]; 8];
    for v in 0..8 {
        for u in 0..8 {
            let mut sum = 0.0;
            for y in 0..8 {
                for x in 0..8 {
                    sum += spatial[y][x]
                        * ((2 * x + 1) as f64 * u as f64 * PI / 16.0).cos()
                        * ((2 * y + 1) as f64 * v as f64 * PI / 16.0).cos();
                }
            }
            freq[v][u] = scale(u) * scale(v) * sum;
        }
    }
    freq
}

fn direct_idct(freq: &[[f64; 8]; 8]) -> [[f64; 8]; 8] {
    let mut spatial = [[0.0; 8]; 8];
    for y in 0..8 {
        for x in 0..8 {
            let mut sum = 0.0;
            for v in 0..8 {
                for u in 0..8 {
                    sum += scale(u)
                        * scale(v)
                        * freq[v][u]
                        * ((2 * x + 1) as f64 * u as f64 * PI / 16.0).cos()
                        * ((2 * y + 1) as f64 * v as f64 * PI / 16.0).cos();
                }
            }
            spatial[y][x] = sum;
        }
    }
    spatial
}

#[test]
fn dct_kernel_matches_the_direct_transform() {
    let mut state = 0x5EED_0009u64;
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let mut spatial = [[0.0; 8]; 8];
        for row in &mut spatial {
            for value in row.iter_mut() {
                *value = (splitmix64(&mut state) % 256) as f64 - 128.0;
            }
        }
        let freq = chaosmark::attack::dct2_8x8(&spatial);
        let expected = direct_dct(&spatial);
        for v in 0..8 {
            for u in 0..8 {
                let diff = (freq[v][u] - expected[v][u]).abs();
                assert!(diff < 1e-9, "dct[{v}][{u}] off by {diff:e}");
                worst = worst.max(diff);
            }
        }
        let back = chaosmark::attack::idct2_8x8(&freq);
        let expected_back = direct_idct(&freq);
        for y in 0..8 {
            for x in 0..8 {
                let diff = (back[y][x] - expected_back[y][x]).abs();
                assert!(diff < 1e-9, "idct[{y}][{x}] off by {diff:e}");
                worst = worst.max(diff);
            }
        }
    }

    let flat = GrayImage::filled(256, 256, 128);
    for ratio in [2.0, 5.0, 10.0] {
        let compressed = attack_jpeg(&flat, ratio).unwrap();
        assert_eq!(compressed, flat, "all-128 image moved at ratio {ratio}");
    }
    println!(
        "[PASS] dct oracle: 1000 random blocks within 1e-9 (worst {worst:.3e}); all-128 image fixed at ratios 2, 5, 10"
    );
}

#[test]
fn evaluate_reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let config = repo_root().join("configs/demo_grid.cfg");
    let mut reports = Vec::new();
    for name in ["a", "b"] {
        let out_dir = dir.path().join(name);
        let output = std::process::Command::new(env!("CARGO_BIN_EXE_chaosmark"))
            .args([
                "evaluate",
                config.to_str().unwrap(),
                "--out-dir",
                out_dir.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(
            output.status.success(),
            "{}",
            String::from_utf8_lossy(&output.stderr)
        );
        reports.push(std::fs::read(out_dir.join("report.csv")).unwrap());
    }
    assert_eq!(reports[0], reports[1], "reruns differ");
    let rows = reports[0]
        .split(|&b| b == b'\n')
        .filter(|l| !l.is_empty())
        .count();
    println!(
        "[PASS] evaluation determinism: two runs produced byte-identical {rows}-line CSV reports"
    );
}
