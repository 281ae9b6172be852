//! Grid evaluation: parse a sectioned config, run every (attack, parameter,
//! mode) combination, and write the CSV and markdown reports.
//!
//! Rows are independent and run on rayon worker threads; the reports list
//! them in declared grid order regardless of completion order.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use chaosmark::attack::AttackSpec;
use chaosmark::pnm::{load_pbm, load_pgm, save_pbm, save_pgm};
use chaosmark::textkv::{parse_sections, Entry};
use chaosmark::{
    embed, extract, psnr, similarity, Anchor, EmbedConfig, Error, GrayImage, Result, SecretKey,
    Watermark,
};
use rayon::prelude::*;

pub struct Grid {
    pub carrier: PathBuf,
    pub watermark: PathBuf,
    pub key: SecretKey,
    /// Authenticated flags in declared order.
    pub modes: Vec<bool>,
    pub trials: u32,
    pub seed: u64,
    /// (literal parameter as written, parsed value) per attack family.
    pub zeroing: Vec<(String, u32)>,
    pub anchor: Anchor,
    pub rotation: Vec<(String, f64)>,
    pub jpeg: Vec<(String, f64)>,
    pub gaussian: Vec<(String, f64)>,
}

fn config_err(path: &Path, line: usize, detail: impl Into<String>) -> Error {
    Error::Config {
        path: path.to_path_buf(),
        line,
        detail: detail.into(),
    }
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_values<T: std::str::FromStr>(entry: &Entry, path: &Path) -> Result<Vec<(String, T)>> {
    split_list(&entry.value)
        .map(|s| {
            s.parse::<T>().map(|v| (s.to_string(), v)).map_err(|_| {
                config_err(path, entry.line, format!("{}: bad value {s:?}", entry.key))
            })
        })
        .collect()
}

impl Grid {
    pub fn load(path: &Path) -> Result<Grid> {
        let text = fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.to_path_buf(),
            source: e,
        })?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));

        let mut carrier = None;
        let mut watermark = None;
        let mut key_path = None;
        let mut modes = None;
        let mut trials = 1u32;
        let mut seed = 42u64;
        let mut zeroing = Vec::new();
        let mut anchor = Anchor::Center;
        let mut rotation = Vec::new();
        let mut jpeg = Vec::new();
        let mut gaussian = Vec::new();

        for section in parse_sections(&text, path)? {
            match section.name.as_str() {
                "" => {
                    if let Some(entry) = section.entries.first() {
                        return Err(config_err(
                            path,
                            entry.line,
                            format!("{}: entries must appear inside a section", entry.key),
                        ));
                    }
                }
                "grid" => {
                    for e in &section.entries {
                        match e.key.as_str() {
                            "carrier" => carrier = Some(base.join(&e.value)),
                            "watermark" => watermark = Some(base.join(&e.value)),
                            "key" => key_path = Some(base.join(&e.value)),
                            "modes" => {
                                let mut flags = Vec::new();
                                for m in split_list(&e.value) {
                                    flags.push(match m {
                                        "unauthenticated" => false,
                                        "authenticated" => true,
                                        _ => {
                                            return Err(config_err(
                                                path,
                                                e.line,
                                                format!("unknown mode {m:?}"),
                                            ))
                                        }
                                    });
                                }
                                modes = Some(flags);
                            }
                            "trials" => {
                                trials = e.value.parse().map_err(|_| {
                                    config_err(path, e.line, format!("bad trials {:?}", e.value))
                                })?
                            }
                            "seed" => {
                                seed = e.value.parse().map_err(|_| {
                                    config_err(path, e.line, format!("bad seed {:?}", e.value))
                                })?
                            }
                            k => {
                                return Err(config_err(path, e.line, format!("unknown key {k:?}")))
                            }
                        }
                    }
                }
                "zeroing" => {
                    for e in &section.entries {
                        match e.key.as_str() {
                            "sides" => zeroing = parse_values(e, path)?,
                            "anchor" => {
                                anchor = Anchor::parse(&e.value)
                                    .map_err(|err| config_err(path, e.line, err.to_string()))?
                            }
                            k => {
                                return Err(config_err(path, e.line, format!("unknown key {k:?}")))
                            }
                        }
                    }
                }
                "rotation" => {
                    for e in &section.entries {
                        match e.key.as_str() {
                            "angles" => rotation = parse_values(e, path)?,
                            k => {
                                return Err(config_err(path, e.line, format!("unknown key {k:?}")))
                            }
                        }
                    }
                }
                "jpeg" => {
                    for e in &section.entries {
                        match e.key.as_str() {
                            "ratios" => jpeg = parse_values(e, path)?,
                            k => {
                                return Err(config_err(path, e.line, format!("unknown key {k:?}")))
                            }
                        }
                    }
                }
                "gaussian" => {
                    for e in &section.entries {
                        match e.key.as_str() {
                            "sigmas" => gaussian = parse_values(e, path)?,
                            k => {
                                return Err(config_err(path, e.line, format!("unknown key {k:?}")))
                            }
                        }
                    }
                }
                other => {
                    return Err(config_err(
                        path,
                        section.line,
                        format!("unknown section [{other}]"),
                    ))
                }
            }
        }

        let missing = |name: &str| config_err(path, 0, format!("missing [grid] entry {name}"));
        let grid = Grid {
            carrier: carrier.ok_or_else(|| missing("carrier"))?,
            watermark: watermark.ok_or_else(|| missing("watermark"))?,
            key: SecretKey::load(key_path.ok_or_else(|| missing("key"))?)?,
            modes: modes.unwrap_or_else(|| vec![false, true]),
            trials,
            seed,
            zeroing,
            anchor,
            rotation,
            jpeg,
            gaussian,
        };
        if grid.trials < 1 {
            return Err(config_err(path, 0, "trials must be at least 1"));
        }
        if grid.modes.is_empty() {
            return Err(config_err(path, 0, "modes must not be empty"));
        }
        if grid.zeroing.is_empty()
            && grid.rotation.is_empty()
            && grid.jpeg.is_empty()
            && grid.gaussian.is_empty()
        {
            return Err(config_err(path, 0, "no attacks configured"));
        }
        Ok(grid)
    }

    /// Expands the grid into rows in report order: declared modes outermost,
    /// then zeroing, rotation, jpeg, gaussian at their declared parameters,
    /// with gaussian repeated per trial under consecutive seeds.
    fn rows(&self) -> Vec<RowSpec> {
        let mut rows = Vec::new();
        for &auth in &self.modes {
            for (label, side) in &self.zeroing {
                rows.push(RowSpec {
                    auth,
                    label: label.clone(),
                    attack: AttackSpec::Zeroing {
                        side: *side,
                        anchor: self.anchor,
                    },
                });
            }
            for (label, angle) in &self.rotation {
                rows.push(RowSpec {
                    auth,
                    label: label.clone(),
                    attack: AttackSpec::Rotation { angle: *angle },
                });
            }
            for (label, ratio) in &self.jpeg {
                rows.push(RowSpec {
                    auth,
                    label: label.clone(),
                    attack: AttackSpec::Jpeg { ratio: *ratio },
                });
            }
            for (label, sigma) in &self.gaussian {
                for trial in 0..self.trials {
                    rows.push(RowSpec {
                        auth,
                        label: label.clone(),
                        attack: AttackSpec::Gaussian {
                            sigma: *sigma,
                            seed: self.seed.wrapping_add(trial as u64),
                        },
                    });
                }
            }
        }
        rows
    }
}

struct RowSpec {
    auth: bool,
    label: String,
    attack: AttackSpec,
}

struct RowResult {
    kind: &'static str,
    label: String,
    auth: bool,
    seed: Option<u64>,
    outcome: std::result::Result<(f64, f64), String>,
}

fn mode_name(auth: bool) -> &'static str {
    if auth {
        "auth"
    } else {
        "unauth"
    }
}

fn run_row(
    spec: &RowSpec,
    watermarked: &GrayImage,
    logo: &Watermark,
    key: &SecretKey,
    artifacts: Option<&Path>,
) -> Result<(f64, f64)> {
    let attacked = spec.attack.apply(watermarked)?;
    let noise = psnr(watermarked, &attacked)?;
    let recovered = extract(
        &attacked,
        key,
        &EmbedConfig::default(),
        (logo.width(), logo.height()),
        None,
    )?;
    let sim = similarity(&recovered, logo)?.percentage();
    if let Some(dir) = artifacts {
        let mut stem = format!("{}-{}", spec.attack.kind(), spec.label);
        if let Some(seed) = spec.attack.seed() {
            let _ = write!(stem, "-s{seed}");
        }
        let _ = write!(stem, "-{}", mode_name(spec.auth));
        save_pgm(&attacked, dir.join(format!("{stem}.pgm")))?;
        save_pbm(&recovered, dir.join(format!("{stem}.pbm")))?;
    }
    Ok((sim, noise))
}

fn render_csv(results: &[RowResult]) -> String {
    let mut out = String::from("attack,parameter,authenticated,similarity_pct,psnr_db,seed\n");
    for r in results {
        let seed = r.seed.map(|s| s.to_string()).unwrap_or_default();
        match &r.outcome {
            Ok((sim, noise)) => {
                let _ = writeln!(
                    out,
                    "{},{},{},{sim:.2},{noise:.2},{seed}",
                    r.kind, r.label, r.auth
                );
            }
            Err(_) => {
                let _ = writeln!(out, "{},{},{},error,error,{seed}", r.kind, r.label, r.auth);
            }
        }
    }
    out
}

fn render_markdown(grid: &Grid, results: &[RowResult]) -> String {
    let mut out = String::from("# Watermark robustness report\n");
    let _ = write!(
        out,
        "\nCarrier: `{}`  \nWatermark: `{}`  \nKey: mu={:?}, u0={:?}, burn_in={}, mix_iters={}\n",
        grid.carrier.display(),
        grid.watermark.display(),
        grid.key.mu,
        grid.key.u0,
        grid.key.burn_in,
        grid.key.mix_iters,
    );
    let families = [
        ("zeroing", "Zeroing", "Size (pixels)"),
        ("rotation", "Rotation", "Angle (degrees)"),
        ("jpeg", "JPEG", "Compression ratio"),
        ("gaussian", "Gaussian noise", "Sigma"),
    ];
    for (kind, title, param_header) in families {
        // Row labels come from the first declared mode; the other modes
        // contribute the paired columns.
        let labels: Vec<(&String, Option<u64>)> = results
            .iter()
            .filter(|r| r.kind == kind && r.auth == grid.modes[0])
            .map(|r| (&r.label, r.seed))
            .collect();
        if labels.is_empty() {
            continue;
        }
        let _ = write!(out, "\n## {title}\n\n| {param_header} |");
        for &auth in &grid.modes {
            let _ = write!(
                out,
                " {} |",
                if auth {
                    "Authenticated"
                } else {
                    "Unauthenticated"
                }
            );
        }
        let _ = write!(out, "\n|---:|");
        for _ in &grid.modes {
            let _ = write!(out, "---:|");
        }
        out.push('\n');
        for (label, seed) in labels {
            match seed {
                Some(s) => {
                    let _ = write!(out, "| {label} (seed {s}) |");
                }
                None => {
                    let _ = write!(out, "| {label} |");
                }
            }
            for &auth in &grid.modes {
                let cell = results
                    .iter()
                    .find(|r| {
                        r.kind == kind && r.auth == auth && r.label == *label && r.seed == seed
                    })
                    .map(|r| match &r.outcome {
                        Ok((sim, _)) => format!("{sim:.2}%"),
                        Err(_) => "error".to_string(),
                    })
                    .unwrap_or_default();
                let _ = write!(out, " {cell} |");
            }
            out.push('\n');
        }
    }
    out
}

/// Runs the whole grid and writes `report.csv` and `report.md` under
/// `out_dir`. Returns the number of rows that carried an error marker.
pub fn evaluate(config_path: &Path, out_dir: &Path, keep_artifacts: bool) -> Result<usize> {
    let grid = Grid::load(config_path)?;
    let carrier = load_pgm(&grid.carrier)?;
    let logo = load_pbm(&grid.watermark)?;

    fs::create_dir_all(out_dir).map_err(|e| Error::Io {
        path: out_dir.to_path_buf(),
        source: e,
    })?;
    let artifacts = if keep_artifacts {
        let dir = out_dir.join("artifacts");
        fs::create_dir_all(&dir).map_err(|e| Error::Io {
            path: dir.clone(),
            source: e,
        })?;
        Some(dir)
    } else {
        None
    };

    // One embedding per mode, shared by every row of that mode.
    let mut keyed: Vec<(bool, SecretKey, GrayImage)> = Vec::new();
    for &auth in &grid.modes {
        if keyed.iter().any(|(a, _, _)| *a == auth) {
            continue;
        }
        let key = SecretKey::new(
            grid.key.mu,
            grid.key.u0,
            grid.key.burn_in,
            grid.key.mix_iters,
            auth,
        )?;
        let watermarked = embed(&carrier, &logo, &key, &EmbedConfig::default())?;
        if let Some(dir) = &artifacts {
            save_pgm(
                &watermarked,
                dir.join(format!("watermarked-{}.pgm", mode_name(auth))),
            )?;
        }
        keyed.push((auth, key, watermarked));
    }

    let rows = grid.rows();
    let results: Vec<RowResult> = rows
        .par_iter()
        .map(|spec| {
            let (_, key, watermarked) = keyed
                .iter()
                .find(|(a, _, _)| *a == spec.auth)
                .expect("mode embedded above");
            let outcome = run_row(spec, watermarked, &logo, key, artifacts.as_deref())
                .map_err(|e| e.to_string());
            RowResult {
                kind: spec.attack.kind(),
                label: spec.label.clone(),
                auth: spec.auth,
                seed: spec.attack.seed(),
                outcome,
            }
        })
        .collect();

    let csv_path = out_dir.join("report.csv");
    fs::write(&csv_path, render_csv(&results)).map_err(|e| Error::Io {
        path: csv_path.clone(),
        source: e,
    })?;
    let md_path = out_dir.join("report.md");
    fs::write(&md_path, render_markdown(&grid, &results)).map_err(|e| Error::Io {
        path: md_path.clone(),
        source: e,
    })?;

    for r in &results {
        if let Err(detail) = &r.outcome {
            eprintln!(
                "row {} {} ({}): {detail}",
                r.kind,
                r.label,
                mode_name(r.auth)
            );
        }
    }
    println!("wrote {}", csv_path.display());
    println!("wrote {}", md_path.display());
    Ok(results.iter().filter(|r| r.outcome.is_err()).count())
}
