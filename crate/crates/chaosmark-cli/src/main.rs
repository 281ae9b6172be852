//! `chaosmark`: embed, extract, attack, and benchmark chaos-mixed fragile
//! watermarks in grayscale PGM images.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or format error,
//! 3 capacity or precondition error.

mod grid;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chaosmark::attack::AttackSpec;
use chaosmark::pnm::{load_pbm, load_pgm, save_pbm, save_pgm};
use chaosmark::{embed, extract, psnr, similarity, Anchor, EmbedConfig, EmbedMode, SecretKey};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "chaosmark",
    version,
    about = "Chaos-driven fragile watermarking for grayscale images"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate key parameters and write a key file.
    Keygen(KeygenArgs),
    /// Embed a binary watermark into a carrier image.
    Embed(EmbedArgs),
    /// Recover a watermark from a (possibly attacked) image.
    Extract(ExtractArgs),
    /// Degrade an image with one deterministic attack.
    Attack(AttackArgs),
    /// Run an attack grid and write CSV and markdown reports.
    Evaluate(EvaluateArgs),
}

#[derive(Args)]
struct KeygenArgs {
    /// Logistic-map parameter, in (3.57, 4.0].
    #[arg(long)]
    mu: f64,
    /// Initial iterate, in (0, 1) and not 0.25, 0.5, or 0.75.
    #[arg(long)]
    u0: f64,
    /// Iterations discarded before the keystream starts.
    #[arg(long, default_value_t = 100)]
    burn_in: u32,
    /// Chaotic mixing iterations applied to the watermark.
    #[arg(long)]
    mix_iters: u32,
    /// Couple the strategy to the carrier's most significant bits.
    #[arg(long)]
    authenticated: bool,
    /// Key file to write.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Substitute,
    Negate,
}

impl From<ModeArg> for EmbedMode {
    fn from(mode: ModeArg) -> EmbedMode {
        match mode {
            ModeArg::Substitute => EmbedMode::Substitute,
            ModeArg::Negate => EmbedMode::Negate,
        }
    }
}

#[derive(Args)]
struct EmbedArgs {
    /// Carrier image (PGM).
    #[arg(long)]
    carrier: PathBuf,
    /// Watermark to embed (PBM).
    #[arg(long)]
    watermark: PathBuf,
    /// Key file from `keygen`.
    #[arg(long)]
    key: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Substitute)]
    mode: ModeArg,
    /// Watermarked image to write (PGM).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ExtractArgs {
    /// Watermarked image (PGM).
    #[arg(long)]
    watermarked: PathBuf,
    /// Key file used at embedding time.
    #[arg(long)]
    key: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Substitute)]
    mode: ModeArg,
    /// Watermark dimensions as WxH, e.g. 64x64.
    #[arg(long, value_parser = parse_dims)]
    dims: (u32, u32),
    /// Original carrier; required in negate mode.
    #[arg(long)]
    original: Option<PathBuf>,
    /// Reference watermark (PBM); prints the similarity against it.
    #[arg(long)]
    reference: Option<PathBuf>,
    /// Extracted watermark to write (PBM).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum AttackKind {
    Zeroing,
    Rotation,
    Jpeg,
    Gaussian,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum AnchorArg {
    Center,
    TopLeft,
}

#[derive(Args)]
struct AttackArgs {
    /// Image to degrade (PGM).
    #[arg(long)]
    image: PathBuf,
    /// Attack family.
    #[arg(long, value_enum)]
    attack: AttackKind,
    /// Zeroing: side of the blacked-out square in pixels.
    #[arg(long)]
    size: Option<u32>,
    /// Zeroing: placement of the square.
    #[arg(long, value_enum, default_value_t = AnchorArg::Center)]
    anchor: AnchorArg,
    /// Rotation: angle in degrees for the there-and-back rotation.
    #[arg(long)]
    angle: Option<f64>,
    /// Jpeg: scale applied to the quantization table.
    #[arg(long)]
    ratio: Option<f64>,
    /// Gaussian: noise standard deviation.
    #[arg(long)]
    sigma: Option<f64>,
    /// Gaussian: noise seed.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Degraded image to write (PGM).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Grid config file; paths inside are relative to its directory.
    config: PathBuf,
    /// Directory for report.csv and report.md.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Also write every intermediate image under <out-dir>/artifacts.
    /// CHAOSMARK_KEEP_ARTIFACTS=1 in the environment has the same effect.
    #[arg(long)]
    keep_artifacts: bool,
}

fn parse_dims(s: &str) -> Result<(u32, u32), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WxH, got {s:?}"))?;
    let parse = |v: &str| {
        v.trim()
            .parse::<u32>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| format!("bad dimension {v:?}"))
    };
    Ok((parse(w)?, parse(h)?))
}

enum CliError {
    Usage(String),
    Lib(chaosmark::Error),
}

impl From<chaosmark::Error> for CliError {
    fn from(err: chaosmark::Error) -> Self {
        CliError::Lib(err)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Lib(chaosmark::Error::MissingOriginal) => 1,
            CliError::Lib(err) if err.is_precondition() => 3,
            CliError::Lib(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(msg) => msg.clone(),
            CliError::Lib(err) => err.to_string(),
        }
    }
}

/// True when writing `out` would overwrite `input`.
fn clobbers(input: &Path, out: &Path) -> bool {
    if input == out {
        return true;
    }
    match (input.canonicalize(), out.canonicalize()) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

fn run_keygen(args: KeygenArgs) -> Result<(), CliError> {
    let key = SecretKey::new(
        args.mu,
        args.u0,
        args.burn_in,
        args.mix_iters,
        args.authenticated,
    )?;
    key.save(&args.out)?;
    Ok(())
}

fn run_embed(args: EmbedArgs) -> Result<(), CliError> {
    if clobbers(&args.carrier, &args.out) {
        return Err(CliError::Usage(format!(
            "refusing to overwrite the carrier {}; choose a different --out",
            args.carrier.display()
        )));
    }
    let carrier = load_pgm(&args.carrier)?;
    let watermark = load_pbm(&args.watermark)?;
    let key = SecretKey::load(&args.key)?;
    let config = EmbedConfig {
        mode: args.mode.into(),
        ..EmbedConfig::default()
    };
    let watermarked = embed(&carrier, &watermark, &key, &config)?;
    save_pgm(&watermarked, &args.out)?;
    println!("psnr={:.2}dB", psnr(&carrier, &watermarked)?);
    Ok(())
}

fn run_extract(args: ExtractArgs) -> Result<(), CliError> {
    let watermarked = load_pgm(&args.watermarked)?;
    let key = SecretKey::load(&args.key)?;
    let config = EmbedConfig {
        mode: args.mode.into(),
        ..EmbedConfig::default()
    };
    let original = match &args.original {
        Some(path) => Some(load_pgm(path)?),
        None => None,
    };
    let recovered = extract(&watermarked, &key, &config, args.dims, original.as_ref())?;
    save_pbm(&recovered, &args.out)?;
    if let Some(path) = &args.reference {
        let reference = load_pbm(path)?;
        let report = similarity(&recovered, &reference)?;
        println!("similarity={:.2}%", report.percentage());
    }
    Ok(())
}

fn run_attack(args: AttackArgs) -> Result<(), CliError> {
    let require = |value: Option<f64>, flag: &str, kind: &str| {
        value.ok_or_else(|| CliError::Usage(format!("--attack {kind} requires --{flag}")))
    };
    let spec = match args.attack {
        AttackKind::Zeroing => AttackSpec::Zeroing {
            side: args
                .size
                .ok_or_else(|| CliError::Usage("--attack zeroing requires --size".to_string()))?,
            anchor: match args.anchor {
                AnchorArg::Center => Anchor::Center,
                AnchorArg::TopLeft => Anchor::TopLeft,
            },
        },
        AttackKind::Rotation => AttackSpec::Rotation {
            angle: require(args.angle, "angle", "rotation")?,
        },
        AttackKind::Jpeg => AttackSpec::Jpeg {
            ratio: require(args.ratio, "ratio", "jpeg")?,
        },
        AttackKind::Gaussian => AttackSpec::Gaussian {
            sigma: require(args.sigma, "sigma", "gaussian")?,
            seed: args.seed,
        },
    };
    let image = load_pgm(&args.image)?;
    save_pgm(&spec.apply(&image)?, &args.out)?;
    Ok(())
}

fn run_evaluate(args: EvaluateArgs) -> Result<(), CliError> {
    let keep =
        args.keep_artifacts || std::env::var("CHAOSMARK_KEEP_ARTIFACTS").is_ok_and(|v| v == "1");
    let failed = grid::evaluate(&args.config, &args.out_dir, keep)?;
    if failed > 0 {
        eprintln!("{failed} row(s) carry an error marker");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Keygen(args) => run_keygen(args),
        Command::Embed(args) => run_embed(args),
        Command::Extract(args) => run_extract(args),
        Command::Attack(args) => run_attack(args),
        Command::Evaluate(args) => run_evaluate(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
