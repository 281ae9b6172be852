//! Regenerates the committed sample images. Run from the repository root:
//!
//! ```text
//! cargo run -p chaosmark --example gen_corpus [out-dir]
//! ```

use chaosmark::corpus::{synthetic_carrier, synthetic_logo};
use chaosmark::pnm::{save_pbm, save_pgm};
use std::path::PathBuf;

fn main() {
    let out: PathBuf = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "assets".into())
        .into();
    std::fs::create_dir_all(&out).expect("create output directory");

    let carrier_path = out.join("carrier.pgm");
    save_pgm(&synthetic_carrier(), &carrier_path).expect("write carrier");
    println!("wrote {}", carrier_path.display());

    let logo_path = out.join("logo.pbm");
    save_pbm(&synthetic_logo(), &logo_path).expect("write logo");
    println!("wrote {}", logo_path.display());
}
