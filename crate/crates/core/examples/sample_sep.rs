//! PPT fraction of Hilbert-Schmidt random two-qubit states.
//!
//! cargo run --release --example sample_sep [N] [SEED]

use dhsep::sampling::{estimate_sep_prob, SamplerConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(200_000);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(42);
    let est = estimate_sep_prob(&SamplerConfig::new(seed, n))?;
    println!("n = {}, PPT = {}", est.n, est.ppt_count);
    println!("fraction = {:.5} ± {:.5}", est.fraction, est.stderr);
    println!("8/33     = {:.5}", 8.0 / 33.0);
    Ok(())
}
