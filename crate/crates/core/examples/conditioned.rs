//! Hit-and-run on states with a fixed first marginal. The PPT fraction does
//! not depend on the marginal's Bloch length a.
//!
//! cargo run --release --example conditioned [N]

use dhsep::sampling::{conditioned_estimate, SamplerConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(20_000);
    println!("   a   fraction  λmax≤1/2 agreement");
    for a in [0.0, 0.2, 0.4, 0.6] {
        let r = conditioned_estimate(a, &SamplerConfig::new(42, n), 8)?;
        println!("{a:4.1}   {:.4}    {:.4}", r.fraction, r.agreement_halfbound);
    }
    println!("8/33 = {:.4}", 8.0 / 33.0);
    Ok(())
}
