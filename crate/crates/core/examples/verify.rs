//! Runs the verification suite with reduced Monte Carlo sizes and prints one
//! line per check. `dhsep verify all` runs it at full size.
//!
//! cargo run --release --example verify

use dhsep::checks::{verify_all, McSizes};

fn main() {
    let sizes = McSizes { global: 100_000, conditioned: 10_000, histogram: 100_000, chains: 4 };
    let checks = verify_all(42, sizes, None);
    for c in &checks {
        println!("{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
    }
    if checks.iter().any(|c| !c.passed) {
        std::process::exit(1);
    }
}
