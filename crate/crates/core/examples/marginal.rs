//! Marginal-gap density I(x|λ̂) for a fixed spectrum, against a histogram of
//! Haar-orbit samples.
//!
//! cargo run --release --example marginal

use dhsep::dh_density::{c_coeffs, marginal_density_I};
use dhsep::exactmath::q;
use dhsep::sampling::marginal_histogram;
use dhsep::volumes::{vandermonde, Spectrum};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lam = Spectrum::new(vec![q(9, 20), q(27, 100), q(9, 50), q(1, 10)])?;
    let centered = lam.centered();
    let c = c_coeffs(&centered)?;
    println!("c1 = {}, c2 = {}, c3 = {}", c.c1, c.c2, c.c3);

    let i = marginal_density_I(&centered)?;
    for piece in &i.pieces {
        if let dhsep::dh_density::Support::Interval { lo, hi } = &piece.support {
            println!("[{lo}, {hi}]: {}", piece.poly.display_with(&["x"]));
        }
    }
    println!("mass = {} = V(λ̂)/12 = {}", i.integral()?, vandermonde(centered.entries()) / q(12, 1));

    let h = marginal_histogram(&lam, 200_000, 22, 42, None)?;
    println!("\n  bin        empirical  analytic");
    for b in 0..h.counts.len() {
        println!("  {:.3}-{:.3}  {:9.4}  {:8.4}", h.edges[b], h.edges[b + 1], h.empirical[b], h.analytic[b]);
    }
    println!("sup norm {:.4}", h.sup_norm);
    Ok(())
}
