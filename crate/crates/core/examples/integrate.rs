//! The exact pipeline: region integrals M_k(x), the conditioned volume f(a)
//! and the separability probability.
//!
//! cargo run --release --example integrate

use dhsep::reference;
use dhsep::sep_integral::{compute_M, compute_f, conditioned_volume, probability_from_f};
use dhsep::exactmath::q;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for k in 1..=3 {
        let m = compute_M(k)?;
        println!("M{k}(x) = {}", m.display_with(&["x"]));
    }
    let sum = &(&compute_M(1)? + &compute_M(2)?) + &compute_M(3)?;
    println!("\nsum matches the factored form: {}", sum == reference::m_sum());

    let f = compute_f()?;
    println!("\nf(a) = {} · ({})", f.prefactor, f.poly.display_with(&["a"]));
    for a in [q(0, 1), q(1, 5), q(1, 2)] {
        println!("  f({a}) = {}   vol(D^a) = {}", f.eval_exact(&a)?, conditioned_volume(&a)?);
    }
    let p = probability_from_f(&f)?;
    println!("\nseparability probability = {p} ≈ {:.10}", p.to_f64());
    Ok(())
}
