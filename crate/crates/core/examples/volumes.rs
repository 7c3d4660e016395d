//! Exact flag-manifold and state-space volumes for U(N).
//!
//! cargo run --example volumes

use dhsep::volumes::{volume_table, CenteredSpectrum, coadjoint_symplectic_volume, hs_symp_relation_check};
use dhsep::exactmath::q;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>2}  {:<28} {:<28} {}", "N", "vol_HS(U(N)/T)", "vol_HS(D_N)", "≈");
    for n in 1..=6 {
        let t = volume_table(n)?;
        println!(
            "{n:>2}  {:<28} {:<28} {:.6e}",
            t.flag_hs.to_string(),
            t.state_space_hs.to_string(),
            t.state_space_hs.to_f64()
        );
    }

    let lam = CenteredSpectrum::new(vec![q(3, 8), q(1, 8), q(-1, 8), q(-3, 8)])?;
    println!("\nsymplectic volume of the orbit through {:?}:", lam.entries().iter().map(|r| r.to_string()).collect::<Vec<_>>());
    println!("  {}", coadjoint_symplectic_volume(&lam)?);
    println!("  HS/symplectic ratio is V(λ): {}", hs_symp_relation_check(&lam)?);
    Ok(())
}
