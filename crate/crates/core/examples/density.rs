//! The piecewise-polynomial density of the two-qubit weight convolution,
//! derived twice (closed form and wall crossing) and checked against the
//! fiber-polytope area.
//!
//! cargo run --example density

use dhsep::dh_density::{
    convolution_density_closed, convolution_density_jump, fiber_polytope_density, wall_jump,
    walls, ChamberLabel,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let closed = convolution_density_closed();
    let jump = convolution_density_jump()?;
    for label in [ChamberLabel::C1, ChamberLabel::C2, ChamberLabel::C3] {
        let p = closed.piece(label).expect("piece");
        println!("{label:?}: p(r,s) = {}", p.display_with(&["r", "s"]));
        assert_eq!(Some(p), jump.piece(label));
    }

    println!("\nwall jumps:");
    for w in walls() {
        println!("  {} ({:?} -> {:?}): {}", w.name, w.from, w.to, wall_jump(&w)?.display_with(&["r", "s"]));
    }

    println!("\n   r      s      closed      oracle");
    for (r, s) in [(-0.5, -1.0), (-1.0, -3.5), (-3.0, -2.0), (-4.5, -4.0), (0.5, -1.0)] {
        println!(
            "{r:6.2} {s:6.2}  {:10.6}  {:10.6}",
            closed.eval(&[r, s]),
            fiber_polytope_density([r, s])
        );
    }
    Ok(())
}
