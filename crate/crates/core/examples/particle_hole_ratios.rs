// Excited XX formfactors divided by the lowest one approach F(p, q; a = -1/2).

use luttinger_ff::pipeline::{particle_hole_convergence, Branch};
use luttinger_ff::ChiralState;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let lengths = [32, 64, 128];
    println!("state                branch   |F|          ratios at L = 32, 64, 128            Richardson");
    for s in ["1;0", "2;0", "1;-1", "2,1;0,-1"] {
        let state: ChiralState = s.parse()?;
        for branch in [Branch::Right, Branch::Left] {
            let c = particle_hole_convergence(&state, branch, &lengths)?;
            println!(
                "{:<20} {:<6} {:.8}  {:.8} {:.8} {:.8}  {:.8}",
                c.state,
                format!("{branch:?}"),
                c.target,
                c.ratios[0],
                c.ratios[1],
                c.ratios[2],
                c.richardson
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
