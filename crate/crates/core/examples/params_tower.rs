// Luttinger parameters from a coupling or an anisotropy, and the zero-mode tower.

use luttinger_ff::params::{finite_size_energy, params_from_coupling, xi_from_anisotropy};
use luttinger_ff::SectorCharge;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = params_from_coupling(0.6, 64.0, std::f64::consts::FRAC_PI_2)?;
    println!("lambda = 0.6  ->  xi = {:.6}, u = {:.6}", p.xi(), p.u());

    for delta in [-0.5, 0.0, 0.5, 1.0] {
        println!("delta = {delta:>4}  ->  xi = {:.6}", xi_from_anisotropy(delta)?);
    }

    println!("\n dN  dQ  energy (L = 64)");
    for (dn, dq) in [(0, 0), (1, 1), (1, -1), (2, 0), (0, 2), (2, 2)] {
        let e = finite_size_energy(&p, SectorCharge::new(dn, dq)?);
        println!("{dn:>3} {dq:>3}  {e:.8}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
