// Resumming the formfactor series at a damped argument and comparing with (1 - z)^(-a^2).

use std::f64::consts::PI;

use luttinger_ff::series::reconstruct_correlator;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("   r   theta/pi    a     |partial - closed|   tail bound");
    for (r, theta, a) in [(0.5, 0.5, -0.5), (0.5, 1.0, 0.8), (0.9, 0.2, 1.2), (0.9, 1.0, 0.3)] {
        let ev = reconstruct_correlator(r, theta * PI, a, 24)?;
        assert!(ev.within_bound());
        println!(
            "{r:>4} {theta:>10} {a:>5}   {:>18.3e}   {:.3e}",
            ev.abs_error, ev.tail_bound
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
