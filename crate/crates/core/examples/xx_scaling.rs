// Prefactors of the XX chain: the lowest formfactors against fitted correlator amplitudes.

use luttinger_ff::pipeline::{density_scaling, fit_transverse, lowest_scaling};
use luttinger_ff::xx_oracle::XxChainConfig;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("   L   C               C^2 (L/2)^(1/2)");
    for row in lowest_scaling(&[16, 32, 64, 128])? {
        println!("{:>4}   {:.12}  {:.12}", row.length, row.formfactor, row.scaled);
    }

    let cfg = XxChainConfig::half_filling(128)?;
    for (lo, hi) in [(0.125, 0.25), (0.25, 0.375)] {
        let fit = fit_transverse(&cfg, lo, hi)?;
        println!(
            "C0 fitted on [{lo} L, {hi} L]: {:.8} (residual {:.1e})",
            fit.model.amplitude(0).unwrap(),
            fit.max_rel_residual
        );
    }

    let d = density_scaling(&cfg)?;
    println!(
        "density: C1 = {:.8}, fitted C10 = {:.12}, uniform {:.12}, relation residual {:.1e}",
        d.c1, d.c10_fitted, d.uniform_fitted, d.relation_residual
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
