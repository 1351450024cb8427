// Free-fermion XX formulas against exact diagonalisation of small rings.

use luttinger_ff::xx_oracle::{ed_reference, ground_state, EdSector, XxChainConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (l, m) in [(8, 4), (10, 5), (10, 4), (12, 6)] {
        let cfg = XxChainConfig::new(l, m)?;
        let cmp = ed_reference(&cfg)?;
        println!(
            "L={l:>2} M={m}: E = {:>12.8}  C = {:.8}  max deviation {:.1e}",
            cmp.energy,
            cmp.lowest_formfactor,
            cmp.max_diff()
        );
    }

    let cfg = XxChainConfig::half_filling(8)?;
    let ed = EdSector::new(8, 4)?;
    let gs = ground_state(&cfg)?;
    println!("\nL=8 occupied momenta (units of pi/8): {:?}", gs.indices());
    println!(" x   <s+_x s-_0>      <sz_x sz_0>_c");
    for x in 1..8 {
        println!("{x:>2}  {:>+14.10}  {:>+14.10}", ed.transverse(x), ed.density(x));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
