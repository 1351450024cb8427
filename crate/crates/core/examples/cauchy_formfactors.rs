// Formfactors of single states, in floating point and in exact rationals.

use luttinger_ff::formfactor::{exact, formfactor, FREE_FERMION_SIGMA_MINUS_WEIGHT};
use luttinger_ff::{ChiralState, VertexWeight};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = VertexWeight::new(FREE_FERMION_SIGMA_MINUS_WEIGHT)?;
    let half = exact::rational(-1, 2);
    for s in ["1;0", "2;0", "1;-1", "2,1;0,-1", "3,1;0,-2"] {
        let state: ChiralState = s.parse()?;
        let f = formfactor(&state, a);
        let q = exact::formfactor(&state, &half);
        println!("{state:<22} F = {:>+.12}   exact {q}", f.value());
    }

    // Far from the Fermi point the value underflows f64 but its logarithm does not.
    let far = ChiralState::new(vec![400, 300, 200], vec![-100, -250, -350])?;
    let f = formfactor(&far, VertexWeight::new(0.8)?);
    println!("\n{far}: ln|F| = {:.6}, sign {:?}", f.ln_abs(), f.sign());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
