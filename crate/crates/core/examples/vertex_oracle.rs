// Brute-force vertex operator in a truncated Fock space, checked against the closed form.

use luttinger_ff::boson_oracle::{build_basis, verify_commutator, verify_f1_in, vertex_state};
use luttinger_ff::series::level_sum_closed;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let basis = build_basis(6)?;
    println!("{} basis states up to level 6", basis.len());

    for a in [-0.5, 0.8] {
        let rep = verify_f1_in(&basis, 6, a)?;
        println!(
            "a = {a:>4}: {} amplitudes, max |oracle - F| = {:.1e} (worst {})",
            rep.states_checked, rep.max_abs_diff, rep.worst_state
        );
        let norm = vertex_state(&basis, a).norm_sq();
        let expect: f64 = (0..=6).map(|m| level_sum_closed(m, a)).sum();
        println!("         norm^2 = {norm:.12}, sum of level sums = {expect:.12}");
    }

    for n in 1..=3 {
        let rep = verify_commutator(&basis, n)?;
        println!("[rho(-{n}), rho({n})] = {n}: violation {:.1e}", rep.max_violation);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
