// Harmonic correlator models, prefactor fits, and the prefactor/formfactor relations.

use std::f64::consts::PI;

use luttinger_ff::scaling::{
    evaluate_correlator, exponent, fit_prefactors, formfactor_from_prefactor, CorrelatorModel, ScalingRelation,
};
use luttinger_ff::OperatorKind;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let xi = 4.0 / 3.0;
    for kind in [OperatorKind::Boson, OperatorKind::Fermion] {
        let e: Vec<String> = (0..3).map(|m| format!("{:.4}", exponent(kind, m, xi).unwrap())).collect();
        println!("{kind} exponents at xi = 4/3: {}", e.join(", "));
    }

    // Synthetic two-harmonic data, then recover the amplitudes.
    let length = 400.0;
    let truth = CorrelatorModel::new(OperatorKind::Boson, xi, PI / 2.0, &[(0, 0.48), (1, -0.09)], true)?;
    let samples = (1..400)
        .map(|x| Ok((x as f64, evaluate_correlator(&truth, x as f64, length)?)))
        .collect::<luttinger_ff::Result<Vec<_>>>()?;
    let fit = fit_prefactors(&samples, &truth, length, (50.0, 150.0))?;
    println!(
        "fitted A0 = {:.10}, A1 = {:.10}, residual {:.1e}",
        fit.model.amplitude(0).unwrap(),
        fit.model.amplitude(1).unwrap(),
        fit.max_rel_residual
    );

    for m in [0, 1] {
        let a = fit.model.amplitude(m).unwrap();
        let ff = formfactor_from_prefactor(OperatorKind::Boson, m, xi, length, a)?;
        let back = ScalingRelation::from_formfactor(OperatorKind::Boson, m, xi, length, ff)?;
        println!("m = {m}: |FF|^2 = {ff:.6e}, prefactor back = {:.10}", back.prefactor);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
