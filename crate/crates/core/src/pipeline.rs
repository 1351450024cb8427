//! The XX-chain validation steps shared by the CLI, the examples and the tests.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formfactor::{formfactor, VertexWeight, FREE_FERMION_SIGMA_MINUS_WEIGHT};
use crate::scaling::{fit_prefactors, CorrelatorModel, FitReport, ScalingRelation, UniformSign};
use crate::states::{enumerate_level, ChiralState};
use crate::xx_oracle::{
    density_lowest_formfactor, density_profile, lowest_sigma_minus_formfactor, particle_hole_ratio,
    transverse_profile, DensityUnits, XxChainConfig,
};
use crate::OperatorKind;

fn window(length: usize, lo: f64, hi: f64) -> (f64, f64) {
    let l = length as f64;
    (lo * l, hi * l)
}

/// `C0` from `<sigma^+_x sigma^-_0> = C0 (-1)^x / (L sin(pi x/L))^{1/2}` over
/// `x` in `[lo L, hi L]`.
pub fn fit_transverse(config: &XxChainConfig, lo: f64, hi: f64) -> Result<FitReport> {
    let samples: Vec<(f64, f64)> = transverse_profile(config)?
        .into_iter()
        .map(|(x, g)| (x as f64, g))
        .collect();
    fit_transverse_samples(&samples, config.length(), lo, hi)
}

pub fn fit_transverse_samples(samples: &[(f64, f64)], length: usize, lo: f64, hi: f64) -> Result<FitReport> {
    let shape = CorrelatorModel::new(OperatorKind::Boson, 1.0, PI / 2.0, &[(0, 0.0)], true)?;
    fit_prefactors(samples, &shape, length as f64, window(length, lo, hi))
}

/// `C10` and the uniform coefficient from the exact density correlator.
pub fn fit_density(config: &XxChainConfig, lo: f64, hi: f64) -> Result<FitReport> {
    let samples: Vec<(f64, f64)> = density_profile(config)?
        .into_iter()
        .map(|(x, v)| (x as f64, v))
        .collect();
    let shape = CorrelatorModel::new(OperatorKind::Density, 1.0, config.fermi_momentum(), &[(1, 0.0)], false)?
        .with_uniform(0.0, UniformSign::Measured);
    fit_prefactors(&samples, &shape, config.length() as f64, window(config.length(), lo, hi))
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityScaling {
    pub length: usize,
    /// `C1` in `sigma^z` units.
    pub c1: f64,
    pub c10_fitted: f64,
    pub uniform_fitted: f64,
    pub fit_residual: f64,
    /// `|C1^2 - (1/2)(2/L)^2 C10| / C1^2`
    pub relation_residual: f64,
}

pub fn density_scaling(config: &XxChainConfig) -> Result<DensityScaling> {
    let fit = fit_density(config, 0.125, 0.375)?;
    let c10 = fit.model.amplitude(1).expect("density model has m = 1");
    let c1 = density_lowest_formfactor(config, DensityUnits::SigmaZ)?;
    let rel = ScalingRelation {
        kind: OperatorKind::Density,
        m: 1,
        xi: 1.0,
        length: config.length() as f64,
        prefactor: c10,
        formfactor_sq: c1 * c1,
    };
    Ok(DensityScaling {
        length: config.length(),
        c1,
        c10_fitted: c10,
        uniform_fitted: fit.model.uniform.map_or(0.0, |u| u.coefficient),
        fit_residual: fit.max_rel_residual,
        relation_residual: rel.residual()?.abs() / (c1 * c1),
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct LowestScaling {
    pub length: usize,
    pub formfactor: f64,
    /// `C^2 (L/2)^{1/2}`, which tends to `C0`.
    pub scaled: f64,
}

pub fn lowest_scaling(lengths: &[usize]) -> Result<Vec<LowestScaling>> {
    lengths
        .par_iter()
        .map(|&length| {
            let c = lowest_sigma_minus_formfactor(&XxChainConfig::half_filling(length)?)?;
            let scaled = ScalingRelation::from_formfactor(OperatorKind::Boson, 0, 1.0, length as f64, c * c)?.prefactor;
            Ok(LowestScaling {
                length,
                formfactor: c,
                scaled,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Right,
    Left,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParticleHoleConvergence {
    pub state: String,
    pub branch: Branch,
    /// `|F(p, q; a = -1/2)|`
    pub target: f64,
    pub lengths: Vec<usize>,
    pub ratios: Vec<f64>,
    pub errors: Vec<f64>,
    /// `2 r(L_max) - r(L_max / 2)`, removing the `1/L` term.
    pub richardson: f64,
    pub richardson_rel_err: f64,
}

impl ParticleHoleConvergence {
    pub fn monotone(&self) -> bool {
        self.errors.windows(2).all(|w| w[1] < w[0])
    }
}

/// Ratios on successively doubled rings; `lengths` must double at each step.
pub fn particle_hole_convergence(
    state: &ChiralState,
    branch: Branch,
    lengths: &[usize],
) -> Result<ParticleHoleConvergence> {
    if lengths.len() < 2 || lengths.windows(2).any(|w| w[1] != 2 * w[0]) {
        return Err(Error::Domain(format!("lengths must double, got {lengths:?}")));
    }
    let target = formfactor(state, VertexWeight::new(FREE_FERMION_SIGMA_MINUS_WEIGHT)?)
        .value()
        .abs();
    let vacuum = ChiralState::vacuum();
    let ratios = lengths
        .par_iter()
        .map(|&l| {
            let cfg = XxChainConfig::half_filling(l)?;
            match branch {
                Branch::Right => particle_hole_ratio(&cfg, state, &vacuum),
                Branch::Left => particle_hole_ratio(&cfg, &vacuum, state),
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    let errors = ratios.iter().map(|r| (r - target).abs()).collect();
    let n = ratios.len();
    let richardson = 2.0 * ratios[n - 1] - ratios[n - 2];
    Ok(ParticleHoleConvergence {
        state: state.to_string(),
        branch,
        target,
        lengths: lengths.to_vec(),
        ratios,
        errors,
        richardson,
        richardson_rel_err: (richardson - target).abs() / target,
    })
}

/// Every non-vacuum state of level `1..=max_level` on both branches.
pub fn particle_hole_table(max_level: usize, lengths: &[usize]) -> Result<Vec<ParticleHoleConvergence>> {
    let mut out = Vec::new();
    for level in 1..=max_level {
        for state in enumerate_level(level)? {
            for branch in [Branch::Right, Branch::Left] {
                out.push(particle_hole_convergence(&state, branch, lengths)?);
            }
        }
    }
    Ok(out)
}
