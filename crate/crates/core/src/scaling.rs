//! Harmonic correlator models and the prefactor/formfactor relations.
//!
//! An equal-time correlator on a ring of length `L` is modelled as
//!
//! ```text
//! sum_m A_m trig(k_m x) / (L sin(pi x / L))^{e_m}  +  uniform / (L sin(pi x / L))^2  +  offset
//! ```
//!
//! with `trig = cos` for boson and density, `sin` for the fermion. Each
//! amplitude is tied to the lowest formfactor of its harmonic through
//! `|FF|^2 = s_m A_m (2/L)^{e_m}`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formfactor::{chiral_weights, OperatorKind};

/// Power-law exponent of the `m`-th harmonic.
pub fn exponent(kind: OperatorKind, m: i64, xi: f64) -> Result<f64> {
    if !(xi.is_finite() && xi > 0.0) {
        return Err(Error::Domain(format!("xi must be positive, got {xi}")));
    }
    if m < 0 {
        return Err(Error::Domain(format!("harmonic must be >= 0, got {m}")));
    }
    let mf = m as f64;
    match kind {
        OperatorKind::Boson => Ok(xi / 2.0 + 2.0 * mf * mf / xi),
        OperatorKind::Fermion => Ok(xi / 2.0 + (2.0 * mf + 1.0).powi(2) / (2.0 * xi)),
        OperatorKind::Density if m == 0 => Err(Error::Domain(
            "density harmonics start at m = 1".into(),
        )),
        OperatorKind::Density => Ok(2.0 * mf * mf / xi),
    }
}

/// `a_R^2 + a_L^2` of the harmonic, the same exponent seen from the formfactor side.
pub fn exponent_from_weights(kind: OperatorKind, m: i64, xi: f64) -> Result<f64> {
    let (r, l) = chiral_weights(kind, m, xi)?;
    Ok(r.squared() + l.squared())
}

/// Oscillation wavenumber of the `m`-th harmonic.
pub fn wavenumber(kind: OperatorKind, m: i64, fermi_momentum: f64) -> f64 {
    match kind {
        OperatorKind::Fermion => (2 * m + 1) as f64 * fermi_momentum,
        _ => 2.0 * fermi_momentum * m as f64,
    }
}

/// Sign factor `s_m` in `|FF|^2 = s_m A_m (2/L)^{e_m}`.
pub fn relation_sign(kind: OperatorKind, m: i64) -> f64 {
    let parity = if m % 2 == 0 { 1.0 } else { -1.0 };
    match kind {
        OperatorKind::Boson if m == 0 => 1.0,
        OperatorKind::Boson => parity / 2.0,
        OperatorKind::Fermion => parity / 2.0,
        OperatorKind::Density => 0.5,
    }
}

/// Chord distance `L sin(pi x / L)`.
pub fn chord(x: f64, length: f64) -> f64 {
    length * (PI * x / length).sin()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Harmonic {
    pub m: i64,
    pub amplitude: f64,
    pub exponent: f64,
    pub wavenumber: f64,
}

/// Which sign the `1/(L sin)^2` density term carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum UniformSign {
    /// Negative, as measured for free fermions.
    #[default]
    Measured,
    /// Positive.
    Printed,
}

impl UniformSign {
    pub fn as_f64(self) -> f64 {
        match self {
            UniformSign::Measured => -1.0,
            UniformSign::Printed => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UniformTerm {
    /// Magnitude of the coefficient; the sign comes from `sign`.
    pub coefficient: f64,
    pub sign: UniformSign,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelatorModel {
    pub kind: OperatorKind,
    pub harmonics: Vec<Harmonic>,
    pub uniform: Option<UniformTerm>,
    pub constant_offset: f64,
}

impl CorrelatorModel {
    /// Builds a model whose exponents and wavenumbers follow from `xi` and `p_F`.
    ///
    /// `staggered` shifts every wavenumber by `pi`, the convention for
    /// `sigma^+ sigma^-` of a spin chain.
    pub fn new(
        kind: OperatorKind,
        xi: f64,
        fermi_momentum: f64,
        amplitudes: &[(i64, f64)],
        staggered: bool,
    ) -> Result<Self> {
        let shift = if staggered { PI } else { 0.0 };
        let harmonics = amplitudes
            .iter()
            .map(|&(m, amplitude)| {
                Ok(Harmonic {
                    m,
                    amplitude,
                    exponent: exponent(kind, m, xi)?,
                    wavenumber: wavenumber(kind, m, fermi_momentum) + shift,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            kind,
            harmonics,
            uniform: None,
            constant_offset: 0.0,
        })
    }

    pub fn with_uniform(mut self, coefficient: f64, sign: UniformSign) -> Self {
        self.uniform = Some(UniformTerm { coefficient, sign });
        self
    }

    pub fn with_offset(mut self, offset: f64) -> Self {
        self.constant_offset = offset;
        self
    }

    pub fn amplitude(&self, m: i64) -> Option<f64> {
        self.harmonics.iter().find(|h| h.m == m).map(|h| h.amplitude)
    }

    fn trig(&self, arg: f64) -> f64 {
        match self.kind {
            OperatorKind::Fermion => arg.sin(),
            _ => arg.cos(),
        }
    }

    /// Column values of the model at `x`: one per harmonic, then the uniform term.
    fn basis(&self, x: f64, length: f64) -> Vec<f64> {
        let d = chord(x, length);
        let mut cols: Vec<f64> = self
            .harmonics
            .iter()
            .map(|h| self.trig(h.wavenumber * x) / d.powf(h.exponent))
            .collect();
        if let Some(u) = self.uniform {
            cols.push(u.sign.as_f64() / (d * d));
        }
        cols
    }
}

fn check_position(x: f64, length: f64) -> Result<()> {
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::Domain(format!("length must be positive, got {length}")));
    }
    if !(x > 0.0 && x < length) {
        return Err(Error::Domain(format!("x must lie in (0, {length}), got {x}")));
    }
    Ok(())
}

pub fn evaluate_correlator(model: &CorrelatorModel, x: f64, length: f64) -> Result<f64> {
    check_position(x, length)?;
    let cols = model.basis(x, length);
    let mut total = model.constant_offset;
    for (h, c) in model.harmonics.iter().zip(&cols) {
        total += h.amplitude * c;
    }
    if let Some(u) = model.uniform {
        total += u.coefficient * cols[model.harmonics.len()];
    }
    Ok(total)
}

/// One harmonic's prefactor together with the squared formfactor it implies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingRelation {
    pub kind: OperatorKind,
    pub m: i64,
    pub xi: f64,
    pub length: f64,
    pub prefactor: f64,
    pub formfactor_sq: f64,
}

impl ScalingRelation {
    /// `s_m (2/L)^{e_m}`, the factor converting prefactor to `|FF|^2`.
    pub fn scale(kind: OperatorKind, m: i64, xi: f64, length: f64) -> Result<f64> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::Domain(format!("length must be positive, got {length}")));
        }
        let e = exponent(kind, m, xi)?;
        Ok(relation_sign(kind, m) * (2.0 / length).powf(e))
    }

    pub fn from_formfactor(
        kind: OperatorKind,
        m: i64,
        xi: f64,
        length: f64,
        formfactor_sq: f64,
    ) -> Result<Self> {
        if formfactor_sq < 0.0 {
            return Err(Error::Inconsistent(format!(
                "|FF|^2 = {formfactor_sq} is negative"
            )));
        }
        let prefactor = formfactor_sq / Self::scale(kind, m, xi, length)?;
        Ok(Self {
            kind,
            m,
            xi,
            length,
            prefactor,
            formfactor_sq,
        })
    }

    pub fn from_prefactor(kind: OperatorKind, m: i64, xi: f64, length: f64, prefactor: f64) -> Result<Self> {
        let formfactor_sq = prefactor * Self::scale(kind, m, xi, length)?;
        if formfactor_sq < 0.0 {
            return Err(Error::Inconsistent(format!(
                "prefactor {prefactor} implies |FF|^2 = {formfactor_sq} for {kind} m={m}; \
                 its sign does not match (-1)^m"
            )));
        }
        Ok(Self {
            kind,
            m,
            xi,
            length,
            prefactor,
            formfactor_sq,
        })
    }

    /// `|FF|^2 - s_m A_m (2/L)^{e_m}`, zero when both sides were measured consistently.
    pub fn residual(&self) -> Result<f64> {
        Ok(self.formfactor_sq - self.prefactor * Self::scale(self.kind, self.m, self.xi, self.length)?)
    }
}

pub fn prefactor_from_formfactor(kind: OperatorKind, m: i64, xi: f64, length: f64, formfactor_sq: f64) -> Result<f64> {
    Ok(ScalingRelation::from_formfactor(kind, m, xi, length, formfactor_sq)?.prefactor)
}

pub fn formfactor_from_prefactor(kind: OperatorKind, m: i64, xi: f64, length: f64, prefactor: f64) -> Result<f64> {
    Ok(ScalingRelation::from_prefactor(kind, m, xi, length, prefactor)?.formfactor_sq)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub model: CorrelatorModel,
    pub window: (f64, f64),
    pub samples_used: usize,
    /// Largest `|fit - data|` relative to `max(|data|, sum of |terms|)`.
    pub max_rel_residual: f64,
    /// Ratio of smallest to largest singular value of the design matrix.
    pub conditioning: f64,
}

pub const MIN_SAMPLES_PER_AMPLITUDE: usize = 3;

/// Least-squares amplitudes of `shape` (exponents and wavenumbers held
/// fixed) from samples inside `window`. The uniform coefficient, when
/// present, is fitted as well; the constant offset is not.
pub fn fit_prefactors(
    samples: &[(f64, f64)],
    shape: &CorrelatorModel,
    length: f64,
    window: (f64, f64),
) -> Result<FitReport> {
    let used: Vec<(f64, f64)> = samples
        .iter()
        .copied()
        .filter(|&(x, _)| x >= window.0 && x <= window.1)
        .collect();
    for &(x, _) in &used {
        check_position(x, length)?;
    }
    let unknowns = shape.harmonics.len() + usize::from(shape.uniform.is_some());
    if unknowns == 0 {
        return Err(Error::Fit("model has no free amplitudes".into()));
    }
    if used.len() < MIN_SAMPLES_PER_AMPLITUDE * unknowns {
        return Err(Error::Fit(format!(
            "{} samples in window [{}, {}] for {unknowns} amplitudes",
            used.len(),
            window.0,
            window.1
        )));
    }

    let design = DMatrix::from_fn(used.len(), unknowns, |i, j| shape.basis(used[i].0, length)[j]);
    let rhs = DVector::from_iterator(used.len(), used.iter().map(|&(_, y)| y - shape.constant_offset));

    // Column scaling keeps power laws of very different size comparable.
    let norms: Vec<f64> = (0..unknowns).map(|j| design.column(j).norm()).collect();
    if norms.contains(&0.0) {
        return Err(Error::Fit("a model column vanishes on the window".into()));
    }
    let scaled = DMatrix::from_fn(used.len(), unknowns, |i, j| design[(i, j)] / norms[j]);
    let svd = scaled.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let conditioning = smin / smax;
    if conditioning < 1e-10 {
        return Err(Error::Fit(format!(
            "design matrix is rank deficient (singular value ratio {conditioning:.3e})"
        )));
    }
    let coef = svd
        .solve(&rhs, 0.0)
        .map_err(|e| Error::Fit(e.to_string()))?;

    let mut model = shape.clone();
    for (j, h) in model.harmonics.iter_mut().enumerate() {
        h.amplitude = coef[j] / norms[j];
    }
    if let Some(u) = model.uniform.as_mut() {
        let j = unknowns - 1;
        u.coefficient = coef[j] / norms[j];
    }

    // Residuals are measured against the size of the individual terms, so
    // points where harmonics cancel to zero do not blow up the ratio.
    let mut max_rel = 0.0f64;
    for &(x, y) in &used {
        let fit = evaluate_correlator(&model, x, length)?;
        let terms: f64 = model
            .basis(x, length)
            .iter()
            .zip(coef.iter().zip(&norms))
            .map(|(b, (c, n))| (b * c / n).abs())
            .sum();
        let scale = y.abs().max(terms).max(f64::MIN_POSITIVE);
        max_rel = max_rel.max((fit - y).abs() / scale);
    }
    Ok(FitReport {
        model,
        window,
        samples_used: used.len(),
        max_rel_residual: max_rel,
        conditioning,
    })
}
