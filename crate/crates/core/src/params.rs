//! Luttinger parameters and the zero-mode energy tower.
//!
//! The two universal inputs are the stiffness `xi` and the sound velocity
//! `u`. For the density-density coupling `lambda` of the two-branch model
//!
//! ```text
//! u  = sqrt(1 - lambda^2)
//! xi = sqrt((1 + lambda) / (1 - lambda))
//! ```
//!
//! and for the XXZ chain with anisotropy `delta = cos(eta)` the stiffness is
//! `xi = 2 (pi - eta) / pi`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Universal inputs shared by every formula in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LuttingerParams {
    xi: f64,
    u: f64,
    length: f64,
    fermi_momentum: f64,
}

impl LuttingerParams {
    pub fn new(xi: f64, u: f64, length: f64, fermi_momentum: f64) -> Result<Self> {
        if !(xi.is_finite() && xi > 0.0) {
            return Err(Error::Domain(format!("xi must be positive, got {xi}")));
        }
        if !(u.is_finite() && u > 0.0) {
            return Err(Error::Domain(format!("u must be positive, got {u}")));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::Domain(format!("length must be positive, got {length}")));
        }
        if !(0.0..=PI).contains(&fermi_momentum) {
            return Err(Error::Domain(format!(
                "fermi momentum must lie in [0, pi], got {fermi_momentum}"
            )));
        }
        Ok(Self {
            xi,
            u,
            length,
            fermi_momentum,
        })
    }

    /// Free fermions at half filling: `xi = u = 1`, `p_F = pi/2`.
    pub fn free_fermion(length: f64) -> Result<Self> {
        Self::new(1.0, 1.0, length, PI / 2.0)
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn fermi_momentum(&self) -> f64 {
        self.fermi_momentum
    }
}

/// Zero-mode quantum numbers `(dN, dQ)`. Their sum must be even so that the
/// per-branch numbers `dN1 = (dN + dQ)/2`, `dN2 = (dN - dQ)/2` are integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SectorCharge {
    delta_n: i64,
    delta_q: i64,
}

impl SectorCharge {
    pub fn new(delta_n: i64, delta_q: i64) -> Result<Self> {
        if (delta_n + delta_q).rem_euclid(2) != 0 {
            return Err(Error::Domain(format!(
                "dN + dQ must be even, got dN={delta_n}, dQ={delta_q}"
            )));
        }
        Ok(Self { delta_n, delta_q })
    }

    /// Builds the charge from the extra particle numbers at the two Fermi points.
    pub fn from_branches(right: i64, left: i64) -> Self {
        Self {
            delta_n: right + left,
            delta_q: right - left,
        }
    }

    pub fn delta_n(&self) -> i64 {
        self.delta_n
    }

    pub fn delta_q(&self) -> i64 {
        self.delta_q
    }

    pub fn right(&self) -> i64 {
        (self.delta_n + self.delta_q) / 2
    }

    pub fn left(&self) -> i64 {
        (self.delta_n - self.delta_q) / 2
    }
}

/// Parameters of the two-branch model with coupling `lambda`.
pub fn params_from_coupling(lambda: f64, length: f64, fermi_momentum: f64) -> Result<LuttingerParams> {
    if !(lambda.is_finite() && lambda.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "coupling must satisfy |lambda| < 1, got {lambda}"
        )));
    }
    let u = (1.0 - lambda * lambda).sqrt();
    let xi = ((1.0 + lambda) / (1.0 - lambda)).sqrt();
    LuttingerParams::new(xi, u, length, fermi_momentum)
}

/// Inverse of the `xi(lambda)` map: `lambda = (xi^2 - 1) / (xi^2 + 1)`.
pub fn coupling_from_xi(xi: f64) -> Result<f64> {
    if !(xi.is_finite() && xi > 0.0) {
        return Err(Error::Domain(format!("xi must be positive, got {xi}")));
    }
    let x2 = xi * xi;
    Ok((x2 - 1.0) / (x2 + 1.0))
}

/// XXZ stiffness for anisotropy `delta = cos(eta)`; the isotropic point
/// `delta = 1` is included as the `eta = 0` limit.
pub fn xi_from_anisotropy(delta: f64) -> Result<f64> {
    if !(delta.is_finite() && delta > -1.0 && delta <= 1.0) {
        return Err(Error::Domain(format!(
            "anisotropy must lie in (-1, 1], got {delta}"
        )));
    }
    let eta = delta.acos();
    Ok(2.0 * (PI - eta) / PI)
}

/// Energy of the zero-mode sector, `(pi / 2L) u [xi dN^2 + dQ^2 / xi]`.
pub fn finite_size_energy(params: &LuttingerParams, charge: SectorCharge) -> f64 {
    let dn = charge.delta_n as f64;
    let dq = charge.delta_q as f64;
    PI / (2.0 * params.length) * params.u * (params.xi * dn * dn + dq * dq / params.xi)
}
