//! Brute-force chiral Fock space.
//!
//! States of one branch are kept as particle-hole configurations up to a
//! cutoff level. The density modes `rho(n) = sum_k a+_{k+n} a_k` act by
//! explicit single-fermion hops with signs taken from the filled Dirac sea
//! ordered by decreasing momentum. Amplitudes are reported in the paired
//! basis `a+_{p_1} a_{q_1} ... a+_{p_n} a_{q_n} |0>`, the same basis the
//! closed-form formfactor refers to.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formfactor::{formfactor, VertexWeight};
use crate::states::{enumerate_level, ChiralState};

/// Largest cutoff level the oracle is meant for.
pub const ORACLE_LEVEL_CAP: usize = 10;

#[derive(Debug, Clone)]
pub struct FockBasis {
    cutoff_level: usize,
    states: Vec<ChiralState>,
    index: HashMap<ChiralState, usize>,
    /// Sign of each paired basis vector relative to the ordered Slater determinant.
    gauge: Vec<f64>,
}

impl FockBasis {
    pub fn cutoff_level(&self) -> usize {
        self.cutoff_level
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[ChiralState] {
        &self.states
    }

    pub fn index_of(&self, state: &ChiralState) -> Option<usize> {
        self.index.get(state).copied()
    }

    pub fn zero_vector(&self) -> VertexVector {
        VertexVector {
            amplitudes: vec![0.0; self.len()],
        }
    }

    pub fn vacuum(&self) -> VertexVector {
        let mut v = self.zero_vector();
        v.amplitudes[0] = 1.0;
        v
    }

    pub fn basis_vector(&self, state: &ChiralState) -> Option<VertexVector> {
        let i = self.index_of(state)?;
        let mut v = self.zero_vector();
        v.amplitudes[i] = 1.0;
        Some(v)
    }
}

/// Amplitudes on the basis of a [`FockBasis`], in basis order.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexVector {
    amplitudes: Vec<f64>,
}

impl VertexVector {
    pub fn from_amplitudes(basis: &FockBasis, amplitudes: Vec<f64>) -> Result<Self> {
        if amplitudes.len() != basis.len() {
            return Err(Error::Domain(format!(
                "expected {} amplitudes, got {}",
                basis.len(),
                amplitudes.len()
            )));
        }
        Ok(Self { amplitudes })
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, basis: &FockBasis, state: &ChiralState) -> f64 {
        basis.index_of(state).map_or(0.0, |i| self.amplitudes[i])
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|x| x * x).sum()
    }

    pub fn dot(&self, other: &VertexVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(x, y)| x * y)
            .sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.amplitudes.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    fn axpy(&mut self, alpha: f64, x: &VertexVector) {
        for (y, xi) in self.amplitudes.iter_mut().zip(&x.amplitudes) {
            *y += alpha * xi;
        }
    }
}

/// All configurations with level `<= cutoff_level`, vacuum first.
pub fn build_basis(cutoff_level: usize) -> Result<FockBasis> {
    if cutoff_level > ORACLE_LEVEL_CAP {
        return Err(Error::Resource {
            what: "oracle cutoff level",
            requested: cutoff_level,
            cap: ORACLE_LEVEL_CAP,
        });
    }
    let mut states = Vec::new();
    for m in 0..=cutoff_level {
        states.extend(enumerate_level(m)?);
    }
    let index = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let gauge = states.iter().map(paired_gauge).collect();
    Ok(FockBasis {
        cutoff_level,
        states,
        index,
        gauge,
    })
}

/// Occupation pattern relative to the filled sea: extra particles at `k >= 1`
/// and holes at `k <= 0`.
#[derive(Debug, Clone, Default)]
struct Occupation {
    particles: BTreeSet<i64>,
    holes: BTreeSet<i64>,
}

impl Occupation {
    fn from_state(s: &ChiralState) -> Self {
        Self {
            particles: s.particles().iter().copied().collect(),
            holes: s.holes().iter().copied().collect(),
        }
    }

    fn is_occupied(&self, k: i64) -> bool {
        if k >= 1 {
            self.particles.contains(&k)
        } else {
            !self.holes.contains(&k)
        }
    }

    /// Occupied modes with momentum strictly above `k`.
    fn occupied_above(&self, k: i64) -> usize {
        let particles = self.particles.range(k + 1..).count();
        if k >= 0 {
            return particles;
        }
        let sea = (-k) as usize - self.holes.range(k + 1..).count();
        particles + sea
    }

    /// Applies `a_k`; returns the fermionic sign. `k` must be occupied.
    fn annihilate(&mut self, k: i64) -> f64 {
        let sign = parity(self.occupied_above(k));
        if k >= 1 {
            self.particles.remove(&k);
        } else {
            self.holes.insert(k);
        }
        sign
    }

    /// Applies `a+_k`; returns the fermionic sign. `k` must be empty.
    fn create(&mut self, k: i64) -> f64 {
        let sign = parity(self.occupied_above(k));
        if k >= 1 {
            self.particles.insert(k);
        } else {
            self.holes.remove(&k);
        }
        sign
    }

    fn to_state(&self) -> ChiralState {
        ChiralState::from_unordered(
            self.particles.iter().copied().collect(),
            self.holes.iter().copied().collect(),
        )
        .expect("hops keep particle and hole counts equal")
    }
}

fn parity(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Sign of `a+_{p_1} a_{q_1} ... a+_{p_n} a_{q_n} |0>` in the ordered Slater basis.
fn paired_gauge(state: &ChiralState) -> f64 {
    let mut occ = Occupation::default();
    let mut sign = 1.0;
    for (&p, &q) in state.particles().iter().zip(state.holes()).rev() {
        sign *= occ.annihilate(q);
        sign *= occ.create(p);
    }
    sign
}

/// All hops `k -> k + shift` out of `state`, with their Slater signs.
fn hops(state: &ChiralState, shift: i64) -> Vec<(ChiralState, f64)> {
    let occ = Occupation::from_state(state);
    let is_empty = |j: i64| !occ.is_occupied(j);

    let mut sources: BTreeSet<i64> = state.particles().iter().copied().collect();
    // sea modes that can reach an empty mode: above the Fermi point or into a hole
    if shift > 0 {
        sources.extend((1 - shift)..=0);
    }
    sources.extend(state.holes().iter().map(|h| h - shift).filter(|&k| k <= 0));

    sources
        .into_iter()
        .filter(|&k| occ.is_occupied(k) && is_empty(k + shift))
        .map(|k| {
            let mut next = occ.clone();
            let sign = next.annihilate(k) * next.create(k + shift);
            (next.to_state(), sign)
        })
        .collect()
}

/// `rho(shift) v` for any non-zero shift; components above the cutoff are dropped.
pub fn apply_density_shift(basis: &FockBasis, shift: i64, v: &VertexVector) -> VertexVector {
    assert!(shift != 0, "rho(0) is the conserved charge, not a mode");
    let mut out = basis.zero_vector();
    for (i, (src, &amp)) in basis.states.iter().zip(&v.amplitudes).enumerate() {
        if amp == 0.0 {
            continue;
        }
        if src.level() as i64 + shift > basis.cutoff_level as i64 {
            continue;
        }
        for (dst, sign) in hops(src, shift) {
            let j = basis.index[&dst];
            out.amplitudes[j] += basis.gauge[j] * sign * basis.gauge[i] * amp;
        }
    }
    out
}

/// `rho(n) v` for `n >= 1`; raises the level by exactly `n`.
pub fn apply_density_mode(basis: &FockBasis, n: usize, v: &VertexVector) -> VertexVector {
    assert!(n >= 1, "density modes start at n = 1");
    apply_density_shift(basis, n as i64, v)
}

/// `exp(a sum_{n>0} rho(n) / n) |0>` inside the basis.
///
/// Every `rho(n)` raises the level, so the exponential series ends after
/// `cutoff_level` terms and amplitudes at each level are exact.
pub fn vertex_state(basis: &FockBasis, a: f64) -> VertexVector {
    let cutoff = basis.cutoff_level;
    let mut total = basis.vacuum();
    let mut term = basis.vacuum();
    for order in 1..=cutoff {
        let mut next = basis.zero_vector();
        for n in 1..=cutoff {
            next.axpy(a / n as f64, &apply_density_mode(basis, n, &term));
        }
        for x in next.amplitudes.iter_mut() {
            *x /= order as f64;
        }
        total.axpy(1.0, &next);
        term = next;
    }
    total
}

/// Oracle amplitudes compared with the closed-form formfactor.
#[derive(Debug, Clone, Serialize)]
pub struct F1Report {
    pub max_level: usize,
    pub a: f64,
    pub states_checked: usize,
    pub max_abs_diff: f64,
    pub worst_state: String,
}

/// Compares the vertex-state amplitudes with `F` on every state up to `max_level`.
pub fn verify_f1(max_level: usize, a: f64) -> Result<F1Report> {
    let basis = build_basis(max_level)?;
    verify_f1_in(&basis, max_level, a)
}

pub fn verify_f1_in(basis: &FockBasis, max_level: usize, a: f64) -> Result<F1Report> {
    if max_level > basis.cutoff_level {
        return Err(Error::Domain(format!(
            "max level {max_level} exceeds the basis cutoff {}",
            basis.cutoff_level
        )));
    }
    let weight = VertexWeight::new(a)?;
    let v = vertex_state(basis, a);
    let mut report = F1Report {
        max_level,
        a,
        states_checked: 0,
        max_abs_diff: 0.0,
        worst_state: String::new(),
    };
    for (state, &amp) in basis.states.iter().zip(&v.amplitudes) {
        if state.level() > max_level {
            continue;
        }
        let diff = (amp - formfactor(state, weight).value()).abs();
        report.states_checked += 1;
        if diff > report.max_abs_diff || report.worst_state.is_empty() {
            report.max_abs_diff = report.max_abs_diff.max(diff);
            report.worst_state = state.to_string();
        }
    }
    Ok(report)
}

/// Violation of `[rho(-n), rho(n)] = n` over the basis.
#[derive(Debug, Clone, Serialize)]
pub struct CommutatorReport {
    pub n: usize,
    pub cutoff_level: usize,
    pub states_checked: usize,
    pub max_violation: f64,
}

/// `[rho(-n), rho(n)] v` for `v` supported on levels `<= cutoff - n`.
pub fn commutator(basis: &FockBasis, n: usize, v: &VertexVector) -> VertexVector {
    let shift = n as i64;
    let up_down = apply_density_shift(basis, -shift, &apply_density_shift(basis, shift, v));
    let down_up = apply_density_shift(basis, shift, &apply_density_shift(basis, -shift, v));
    let mut out = up_down;
    out.axpy(-1.0, &down_up);
    out
}

/// Checks `[rho(-n), rho(n)] e = n e` on every basis vector `e` whose level
/// leaves room for `rho(n)` below the cutoff.
pub fn verify_commutator(basis: &FockBasis, n: usize) -> Result<CommutatorReport> {
    if n == 0 || n > basis.cutoff_level {
        return Err(Error::Domain(format!(
            "mode index must lie in 1..={}, got {n}",
            basis.cutoff_level
        )));
    }
    let mut report = CommutatorReport {
        n,
        cutoff_level: basis.cutoff_level,
        states_checked: 0,
        max_violation: 0.0,
    };
    for state in &basis.states {
        if state.level() + n > basis.cutoff_level {
            continue;
        }
        let e = basis.basis_vector(state).expect("state is in its own basis");
        let mut w = commutator(basis, n, &e);
        w.axpy(-(n as f64), &e);
        report.states_checked += 1;
        report.max_violation = report.max_violation.max(w.max_abs());
    }
    Ok(report)
}

/// `<v| [rho(-n), rho(n)] |v>`.
pub fn commutator_expectation(basis: &FockBasis, n: usize, v: &VertexVector) -> f64 {
    v.dot(&commutator(basis, n, v))
}
