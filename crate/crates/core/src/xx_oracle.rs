//! The XX chain `H = sum_x (sx_x sx_{x+1} + sy_x sy_{x+1})` on a ring, solved
//! through free fermions, with a small exact diagonalisation as a check.
//!
//! Fermion momenta are stored as integers `j` with `k = pi j / L`, `j` in
//! `[0, 2L)`. An even number of fermions lives on odd `j` (antiperiodic
//! momenta), an odd number on even `j` (periodic). The dispersion is
//! `4 cos k`, so the Fermi sea sits around `k = pi`; sites are `0..L`.
//!
//! The right branch is the upper edge of the sea: a right particle `p`
//! occupies `j_top + 2p`, a right hole `q` empties `j_top + 2q`. The left
//! branch mirrors this at the lower edge.

use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::states::ChiralState;

/// Largest ring handled by exact diagonalisation.
pub const ED_MAX_LENGTH: usize = 12;

const SHELL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    /// `k = 2 pi (n + 1/2) / L`
    Antiperiodic,
    /// `k = 2 pi n / L`
    Periodic,
}

impl Sector {
    pub fn for_filling(filling: usize) -> Self {
        if filling.is_multiple_of(2) {
            Sector::Antiperiodic
        } else {
            Sector::Periodic
        }
    }

    pub fn other(self) -> Self {
        match self {
            Sector::Antiperiodic => Sector::Periodic,
            Sector::Periodic => Sector::Antiperiodic,
        }
    }

    fn indices(self, length: usize) -> impl Iterator<Item = i64> {
        let start = match self {
            Sector::Antiperiodic => 1,
            Sector::Periodic => 0,
        };
        (start..2 * length as i64).step_by(2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct XxChainConfig {
    length: usize,
    filling: usize,
}

impl XxChainConfig {
    pub fn new(length: usize, filling: usize) -> Result<Self> {
        if length < 2 || !length.is_multiple_of(2) {
            return Err(Error::Domain(format!("length must be even and >= 2, got {length}")));
        }
        if filling == 0 || filling >= length {
            return Err(Error::Domain(format!(
                "filling must satisfy 0 < M < L, got M={filling}, L={length}"
            )));
        }
        Ok(Self { length, filling })
    }

    pub fn half_filling(length: usize) -> Result<Self> {
        Self::new(length, length / 2)
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn filling(&self) -> usize {
        self.filling
    }

    pub fn sector(&self) -> Sector {
        Sector::for_filling(self.filling)
    }

    /// Fermi momentum `pi M / L`.
    pub fn fermi_momentum(&self) -> f64 {
        PI * self.filling as f64 / self.length as f64
    }

    /// The same ring with one fermion fewer.
    pub fn one_fewer(&self) -> Result<Self> {
        Self::new(self.length, self.filling - 1)
    }
}

pub fn dispersion(j: i64, length: usize) -> f64 {
    4.0 * (PI * j as f64 / length as f64).cos()
}

/// A Slater determinant of plane waves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SlaterState {
    length: usize,
    /// Ascending momentum indices.
    indices: Vec<i64>,
}

impl SlaterState {
    pub fn new(length: usize, indices: Vec<i64>) -> Result<Self> {
        let period = 2 * length as i64;
        let mut idx: Vec<i64> = indices.into_iter().map(|j| j.rem_euclid(period)).collect();
        idx.sort_unstable();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidState(format!("repeated momentum in {idx:?}")));
        }
        if let Some(first) = idx.first() {
            if idx.iter().any(|j| (j - first) % 2 != 0) {
                return Err(Error::InvalidState(format!("momenta {idx:?} mix sectors")));
            }
        }
        Ok(Self { length, indices: idx })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn momenta(&self) -> Vec<f64> {
        self.indices
            .iter()
            .map(|&j| PI * j as f64 / self.length as f64)
            .collect()
    }

    pub fn energy(&self) -> f64 {
        self.indices.iter().map(|&j| dispersion(j, self.length)).sum()
    }

    pub fn contains(&self, j: i64) -> bool {
        self.indices
            .binary_search(&j.rem_euclid(2 * self.length as i64))
            .is_ok()
    }

    /// `g(r) = (1/L) sum_occupied e^{i k r}`
    pub fn propagator(&self, r: i64) -> Complex64 {
        let l = self.length as f64;
        let s: Complex64 = self
            .indices
            .iter()
            .map(|&j| Complex64::from_polar(1.0, PI * (j * r) as f64 / l))
            .sum();
        s / l
    }
}

/// Lowest-energy Slater state of the config's sector.
pub fn ground_state(config: &XxChainConfig) -> Result<SlaterState> {
    ground_state_in(config.length, config.filling, config.sector())
}

/// Lowest-energy Slater state with the momenta of `sector`, which need
/// not be the physical one.
pub fn ground_state_in(length: usize, filling: usize, sector: Sector) -> Result<SlaterState> {
    let mut levels: Vec<(f64, i64)> = sector
        .indices(length)
        .map(|j| (dispersion(j, length), j))
        .collect();
    if filling > levels.len() {
        return Err(Error::Domain(format!("{filling} fermions exceed {} orbitals", levels.len())));
    }
    levels.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    if filling == levels.len() {
        return SlaterState::new(length, levels.iter().map(|l| l.1).collect());
    }
    let fermi = levels[filling - 1].0;
    let below: Vec<i64> = levels
        .iter()
        .filter(|l| l.0 < fermi - SHELL_TOL)
        .map(|l| l.1)
        .collect();
    let shell: Vec<i64> = levels
        .iter()
        .filter(|l| (l.0 - fermi).abs() <= SHELL_TOL)
        .map(|l| l.1)
        .collect();
    let needed = filling - below.len();
    if needed == shell.len() {
        return SlaterState::new(length, [below, shell].concat());
    }
    let mut minimizers: Vec<Vec<i64>> = combinations(&shell, needed)
        .into_iter()
        .map(|pick| {
            let mut v = [below.clone(), pick].concat();
            v.sort_unstable();
            v
        })
        .collect();
    minimizers.sort();
    Err(Error::Degeneracy {
        count: minimizers.len(),
        minimizers,
    })
}

fn combinations(items: &[i64], k: usize) -> Vec<Vec<i64>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &head) in items.iter().enumerate() {
        for mut tail in combinations(&items[i + 1..], k - 1) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// `<k'|k> = (1/L) sum_x e^{i (k - k') x}`
pub fn overlap(length: usize, bra: i64, ket: i64) -> Complex64 {
    let period = 2 * length as i64;
    let d = (ket - bra).rem_euclid(period);
    if d == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if d % 2 == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let l = length as f64;
    let denom = Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, PI * d as f64 / l);
    Complex64::new(2.0, 0.0) / (denom * l)
}

/// `|<bra| sigma^-_0 |ket>|` for Slater states with `|bra| = |ket| - 1`.
///
/// Removing the fermion at site 0 needs no Jordan-Wigner string, so the
/// matrix element is the determinant of the bra/ket overlaps bordered by a
/// row of site amplitudes `1/sqrt(L)`.
pub fn sigma_minus_element(bra: &SlaterState, ket: &SlaterState) -> Result<f64> {
    if bra.length != ket.length || bra.len() + 1 != ket.len() {
        return Err(Error::Domain(format!(
            "sigma^- connects M and M-1 fermions on one ring, got {} and {}",
            bra.len(),
            ket.len()
        )));
    }
    let n = ket.len();
    let site = Complex64::new(1.0 / (ket.length as f64).sqrt(), 0.0);
    let m = DMatrix::from_fn(n, n, |i, j| {
        if i + 1 == n {
            site
        } else {
            overlap(ket.length, bra.indices[i], ket.indices[j])
        }
    });
    Ok(m.determinant().norm())
}

/// `C = |<GS_{M-1}| sigma^-_0 |GS_M>|`
pub fn lowest_sigma_minus_formfactor(config: &XxChainConfig) -> Result<f64> {
    if config.filling < 2 {
        return Err(Error::Domain("the lowest formfactor needs M >= 2".into()));
    }
    let ket = ground_state(config)?;
    let bra = ground_state(&config.one_fewer()?)?;
    sigma_minus_element(&bra, &ket)
}

/// Applies right- and left-branch particle-hole moves to a Slater state.
pub fn excite(base: &SlaterState, right: &ChiralState, left: &ChiralState) -> Result<SlaterState> {
    let (Some(&bot), Some(&top)) = (base.indices.first(), base.indices.last()) else {
        return Err(Error::InvalidState("cannot excite an empty Fermi sea".into()));
    };
    let period = 2 * base.length as i64;
    let depth = base.len() as i64;
    if let Some(q) = right.holes().iter().chain(left.holes()).find(|&&q| -q >= depth) {
        return Err(Error::InvalidState(format!("hole {q} lies below a sea of {depth}")));
    }
    let mut occ: Vec<i64> = base.indices.clone();
    let removals = right
        .holes()
        .iter()
        .map(|&q| top + 2 * q)
        .chain(left.holes().iter().map(|&q| bot - 2 * q));
    for j in removals {
        let j = j.rem_euclid(period);
        let pos = occ
            .iter()
            .position(|&o| o == j)
            .ok_or_else(|| Error::InvalidState(format!("hole at j={j} is not occupied")))?;
        occ.remove(pos);
    }
    let additions = right
        .particles()
        .iter()
        .map(|&p| top + 2 * p)
        .chain(left.particles().iter().map(|&p| bot - 2 * p));
    for j in additions {
        let j = j.rem_euclid(period);
        if occ.contains(&j) {
            return Err(Error::InvalidState(format!("particle at j={j} collides")));
        }
        occ.push(j);
    }
    SlaterState::new(base.length, occ)
}

/// `|<lambda(p, q)| sigma^-_0 |GS_M>|` with the excitation built on `GS_{M-1}`.
pub fn particle_hole_sigma_minus_formfactor(
    config: &XxChainConfig,
    right: &ChiralState,
    left: &ChiralState,
) -> Result<f64> {
    let ket = ground_state(config)?;
    let base = ground_state(&config.one_fewer()?)?;
    let bra = excite(&base, right, left)?;
    sigma_minus_element(&bra, &ket)
}

/// Particle-hole formfactor divided by the lowest one.
pub fn particle_hole_ratio(config: &XxChainConfig, right: &ChiralState, left: &ChiralState) -> Result<f64> {
    let c = lowest_sigma_minus_formfactor(config)?;
    Ok(particle_hole_sigma_minus_formfactor(config, right, left)? / c)
}

/// `<sigma^+_x sigma^-_0>` in a Slater state, as the `x` by `x` determinant
/// `(1/2) det[2 g(j + 1 - i) - delta_{i, j+1}]`.
pub fn transverse_in(state: &SlaterState, x: usize) -> Result<f64> {
    if x == 0 || x >= state.length {
        return Err(Error::Domain(format!("x must lie in [1, {}), got {x}", state.length)));
    }
    let g: Vec<Complex64> = (0..=2 * x as i64).map(|r| state.propagator(r - x as i64)).collect();
    let m = DMatrix::from_fn(x, x, |i, j| {
        let r = j as i64 + 1 - i as i64;
        let mut v = g[(r + x as i64) as usize] * 2.0;
        if i == j + 1 {
            v -= 1.0;
        }
        v
    });
    Ok(m.determinant().re / 2.0)
}

pub fn transverse_correlator(config: &XxChainConfig, x: usize) -> Result<f64> {
    transverse_in(&ground_state(config)?, x)
}

/// `(x, <sigma^+_x sigma^-_0>)` for every `x` in `1..L`.
pub fn transverse_profile(config: &XxChainConfig) -> Result<Vec<(usize, f64)>> {
    let gs = ground_state(config)?;
    (1..config.length)
        .into_par_iter()
        .map(|x| Ok((x, transverse_in(&gs, x)?)))
        .collect()
}

/// Connected `<sigma^z_x sigma^z_0>` in a Slater state, `-4 |g(x)|^2`.
pub fn density_in(state: &SlaterState, x: usize) -> Result<f64> {
    if x == 0 || x >= state.length {
        return Err(Error::Domain(format!("x must lie in [1, {}), got {x}", state.length)));
    }
    Ok(-4.0 * state.propagator(x as i64).norm_sqr())
}

pub fn density_correlator(config: &XxChainConfig, x: usize) -> Result<f64> {
    density_in(&ground_state(config)?, x)
}

pub fn density_profile(config: &XxChainConfig) -> Result<Vec<(usize, f64)>> {
    let gs = ground_state(config)?;
    (1..config.length).map(|x| Ok((x, density_in(&gs, x)?))).collect()
}

/// Units of a density matrix element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityUnits {
    /// `n = c^dagger c`
    Number,
    /// `sigma^z = 2n - 1`
    SigmaZ,
}

/// The ground state with its lowest fermion carried across to just above
/// the upper Fermi edge: momentum transfer `2 p_F`, same particle number.
pub fn umklapp_state(config: &XxChainConfig) -> Result<SlaterState> {
    let gs = ground_state(config)?;
    let mut occ = gs.indices.clone();
    let bot = occ.remove(0);
    let top = *occ.last().unwrap_or(&bot);
    occ.push(top + 2);
    SlaterState::new(config.length, occ)
}

/// `<bra| n_site |ket>` for Slater states differing in at most one orbital.
pub fn one_body_element(bra: &SlaterState, ket: &SlaterState, site: i64) -> Result<Complex64> {
    if bra.length != ket.length || bra.len() != ket.len() {
        return Err(Error::Domain("density connects states of equal particle number".into()));
    }
    let l = ket.length as f64;
    let only_ket: Vec<(usize, i64)> = ket
        .indices
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, j)| !bra.contains(j))
        .collect();
    let only_bra: Vec<(usize, i64)> = bra
        .indices
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, j)| !ket.contains(j))
        .collect();
    match (only_ket.as_slice(), only_bra.as_slice()) {
        ([], []) => Ok(Complex64::new(ket.len() as f64 / l, 0.0)),
        ([(a, k)], [(b, kp)]) => {
            // c^dagger_{k'} c_k moves the orbital from slot a to slot b.
            let shift = (*a as i64 - *b as i64).unsigned_abs();
            let sign = if shift.is_multiple_of(2) { 1.0 } else { -1.0 };
            let phase = Complex64::from_polar(1.0, PI * ((k - kp) * site) as f64 / l);
            Ok(phase * (sign / l))
        }
        _ => Ok(Complex64::new(0.0, 0.0)),
    }
}

/// `|<t'| n_0 |t>|` with `t'` the `2 p_F` excitation: `1/L`, or `2/L` for `sigma^z`.
pub fn density_lowest_formfactor(config: &XxChainConfig, units: DensityUnits) -> Result<f64> {
    let gs = ground_state(config)?;
    let t = umklapp_state(config)?;
    let n = one_body_element(&t, &gs, 0)?.norm();
    Ok(match units {
        DensityUnits::Number => n,
        DensityUnits::SigmaZ => 2.0 * n,
    })
}

/// Ground state of one magnetisation sector by exact diagonalisation.
#[derive(Debug, Clone)]
pub struct EdSector {
    length: usize,
    filling: usize,
    basis: Vec<u32>,
    index: HashMap<u32, usize>,
    energy: f64,
    gap: f64,
    ground: DVector<f64>,
}

impl EdSector {
    pub fn new(length: usize, filling: usize) -> Result<Self> {
        if length > ED_MAX_LENGTH {
            return Err(Error::Resource {
                what: "ED length",
                requested: length,
                cap: ED_MAX_LENGTH,
            });
        }
        if length < 2 || filling == 0 || filling >= length {
            return Err(Error::Domain(format!("ED needs 0 < M < L, got M={filling}, L={length}")));
        }
        let basis: Vec<u32> = (0u32..1 << length)
            .filter(|s| s.count_ones() as usize == filling)
            .collect();
        let index: HashMap<u32, usize> = basis.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let dim = basis.len();
        let mut h = DMatrix::<f64>::zeros(dim, dim);
        for (col, &s) in basis.iter().enumerate() {
            for i in 0..length {
                let j = (i + 1) % length;
                if (s >> i) & 1 != (s >> j) & 1 {
                    let t = s ^ (1 << i) ^ (1 << j);
                    h[(index[&t], col)] += 2.0;
                }
            }
        }
        let eig = h.symmetric_eigen();
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let energy = eig.eigenvalues[order[0]];
        let gap = if dim > 1 {
            eig.eigenvalues[order[1]] - energy
        } else {
            f64::INFINITY
        };
        if gap < SHELL_TOL {
            return Err(Error::Domain(format!(
                "ED ground state at L={length}, M={filling} is degenerate"
            )));
        }
        let ground = eig.eigenvectors.column(order[0]).into_owned();
        Ok(Self {
            length,
            filling,
            basis,
            index,
            energy,
            gap,
            ground,
        })
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `<sigma^+_y sigma^-_x>`
    pub fn transverse_between(&self, y: usize, x: usize) -> f64 {
        let v = &self.ground;
        let mut r = 0.0;
        for (i, &s) in self.basis.iter().enumerate() {
            if (s >> x) & 1 == 1 && (s >> y) & 1 == 0 {
                let t = s ^ (1 << x) ^ (1 << y);
                r += v[self.index[&t]] * v[i];
            }
        }
        r
    }

    pub fn transverse(&self, x: usize) -> f64 {
        self.transverse_between(x, 0)
    }

    /// Connected `<sigma^z_y sigma^z_x>`
    pub fn density_between(&self, y: usize, x: usize) -> f64 {
        let mz = 2.0 * self.filling as f64 / self.length as f64 - 1.0;
        let spin = |s: u32, site: usize| if (s >> site) & 1 == 1 { 1.0 } else { -1.0 };
        let raw: f64 = self
            .basis
            .iter()
            .zip(self.ground.iter())
            .map(|(&s, &a)| a * a * spin(s, x) * spin(s, y))
            .sum();
        raw - mz * mz
    }

    pub fn density(&self, x: usize) -> f64 {
        self.density_between(x, 0)
    }

    /// `|<self| sigma^-_site |upper>|`, with `self` holding one up-spin fewer.
    pub fn sigma_minus_from(&self, upper: &EdSector, site: usize) -> Result<f64> {
        if upper.length != self.length || upper.filling != self.filling + 1 {
            return Err(Error::Domain("sigma^- lowers M by one on the same ring".into()));
        }
        let mut r = 0.0;
        for (i, &s) in upper.basis.iter().enumerate() {
            if (s >> site) & 1 == 1 {
                r += self.ground[self.index[&(s ^ (1 << site))]] * upper.ground[i];
            }
        }
        Ok(r.abs())
    }

    /// Amplitudes of a Slater state in this sector's spin basis.
    ///
    /// The configuration with up-spins at `x_1 < ... < x_M` carries
    /// `det[e^{i k_j x_i} / sqrt(L)]`.
    pub fn slater_vector(&self, state: &SlaterState) -> Result<Vec<Complex64>> {
        if state.length != self.length || state.len() != self.filling {
            return Err(Error::Domain("Slater state does not belong to this sector".into()));
        }
        let norm = 1.0 / (self.length as f64).sqrt();
        let ks = state.momenta();
        Ok(self
            .basis
            .iter()
            .map(|&s| {
                let sites: Vec<usize> = (0..self.length).filter(|&x| (s >> x) & 1 == 1).collect();
                let n = sites.len();
                DMatrix::from_fn(n, n, |i, j| Complex64::from_polar(norm, ks[j] * sites[i] as f64))
                    .determinant()
            })
            .collect())
    }

    /// `|<ground|state>|`, one for the true ground state.
    pub fn overlap_with(&self, state: &SlaterState) -> Result<f64> {
        let v = self.slater_vector(state)?;
        let s: Complex64 = v.iter().zip(self.ground.iter()).map(|(a, &b)| a.conj() * b).sum();
        Ok(s.norm())
    }

    /// `|<bra| sigma^z_site |ket>|` between two Slater states of this sector.
    pub fn sigma_z_element(&self, bra: &SlaterState, ket: &SlaterState, site: usize) -> Result<f64> {
        let b = self.slater_vector(bra)?;
        let k = self.slater_vector(ket)?;
        let s: Complex64 = self
            .basis
            .iter()
            .zip(b.iter().zip(&k))
            .map(|(&s, (x, y))| {
                let sz = if (s >> site) & 1 == 1 { 1.0 } else { -1.0 };
                x.conj() * y * sz
            })
            .sum();
        Ok(s.norm())
    }
}

/// Largest deviations between the free-fermion formulas and ED on one ring.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdComparison {
    pub length: usize,
    pub filling: usize,
    pub energy: f64,
    pub energy_diff: f64,
    pub ground_overlap: f64,
    pub transverse_max_diff: f64,
    pub density_max_diff: f64,
    pub lowest_formfactor: f64,
    pub lowest_formfactor_diff: f64,
    pub density_formfactor_diff: f64,
}

impl EdComparison {
    pub fn max_diff(&self) -> f64 {
        [
            self.energy_diff,
            (1.0 - self.ground_overlap).abs(),
            self.transverse_max_diff,
            self.density_max_diff,
            self.lowest_formfactor_diff,
            self.density_formfactor_diff,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Runs every free-fermion observable against ED at the given filling.
pub fn ed_reference(config: &XxChainConfig) -> Result<EdComparison> {
    let (length, filling) = (config.length, config.filling);
    let upper = EdSector::new(length, filling)?;
    let lower = EdSector::new(length, filling - 1)?;
    let gs = ground_state(config)?;

    let mut transverse_max_diff = 0.0f64;
    let mut density_max_diff = 0.0f64;
    for x in 1..length {
        transverse_max_diff = transverse_max_diff.max((transverse_in(&gs, x)? - upper.transverse(x)).abs());
        density_max_diff = density_max_diff.max((density_in(&gs, x)? - upper.density(x)).abs());
    }
    let lowest = lowest_sigma_minus_formfactor(config)?;
    let lowest_ed = lower.sigma_minus_from(&upper, 0)?;
    let dens = density_lowest_formfactor(config, DensityUnits::SigmaZ)?;
    let dens_ed = upper.sigma_z_element(&umklapp_state(config)?, &gs, 0)?;

    Ok(EdComparison {
        length,
        filling,
        energy: upper.energy(),
        energy_diff: (gs.energy() - upper.energy()).abs(),
        ground_overlap: upper.overlap_with(&gs)?,
        transverse_max_diff,
        density_max_diff,
        lowest_formfactor: lowest,
        lowest_formfactor_diff: (lowest - lowest_ed).abs(),
        density_formfactor_diff: (dens - dens_ed).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half(l: usize) -> XxChainConfig {
        XxChainConfig::half_filling(l).unwrap()
    }

    fn chiral(s: &str) -> ChiralState {
        s.parse().unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(XxChainConfig::new(7, 3).is_err());
        assert!(XxChainConfig::new(8, 0).is_err());
        assert!(XxChainConfig::new(8, 8).is_err());
        assert_eq!(half(8).sector(), Sector::Antiperiodic);
        assert_eq!(XxChainConfig::new(8, 3).unwrap().sector(), Sector::Periodic);
    }

    #[test]
    fn single_fermion_sits_at_pi() {
        let gs = ground_state(&XxChainConfig::new(4, 1).unwrap()).unwrap();
        assert_eq!(gs.indices(), &[4]);
        assert!((gs.momenta()[0] - PI).abs() < 1e-15);
    }

    #[test]
    fn half_filled_sea_is_symmetric() {
        for l in [8usize, 64] {
            let gs = ground_state(&half(l)).unwrap();
            assert_eq!(gs.len(), l / 2);
            let ks = gs.momenta();
            for (a, b) in ks.iter().zip(ks.iter().rev()) {
                assert!((a + b - 2.0 * PI).abs() < 1e-12);
            }
            // Fermi points at pi +- pi/2
            let kf = (ks[ks.len() - 1] - ks[0]) / 2.0;
            assert!((kf - PI / 2.0).abs() < PI / l as f64 + 1e-12);
        }
    }

    #[test]
    fn wrong_sector_is_degenerate() {
        match ground_state_in(8, 4, Sector::Periodic) {
            Err(Error::Degeneracy { count, minimizers }) => {
                assert_eq!(count, 2);
                assert_eq!(minimizers, vec![vec![4, 6, 8, 10], vec![6, 8, 10, 12]]);
            }
            other => panic!("expected degeneracy, got {other:?}"),
        }
    }

    #[test]
    fn overlap_is_unitary_within_sector() {
        let l = 10;
        for a in (1..20).step_by(2) {
            for b in (1..20).step_by(2) {
                let o = overlap(l, a, b);
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((o.re - expect).abs() < 1e-15 && o.im.abs() < 1e-15);
            }
        }
        // across sectors: sum_k' |<k'|k>|^2 = 1
        let total: f64 = (0..20).step_by(2).map(|a| overlap(l, a, 3).norm_sqr()).sum();
        assert!((total - 1.0).abs() < 1e-13);
    }

    #[test]
    fn ed_agreement() {
        for l in [8usize, 10] {
            let cmp = ed_reference(&half(l)).unwrap();
            assert!(cmp.max_diff() < 1e-10, "{cmp:?}");
        }
        let cmp = ed_reference(&half(8)).unwrap();
        assert!((cmp.lowest_formfactor - 0.50979).abs() < 1e-5);
    }

    #[test]
    fn ed_agreement_off_half_filling() {
        for (l, m) in [(8usize, 3usize), (10, 4), (10, 6)] {
            let cmp = ed_reference(&XxChainConfig::new(l, m).unwrap()).unwrap();
            assert!(cmp.max_diff() < 1e-10, "L={l} M={m}: {cmp:?}");
        }
    }

    #[test]
    fn ed_size_cap() {
        assert!(matches!(EdSector::new(14, 7), Err(Error::Resource { .. })));
    }

    #[test]
    fn translation_invariance() {
        let ed = EdSector::new(8, 4).unwrap();
        for x in 1..8 {
            for base in 0..8 {
                let y = (base + x) % 8;
                assert!((ed.transverse_between(y, base) - ed.transverse(x)).abs() < 1e-12);
                assert!((ed.density_between(y, base) - ed.density(x)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn formfactor_phase_is_site_independent() {
        let upper = EdSector::new(8, 4).unwrap();
        let lower = EdSector::new(8, 3).unwrap();
        let c0 = lower.sigma_minus_from(&upper, 0).unwrap();
        for site in 1..8 {
            assert!((lower.sigma_minus_from(&upper, site).unwrap() - c0).abs() < 1e-12);
        }
    }

    #[test]
    fn wrong_sector_fails_against_ed() {
        let ed = EdSector::new(8, 4).unwrap();
        let Err(Error::Degeneracy { minimizers, .. }) = ground_state_in(8, 4, Sector::Periodic) else {
            panic!("expected degeneracy");
        };
        for m in minimizers {
            let wrong = SlaterState::new(8, m).unwrap();
            assert!((wrong.energy() - ed.energy()).abs() > 0.5);
            let worst = (1..8)
                .map(|x| (transverse_in(&wrong, x).unwrap() - ed.transverse(x)).abs())
                .fold(0.0, f64::max);
            assert!(worst > 1e-2);
        }
    }

    #[test]
    fn staggered_transverse_sign() {
        let cfg = half(32);
        for x in 1..32 {
            let g = transverse_correlator(&cfg, x).unwrap();
            let expect = if x % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(g.signum(), expect, "x={x}");
        }
    }

    #[test]
    fn density_closed_form() {
        let l = 24;
        let cfg = half(l);
        let lf = l as f64;
        for x in 1..l {
            let s = (PI * x as f64 / lf).sin();
            let expect = -(2.0 / (lf * lf)) * (1.0 - (PI * x as f64).cos()) / (s * s);
            assert!((density_correlator(&cfg, x).unwrap() - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn density_formfactor_value() {
        for l in [8usize, 16, 256] {
            let cfg = half(l);
            let lf = l as f64;
            assert!((density_lowest_formfactor(&cfg, DensityUnits::SigmaZ).unwrap() - 2.0 / lf).abs() < 1e-15);
            assert!((density_lowest_formfactor(&cfg, DensityUnits::Number).unwrap() - 1.0 / lf).abs() < 1e-15);
        }
    }

    #[test]
    fn vacuum_excitation_has_unit_ratio() {
        let v = ChiralState::vacuum();
        assert!((particle_hole_ratio(&half(32), &v, &v).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn excitation_collisions() {
        let cfg = half(16);
        let base = ground_state(&cfg.one_fewer().unwrap()).unwrap();
        let v = ChiralState::vacuum();
        // A hole deeper than the sea does not exist.
        let deep = ChiralState::new(vec![1], vec![-20]).unwrap();
        assert!(matches!(excite(&base, &deep, &v), Err(Error::InvalidState(_))));
        // Right and left particles landing on the same orbital.
        let r = ChiralState::new(vec![6], vec![0]).unwrap();
        let l = ChiralState::new(vec![4], vec![0]).unwrap();
        assert!(matches!(excite(&base, &r, &l), Err(Error::InvalidState(_))));
    }

    #[test]
    fn ratios_approach_formfactors() {
        let cases = [("1;0", 0.5), ("2;0", 0.125), ("1;-1", 0.375), ("2,1;0,-1", 1.0 / 64.0)];
        let v = ChiralState::vacuum();
        for (s, target) in cases {
            let st = chiral(s);
            let errs: Vec<f64> = [32usize, 64, 128]
                .iter()
                .map(|&l| (particle_hole_ratio(&half(l), &st, &v).unwrap() - target).abs())
                .collect();
            assert!(errs[1] < errs[0] && errs[2] < errs[1], "{s}: {errs:?}");
            let left: Vec<f64> = [32usize, 64]
                .iter()
                .map(|&l| (particle_hole_ratio(&half(l), &v, &st).unwrap() - target).abs())
                .collect();
            assert!(left[1] < left[0], "left {s}: {left:?}");
        }
    }
}
