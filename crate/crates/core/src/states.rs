//! Chiral particle-hole configurations.
//!
//! A configuration with particles `p_1 > ... > p_n >= 1` and holes
//! `0 >= q_1 > ... > q_n` sits at level `sum p - sum q`. Configurations at
//! level `m` are in bijection with the integer partitions of `m` through
//! Frobenius coordinates (arms `p_i - 1`, legs `-q_i`), which is how they are
//! enumerated here.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest level `enumerate_level` accepts unless a different cap is given.
pub const DEFAULT_LEVEL_CAP: usize = 24;

/// Particle and hole momenta of one Fermi branch, in units of `2 pi / L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChiralState {
    particles: Vec<i64>,
    holes: Vec<i64>,
}

impl ChiralState {
    pub fn new(particles: Vec<i64>, holes: Vec<i64>) -> Result<Self> {
        if particles.len() != holes.len() {
            return Err(Error::InvalidState(format!(
                "{} particles but {} holes",
                particles.len(),
                holes.len()
            )));
        }
        if particles.iter().any(|&p| p < 1) {
            return Err(Error::InvalidState(format!(
                "particle momenta must be >= 1: {particles:?}"
            )));
        }
        if holes.iter().any(|&q| q > 0) {
            return Err(Error::InvalidState(format!("hole momenta must be <= 0: {holes:?}")));
        }
        if !strictly_decreasing(&particles) {
            return Err(Error::InvalidState(format!(
                "particles must be distinct and in decreasing order: {particles:?}"
            )));
        }
        if !strictly_decreasing(&holes) {
            return Err(Error::InvalidState(format!(
                "holes must be distinct and in decreasing order: {holes:?}"
            )));
        }
        Ok(Self { particles, holes })
    }

    /// Sorts both lists into canonical order before validating.
    pub fn from_unordered(mut particles: Vec<i64>, mut holes: Vec<i64>) -> Result<Self> {
        particles.sort_unstable_by(|a, b| b.cmp(a));
        holes.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(particles, holes)
    }

    pub fn vacuum() -> Self {
        Self {
            particles: Vec::new(),
            holes: Vec::new(),
        }
    }

    pub fn particles(&self) -> &[i64] {
        &self.particles
    }

    pub fn holes(&self) -> &[i64] {
        &self.holes
    }

    /// Number of particle-hole pairs.
    pub fn pairs(&self) -> usize {
        self.particles.len()
    }

    pub fn is_vacuum(&self) -> bool {
        self.particles.is_empty()
    }

    pub fn level(&self) -> usize {
        level(self)
    }

    fn sort_key(&self) -> Vec<i64> {
        self.particles.iter().chain(&self.holes).copied().collect()
    }
}

fn strictly_decreasing(xs: &[i64]) -> bool {
    xs.windows(2).all(|w| w[0] > w[1])
}

impl fmt::Display for ChiralState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[i64]| {
            xs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{{p=({}),q=({})}}", join(&self.particles), join(&self.holes))
    }
}

/// Parses `"p1,p2,...;q1,q2,..."`; the empty string and `";"` give the vacuum.
impl FromStr for ChiralState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::vacuum());
        }
        let (ps, qs) = s
            .split_once(';')
            .ok_or_else(|| Error::InvalidState(format!("expected 'particles;holes', got {s:?}")))?;
        let parse = |part: &str| -> Result<Vec<i64>> {
            part.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|e| Error::InvalidState(format!("bad momentum {t:?}: {e}")))
                })
                .collect()
        };
        Self::new(parse(ps)?, parse(qs)?)
    }
}

/// Excitation on both branches on top of the lowest state of harmonic `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExcitedState {
    pub right: ChiralState,
    pub left: ChiralState,
    pub harmonic: i64,
    pub delta_n: i64,
}

impl ExcitedState {
    pub fn new(right: ChiralState, left: ChiralState, harmonic: i64, delta_n: i64) -> Self {
        Self {
            right,
            left,
            harmonic,
            delta_n,
        }
    }

    pub fn lowest(harmonic: i64, delta_n: i64) -> Self {
        Self::new(ChiralState::vacuum(), ChiralState::vacuum(), harmonic, delta_n)
    }
}

/// `sum p_i - sum q_i`.
pub fn level(state: &ChiralState) -> usize {
    let p: i64 = state.particles.iter().sum();
    let q: i64 = state.holes.iter().sum();
    (p - q) as usize
}

/// All configurations at level `m`, in canonical order.
pub fn enumerate_level(m: usize) -> Result<Vec<ChiralState>> {
    enumerate_level_capped(m, DEFAULT_LEVEL_CAP)
}

/// As [`enumerate_level`] with an explicit cap.
///
/// Canonical order is descending lexicographic order of the concatenated
/// particle and hole lists.
pub fn enumerate_level_capped(m: usize, cap: usize) -> Result<Vec<ChiralState>> {
    if m > cap {
        return Err(Error::Resource {
            what: "enumeration level",
            requested: m,
            cap,
        });
    }
    let mut out = Vec::new();
    let mut parts = Vec::new();
    for_each_partition(m, m, &mut parts, &mut |lambda| out.push(frobenius(lambda)));
    out.sort_by_key(|s| std::cmp::Reverse(s.sort_key()));
    Ok(out)
}

/// Every configuration with level `<= max_level`, grouped by level.
pub fn enumerate_up_to(max_level: usize) -> Result<Vec<ChiralState>> {
    let mut out = Vec::new();
    for m in 0..=max_level {
        out.extend(enumerate_level(m)?);
    }
    Ok(out)
}

fn for_each_partition(
    remaining: usize,
    max_part: usize,
    parts: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if remaining == 0 {
        emit(parts);
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        parts.push(part);
        for_each_partition(remaining - part, part, parts, emit);
        parts.pop();
    }
}

/// Maps a partition (parts in decreasing order) to its particle-hole state.
fn frobenius(lambda: &[usize]) -> ChiralState {
    let durfee = lambda
        .iter()
        .enumerate()
        .take_while(|(i, &part)| part > *i)
        .count();
    let conjugate = |j: usize| lambda.iter().take_while(|&&part| part > j).count();
    let particles = (0..durfee).map(|i| (lambda[i] - i) as i64).collect();
    let mut holes: Vec<i64> = (0..durfee).map(|i| i as i64 - conjugate(i) as i64 + 1).collect();
    holes.reverse();
    ChiralState { particles, holes }
}

/// Number of configurations at level `m`, i.e. the partition number `p(m)`,
/// from Euler's pentagonal-number recurrence.
pub fn count_states(m: usize) -> u64 {
    let mut p = vec![0u64; m + 1];
    p[0] = 1;
    for n in 1..=m {
        let mut total: i128 = 0;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let sign: i128 = if k % 2 == 1 { 1 } else { -1 };
            total += sign * p[n - g1] as i128;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= n {
                total += sign * p[n - g2] as i128;
            }
        }
        p[n] = total as u64;
    }
    p[m]
}
