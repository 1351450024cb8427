//! Sum rules and the formfactor series of the chiral correlator.
//!
//! Summing `|F|^2` over all configurations at level `m` gives the Taylor
//! coefficient of
//!
//! ```text
//! G_a(z) = (1 - z)^(-a^2),   c_m = Gamma(a^2 + m) / (Gamma(m + 1) Gamma(a^2))
//! ```
//!
//! At `|z| = 1` the series converges only conditionally, so the identity is
//! checked at a damped argument `z = r e^{i theta}` with `r < 1`, where the
//! truncation error has a rigorous bound.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formfactor::{formfactor, VertexWeight};
use crate::gamma::rising_over_factorial;
use crate::states::{count_states, enumerate_level};

/// Terms below this size end the explicit tail summation.
const TAIL_TERM_FLOOR: f64 = 1e-16;
const TAIL_MAX_TERMS: usize = 10_000_000;

/// Compensated (Kahan-Babuska) accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = KahanSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct ComplexKahan {
    re: KahanSum,
    im: KahanSum,
}

impl ComplexKahan {
    fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    fn total(&self) -> Complex64 {
        Complex64::new(self.re.total(), self.im.total())
    }
}

/// Enumerated level sum compared with its closed form.
#[derive(Debug, Clone, Serialize)]
pub struct SumRuleReport {
    pub level: usize,
    pub a: f64,
    pub enumerated_sum: f64,
    pub closed_form: f64,
    pub rel_err: f64,
    pub state_count: usize,
}

/// Truncated series at a damped argument, with its error bound.
#[derive(Debug, Clone, Serialize)]
pub struct SeriesEvaluation {
    #[serde(serialize_with = "ser_complex")]
    pub z: Complex64,
    pub truncation: usize,
    #[serde(serialize_with = "ser_complex")]
    pub partial_sum: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub closed_form: Complex64,
    pub tail_bound: f64,
    pub abs_error: f64,
}

impl SeriesEvaluation {
    pub fn within_bound(&self) -> bool {
        self.abs_error <= self.tail_bound
    }
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &z.re)?;
    st.serialize_field("im", &z.im)?;
    st.end()
}

/// `Gamma(a^2 + m) / (Gamma(m + 1) Gamma(a^2))`.
pub fn level_sum_closed(m: usize, a: f64) -> f64 {
    rising_over_factorial(a * a, m).value()
}

/// `sum |F|^2` over every configuration at level `m`.
pub fn level_sum_enumerated(m: usize, a: f64) -> Result<SumRuleReport> {
    let weight = VertexWeight::new(a)?;
    let states = enumerate_level(m)?;
    let enumerated: KahanSum = states
        .iter()
        .map(|s| formfactor(s, weight).abs_sq())
        .collect();
    let enumerated_sum = enumerated.total();
    let closed_form = level_sum_closed(m, a);
    let diff = (enumerated_sum - closed_form).abs();
    let rel_err = if closed_form != 0.0 {
        diff / closed_form.abs()
    } else {
        diff
    };
    debug_assert_eq!(states.len() as u64, count_states(m));
    Ok(SumRuleReport {
        level: m,
        a,
        enumerated_sum,
        closed_form,
        rel_err,
        state_count: states.len(),
    })
}

/// Level sums for `m = 0..=max_level`, computed in parallel and returned in order.
pub fn sum_rule_table(max_level: usize, a: f64) -> Result<Vec<SumRuleReport>> {
    (0..=max_level)
        .into_par_iter()
        .map(|m| level_sum_enumerated(m, a))
        .collect()
}

/// `(1 - z)^(-a^2)` on the principal branch.
pub fn chiral_correlator(z: Complex64, a: f64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) || z.norm() > 1.0 + 1e-12 {
        return Err(Error::Domain(format!("|z| must be <= 1, got {z}")));
    }
    if a == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let base = Complex64::new(1.0, 0.0) - z;
    if base.norm() == 0.0 {
        return Err(Error::Singular("correlator diverges at z = 1".into()));
    }
    Ok(base.powf(-a * a))
}

/// Reduces an angle to `(-pi, pi]`.
pub fn reduce_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t - 2.0 * PI
    } else {
        t
    }
}

/// Rigorous bound on `sum_{m > truncation} c_m r^m`.
///
/// Terms are added through the ratio recurrence `c_{m+1}/c_m = (a^2+m)/(m+1)`
/// until they drop below `1e-16` with a contracting ratio; the rest is
/// bounded by a geometric series.
pub fn tail_bound(r: f64, a: f64, truncation: usize) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("damping radius must lie in (0, 1), got {r}")));
    }
    let a2 = a * a;
    let mut m = truncation + 1;
    let mut term = level_sum_closed(m, a) * r.powi(m as i32);
    let mut total = KahanSum::new();
    for _ in 0..TAIL_MAX_TERMS {
        if term == 0.0 {
            return Ok(total.total());
        }
        total.add(term);
        let ratio = r * (a2 + m as f64) / (m + 1) as f64;
        if term < TAIL_TERM_FLOOR && ratio < 1.0 {
            // Ratios decrease towards r when a^2 >= 1 and increase towards r otherwise.
            let q = ratio.max(r);
            return Ok(total.total() + term * q / (1.0 - q));
        }
        term *= ratio;
        m += 1;
    }
    Err(Error::Resource {
        what: "tail terms",
        requested: TAIL_MAX_TERMS + 1,
        cap: TAIL_MAX_TERMS,
    })
}

/// Partial sum of the formfactor series at `z = r e^{i theta}` up to level
/// `truncation`, with the enumerated level sums as coefficients.
pub fn reconstruct_correlator(r: f64, theta: f64, a: f64, truncation: usize) -> Result<SeriesEvaluation> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!(
            "damping radius must lie in (0, 1); r >= 1 is only conditionally convergent, got {r}"
        )));
    }
    let z = Complex64::from_polar(r, reduce_angle(theta));
    let levels = sum_rule_table(truncation, a)?;
    let mut acc = ComplexKahan::default();
    let mut power = Complex64::new(1.0, 0.0);
    for report in &levels {
        acc.add(power * report.enumerated_sum);
        power *= z;
    }
    let partial_sum = acc.total();
    let closed_form = chiral_correlator(z, a)?;
    Ok(SeriesEvaluation {
        z,
        truncation,
        partial_sum,
        closed_form,
        tail_bound: tail_bound(r, a, truncation)?,
        abs_error: (partial_sum - closed_form).norm(),
    })
}
