//! Particle-hole formfactors of the chiral vertex operator
//! `exp(a (2 pi / L) sum_{p>0} rho(p) / p)`.
//!
//! For a configuration with particles `p_i` and holes `q_i`
//!
//! ```text
//! F(p, q) = det[1 / (p_i - q_j)] * prod f+(p_i) * prod f-(q_i)
//! f+(p)   = Gamma(p + a)     / (Gamma(p)     Gamma(a))
//! f-(q)   = Gamma(1 - q - a) / (Gamma(1 - q) Gamma(1 - a))
//! ```
//!
//! Basis states are `a+_{p_1} a_{q_1} ... a+_{p_n} a_{q_n} |0>` with both lists
//! in canonical (decreasing) order; with that convention `F` is the signed
//! amplitude, not only its modulus.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::{rising_over_factorial, Sign, SignedLog};
use crate::states::{ChiralState, ExcitedState};

/// Overflow-safe formfactor value: sign plus natural log of the modulus.
pub type FormFactorValue = SignedLog;

/// Exponent coefficient `a` of the chiral vertex operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VertexWeight(f64);

impl VertexWeight {
    pub fn new(a: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::Domain(format!("vertex weight must be finite, got {a}")));
        }
        Ok(Self(a))
    }

    pub fn a(&self) -> f64 {
        self.0
    }

    /// `a^2`, the only combination any modulus depends on.
    pub fn squared(&self) -> f64 {
        self.0 * self.0
    }
}

/// Local operators whose harmonic expansions are implemented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    /// Bose field, or `sigma^-` of the XXZ chain.
    Boson,
    /// Fermi field.
    Fermion,
    /// Density, or `sigma^z` of the XXZ chain.
    Density,
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OperatorKind::Boson => "boson",
            OperatorKind::Fermion => "fermion",
            OperatorKind::Density => "density",
        })
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "boson" | "spin-minus" | "sigma-minus" => Ok(OperatorKind::Boson),
            "fermion" => Ok(OperatorKind::Fermion),
            "density" | "sigma-z" => Ok(OperatorKind::Density),
            other => Err(Error::Domain(format!("unknown operator kind {other:?}"))),
        }
    }
}

/// Particle edge factor `f+(p) = a * Gamma(p + a) / (Gamma(p) Gamma(a + 1))`.
///
/// At a non-positive integer `a` the Gamma pole is resolved through the
/// rising factorial; the result carries the `gamma_pole` flag.
pub fn f_plus(p: i64, a: f64) -> Result<FormFactorValue> {
    if p < 1 {
        return Err(Error::InvalidState(format!("particle momentum must be >= 1, got {p}")));
    }
    let lead = SignedLog::from_f64(a);
    let pole = crate::gamma::is_nonpositive_integer(a);
    Ok((lead * rising_over_factorial(a + 1.0, (p - 1) as usize)).with_gamma_pole(pole))
}

/// Hole edge factor `f-(q) = Gamma(1 - q - a) / (Gamma(1 - q) Gamma(1 - a))`.
pub fn f_minus(q: i64, a: f64) -> Result<FormFactorValue> {
    if q > 0 {
        return Err(Error::InvalidState(format!("hole momentum must be <= 0, got {q}")));
    }
    Ok(rising_over_factorial(1.0 - a, (-q) as usize))
}

/// `det[1 / (p_i - q_j)]` from the Cauchy product formula
///
/// ```text
/// prod_{i<j} (p_i - p_j)(q_j - q_i) / prod_{i,j} (p_i - q_j)
/// ```
///
/// evaluated in log space. Any ordering is accepted; the sign follows it.
pub fn cauchy_det(particles: &[i64], holes: &[i64]) -> Result<FormFactorValue> {
    let n = particles.len();
    if holes.len() != n {
        return Err(Error::InvalidState(format!(
            "{} particles but {} holes",
            n,
            holes.len()
        )));
    }
    let mut acc = SignedLog::one();
    for i in 0..n {
        for j in (i + 1)..n {
            let dp = particles[i] - particles[j];
            let dq = holes[j] - holes[i];
            if dp == 0 || dq == 0 {
                return Err(Error::InvalidState(format!(
                    "repeated momentum in p={particles:?}, q={holes:?}"
                )));
            }
            acc = acc * SignedLog::from_f64(dp as f64) * SignedLog::from_f64(dq as f64);
        }
    }
    for &p in particles {
        for &q in holes {
            let d = p - q;
            if d == 0 {
                return Err(Error::InvalidState(format!(
                    "particle and hole share momentum {p}"
                )));
            }
            acc = acc * SignedLog::from_f64(d as f64).recip();
        }
    }
    Ok(acc)
}

/// Formfactor `F(p_i, q_i)` of one branch.
pub fn formfactor(state: &ChiralState, weight: VertexWeight) -> FormFactorValue {
    let a = weight.a();
    let det = cauchy_det(state.particles(), state.holes())
        .expect("canonical states have distinct momenta");
    let plus: SignedLog = state
        .particles()
        .iter()
        .map(|&p| f_plus(p, a).expect("particles are >= 1"))
        .product();
    let minus: SignedLog = state
        .holes()
        .iter()
        .map(|&q| f_minus(q, a).expect("holes are <= 0"))
        .product();
    det * plus * minus
}

/// Branch weights `(a_R, a_L)` of the `m`-th harmonic of an operator.
///
/// The squares always add up to the correlator exponent of that harmonic.
/// Signs: the right weight of `sigma^-` at `m = 0` is `-sqrt(xi)/2`, the
/// density weight is `+m / sqrt(xi)`, and both continue smoothly in `m`.
pub fn chiral_weights(kind: OperatorKind, m: i64, xi: f64) -> Result<(VertexWeight, VertexWeight)> {
    if !(xi.is_finite() && xi > 0.0) {
        return Err(Error::Domain(format!("xi must be positive, got {xi}")));
    }
    if m < 0 {
        return Err(Error::Domain(format!("harmonic must be >= 0, got {m}")));
    }
    let s = xi.sqrt();
    let m = m as f64;
    let (right, left) = match kind {
        OperatorKind::Boson => (-(s / 2.0 + m / s), -(s / 2.0 - m / s)),
        OperatorKind::Fermion => {
            let k = (2.0 * m + 1.0) / (2.0 * s);
            (-(s / 2.0 + k), -(s / 2.0 - k))
        }
        OperatorKind::Density => {
            if m == 0.0 {
                return Err(Error::Domain(
                    "density has no m = 0 vertex term; the gradient term is separate".into(),
                ));
            }
            (m / s, m / s)
        }
    };
    Ok((VertexWeight(right), VertexWeight(left)))
}

/// `lowest * F_R(right) * F_L(left)` with the branch weights of the state's harmonic.
pub fn total_formfactor(
    state: &ExcitedState,
    kind: OperatorKind,
    xi: f64,
    lowest: f64,
) -> Result<FormFactorValue> {
    let (wr, wl) = chiral_weights(kind, state.harmonic, xi)?;
    Ok(SignedLog::from_f64(lowest) * formfactor(&state.right, wr) * formfactor(&state.left, wl))
}

/// `a` of the `m = 0` boson harmonic at the free-fermion point.
pub const FREE_FERMION_SIGMA_MINUS_WEIGHT: f64 = -0.5;

/// Right-branch weight of `sigma^-` at stiffness `xi`.
pub fn sigma_minus_weight(xi: f64) -> f64 {
    -xi.sqrt() / 2.0
}

/// Sign of a formfactor value as `-1`, `0` or `1`.
pub fn sign_of(v: &FormFactorValue) -> i8 {
    match v.sign() {
        Sign::Positive => 1,
        Sign::Negative => -1,
        Sign::Zero => 0,
    }
}

/// Exact rational evaluation for rational `a`, used as a bit-exact reference.
///
/// The determinant is taken by Gaussian elimination over the rationals, a
/// route independent of the Cauchy product formula.
pub mod exact {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, ToPrimitive, Zero};

    use crate::states::ChiralState;

    pub type Q = BigRational;

    pub fn rational(numer: i64, denom: i64) -> Q {
        Q::new(BigInt::from(numer), BigInt::from(denom))
    }

    pub fn to_f64(x: &Q) -> f64 {
        x.to_f64().unwrap_or(f64::NAN)
    }

    fn int(n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }

    /// `a (a+1) ... (a+p-1) / (p-1)!`
    pub fn f_plus(p: i64, a: &Q) -> Q {
        let num = (0..p).fold(Q::one(), |acc, j| acc * (a + int(j)));
        let den = (1..p).fold(Q::one(), |acc, j| acc * int(j));
        num / den
    }

    /// `(1-a)(2-a) ... (-q-a) / (-q)!`
    pub fn f_minus(hole: i64, a: &Q) -> Q {
        let n = -hole;
        let num = (0..n).fold(Q::one(), |acc, j| acc * (int(1 + j) - a));
        let den = (1..=n).fold(Q::one(), |acc, j| acc * int(j));
        num / den
    }

    /// `det[1 / (p_i - q_j)]` by exact elimination.
    pub fn cauchy_det(particles: &[i64], holes: &[i64]) -> Q {
        let mut m: Vec<Vec<Q>> = particles
            .iter()
            .map(|&p| holes.iter().map(|&h| rational(1, p - h)).collect())
            .collect();
        determinant(&mut m)
    }

    /// Determinant of a square rational matrix; the input is overwritten.
    pub fn determinant(m: &mut [Vec<Q>]) -> Q {
        let n = m.len();
        let mut det = Q::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Q::zero();
            };
            if pivot != col {
                m.swap(pivot, col);
                det = -det;
            }
            let head = m[col][col].clone();
            det *= &head;
            for r in (col + 1)..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = &m[r][col] / &head;
                for c in col..n {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
        det
    }

    pub fn formfactor(state: &ChiralState, a: &Q) -> Q {
        let mut v = cauchy_det(state.particles(), state.holes());
        for &p in state.particles() {
            v *= f_plus(p, a);
        }
        for &h in state.holes() {
            v *= f_minus(h, a);
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{enumerate_level, enumerate_up_to};
    use nalgebra::DMatrix;

    fn st(p: &[i64], q: &[i64]) -> ChiralState {
        ChiralState::new(p.to_vec(), q.to_vec()).unwrap()
    }

    fn w(a: f64) -> VertexWeight {
        VertexWeight::new(a).unwrap()
    }

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol * y.abs().max(1e-300)
    }

    /// Floating-point LU determinant; only trustworthy for well-conditioned cases.
    fn lu_det(p: &[i64], q: &[i64]) -> f64 {
        let n = p.len();
        DMatrix::from_fn(n, n, |i, j| 1.0 / (p[i] - q[j]) as f64).determinant()
    }

    fn direct_det(p: &[i64], q: &[i64]) -> f64 {
        exact::to_f64(&exact::cauchy_det(p, q))
    }

    #[test]
    fn edge_factor_examples() {
        for &a in &[-1.7, -0.5, 0.3, 1.2] {
            assert!(close(f_plus(1, a).unwrap().value(), a, 1e-14));
            assert!(close(f_plus(2, a).unwrap().value(), a * (a + 1.0), 1e-14));
            assert!(close(f_minus(0, a).unwrap().value(), 1.0, 1e-14));
            assert!(close(f_minus(-1, a).unwrap().value(), 1.0 - a, 1e-14));
        }
        assert!(close(f_plus(2, -0.5).unwrap().value(), -0.25, 1e-15));
        assert!(close(f_minus(-1, -0.5).unwrap().value(), 1.5, 1e-15));
        assert!(f_plus(0, 0.5).is_err());
        assert!(f_minus(1, 0.5).is_err());
    }

    #[test]
    fn edge_factor_recurrences() {
        // 0.1-spaced grid on [-2, 2] with the integer (pole) points removed
        let grid: Vec<f64> = (0..=40)
            .filter(|i| i % 10 != 0)
            .map(|i| -2.0 + 0.1 * i as f64)
            .collect();
        for &a in &grid {
            for p in 1..50i64 {
                let lo = f_plus(p, a).unwrap().value();
                let hi = f_plus(p + 1, a).unwrap().value();
                let want = (p as f64 + a) / p as f64;
                assert!((hi / lo - want).abs() <= 1e-12 * want.abs().max(1.0), "a={a} p={p}");
            }
            for q in -49..=0i64 {
                let lo = f_minus(q, a).unwrap().value();
                let hi = f_minus(q - 1, a).unwrap().value();
                let want = (1.0 - q as f64 - a) / (1.0 - q as f64);
                assert!((hi / lo - want).abs() <= 1e-12 * want.abs().max(1.0), "a={a} q={q}");
            }
        }
    }

    #[test]
    fn gamma_pole_is_flagged() {
        let v = f_plus(3, -1.0).unwrap();
        assert!(v.is_zero() && v.gamma_pole());
        let v = f_plus(1, -1.0).unwrap();
        assert_eq!(v.value(), -1.0);
        assert!(v.gamma_pole());
        // 1 - a = 0 makes every f- with q < 0 vanish.
        let v = f_minus(-2, 1.0).unwrap();
        assert!(v.is_zero() && v.gamma_pole());
        let f = formfactor(&st(&[3], &[0]), w(-2.0));
        assert!(f.gamma_pole());
        assert!(!formfactor(&st(&[3], &[0]), w(-0.5)).gamma_pole());
    }

    #[test]
    fn cauchy_examples() {
        assert_eq!(cauchy_det(&[], &[]).unwrap().value(), 1.0);
        assert_eq!(cauchy_det(&[1], &[0]).unwrap().value(), 1.0);
        assert!(close(cauchy_det(&[2, 1], &[0, -1]).unwrap().value(), -1.0 / 12.0, 1e-15));
        assert!(close(direct_det(&[2, 1], &[0, -1]), -1.0 / 12.0, 1e-15));
        assert!(close(lu_det(&[2, 1], &[0, -1]), -1.0 / 12.0, 1e-15));
    }

    #[test]
    fn lu_loses_digits_on_clustered_nodes() {
        let (p, q) = ([24, 23, 22, 21, 20, 19], [0, -1, -2, -3, -4, -5]);
        let ours = cauchy_det(&p, &q).unwrap().value();
        assert!(close(ours, direct_det(&p, &q), 1e-13));
        assert!(!close(ours, lu_det(&p, &q), 1e-8));
    }

    #[test]
    fn cauchy_rejects_repeats() {
        assert!(matches!(cauchy_det(&[2, 2], &[0, -1]), Err(Error::InvalidState(_))));
        assert!(matches!(cauchy_det(&[2, 1], &[0, 0]), Err(Error::InvalidState(_))));
        assert!(matches!(cauchy_det(&[1], &[1]), Err(Error::InvalidState(_))));
        assert!(matches!(cauchy_det(&[1, 2], &[0]), Err(Error::InvalidState(_))));
    }

    #[test]
    fn cauchy_matches_direct_for_any_order() {
        let cases: [(&[i64], &[i64]); 3] = [
            (&[1, 5, 3], &[-2, 0, -7]),
            (&[9, 2, 4, 1], &[0, -3, -1, -8]),
            (&[3, 1], &[0, -1]),
        ];
        for (p, q) in cases {
            let ours = cauchy_det(p, q).unwrap().value();
            assert!(close(ours, direct_det(p, q), 1e-13), "p={p:?} q={q:?}");
            assert!(close(ours, lu_det(p, q), 1e-10), "p={p:?} q={q:?}");
        }
    }

    #[test]
    fn formfactor_examples() {
        for &a in &[-0.5, 0.3, 1.2] {
            assert_eq!(formfactor(&ChiralState::vacuum(), w(a)).value(), 1.0);
            assert!(close(formfactor(&st(&[1], &[0]), w(a)).value(), a, 1e-14));
            // -a^2 (1 - a^2) / 12
            let want = -a * a * (1.0 - a * a) / 12.0;
            assert!(close(formfactor(&st(&[2, 1], &[0, -1]), w(a)).value(), want, 1e-13));
        }
        assert!(close(
            formfactor(&st(&[2, 1], &[0, -1]), w(-0.5)).value(),
            -1.0 / 64.0,
            1e-15
        ));
    }

    #[test]
    fn level_two_values() {
        let a = -0.5;
        let states = enumerate_level(2).unwrap();
        let vals: Vec<f64> = states.iter().map(|s| formfactor(s, w(a)).value()).collect();
        assert!(close(vals[0], a * (a + 1.0) / 2.0, 1e-15));
        assert!(close(vals[1], a * (1.0 - a) / 2.0, 1e-15));
        assert!(close(vals[0], -0.125, 1e-15));
        assert!(close(vals[1], -0.375, 1e-15));
    }

    #[test]
    fn float_path_matches_exact_rationals() {
        for (num, den) in [(-1, 2), (3, 10), (4, 5), (6, 5), (-7, 3)] {
            let a = exact::rational(num, den);
            let af = num as f64 / den as f64;
            for s in enumerate_up_to(8).unwrap() {
                let ef = exact::to_f64(&exact::formfactor(&s, &a));
                let ours = formfactor(&s, w(af)).value();
                assert!(
                    (ours - ef).abs() <= 1e-13 * ef.abs(),
                    "state {s} a={a}: {ours} vs {ef}"
                );
            }
        }
    }

    #[test]
    fn chiral_weight_examples() {
        for &xi in &[0.5, 1.0, 4.0 / 3.0, 2.0] {
            let (r, l) = chiral_weights(OperatorKind::Boson, 0, xi).unwrap();
            assert!(close(r.a(), -xi.sqrt() / 2.0, 1e-15));
            assert!(close(r.squared() + l.squared(), xi / 2.0, 1e-14));
            let (r, l) = chiral_weights(OperatorKind::Density, 1, xi).unwrap();
            assert!(close(r.a(), 1.0 / xi.sqrt(), 1e-15));
            assert!(close(r.squared() + l.squared(), 2.0 / xi, 1e-14));
        }
        let (r, l) = chiral_weights(OperatorKind::Fermion, 0, 1.0).unwrap();
        assert!(close(r.a().abs(), 1.0, 1e-15));
        assert_eq!(l.a(), 0.0);
        assert!(chiral_weights(OperatorKind::Density, 0, 1.0).is_err());
        assert!(chiral_weights(OperatorKind::Boson, -1, 1.0).is_err());
        assert!(chiral_weights(OperatorKind::Boson, 0, 0.0).is_err());
        assert_eq!(sigma_minus_weight(1.0), FREE_FERMION_SIGMA_MINUS_WEIGHT);
    }

    #[test]
    fn total_formfactor_examples() {
        let lowest = 0.37;
        let vac = ExcitedState::lowest(0, -1);
        let v = total_formfactor(&vac, OperatorKind::Boson, 1.7, lowest).unwrap();
        assert!(close(v.value(), lowest, 1e-15));

        let xi: f64 = 1.7;
        let one = st(&[1], &[0]);
        let s = ExcitedState::new(one.clone(), ChiralState::vacuum(), 0, -1);
        let v = total_formfactor(&s, OperatorKind::Boson, xi, lowest).unwrap();
        assert!(close(v.value().abs(), lowest * xi.sqrt() / 2.0, 1e-14));

        let s = ExcitedState::new(one.clone(), one, 0, -1);
        let v = total_formfactor(&s, OperatorKind::Boson, 1.0, lowest).unwrap();
        assert!(close(v.value().abs(), lowest / 4.0, 1e-14));
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("spin-minus".parse::<OperatorKind>().unwrap(), OperatorKind::Boson);
        assert_eq!("Density".parse::<OperatorKind>().unwrap(), OperatorKind::Density);
        assert!("photon".parse::<OperatorKind>().is_err());
        assert_eq!(OperatorKind::Fermion.to_string(), "fermion");
    }

    mod props {
        use super::*;
        use proptest::collection::btree_set;
        use proptest::prelude::*;

        fn state(max_n: usize, max_entry: i64) -> impl Strategy<Value = ChiralState> {
            (0..=max_n).prop_flat_map(move |n| {
                (
                    btree_set(1..=max_entry, n),
                    btree_set(-max_entry + 1..=0i64, n),
                )
                    .prop_map(|(p, q)| {
                        ChiralState::from_unordered(p.into_iter().collect(), q.into_iter().collect())
                            .unwrap()
                    })
            })
        }

        proptest! {
            #[test]
            fn closed_form_matches_direct(s in state(6, 40)) {
                let ours = cauchy_det(s.particles(), s.holes()).unwrap().value();
                let direct = direct_det(s.particles(), s.holes());
                prop_assert!((ours - direct).abs() <= 1e-12 * ours.abs());
            }

            #[test]
            fn canonical_sign(s in state(6, 40)) {
                let n = s.pairs();
                let want = if (n * n.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 };
                prop_assert_eq!(sign_of(&cauchy_det(s.particles(), s.holes()).unwrap()), want);
            }
        }
    }
}
