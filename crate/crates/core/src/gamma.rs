//! Signed log-space arithmetic for Gamma-function ratios.

use std::ops::Mul;

use serde::Serialize;

/// Sign of a real quantity kept separately from its log-magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Positive,
    Negative,
    Zero,
}

impl Sign {
    pub fn of(x: f64) -> Self {
        if x > 0.0 {
            Sign::Positive
        } else if x < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Positive => 1.0,
            Sign::Negative => -1.0,
            Sign::Zero => 0.0,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

/// A real number stored as `sign * exp(ln_abs)`.
///
/// `gamma_pole` records that a Gamma pole was met and resolved through the
/// finite rising-factorial form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignedLog {
    ln_abs: f64,
    sign: Sign,
    gamma_pole: bool,
}

impl SignedLog {
    pub fn one() -> Self {
        Self {
            ln_abs: 0.0,
            sign: Sign::Positive,
            gamma_pole: false,
        }
    }

    pub fn zero() -> Self {
        Self {
            ln_abs: f64::NEG_INFINITY,
            sign: Sign::Zero,
            gamma_pole: false,
        }
    }

    pub fn from_parts(ln_abs: f64, sign: Sign) -> Self {
        if sign == Sign::Zero {
            return Self::zero();
        }
        Self {
            ln_abs,
            sign,
            gamma_pole: false,
        }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::from_parts(x.abs().ln(), Sign::of(x))
    }

    pub fn with_gamma_pole(mut self, flag: bool) -> Self {
        self.gamma_pole |= flag;
        self
    }

    pub fn ln_abs(&self) -> f64 {
        self.ln_abs
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn gamma_pole(&self) -> bool {
        self.gamma_pole
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::Zero
    }

    pub fn value(&self) -> f64 {
        match self.sign {
            Sign::Zero => 0.0,
            s => s.as_f64() * self.ln_abs.exp(),
        }
    }

    /// `|x|^2`, evaluated from the log-magnitude.
    pub fn abs_sq(&self) -> f64 {
        match self.sign {
            Sign::Zero => 0.0,
            _ => (2.0 * self.ln_abs).exp(),
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Self {
            ln_abs: -self.ln_abs,
            ..*self
        }
    }
}

impl Mul for SignedLog {
    type Output = SignedLog;

    fn mul(self, rhs: SignedLog) -> SignedLog {
        let sign = self.sign * rhs.sign;
        let pole = self.gamma_pole || rhs.gamma_pole;
        if sign == Sign::Zero {
            return SignedLog::zero().with_gamma_pole(pole);
        }
        SignedLog {
            ln_abs: self.ln_abs + rhs.ln_abs,
            sign,
            gamma_pole: pole,
        }
    }
}

impl std::iter::Product for SignedLog {
    fn product<I: Iterator<Item = SignedLog>>(iter: I) -> Self {
        iter.fold(SignedLog::one(), |acc, x| acc * x)
    }
}

/// `ln |Gamma(x)|` and the sign of `Gamma(x)`; at poles the magnitude is infinite.
pub fn ln_gamma_signed(x: f64) -> (f64, Sign) {
    let (ln_abs, s) = libm::lgamma_r(x);
    let sign = if s < 0 { Sign::Negative } else { Sign::Positive };
    (ln_abs, sign)
}

/// True when `x` is `0, -1, -2, ...`.
pub fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// Rising factorials up to this length are summed term by term; longer
/// ones go through `lgamma`.
const DIRECT_PRODUCT_MAX: usize = 64;

/// `Gamma(b + n) / (Gamma(b) n!)`, the coefficient of `z^n` in `(1 - z)^(-b)`.
///
/// When `b` is a non-positive integer the ratio is the finite polynomial
/// `b (b+1) ... (b+n-1) / n!`, which vanishes for `n > -b`; the result is
/// then flagged with `gamma_pole`.
pub fn rising_over_factorial(b: f64, n: usize) -> SignedLog {
    if is_nonpositive_integer(b) {
        if n as f64 > -b {
            return SignedLog::zero().with_gamma_pole(true);
        }
        return rising_direct(b, n).with_gamma_pole(true);
    }
    if n <= DIRECT_PRODUCT_MAX {
        return rising_direct(b, n);
    }
    rising_lgamma(b, n)
}

fn rising_direct(b: f64, n: usize) -> SignedLog {
    let mut ln_abs = 0.0;
    let mut negative = false;
    for j in 0..n {
        let t = (b + j as f64) / (j + 1) as f64;
        if t == 0.0 {
            return SignedLog::zero();
        }
        negative ^= t < 0.0;
        ln_abs += t.abs().ln();
    }
    let sign = if negative { Sign::Negative } else { Sign::Positive };
    SignedLog::from_parts(ln_abs, sign)
}

pub(crate) fn rising_lgamma(b: f64, n: usize) -> SignedLog {
    let (num, s_num) = ln_gamma_signed(b + n as f64);
    let (den, s_den) = ln_gamma_signed(b);
    let (fact, _) = ln_gamma_signed(n as f64 + 1.0);
    SignedLog::from_parts(num - den - fact, s_num * s_den)
}
