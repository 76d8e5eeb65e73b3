//! Grey numbers: closed real intervals whose exact position is unknown.
//!
//! Arithmetic follows ordinary interval arithmetic on `f64` endpoints with
//! no outward rounding. Every value is finite with `lower <= upper`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A closed interval `[lower, upper]` standing in for an indeterminate value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGrey")]
pub struct GreyNumber {
    lower: f64,
    upper: f64,
}

#[derive(Deserialize)]
struct RawGrey {
    lower: f64,
    upper: f64,
}

impl TryFrom<RawGrey> for GreyNumber {
    type Error = Error;

    fn try_from(raw: RawGrey) -> Result<Self> {
        GreyNumber::new(raw.lower, raw.upper)
    }
}

impl GreyNumber {
    /// Builds `[lower, upper]`, rejecting reversed or non-finite endpoints.
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !lower.is_finite() || !upper.is_finite() || lower > upper {
            return Err(Error::InvalidInterval { lower, upper });
        }
        Ok(GreyNumber { lower, upper })
    }

    /// The white number `[value, value]`.
    pub fn white(value: f64) -> Result<Self> {
        Self::new(value, value)
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// A grey number is white when both stored endpoints are identical.
    pub fn is_white(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    /// Interval quotient. Fails when the divisor straddles or touches zero.
    pub fn try_div(self, divisor: GreyNumber) -> Result<GreyNumber> {
        if divisor.contains_zero() {
            return Err(Error::DivisionByZero(divisor));
        }
        Ok(hull4(
            self.lower / divisor.lower,
            self.lower / divisor.upper,
            self.upper / divisor.lower,
            self.upper / divisor.upper,
        ))
    }

    /// `k * self` for strictly positive `k`.
    ///
    /// Scaling by zero or a negative factor goes through `GreyNumber::white(k)? * self`.
    pub fn scalar_mul(self, k: f64) -> Result<GreyNumber> {
        if !k.is_finite() || k <= 0.0 {
            return Err(Error::NonPositiveScalar(k));
        }
        Ok(GreyNumber {
            lower: k * self.lower,
            upper: k * self.upper,
        })
    }

    /// Equal-weight whitening `(1 - t) * lower + t * upper`.
    ///
    /// Evaluated as `lower + t * width`, which is monotone in `t` under
    /// rounding; the result is clamped into the interval.
    pub fn whiten(&self, t: Whitening) -> f64 {
        let t = t.value();
        if t == 0.0 {
            return self.lower;
        }
        if t == 1.0 {
            return self.upper;
        }
        let width = self.width();
        let w = if width.is_finite() {
            self.lower + t * width
        } else {
            (1.0 - t) * self.lower + t * self.upper
        };
        w.clamp(self.lower, self.upper)
    }

    /// Whitening with `t = 1/2`.
    pub fn midpoint(&self) -> f64 {
        self.whiten(Whitening::EQUAL_WEIGHT)
    }
}

fn hull4(a: f64, b: f64, c: f64, d: f64) -> GreyNumber {
    GreyNumber {
        lower: a.min(b).min(c).min(d),
        upper: a.max(b).max(c).max(d),
    }
}

impl Add for GreyNumber {
    type Output = GreyNumber;

    fn add(self, rhs: GreyNumber) -> GreyNumber {
        GreyNumber {
            lower: self.lower + rhs.lower,
            upper: self.upper + rhs.upper,
        }
    }
}

impl Sub for GreyNumber {
    type Output = GreyNumber;

    fn sub(self, rhs: GreyNumber) -> GreyNumber {
        GreyNumber {
            lower: self.lower - rhs.upper,
            upper: self.upper - rhs.lower,
        }
    }
}

impl Mul for GreyNumber {
    type Output = GreyNumber;

    fn mul(self, rhs: GreyNumber) -> GreyNumber {
        hull4(
            self.lower * rhs.lower,
            self.lower * rhs.upper,
            self.upper * rhs.lower,
            self.upper * rhs.upper,
        )
    }
}

/// Renders as `[lower, upper]` with at most four decimals.
impl fmt::Display for GreyNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", trim4(self.lower), trim4(self.upper))
    }
}

fn trim4(x: f64) -> String {
    let s = format!("{:.4}", x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    match s {
        "-0" => "0".to_string(),
        s => s.to_string(),
    }
}

/// The whitening weight `t` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Whitening(f64);

impl Whitening {
    /// `t = 1/2`, used when nothing is known about the distribution inside the interval.
    pub const EQUAL_WEIGHT: Whitening = Whitening(0.5);

    pub fn new(t: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&t) {
            Ok(Whitening(t))
        } else {
            Err(Error::InvalidWhitening(t))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for Whitening {
    fn default() -> Self {
        Whitening::EQUAL_WEIGHT
    }
}
