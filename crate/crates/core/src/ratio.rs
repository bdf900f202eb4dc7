//! Projective amplitude ratios.
//!
//! Ratios of eigenstate amplitudes between neighbouring sites can be exactly
//! infinite at gate outputs, so they are carried as (numerator, denominator)
//! pairs; a zero denominator encodes a signed infinity and no division ever
//! happens inside the recursion.

use std::fmt;

/// A projective real number num/den with (0, 0) forbidden.
#[derive(Clone, Copy, Debug)]
pub struct AmplitudeRatio {
    num: f64,
    den: f64,
}

impl AmplitudeRatio {
    pub fn new(num: f64, den: f64) -> AmplitudeRatio {
        assert!(
            num != 0.0 || den != 0.0,
            "projective ratio (0, 0) is undefined"
        );
        AmplitudeRatio { num, den }
    }

    pub fn finite(value: f64) -> AmplitudeRatio {
        AmplitudeRatio::new(value, 1.0)
    }

    pub fn zero() -> AmplitudeRatio {
        AmplitudeRatio::new(0.0, 1.0)
    }

    /// Signed infinity; only the sign of `sign` is used.
    pub fn infinite(sign: f64) -> AmplitudeRatio {
        AmplitudeRatio::new(sign.signum(), 0.0)
    }

    pub fn num(&self) -> f64 {
        self.num
    }

    pub fn den(&self) -> f64 {
        self.den
    }

    /// The ratio as a float: +-inf when the denominator is zero.
    pub fn value(&self) -> f64 {
        if self.den == 0.0 {
            if self.num > 0.0 {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            }
        } else {
            self.num / self.den
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0.0
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0.0
    }

    pub fn abs(&self) -> f64 {
        self.value().abs()
    }

    /// Rescale so max(|num|, |den|) = 1 without changing the value; keeps
    /// long recursions away from overflow.
    pub fn normalized(self) -> AmplitudeRatio {
        let m = self.num.abs().max(self.den.abs());
        debug_assert!(m > 0.0 && m.is_finite());
        AmplitudeRatio {
            num: self.num / m,
            den: self.den / m,
        }
    }
}

impl fmt::Display for AmplitudeRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "{}inf", if self.num > 0.0 { "+" } else { "-" })
        } else {
            write!(f, "{}", self.value())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_infinity() {
        assert_eq!(AmplitudeRatio::new(-3.0, 0.0).value(), f64::NEG_INFINITY);
        assert_eq!(AmplitudeRatio::infinite(2.0).value(), f64::INFINITY);
    }

    #[test]
    #[should_panic]
    fn zero_zero_is_rejected() {
        AmplitudeRatio::new(0.0, 0.0);
    }

    #[test]
    fn normalization_preserves_value() {
        let r = AmplitudeRatio::new(6.0e8, -3.0e8).normalized();
        assert_eq!(r.value(), -2.0);
        assert!(r.num().abs() <= 1.0 && r.den().abs() <= 1.0);
    }
}
