//! Bessel-function numerics used by the mode kernels.
//!
//! Modified functions are exposed either exponentially scaled
//! (`e^{-x} I_n(x)`, `e^{x} K_n(x)`) or as log-signed ratios, since
//! `I_n(x)/K_n(x)` grows like `e^{2x}/pi` and overflows long before the
//! arguments the energy integrals need.

mod debye;
mod modified;
mod ordinary;

pub use debye::{debye, DebyeData};
pub use modified::{
    bessel_i_scaled, bessel_k01_scaled, bessel_k_scaled, log_ratio_ik, ModifiedSequence,
};
pub use ordinary::{
    bessel_j, bessel_j0, bessel_j0_zero, bessel_j1, bessel_jy_sequence, bessel_y, djn, dyn_,
};

/// A real number stored as `sign * exp(log_magnitude)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogSigned {
    pub log_magnitude: f64,
    pub sign: f64,
}

impl LogSigned {
    pub fn new(log_magnitude: f64, sign: f64) -> Self {
        debug_assert!(sign == 1.0 || sign == -1.0);
        LogSigned {
            log_magnitude,
            sign,
        }
    }

    pub fn from_value(v: f64) -> Self {
        LogSigned {
            log_magnitude: v.abs().ln(),
            sign: if v < 0.0 { -1.0 } else { 1.0 },
        }
    }

    /// Plain value; overflows to infinity or underflows to zero outside the f64 range.
    pub fn value(&self) -> f64 {
        self.sign * self.log_magnitude.exp()
    }
}

impl std::ops::Mul for LogSigned {
    type Output = LogSigned;

    fn mul(self, other: LogSigned) -> LogSigned {
        LogSigned::new(
            self.log_magnitude + other.log_magnitude,
            self.sign * other.sign,
        )
    }
}

impl std::ops::Div for LogSigned {
    type Output = LogSigned;

    fn div(self, other: LogSigned) -> LogSigned {
        LogSigned::new(
            self.log_magnitude - other.log_magnitude,
            self.sign * other.sign,
        )
    }
}

/// `ln(1 - sign * e^s)` without cancellation.
///
/// Requires `sign * e^s < 1`; returns `NaN` otherwise.
pub fn ln_one_minus(s: f64, sign: f64) -> f64 {
    if sign > 0.0 {
        if s >= 0.0 {
            return f64::NAN;
        }
        // ln(1 - e^s): expm1 near s = 0, ln_1p for very negative s.
        if s > -std::f64::consts::LN_2 {
            (-s.exp_m1()).ln()
        } else {
            (-s.exp()).ln_1p()
        }
    } else {
        // ln(1 + e^s)
        if s > 36.0 {
            s + (-s).exp().ln_1p()
        } else {
            s.exp().ln_1p()
        }
    }
}
