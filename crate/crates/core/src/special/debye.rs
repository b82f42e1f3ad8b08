use crate::error::{CasimirError, Result};

/// Ingredients of the Debye uniform expansion of `I_n(n z)`, `K_n(n z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DebyeData {
    pub eta: f64,
    pub t: f64,
    /// `D_1(t) = t/8 - 5 t^3 / 24`
    pub d1: f64,
    /// `M_1(t) = -3t/8 + 7 t^3 / 24`
    pub m1: f64,
}

pub fn debye(z: f64) -> Result<DebyeData> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(CasimirError::domain(
            "debye",
            format!("z must be positive, got {z}"),
        ));
    }
    let s = z.hypot(1.0);
    let t = 1.0 / s;
    Ok(DebyeData {
        eta: eta(z),
        t,
        d1: d1(t),
        m1: m1(t),
    })
}

/// `eta(z) = sqrt(1+z^2) + ln(z / (1 + sqrt(1+z^2)))`.
pub(crate) fn eta(z: f64) -> f64 {
    let s = z.hypot(1.0);
    s + (z / (1.0 + s)).ln()
}

pub(crate) fn d1(t: f64) -> f64 {
    t / 8.0 - 5.0 * t.powi(3) / 24.0
}

pub(crate) fn m1(t: f64) -> f64 {
    -3.0 * t / 8.0 + 7.0 * t.powi(3) / 24.0
}
