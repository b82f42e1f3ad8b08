use super::LogSigned;
use crate::error::{CasimirError, Result};

fn check_positive(func: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(CasimirError::domain(
            func,
            format!("argument must be positive and finite, got {x}"),
        ))
    }
}

/// `(e^x K_0(x), e^x K_1(x))` for `x > 0`.
///
/// Trapezoidal rule on `e^x K_nu(x) = int_0^inf exp(-x (cosh t - 1)) cosh(nu t) dt`.
/// The integrand is analytic in a strip around the real axis, so the rule
/// converges geometrically; the step shrinks like `x^{-1/2}` to follow the
/// Gaussian peak at large `x`.
pub fn bessel_k01_scaled(x: f64) -> (f64, f64) {
    let h = (0.5 / x.sqrt()).min(0.25);
    let mut k0 = 0.5;
    let mut k1 = 0.5;
    let mut j = 1u32;
    loop {
        let t = h * f64::from(j);
        let sh = (0.5 * t).sinh();
        let arg = 2.0 * x * sh * sh;
        let e = (-arg).exp();
        let c = t.cosh();
        k0 += e;
        k1 += e * c;
        if arg > 46.0 && e * c < 1e-18 * k1 {
            break;
        }
        j += 1;
    }
    (h * k0, h * k1)
}

/// Index at which the backward recurrence for `I_{k+1}/I_k` is started.
fn miller_start(x: f64, n_top: usize) -> usize {
    n_top + 24 + (9.0 * x.sqrt()).ceil() as usize
}

/// Ratios `I_{k+1}(x)/I_k(x)` for `k = 0..=n_top` together with `e^{-x} I_0(x)`.
///
/// Backward recurrence from a large starting index; `I_0` is normalised with
/// `I_0 + 2 sum_{k>=1} I_k = e^x`.
fn i_ratios(x: f64, n_top: usize, out: &mut Vec<f64>) -> f64 {
    let start = miller_start(x, n_top);
    out.clear();
    out.resize(n_top + 1, 0.0);
    let nu = (start + 1) as f64;
    let mut r = x / (nu + (nu * nu + x * x).sqrt());
    // Horner accumulation of sum_{k>=1} prod_{j<k} r_j.
    let mut acc = 0.0;
    for k in (0..start).rev() {
        r = 1.0 / (2.0 * (k + 1) as f64 / x + r);
        acc = r * (1.0 + acc);
        if k <= n_top {
            out[k] = r;
        }
    }
    1.0 / (1.0 + 2.0 * acc)
}

/// Ratios `K_{k+1}(x)/K_k(x)` for `k = 0..=n_top` by upward recurrence.
fn k_ratios(x: f64, k0: f64, k1: f64, n_top: usize, out: &mut Vec<f64>) {
    out.clear();
    out.reserve(n_top + 1);
    let mut q = k1 / k0;
    out.push(q);
    for k in 1..=n_top {
        q = 2.0 * k as f64 / x + 1.0 / q;
        out.push(q);
    }
}

/// Modified Bessel functions `I_n(x)`, `K_n(x)` for `n = 0..=n_top` at one argument,
/// held as scaled base values plus consecutive ratios so that no entry overflows.
#[derive(Debug, Clone)]
pub struct ModifiedSequence {
    x: f64,
    i0_scaled: f64,
    k0_scaled: f64,
    /// `I_{k+1}/I_k`
    ri: Vec<f64>,
    /// `K_{k+1}/K_k`
    rk: Vec<f64>,
}

impl ModifiedSequence {
    pub fn new(x: f64, n_top: usize) -> Result<Self> {
        check_positive("ModifiedSequence::new", x)?;
        let mut s = ModifiedSequence {
            x,
            i0_scaled: 0.0,
            k0_scaled: 0.0,
            ri: Vec::new(),
            rk: Vec::new(),
        };
        s.refill(x, n_top);
        Ok(s)
    }

    /// Recompute in place for a new argument, reusing the buffers.
    pub(crate) fn refill(&mut self, x: f64, n_top: usize) {
        self.x = x;
        self.i0_scaled = i_ratios(x, n_top, &mut self.ri);
        let (k0, k1) = bessel_k01_scaled(x);
        self.k0_scaled = k0;
        k_ratios(x, k0, k1, n_top, &mut self.rk);
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn n_top(&self) -> usize {
        self.ri.len() - 1
    }

    pub fn i0_scaled(&self) -> f64 {
        self.i0_scaled
    }

    pub fn k0_scaled(&self) -> f64 {
        self.k0_scaled
    }

    /// `I_{k+1}(x)/I_k(x)`.
    pub fn i_ratio(&self, k: usize) -> f64 {
        self.ri[k]
    }

    /// `K_{k+1}(x)/K_k(x)`.
    pub fn k_ratio(&self, k: usize) -> f64 {
        self.rk[k]
    }

    /// `I_n'(x)/I_n(x) = I_{n+1}/I_n + n/x`, always positive.
    pub fn i_log_derivative(&self, n: usize) -> f64 {
        self.ri[n] + n as f64 / self.x
    }

    /// `K_n'(x)/K_n(x) = -K_{n+1}/K_n + n/x`, always negative.
    pub fn k_log_derivative(&self, n: usize) -> f64 {
        -self.rk[n] + n as f64 / self.x
    }

    /// `ln(e^{-x} I_n(x))`.
    pub fn ln_i_scaled(&self, n: usize) -> f64 {
        self.i0_scaled.ln() + self.ri[..n].iter().map(|r| r.ln()).sum::<f64>()
    }

    /// `ln(e^{x} K_n(x))`.
    pub fn ln_k_scaled(&self, n: usize) -> f64 {
        self.k0_scaled.ln() + self.rk[..n].iter().map(|r| r.ln()).sum::<f64>()
    }

    /// `I_n/K_n` (unprimed) or `I_n'/K_n'` (primed) in log-signed form.
    pub fn log_ratio(&self, n: usize, primed: bool) -> LogSigned {
        let base = self.ln_i_scaled(n) - self.ln_k_scaled(n) + 2.0 * self.x;
        if !primed {
            return LogSigned::new(base, 1.0);
        }
        let di = self.i_log_derivative(n);
        let dk = self.k_log_derivative(n);
        let sign = di.signum() * dk.signum();
        LogSigned::new(base + di.abs().ln() - dk.abs().ln(), sign)
    }
}

/// `e^{-x} I_n(x)`.
pub fn bessel_i_scaled(n: usize, x: f64) -> Result<f64> {
    check_positive("bessel_i_scaled", x)?;
    let seq = ModifiedSequence::new(x, n)?;
    Ok(seq.ln_i_scaled(n).exp())
}

/// `e^{x} K_n(x)`. Returns `+inf` when the value exceeds the f64 range
/// (large `n` at tiny `x`); use [`log_ratio_ik`] in that regime.
pub fn bessel_k_scaled(n: usize, x: f64) -> Result<f64> {
    check_positive("bessel_k_scaled", x)?;
    let (k0, k1) = bessel_k01_scaled(x);
    match n {
        0 => Ok(k0),
        1 => Ok(k1),
        _ => {
            let mut q = Vec::new();
            k_ratios(x, k0, k1, n, &mut q);
            Ok((k0.ln() + q[..n].iter().map(|r| r.ln()).sum::<f64>()).exp())
        }
    }
}

/// `ln|I_n(x)/K_n(x)|` or `ln|I_n'(x)/K_n'(x)|` with its sign.
pub fn log_ratio_ik(n: usize, x: f64, primed: bool) -> Result<LogSigned> {
    check_positive("log_ratio_ik", x)?;
    Ok(ModifiedSequence::new(x, n)?.log_ratio(n, primed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonpositive_arguments() {
        assert!(bessel_i_scaled(0, 0.0).is_err());
        assert!(bessel_k_scaled(0, -1.0).is_err());
        assert!(log_ratio_ik(2, 0.0, true).is_err());
        assert!(bessel_i_scaled(0, f64::NAN).is_err());
    }

    #[test]
    fn small_argument_leading_terms() {
        // I_5(x) ~ x^5 / 3840
        let x = 1e-3;
        let v = bessel_i_scaled(5, x).unwrap() * x.exp();
        assert!((v / (x.powi(5) / 3840.0) - 1.0).abs() < 1e-6);
        assert!(
            bessel_i_scaled(5, 1e-80).unwrap() == 0.0
                || bessel_i_scaled(5, 1e-80).unwrap() < 1e-300
        );
        // K_0(x) ~ -ln(x/2) - gamma
        for &x in &[1e-10, 1e-100, 1e-300] {
            let k0 = bessel_k_scaled(0, x).unwrap() * (-x).exp();
            let lead = -(x / 2.0f64).ln() - crate::EULER_GAMMA;
            assert!(k0.is_finite());
            assert!((k0 / lead - 1.0).abs() < 1e-12, "x={x} k0={k0} lead={lead}");
        }
        let k1 = bessel_k_scaled(1, 1e-300).unwrap();
        assert!((k1 * 1e-300 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn derivative_signs() {
        for &x in &[1e-3, 0.5, 7.0, 300.0] {
            let s = ModifiedSequence::new(x, 30).unwrap();
            for n in 0..=30 {
                assert!(s.i_log_derivative(n) > 0.0);
                assert!(s.k_log_derivative(n) < 0.0);
                assert_eq!(s.log_ratio(n, true).sign, -1.0);
                assert_eq!(s.log_ratio(n, false).sign, 1.0);
            }
        }
    }

    #[test]
    fn large_argument_ratio_growth() {
        // ln(I_0/K_0) ~ 2x - ln(pi) + O(1/x)
        let x = 500.0;
        let r = log_ratio_ik(0, x, false).unwrap();
        assert!((r.log_magnitude - (2.0 * x - std::f64::consts::PI.ln())).abs() < 2e-3);
        let p = log_ratio_ik(0, x, true).unwrap();
        assert_eq!(p.sign, -1.0);
        assert!((p.log_magnitude - (2.0 * x - std::f64::consts::PI.ln())).abs() < 5e-3);
    }
}
