//! Physical observables assembled from the mode sum
//! `G(xi) = sum'_{n>=0} ln(1 - M_n(xi))`, all per unit length:
//!
//! - zero temperature: `(1/2pi) int_0^inf xi G(xi) dxi`, or the double integral
//!   `(1/pi^2) int int G(sqrt(xi^2 + k^2)) dxi dk`;
//! - Matsubara: `(2T/pi) sum'_l int_0^inf G(sqrt(xi_l^2 + k^2)) dk`, `xi_l = 2 pi l T`;
//! - classical (`l = 0`): `(T/pi) int_0^inf G(xi) dxi`;
//! - Poisson-resummed thermal correction:
//!   `(1/pi) sum_{l>=1} int_0^inf xi J_0(l xi / T) G(xi) dxi`.
//!
//! Electromagnetic configurations are sums of their two scalar channels.

use std::f64::consts::PI;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CasimirError, Result};
use crate::kernel::{
    cutoff_estimate, BoundaryCondition, CylinderGeometry, FieldConfig, ModeSum, ScalarConfig,
};
use crate::quadrature::{integrate, integrate_j0_weighted, QuadOptions, QuadResult};
use crate::special::{bessel_jy_sequence, ModifiedSequence};

/// Quadrature and truncation controls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericsSpec {
    /// Target relative accuracy of each reported energy.
    pub rel_tol: f64,
    /// Absolute floor (energy per unit length) below which accuracy is not pursued.
    pub abs_tol: f64,
    /// Hard cap on the Bessel order.
    pub n_max_hard: usize,
    /// Hard cap on the Matsubara / Poisson index.
    pub l_max_hard: usize,
    /// Panels allowed per adaptive integral.
    pub max_intervals: usize,
}

impl Default for NumericsSpec {
    fn default() -> Self {
        NumericsSpec {
            rel_tol: 1e-8,
            abs_tol: 1e-14,
            n_max_hard: 50_000,
            l_max_hard: 2_000_000,
            max_intervals: 4000,
        }
    }
}

impl NumericsSpec {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        NumericsSpec {
            rel_tol,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) || !(self.abs_tol >= 0.0) {
            return Err(CasimirError::InvalidInput(format!(
                "tolerances must satisfy 0 < rel_tol < 1 and abs_tol >= 0, got {} / {}",
                self.rel_tol, self.abs_tol
            )));
        }
        Ok(())
    }
}

/// Temperature in natural units (inverse length).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalState {
    t: f64,
}

impl ThermalState {
    pub fn new(t: f64) -> Result<Self> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(CasimirError::InvalidInput(format!(
                "temperature must be >= 0, got {t}"
            )));
        }
        Ok(ThermalState { t })
    }

    pub fn temperature(&self) -> f64 {
        self.t
    }

    /// `xi_l = 2 pi l T`.
    pub fn matsubara(&self, l: usize) -> f64 {
        2.0 * PI * l as f64 * self.t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnergyRegime {
    ZeroT,
    Matsubara,
    PoissonLowT,
    Classical,
    ThermalLeading,
}

impl std::fmt::Display for EnergyRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EnergyRegime::ZeroT => "zero_t",
            EnergyRegime::Matsubara => "matsubara",
            EnergyRegime::PoissonLowT => "poisson_low_t",
            EnergyRegime::Classical => "classical",
            EnergyRegime::ThermalLeading => "thermal_leading",
        })
    }
}

/// Energy per unit length with its error estimate and truncation diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyResult {
    pub value: f64,
    pub err_estimate: f64,
    /// Largest Bessel order summed (plus one).
    pub n_used: usize,
    /// Largest Matsubara / Poisson index used.
    pub l_used: usize,
    pub regime: EnergyRegime,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl EnergyResult {
    fn closed_form(value: f64, regime: EnergyRegime) -> Self {
        EnergyResult {
            value,
            err_estimate: 0.0,
            n_used: 0,
            l_used: 0,
            regime,
            warnings: Vec::new(),
        }
    }

    /// Channel sum; reduction happens in channel order.
    fn combine(parts: Vec<EnergyResult>) -> EnergyResult {
        let mut it = parts.into_iter();
        let mut acc = it.next().expect("at least one channel");
        for p in it {
            acc.value += p.value;
            acc.err_estimate += p.err_estimate;
            acc.n_used = acc.n_used.max(p.n_used);
            acc.l_used = acc.l_used.max(p.l_used);
            acc.warnings.extend(p.warnings);
        }
        acc
    }
}

/// Shared per-channel state: the mode sum, cutoffs and diagnostics.
struct Channel {
    modes: ModeSum,
    /// Truncating the order sum leaves at most `term_tol |G| + floor` out.
    term_tol: f64,
    floor: f64,
    geom: CylinderGeometry,
    xi_max: f64,
    spec: NumericsSpec,
    n_seen: AtomicUsize,
    truncated: AtomicBool,
}

impl Channel {
    fn new(geom: &CylinderGeometry, cfg: ScalarConfig, spec: &NumericsSpec) -> Self {
        let term_tol = (spec.rel_tol * 1e-3).max(1e-16);
        let xi_max = cutoff_estimate(spec.rel_tol * 1e-2, geom).xi_max;
        let modes = ModeSum::new(*geom, cfg, spec.n_max_hard, term_tol);
        // G at the decay scale sets the size of everything that is integrated
        let g_ref = modes.eval(1.0 / geom.d()).value.abs();
        let floor = 1e-2 * term_tol * g_ref;
        Channel {
            modes: modes.with_abs_floor(floor),
            term_tol,
            floor,
            geom: *geom,
            xi_max,
            spec: *spec,
            n_seen: AtomicUsize::new(0),
            truncated: AtomicBool::new(false),
        }
    }

    fn g(&self, xi: f64) -> f64 {
        let v = self.modes.eval(xi);
        self.n_seen.fetch_max(v.n_used, Ordering::Relaxed);
        if v.truncated {
            self.truncated.store(true, Ordering::Relaxed);
        }
        v.value
    }

    /// Panel boundaries in `xi`: logarithmic near the origin (the `n = 0`
    /// Dirichlet mode is singular there) and on the `1/d` decay scale.
    fn radial_points(&self) -> Vec<f64> {
        let a1 = self.geom.a1();
        let d = self.geom.d();
        let mut pts: Vec<f64> = [1e-12, 1e-8, 1e-5, 1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0]
            .iter()
            .map(|w| w / a1)
            .chain(
                [0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0]
                    .iter()
                    .map(|s| s / d),
            )
            .filter(|&x| x < self.xi_max)
            .collect();
        pts.sort_by(f64::total_cmp);
        pts
    }

    fn opts(&self, rel_tol: f64, parallel: bool) -> QuadOptions {
        QuadOptions {
            rel_tol,
            abs_tol: self.spec.abs_tol * 1e-3,
            max_intervals: self.spec.max_intervals,
            parallel,
        }
    }

    /// `int_0^R G(sqrt(s^2 + k^2)) dk` with the radial breakpoints mapped onto `k`,
    /// truncated at the disc of radius `r_max`.
    fn transverse(&self, s: f64, r_max: f64, radial: &[f64], opts: &QuadOptions) -> QuadResult {
        let upper = (r_max * r_max - s * s).max(0.0).sqrt();
        let pts: Vec<f64> = radial
            .iter()
            .filter(|&&r| r > s)
            .map(|&r| (r * r - s * s).sqrt())
            .collect();
        let mut r = integrate(|k: f64| self.g(k.hypot(s)), 0.0, upper, &pts, opts);
        r.abs_err += self.truncation_bound(r.value, upper);
        r
    }

    /// Absolute tolerance for one of many inner integrals whose largest
    /// member is `h0`; the number of significant members grows like `ln(1/tol)`.
    fn inner_abs_tol(&self, h0: f64) -> f64 {
        0.05 * self.spec.rel_tol * h0.abs() / (1.0 / self.spec.rel_tol).ln()
    }

    /// Bound on the error of `int_0^upper w G` caused by truncating the order
    /// sum, given the integral's value and `int_0^upper |w|`. `G` has one sign
    /// for every configuration, so `|int w G| = int |w G|`.
    fn truncation_bound(&self, value: f64, weight_mass: f64) -> f64 {
        self.term_tol * value.abs() + self.floor * weight_mass
    }

    /// `int_0^inf xi^power G(xi) dxi` over `[0, xi_max]` plus an explicit tail
    /// panel, as `(value, error bound, converged)`.
    fn radial_integral(&self, power: i32) -> (f64, f64, bool) {
        let f = |xi: f64| xi.powi(power) * self.g(xi);
        let opts = self.opts(self.spec.rel_tol * 0.1, true);
        let body = integrate(f, 0.0, self.xi_max, &self.radial_points(), &opts);
        let tail_opts = QuadOptions {
            abs_tol: (body.value.abs() * self.spec.rel_tol * 1e-3).max(opts.abs_tol),
            ..opts
        };
        let upper = 2.0 * self.xi_max;
        let tail = integrate(f, self.xi_max, upper, &[], &tail_opts);
        let beyond = tail.value.abs() * (-2.0 * self.geom.d() * self.xi_max).exp();
        let value = body.value + tail.value;
        let mass = upper.powi(power + 1) / f64::from(power + 1);
        (
            value,
            body.abs_err + tail.abs_err + beyond + self.truncation_bound(value, mass),
            body.converged && tail.converged,
        )
    }

    fn finish(
        &self,
        value: f64,
        err: f64,
        converged: bool,
        l_used: usize,
        regime: EnergyRegime,
    ) -> Result<EnergyResult> {
        self.finish_scaled(value, err, converged, l_used, regime, value.abs())
    }

    /// As [`Channel::finish`], with accuracy judged relative to `scale`.
    fn finish_scaled(
        &self,
        value: f64,
        err: f64,
        converged: bool,
        l_used: usize,
        regime: EnergyRegime,
        scale: f64,
    ) -> Result<EnergyResult> {
        let mut warnings = Vec::new();
        if self.truncated.load(Ordering::Relaxed) {
            warnings.push(format!(
                "{}: Bessel-order cap {} reached before the mode sum converged",
                self.modes.config(),
                self.spec.n_max_hard
            ));
        }
        let res = EnergyResult {
            value,
            err_estimate: err,
            n_used: self.n_seen.load(Ordering::Relaxed),
            l_used,
            regime,
            warnings,
        };
        let target = self.spec.abs_tol.max(self.spec.rel_tol * scale);
        if converged && err <= target && value.is_finite() {
            Ok(res)
        } else {
            Err(CasimirError::ToleranceNotMet {
                partial: Box::new(res),
            })
        }
    }
}

/// Run `per_channel` for every scalar channel of `cfg` and add the results.
fn over_channels(
    geom: &CylinderGeometry,
    cfg: FieldConfig,
    spec: &NumericsSpec,
    per_channel: impl Fn(&Channel) -> Result<EnergyResult>,
) -> Result<EnergyResult> {
    spec.validate()?;
    let mut parts = Vec::new();
    let mut failed = false;
    for ch in cfg.channels() {
        let channel = Channel::new(geom, ch, spec);
        match per_channel(&channel) {
            Ok(r) => parts.push(r),
            Err(CasimirError::ToleranceNotMet { partial }) => {
                failed = true;
                parts.push(*partial);
            }
            Err(e) => return Err(e),
        }
    }
    let total = EnergyResult::combine(parts);
    if failed {
        Err(CasimirError::ToleranceNotMet {
            partial: Box::new(total),
        })
    } else {
        Ok(total)
    }
}

fn positive_temperature(t: f64) -> Result<f64> {
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(CasimirError::InvalidInput(format!(
            "temperature must be positive, got {t}"
        )))
    }
}

/// `E^{T=0}/L = (1/2pi) sum'_n int_0^inf xi ln(1 - M_n(xi)) dxi`.
pub fn zero_temperature_energy(
    geom: &CylinderGeometry,
    cfg: FieldConfig,
    spec: &NumericsSpec,
) -> Result<EnergyResult> {
    over_channels(geom, cfg, spec, |ch| {
        let (v, e, ok) = ch.radial_integral(1);
        ch.finish(v / (2.0 * PI), e / (2.0 * PI), ok, 0, EnergyRegime::ZeroT)
    })
}

/// Zero-temperature energy from the Cartesian double integral over `(xi, k)`.
pub fn zero_temperature_energy_double_form(
    geom: &CylinderGeometry,
    cfg: FieldConfig,
    spec: &NumericsSpec,
) -> Result<EnergyResult> {
    over_channels(geom, cfg, spec, |ch| {
        let r_max = 2.0 * ch.xi_max;
        let radial = ch.radial_points();
        let inner_err = Mutex::new(0.0f64);
        let inner_ok = AtomicBool::new(true);
        let mut inner_opts = ch.opts(ch.spec.rel_tol * 0.05, false);
        let (h0, _, _) = ch.radial_integral(0);
        inner_opts.abs_tol = inner_opts.abs_tol.max(ch.inner_abs_tol(h0));
        let h = |k: f64| {
            let r = ch.transverse(k, r_max, &radial, &inner_opts);
            if !r.converged {
                inner_ok.store(false, Ordering::Relaxed);
            }
            *inner_err.lock().unwrap() += r.abs_err;
            r.value
        };
        let mut outer_pts = radial.clone();
        outer_pts.push(ch.xi_max);
        let outer = integrate(
            h,
            0.0,
            r_max,
            &outer_pts,
            &ch.opts(ch.spec.rel_tol * 0.1, true),
        );
        // inner errors are summed over every outer node; weight by the mean panel width
        let n_nodes = (outer.evals as f64).max(1.0);
        let inner = *inner_err.lock().unwrap() * r_max / n_nodes;
        let scale = 1.0 / (PI * PI);
        ch.finish(
            outer.value * scale,
            (outer.abs_err + inner) * scale,
            outer.converged && inner_ok.load(Ordering::Relaxed),
            0,
            EnergyRegime::ZeroT,
        )
    })
}

/// `E^{cl}/L = (T/pi) sum'_n int_0^inf ln(1 - M_n(xi)) dxi`, the `l = 0` term.
pub fn classical_term(
    geom: &CylinderGeometry,
    cfg: FieldConfig,
    t: f64,
    spec: &NumericsSpec,
) -> Result<EnergyResult> {
    let t = positive_temperature(t)?;
    over_channels(geom, cfg, spec, |ch| {
        let (v, e, ok) = ch.radial_integral(0);
        ch.finish(v * t / PI, e * t / PI, ok, 0, EnergyRegime::Classical)
    })
}

/// Matsubara free energy per unit length at `T > 0`.
pub fn free_energy_matsubara(
    geom: &CylinderGeometry,
    cfg: FieldConfig,
    t: f64,
    spec: &NumericsSpec,
) -> Result<EnergyResult> {
    let t = positive_temperature(t)?;
    let thermal = ThermalState::new(t)?;
    over_channels(geom, cfg, spec, |ch| {
        let r_max = 2.0 * ch.xi_max;
        let radial = ch.radial_points();
        let mut opts = ch.opts(ch.spec.rel_tol * 0.05, false);
        let l_cap = ((r_max / (2.0 * PI * t)).floor() as usize).min(ch.spec.l_max_hard);
        let all_ok = AtomicBool::new(true);

        let h = |l: usize, opts: &QuadOptions| -> (f64, f64) {
            let r = ch.transverse(thermal.matsubara(l), r_max, &radial, opts);
            if !r.converged {
                all_ok.store(false, Ordering::Relaxed);
            }
            (r.value, r.abs_err)
        };
        let (h0, e0) = h(0, &opts);
        // later terms only need to be accurate relative to the whole sum
        opts.abs_tol = opts.abs_tol.max(ch.inner_abs_tol(h0));
        let mut sum = 0.5 * h0;
        let mut err = 0.5 * e0;
        // successive terms shrink at least by this factor
        let decay = (-2.0 * ch.geom.d() * 2.0 * PI * t).exp();
        let tail_factor = 1.0 / (1.0 - decay).max(1e-300);
        let mut l_used = 0;
        let chunk = 64;
        let mut l = 1;
        let mut tail_bound = 0.0;
        while l <= l_cap {
            let hi = (l + chunk - 1).min(l_cap);
            let vals: Vec<(f64, f64)> = (l..=hi).into_par_iter().map(|l| h(l, &opts)).collect();
            for (v, e) in &vals {
                sum += v;
                err += e;
            }
            l_used = hi;
            let last = vals.last().map(|p| p.0.abs()).unwrap_or(0.0);
            tail_bound = last * tail_factor;
            if tail_bound <= 1e-3 * ch.spec.rel_tol * sum.abs() {
                break;
            }
            l = hi + 1;
        }
        let scale = 2.0 * t / PI;
        ch.finish(
            sum * scale,
            (err + tail_bound) * scale,
            all_ok.load(Ordering::Relaxed),
            l_used,
            EnergyRegime::Matsubara,
        )
    })
}

/// Free energy at temperature `T >= 0`: `T = 0` is routed to the zero-temperature energy.
pub fn free_energy(
    geom: &CylinderGeometry,
    cfg: FieldConfig,
    t: f64,
    spec: &NumericsSpec,
) -> Result<EnergyResult> {
    ThermalState::new(t)?;
    if t == 0.0 {
        zero_temperature_energy(geom, cfg, spec)
    } else {
        free_energy_matsubara(geom, cfg, t, spec)
    }
}

/// Thermal correction `Delta_T E / L = (1/pi) sum'_n sum_{l>=1} int xi J_0(l xi/T) ln(1 - M_n) dxi`.
///
/// Each oscillatory integral is split at the zeros of `J_0(l xi / T)` and the
/// alternating partial sums are accelerated. Being a correction, its accuracy
/// target is `rel_tol` relative to the zero-temperature energy. Intended for `a1 T <~ 1`; above
/// that the `l` sum converges slowly and the Matsubara form should be used.
pub fn thermal_correction_poisson(
    geom: &CylinderGeometry,
    cfg: FieldConfig,
    t: f64,
    spec: &NumericsSpec,
) -> Result<EnergyResult> {
    let t = positive_temperature(t)?;
    over_channels(geom, cfg, spec, |ch| {
        // scale of the full energy, used for the stopping rule of the l sum
        let (zero_t, _, _) = ch.radial_integral(1);
        let scale = (zero_t / PI).abs();
        let upper = 2.0 * ch.xi_max;
        let opts = QuadOptions {
            rel_tol: ch.spec.rel_tol * 0.1,
            abs_tol: scale * ch.spec.rel_tol * 1e-3,
            max_intervals: 200,
            parallel: false,
        };
        let all_ok = AtomicBool::new(true);
        let term = |l: usize| {
            let r = integrate_j0_weighted(|xi| xi * ch.g(xi), l as f64 / t, upper, &opts);
            if !r.converged {
                all_ok.store(false, Ordering::Relaxed);
            }
            (r.value, r.abs_err)
        };
        let mut terms: Vec<f64> = Vec::new();
        let mut err = 0.0;
        let mut tail = (0.0, f64::INFINITY);
        while terms.len() < ch.spec.l_max_hard {
            let lo = terms.len() + 1;
            let hi = (lo + (lo / 2).max(32) - 1).min(ch.spec.l_max_hard);
            let vals: Vec<(f64, f64)> = (lo..=hi).into_par_iter().map(term).collect();
            for (v, e) in vals {
                terms.push(v);
                err += e;
            }
            tail = poisson_tail(&terms, t);
            if tail.1 <= 0.1 * ch.spec.rel_tol * scale {
                break;
            }
        }
        let sum: f64 = terms.iter().sum::<f64>() + tail.0;
        let l_used = terms.len();
        let tail = tail.1;
        let mut res = ch.finish_scaled(
            sum / PI,
            (err + tail + ch.truncation_bound(zero_t, 0.0)) / PI,
            all_ok.load(Ordering::Relaxed),
            l_used,
            EnergyRegime::PoissonLowT,
            0.5 * scale,
        );
        if geom.a1() * t > 1.0 {
            let w = format!(
                "a1*T = {} > 1: the Poisson-resummed sum converges slowly, prefer the Matsubara form",
                geom.a1() * t
            );
            match &mut res {
                Ok(r) => r.warnings.push(w),
                Err(CasimirError::ToleranceNotMet { partial }) => partial.warnings.push(w),
                Err(_) => {}
            }
        }
        res
    })
}

/// Tail `sum_{m > L} t_m` of the Poisson series and its uncertainty.
///
/// Far out the terms behave like `(alpha + beta / ln(m/T)) / m^2`: a `ln xi`
/// singularity of the mode sum at the origin gives the first piece (mixed
/// conditions), a `ln ln xi` one the second (Dirichlet inner cylinder).
/// The model is fitted on `(L/2, L)` and on `(L/4, L/2)`; the difference of
/// the two tails is the uncertainty, so a series that decays faster than the
/// model simply keeps the uncertainty large until it is negligible.
fn poisson_tail(terms: &[f64], t: f64) -> (f64, f64) {
    let big_l = terms.len();
    if big_l < 16 || (big_l as f64 / 4.0) / t < 3.0 {
        return (0.0, f64::INFINITY);
    }
    let opts = QuadOptions {
        rel_tol: 1e-10,
        ..Default::default()
    };
    // sum_{m > L} 1/m^2 and sum_{m > L} 1/(m^2 ln(m/T)), via u = 1/m
    let u_max = 1.0 / (big_l as f64 + 0.5);
    let plain = u_max;
    let shaped = integrate(
        |u: f64| {
            if u > 0.0 {
                1.0 / (1.0 / (u * t)).ln()
            } else {
                0.0
            }
        },
        0.0,
        u_max,
        &[],
        &opts,
    );
    let fit = |m1: usize, m2: usize| {
        // y = alpha + beta x with y = m^2 t_m, x = 1/ln(m/T)
        let y = |m: usize| terms[m - 1] * (m * m) as f64;
        let x = |m: usize| 1.0 / (m as f64 / t).ln();
        let beta = (y(m2) - y(m1)) / (x(m2) - x(m1));
        let alpha = y(m2) - beta * x(m2);
        alpha * plain + beta * shaped.value
    };
    let tail = fit(big_l / 2, big_l);
    let previous = fit(big_l / 4, big_l / 2);
    (tail, (tail - previous).abs() + shaped.abs_err)
}

/// Low-temperature leading term of the thermal correction; depends only on the
/// inner boundary condition.
///
/// Dirichlet inner: `pi T^2 / (6 ln(a1 T))`. Neumann inner: `(pi^3/90) a1^2 T^4`.
pub fn thermal_leading(inner: BoundaryCondition, a1: f64, t: f64) -> Result<EnergyResult> {
    let x = a1 * t;
    if !(a1 > 0.0 && t > 0.0 && x < 1.0) {
        return Err(CasimirError::domain(
            "thermal_leading",
            format!("requires 0 < a1*T < 1, got a1 = {a1}, T = {t}"),
        ));
    }
    let value = match inner {
        BoundaryCondition::Dirichlet => PI * t * t / (6.0 * x.ln()),
        BoundaryCondition::Neumann => PI.powi(3) / 90.0 * a1 * a1 * t.powi(4),
    };
    Ok(EnergyResult::closed_form(
        value,
        EnergyRegime::ThermalLeading,
    ))
}

/// `i S_n(omega)`: `2 arctan(J_n/Y_n)` for a Dirichlet inner cylinder,
/// `2 arctan(J_n'/Y_n')` for a Neumann one.
pub fn abel_plana_phase(n: usize, omega: f64, inner: BoundaryCondition) -> Result<f64> {
    let (j, y) = bessel_jy_sequence(omega, n + 1)?;
    let ratio = match inner {
        BoundaryCondition::Dirichlet => j[n] / y[n],
        BoundaryCondition::Neumann => {
            let (dj, dy) = if n == 0 {
                (-j[1], -y[1])
            } else {
                (0.5 * (j[n - 1] - j[n + 1]), 0.5 * (y[n - 1] - y[n + 1]))
            };
            dj / dy
        }
    };
    Ok(2.0 * ratio.atan())
}

/// `ln(1 - M_n(xi))` summed over `n` at one frequency, exposed for diagnostics.
pub fn mode_sum(
    geom: &CylinderGeometry,
    cfg: ScalarConfig,
    xi: f64,
    spec: &NumericsSpec,
) -> Result<f64> {
    if !(xi > 0.0) {
        return Err(CasimirError::domain(
            "mode_sum",
            format!("xi must be positive, got {xi}"),
        ));
    }
    // validates the argument range of the Bessel layer
    ModifiedSequence::new(geom.a2() * xi, 0)?;
    Ok(Channel::new(geom, cfg, spec).g(xi))
}
