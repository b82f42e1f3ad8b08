//! Small-gap expansions of the energies, proximity-force leading terms and the
//! Mellin coefficient functions that produce the correction terms.
//!
//! With `eps = d / a1`, every configuration has a zero-temperature series
//! `P / (a1^2 eps^3) (1 + c1 eps + c2 eps^2)` and a classical series
//! `P T / (a1 eps^2) (1 + c1 eps + c_l eps^2 ln eps)`.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::engine::EnergyRegime;
use crate::error::{CasimirError, Result};
use crate::kernel::{BoundaryCondition, CylinderGeometry, EmKind, FieldConfig, ScalarConfig};
use crate::quadrature::{integrate, QuadOptions};
use crate::ZETA3;

/// Beyond this gap ratio the series are reported with a warning.
pub const VALIDITY_EPS: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    ZeroT,
    Classical,
}

impl TryFrom<EnergyRegime> for Regime {
    type Error = CasimirError;

    fn try_from(r: EnergyRegime) -> Result<Self> {
        match r {
            EnergyRegime::ZeroT => Ok(Regime::ZeroT),
            EnergyRegime::Classical => Ok(Regime::Classical),
            other => Err(CasimirError::UnsupportedRegime {
                config: "any".into(),
                regime: other.to_string(),
            }),
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::ZeroT => "zero_t",
            Regime::Classical => "classical",
        })
    }
}

/// One term `coefficient * eps^power` (times `ln eps` when `log` is set).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionTerm {
    pub power: i32,
    pub log: bool,
    pub coefficient: f64,
    pub contribution: f64,
}

impl ExpansionTerm {
    /// Sort key in decreasing order of size as `eps -> 0`.
    fn order_key(&self) -> (i32, u8) {
        (self.power, if self.log { 0 } else { 1 })
    }

    pub fn descriptor(&self) -> String {
        if self.log {
            format!("eps^{} ln(eps)", self.power)
        } else {
            format!("eps^{}", self.power)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionResult {
    pub value: f64,
    pub terms: Vec<ExpansionTerm>,
    pub regime: Regime,
    pub warning: Option<String>,
}

/// `(P, c1, c2)` of the zero-temperature series.
fn zero_t_series(cfg: FieldConfig) -> (f64, f64, f64) {
    let pi2 = PI * PI;
    let pi4 = pi2 * pi2;
    let pi3 = pi2 * PI;
    let dd = -pi3 / 720.0;
    let mixed = 7.0 * pi3 / 5760.0;
    let mixed_c2 = -0.1 - 8.0 / (7.0 * pi2) + 192.0 / (7.0 * pi4);
    let mixed_c1 = 40.0 / (7.0 * pi2);
    let mixed_ln = 720.0 * LN_2 / (7.0 * pi4);
    match cfg {
        FieldConfig::Scalar(ScalarConfig::DD) => (dd, 0.5, -0.1),
        FieldConfig::Scalar(ScalarConfig::NN) => (dd, 0.5, -(0.1 + 4.0 / pi2)),
        FieldConfig::Scalar(ScalarConfig::DN) => (mixed, 0.5 + mixed_c1, mixed_c2 - mixed_ln),
        FieldConfig::Scalar(ScalarConfig::ND) => (mixed, 0.5 - mixed_c1, mixed_c2 + mixed_ln),
        FieldConfig::Em(EmKind::PcPc) => (2.0 * dd, 0.5, -(0.1 + 2.0 / pi2)),
        FieldConfig::Em(EmKind::PcIp) => (2.0 * mixed, 0.5, mixed_c2),
    }
}

/// `(P, c1, c_l)` of the classical series.
fn classical_series(cfg: FieldConfig) -> (f64, f64, f64) {
    let dd = -ZETA3 / 8.0;
    let mixed = 3.0 * ZETA3 / 32.0;
    let mixed_c1 = 4.0 * LN_2 / (3.0 * ZETA3);
    let mixed_log = 8.0 / (3.0 * PI * ZETA3);
    let mixed_tail = 1.0 / (4.0 * ZETA3);
    match cfg {
        FieldConfig::Scalar(ScalarConfig::DD) => (dd, 0.5, 1.0 / 16.0),
        FieldConfig::Scalar(ScalarConfig::NN) => (dd, 0.5, 5.0 / 16.0),
        FieldConfig::Scalar(ScalarConfig::DN) => (mixed, 0.5 + mixed_c1, mixed_log - mixed_tail),
        FieldConfig::Scalar(ScalarConfig::ND) => (mixed, 0.5 - mixed_c1, -(mixed_log + mixed_tail)),
        FieldConfig::Em(EmKind::PcPc) => (2.0 * dd, 0.5, 3.0 / 16.0),
        FieldConfig::Em(EmKind::PcIp) => (2.0 * mixed, 0.5, -mixed_tail),
    }
}

fn require_temperature(regime: Regime, t: Option<f64>) -> Result<f64> {
    match (regime, t) {
        (Regime::ZeroT, _) => Ok(0.0),
        (Regime::Classical, Some(t)) if t > 0.0 && t.is_finite() => Ok(t),
        (Regime::Classical, t) => Err(CasimirError::InvalidInput(format!(
            "the classical regime needs a positive temperature, got {t:?}"
        ))),
    }
}

/// Proximity-force leading term per unit length.
pub fn pfa_leading(
    cfg: FieldConfig,
    regime: Regime,
    geom: &CylinderGeometry,
    t: Option<f64>,
) -> Result<f64> {
    let t = require_temperature(regime, t)?;
    let (a1, eps) = (geom.a1(), geom.eps());
    Ok(match regime {
        Regime::ZeroT => zero_t_series(cfg).0 / (a1 * a1 * eps.powi(3)),
        Regime::Classical => classical_series(cfg).0 * t / (a1 * eps * eps),
    })
}

/// The small-gap series with its individual terms.
pub fn expansion(
    cfg: FieldConfig,
    regime: Regime,
    geom: &CylinderGeometry,
    t: Option<f64>,
) -> Result<ExpansionResult> {
    let t = require_temperature(regime, t)?;
    let (a1, eps) = (geom.a1(), geom.eps());
    let raw: [(i32, bool, f64); 3] = match regime {
        Regime::ZeroT => {
            let (p, c1, c2) = zero_t_series(cfg);
            let lead = p / (a1 * a1);
            [
                (-3, false, lead),
                (-2, false, lead * c1),
                (-1, false, lead * c2),
            ]
        }
        Regime::Classical => {
            let (p, c1, cl) = classical_series(cfg);
            let lead = p * t / a1;
            [
                (-2, false, lead),
                (-1, false, lead * c1),
                (0, true, lead * cl),
            ]
        }
    };
    let mut terms: Vec<ExpansionTerm> = raw
        .iter()
        .map(|&(power, log, coefficient)| {
            let mut contribution = coefficient * eps.powi(power);
            if log {
                contribution *= eps.ln();
            }
            ExpansionTerm {
                power,
                log,
                coefficient,
                contribution,
            }
        })
        .collect();
    terms.sort_by_key(|term| term.order_key());
    let value = terms.iter().map(|term| term.contribution).sum();
    let warning = (eps > VALIDITY_EPS).then(|| {
        format!("eps = {eps} exceeds {VALIDITY_EPS}; the small-gap series is unreliable here")
    });
    Ok(ExpansionResult {
        value,
        terms,
        regime,
        warning,
    })
}

/// First-order Debye coefficients `P_1 = lambda0 t + lambda1 t^3` (inner
/// cylinder) and `Q_1 = varpi0 t + varpi1 t^3` (outer cylinder).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DebyeCoefficients {
    pub lambda0: f64,
    pub lambda1: f64,
    pub varpi0: f64,
    pub varpi1: f64,
    pub kappa0: f64,
    pub kappa1: f64,
}

impl DebyeCoefficients {
    fn pair(bc: BoundaryCondition) -> (f64, f64) {
        match bc {
            BoundaryCondition::Dirichlet => (1.0 / 8.0, -5.0 / 24.0),
            BoundaryCondition::Neumann => (-3.0 / 8.0, 7.0 / 24.0),
        }
    }

    pub fn for_config(cfg: ScalarConfig) -> Self {
        let (lambda0, lambda1) = Self::pair(cfg.inner);
        let (varpi0, varpi1) = Self::pair(cfg.outer);
        DebyeCoefficients {
            lambda0,
            lambda1,
            varpi0,
            varpi1,
            kappa0: varpi0 - lambda0,
            kappa1: varpi1 - lambda1,
        }
    }

    fn p1(&self, t: f64) -> f64 {
        self.lambda0 * t + self.lambda1 * t.powi(3)
    }

    fn q1(&self, t: f64) -> f64 {
        self.varpi0 * t + self.varpi1 * t.powi(3)
    }
}

/// Dimensionless `sum'_n int omega^chi ln(1 - A_n(omega)) d omega` from its
/// small-gap expansion. `chi = 1` gives the zero-temperature energy through
/// `E = S_1 / (2 pi a1^2)`, `chi = 0` the classical one through `E = T S_0 / (pi a1)`.
pub fn script_e(chi: u8, cfg: ScalarConfig, eps: f64) -> Result<f64> {
    check_chi(chi)?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(CasimirError::domain(
            "script_e",
            format!("eps must be positive, got {eps}"),
        ));
    }
    let c = DebyeCoefficients::for_config(cfg);
    let pi2 = PI * PI;
    let value = if cfg.is_homogeneous() {
        let (l0, l1) = (c.lambda0, c.lambda1);
        if chi == 0 {
            -PI * ZETA3 / (8.0 * eps * eps)
                * (1.0 + eps / 2.0 - (2.0 * l0 + 1.5 * l1) * eps * eps * eps.ln())
        } else {
            -pi2 * pi2 / (360.0 * eps.powi(3))
                * (1.0 + eps / 2.0 - eps * eps / 10.0 + eps * eps / pi2 * (20.0 * l0 + 12.0 * l1))
        }
    } else {
        let (k0, k1, w0, w1) = (c.kappa0, c.kappa1, c.varpi0, c.varpi1);
        if chi == 0 {
            let n0 = pi2 / (48.0 * eps);
            let rest = 3.0 * PI * ZETA3 / (32.0 * eps * eps) * (1.0 + eps / 2.0)
                - pi2 / (48.0 * eps)
                - PI / (4.0 * eps) * (2.0 * k0 + k1) * LN_2
                - eps.ln() * (k0 / 2.0 + PI / 4.0 * (k0 * k0 + k0 * k1 + 0.375 * k1 * k1));
            n0 + rest
        } else {
            let n0 = 3.0 * ZETA3 / (32.0 * eps * eps);
            let rest = 7.0 * pi2 * pi2 / (2880.0 * eps.powi(3))
                * (1.0 + eps / 2.0 - eps * eps / 10.0)
                - pi2 / (72.0 * eps * eps) * (3.0 * k0 + k1)
                - 3.0 * ZETA3 / (32.0 * eps * eps)
                + pi2 / (24.0 * eps) * ((2.0 * w0 - k0) / 3.0 + (2.0 * w1 - k1) / 5.0)
                + LN_2 / (2.0 * eps) * k0
                + (k0 * k0 + 2.0 / 3.0 * k0 * k1 + 0.2 * k1 * k1) / (2.0 * eps);
            n0 + rest
        }
    };
    Ok(value)
}

fn check_chi(chi: u8) -> Result<()> {
    if chi > 1 {
        return Err(CasimirError::InvalidInput(format!(
            "chi must be 0 or 1, got {chi}"
        )));
    }
    Ok(())
}

/// `Gamma(x)` for an argument that must not be a pole.
fn gamma_checked(func: &'static str, x: f64) -> Result<f64> {
    if x <= 0.0 && x == x.round() {
        return Err(CasimirError::Pole { func, arg: x });
    }
    Ok(gamma(x))
}

/// `Gamma((chi+1)/2)/2 * Gamma(num)/Gamma(den)`, the prefactor shared by all four closed forms.
fn mellin_prefactor(func: &'static str, chi: u8, num: f64, den: f64) -> Result<f64> {
    let chi = f64::from(chi);
    let g_den = gamma_checked(func, den).map(|g| 1.0 / g).unwrap_or(0.0);
    Ok(gamma((chi + 1.0) / 2.0) / 2.0 * gamma_checked(func, num)? * g_den)
}

/// `A_chi(z) = int omega^{chi-z} eta'^{-z} (1 - z eps omega eta''/(2 eta') + eps^2 [...]) d omega`.
pub fn mellin_a(chi: u8, z: f64, eps: f64) -> Result<f64> {
    check_chi(chi)?;
    let c = f64::from(chi);
    let pre = mellin_prefactor("mellin_a", chi, (z - c - 1.0) / 2.0, z / 2.0)?;
    let s = z - c - 1.0;
    let bracket = 1.0
        + eps * s / 2.0
        + eps * eps * s * (3.0 * z * z - 2.0 * z - 17.0 - 7.0 * c - 3.0 * c * z)
            / (24.0 * (z + 2.0));
    Ok(pre * bracket)
}

/// `B_chi(z) = int omega^{chi-z} eta'^{-z} P_1'(t) t' / eta' d omega` with the
/// inner-cylinder Debye polynomial of `cfg`.
pub fn mellin_b(chi: u8, z: f64, cfg: ScalarConfig) -> Result<f64> {
    check_chi(chi)?;
    let c = f64::from(chi);
    let d = DebyeCoefficients::for_config(cfg);
    let pre = mellin_prefactor("mellin_b", chi, (z - c + 1.0) / 2.0, (z + 2.0) / 2.0)?;
    let r1 = (z - c + 1.0) / (z + 2.0);
    let r2 = r1 * (z - c + 3.0) / (z + 4.0);
    Ok(pre * (-d.lambda0 + (d.lambda0 - 3.0 * d.lambda1) * r1 + 3.0 * d.lambda1 * r2))
}

/// Mixed-condition coefficient `C_chi(z)`, including its `1/eps` piece.
pub fn mellin_c(chi: u8, z: f64, eps: f64, cfg: ScalarConfig) -> Result<f64> {
    check_chi(chi)?;
    let c = f64::from(chi);
    let d = DebyeCoefficients::for_config(cfg);
    let pre = mellin_prefactor("mellin_c", chi, (z - c + 1.0) / 2.0, (z + 2.0) / 2.0)?;
    let r1 = (z - c + 1.0) / (z + 2.0);
    let r2 = r1 * (z - c + 3.0) / (z + 4.0);
    let h = (z + 1.0) / 2.0;
    let body = -d.varpi0
        + (d.varpi0 - 3.0 * d.varpi1 + h * d.kappa0) * r1
        + (3.0 * d.varpi1 + h * d.kappa1) * r2
        + (d.kappa0 + d.kappa1 * r1) / eps;
    Ok(pre * body)
}

/// Mixed-condition coefficient `G_chi(z) = int omega^{chi-z-2} eta'^{-z-2} (Q_1 - P_1)^2 d omega`.
pub fn mellin_g(chi: u8, z: f64, cfg: ScalarConfig) -> Result<f64> {
    check_chi(chi)?;
    let c = f64::from(chi);
    let d = DebyeCoefficients::for_config(cfg);
    let pre = mellin_prefactor("mellin_g", chi, (z - c + 3.0) / 2.0, (z + 4.0) / 2.0)?;
    let r1 = (z - c + 3.0) / (z + 4.0);
    let r2 = r1 * (z - c + 5.0) / (z + 6.0);
    let (k0, k1) = (d.kappa0, d.kappa1);
    Ok(pre * (k0 * k0 + 2.0 * k0 * k1 * r1 + k1 * k1 * r2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MellinKind {
    A,
    B,
    C,
    G,
}

impl std::str::FromStr for MellinKind {
    type Err = CasimirError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(MellinKind::A),
            "B" => Ok(MellinKind::B),
            "C" => Ok(MellinKind::C),
            "G" => Ok(MellinKind::G),
            _ => Err(CasimirError::InvalidInput(format!(
                "unknown Mellin function {s:?}"
            ))),
        }
    }
}

impl MellinKind {
    /// Lower bound on `z` for the defining integral to converge at infinity.
    pub fn z_min(self, chi: u8) -> f64 {
        let c = f64::from(chi);
        match self {
            MellinKind::A => c + 1.0,
            MellinKind::B | MellinKind::C => c - 1.0,
            MellinKind::G => c - 3.0,
        }
    }

    pub fn closed_form(self, chi: u8, z: f64, eps: f64, cfg: ScalarConfig) -> Result<f64> {
        match self {
            MellinKind::A => mellin_a(chi, z, eps),
            MellinKind::B => mellin_b(chi, z, cfg),
            MellinKind::C => mellin_c(chi, z, eps, cfg),
            MellinKind::G => mellin_g(chi, z, cfg),
        }
    }

    /// Integrand of the defining integral.
    fn integrand(self, chi: u8, z: f64, eps: f64, d: &DebyeCoefficients, w: f64) -> f64 {
        let s = w.hypot(1.0);
        let e1 = s / w;
        let e2 = -1.0 / (s * w * w);
        let e3 = 1.0 / (s.powi(3) * w) + 2.0 / (s * w.powi(3));
        let t = 1.0 / s;
        let tp = -w / s.powi(3);
        let base = w.powf(f64::from(chi) - z) * e1.powf(-z);
        match self {
            MellinKind::A => {
                let r2 = e2 / e1;
                base * (1.0 - z * eps * w / 2.0 * r2
                    + eps
                        * eps
                        * (-z * w * w / 6.0 * e3 / e1 + z * (z + 1.0) * w * w / 8.0 * r2 * r2))
            }
            MellinKind::B => base * (d.lambda0 + 3.0 * d.lambda1 * t * t) / e1 * tp,
            MellinKind::C => {
                let qp = d.varpi0 + 3.0 * d.varpi1 * t * t;
                let diff = d.q1(t) - d.p1(t);
                base * (qp * tp / e1 - (z + 1.0) * diff / 2.0 * e2 / (e1 * e1)
                    + diff / (eps * w * e1))
            }
            MellinKind::G => {
                let diff = d.q1(t) - d.p1(t);
                base / (w * w * e1 * e1) * diff * diff
            }
        }
    }
}

/// Closed form against quadrature of the defining integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MellinCheck {
    pub closed_form: f64,
    pub quadrature: f64,
    pub quadrature_err: f64,
    pub abs_deviation: f64,
    pub rel_deviation: f64,
}

/// Evaluate the defining integral of a Mellin coefficient by quadrature and
/// compare it with the closed form. `eps` only enters `A` and `C`.
pub fn mellin_integral_check(
    which: MellinKind,
    chi: u8,
    z: f64,
    eps: f64,
    cfg: ScalarConfig,
    tol: f64,
) -> Result<MellinCheck> {
    check_chi(chi)?;
    if !(z > which.z_min(chi)) || !z.is_finite() {
        return Err(CasimirError::NonConvergent(format!(
            "{which:?}_{chi}({z}) diverges: the integral needs z > {}",
            which.z_min(chi)
        )));
    }
    let closed_form = which.closed_form(chi, z, eps, cfg)?;
    let d = DebyeCoefficients::for_config(cfg);
    let f = |w: f64| {
        if w > 0.0 {
            which.integrand(chi, z, eps, &d, w)
        } else {
            0.0
        }
    };
    let opts = QuadOptions {
        rel_tol: tol,
        abs_tol: 1e-3 * tol * closed_form.abs(),
        max_intervals: 20_000,
        parallel: false,
    };
    let near = integrate(f, 0.0, 1.0, &[1e-6, 1e-3, 0.1], &opts);
    // omega = 1/u maps [1, inf) onto (0, 1]
    let far = integrate(
        |u: f64| if u > 0.0 { f(1.0 / u) / (u * u) } else { 0.0 },
        0.0,
        1.0,
        &[1e-6, 1e-3, 0.1],
        &opts,
    );
    if !(near.converged && far.converged) {
        return Err(CasimirError::NonConvergent(format!(
            "{which:?}_{chi}({z}): quadrature did not reach rel_tol {tol}"
        )));
    }
    let quadrature = near.value + far.value;
    let abs_deviation = (quadrature - closed_form).abs();
    Ok(MellinCheck {
        closed_form,
        quadrature,
        quadrature_err: near.abs_err + far.abs_err,
        abs_deviation,
        rel_deviation: abs_deviation / closed_form.abs().max(f64::MIN_POSITIVE),
    })
}
