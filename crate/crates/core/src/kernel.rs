//! Mode functions `M_n(xi)` and `A_n(omega)` for the four scalar boundary
//! configurations, and the per-frequency mode sum `sum'_n ln(1 - M_n(xi))`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CasimirError, Result};
use crate::special::{ln_one_minus, LogSigned, ModifiedSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
}

impl BoundaryCondition {
    fn primed(self) -> bool {
        matches!(self, BoundaryCondition::Neumann)
    }

    fn letter(self) -> char {
        match self {
            BoundaryCondition::Dirichlet => 'D',
            BoundaryCondition::Neumann => 'N',
        }
    }
}

/// Scalar field with a boundary condition on each cylinder (inner first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScalarConfig {
    pub inner: BoundaryCondition,
    pub outer: BoundaryCondition,
}

impl ScalarConfig {
    pub const DD: ScalarConfig = ScalarConfig {
        inner: BoundaryCondition::Dirichlet,
        outer: BoundaryCondition::Dirichlet,
    };
    pub const NN: ScalarConfig = ScalarConfig {
        inner: BoundaryCondition::Neumann,
        outer: BoundaryCondition::Neumann,
    };
    pub const DN: ScalarConfig = ScalarConfig {
        inner: BoundaryCondition::Dirichlet,
        outer: BoundaryCondition::Neumann,
    };
    pub const ND: ScalarConfig = ScalarConfig {
        inner: BoundaryCondition::Neumann,
        outer: BoundaryCondition::Dirichlet,
    };
    pub const ALL: [ScalarConfig; 4] = [Self::DD, Self::NN, Self::DN, Self::ND];

    pub fn is_homogeneous(&self) -> bool {
        self.inner == self.outer
    }
}

impl fmt::Display for ScalarConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.inner.letter(), self.outer.letter())
    }
}

/// Electromagnetic configurations: perfect conductor / infinitely permeable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EmKind {
    PcPc,
    PcIp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldConfig {
    Scalar(ScalarConfig),
    Em(EmKind),
}

impl FieldConfig {
    pub const ALL: [FieldConfig; 6] = [
        FieldConfig::Scalar(ScalarConfig::DD),
        FieldConfig::Scalar(ScalarConfig::NN),
        FieldConfig::Scalar(ScalarConfig::DN),
        FieldConfig::Scalar(ScalarConfig::ND),
        FieldConfig::Em(EmKind::PcPc),
        FieldConfig::Em(EmKind::PcIp),
    ];

    /// Scalar channels whose energies add up to this configuration's energy.
    pub fn channels(&self) -> Vec<ScalarConfig> {
        match self {
            FieldConfig::Scalar(s) => vec![*s],
            FieldConfig::Em(EmKind::PcPc) => vec![ScalarConfig::DD, ScalarConfig::NN],
            FieldConfig::Em(EmKind::PcIp) => vec![ScalarConfig::DN, ScalarConfig::ND],
        }
    }

    /// Attractive (negative energy) for homogeneous conditions, repulsive otherwise.
    pub fn is_attractive(&self) -> bool {
        self.channels()[0].is_homogeneous()
    }
}

impl From<ScalarConfig> for FieldConfig {
    fn from(s: ScalarConfig) -> Self {
        FieldConfig::Scalar(s)
    }
}

impl fmt::Display for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldConfig::Scalar(s) => s.fmt(f),
            FieldConfig::Em(EmKind::PcPc) => f.write_str("PCPC"),
            FieldConfig::Em(EmKind::PcIp) => f.write_str("PCIP"),
        }
    }
}

impl FromStr for FieldConfig {
    type Err = CasimirError;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_uppercase();
        Ok(match key.as_str() {
            "DD" => ScalarConfig::DD.into(),
            "NN" => ScalarConfig::NN.into(),
            "DN" => ScalarConfig::DN.into(),
            "ND" => ScalarConfig::ND.into(),
            "PCPC" => FieldConfig::Em(EmKind::PcPc),
            "PCIP" => FieldConfig::Em(EmKind::PcIp),
            _ => {
                return Err(CasimirError::InvalidInput(format!(
                    "unknown boundary configuration '{s}'"
                )))
            }
        })
    }
}

/// Two concentric cylinders of radii `a1 < a2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylinderGeometry {
    a1: f64,
    a2: f64,
}

impl CylinderGeometry {
    pub fn new(a1: f64, a2: f64) -> Result<Self> {
        if !(a1 > 0.0 && a1.is_finite() && a2.is_finite() && a2 > a1) {
            return Err(CasimirError::InvalidInput(format!(
                "radii must satisfy 0 < a1 < a2 < inf, got a1 = {a1}, a2 = {a2}"
            )));
        }
        Ok(CylinderGeometry { a1, a2 })
    }

    /// Geometry from the inner radius and the dimensionless gap `eps = d / a1`.
    pub fn from_gap(a1: f64, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(CasimirError::InvalidInput(format!(
                "eps must be positive, got {eps}"
            )));
        }
        Self::new(a1, a1 * (1.0 + eps))
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }

    pub fn a2(&self) -> f64 {
        self.a2
    }

    /// Separation `d = a2 - a1`.
    pub fn d(&self) -> f64 {
        self.a2 - self.a1
    }

    /// Dimensionless gap `eps = d / a1`.
    pub fn eps(&self) -> f64 {
        self.d() / self.a1
    }
}

/// `M_n` at one frequency: `ln|M|`, its sign, and `ln(1 - M)`.
///
/// `|M_n| < 1` for the homogeneous configurations and for every mixed order
/// except the Dirichlet-inner/Neumann-outer `n = 0` mode, where `|M_0|` grows
/// like `2 / ((a2 xi)^2 ln(1/(a1 xi)))` at small `xi`. `M_n < 0` there, so
/// `ln(1 - M_n) = ln(1 + |M_n|)` stays finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeValue {
    pub log_abs_m: f64,
    pub sign: f64,
    pub log_term: f64,
}

impl ModeValue {
    fn from_log(m: LogSigned) -> Result<Self> {
        // ln(1 - M) is real for every negative M; only M >= 1 is fatal.
        if m.sign > 0.0 && m.log_magnitude >= 0.0 {
            return Err(CasimirError::Internal(format!(
                "M_n = exp({}) is not below one",
                m.log_magnitude
            )));
        }
        Ok(ModeValue {
            log_abs_m: m.log_magnitude,
            sign: m.sign,
            log_term: ln_one_minus(m.log_magnitude, m.sign),
        })
    }

    pub fn m(&self) -> f64 {
        self.sign * self.log_abs_m.exp()
    }
}

fn mode_from_arguments(n: usize, x1: f64, x2: f64, cfg: ScalarConfig) -> Result<ModeValue> {
    let s1 = ModifiedSequence::new(x1, n)?;
    let s2 = ModifiedSequence::new(x2, n)?;
    let z1 = s1.log_ratio(n, cfg.inner.primed());
    let z2 = s2.log_ratio(n, cfg.outer.primed());
    ModeValue::from_log(z1 / z2)
}

/// `M_n(xi) = Z^1_n(xi) / Z^2_n(xi)` with `Z^i_n = I_n/K_n` (Dirichlet) or
/// `I_n'/K_n'` (Neumann) evaluated at `a_i xi`.
pub fn mode_m(n: usize, xi: f64, geom: &CylinderGeometry, cfg: ScalarConfig) -> Result<ModeValue> {
    if !(xi > 0.0 && xi.is_finite()) {
        return Err(CasimirError::domain(
            "mode_m",
            format!("xi must be positive, got {xi}"),
        ));
    }
    mode_from_arguments(n, geom.a1 * xi, geom.a2 * xi, cfg)
}

/// Dimensionless kernel `A_n(omega) = H^1_n(omega) / H^2_n(omega (1 + eps))`.
pub fn mode_a(n: usize, omega: f64, eps: f64, cfg: ScalarConfig) -> Result<ModeValue> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(CasimirError::domain(
            "mode_a",
            format!("omega must be positive, got {omega}"),
        ));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(CasimirError::domain(
            "mode_a",
            format!("eps must be positive, got {eps}"),
        ));
    }
    mode_from_arguments(n, omega, omega * (1.0 + eps), cfg)
}

/// Truncation bounds for the mode sum and the frequency integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cutoffs {
    pub n_max: usize,
    pub xi_max: f64,
}

/// Cutoffs such that the dropped tails are below `tol` relative.
///
/// The order cutoff uses `|M_n| <= (a1/a2)^{2n}` up to an `O(1)` factor, which
/// follows from the Debye form `exp(-2n [eta((1+eps)w) - eta(w)])` and
/// `eta' >= 1/w`. The frequency cutoff uses the `exp(-2 d xi)` envelope with a
/// margin for the polynomial prefactor of the integrand.
pub fn cutoff_estimate(tol: f64, geom: &CylinderGeometry) -> Cutoffs {
    let tol = tol.clamp(1e-300, 0.5);
    let log_q = 2.0 * (geom.a1 / geom.a2).ln(); // < 0
    let q = log_q.exp();
    let n_max = ((tol * (1.0 - q)).ln() / log_q).ceil().max(0.0) as usize + 4;
    let margin = 2.0 * (1.0 + 1.0 / geom.eps()).ln() + 5.0;
    let xi_max = ((1.0 / tol).ln() + margin) / (2.0 * geom.d());
    Cutoffs { n_max, xi_max }
}

/// Value of `sum'_n ln(1 - M_n(xi))` with the number of orders actually summed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSumValue {
    pub value: f64,
    pub n_used: usize,
    /// `true` if the order cap was reached before the terms became negligible.
    pub truncated: bool,
}

/// Evaluates the primed mode sum `sum'_{n>=0} ln(1 - M_n(xi))` for one scalar
/// channel. Thread-safe; each call allocates its own Bessel buffers.
#[derive(Debug, Clone, Copy)]
pub struct ModeSum {
    geom: CylinderGeometry,
    cfg: ScalarConfig,
    n_cap: usize,
    term_tol: f64,
    q: f64,
    /// Orders needed where the terms decay geometrically (small `xi`).
    n_geometric: usize,
    abs_floor: f64,
}

impl ModeSum {
    /// `n_cap` is a hard limit on the Bessel order; below it the number of
    /// orders is chosen per frequency from `term_tol`.
    pub fn new(geom: CylinderGeometry, cfg: ScalarConfig, n_cap: usize, term_tol: f64) -> Self {
        let q = (geom.a1 / geom.a2).powi(2);
        let n_geometric = cutoff_estimate(term_tol, &geom).n_max;
        ModeSum {
            geom,
            cfg,
            n_cap: n_cap.max(2),
            term_tol,
            q,
            n_geometric,
            abs_floor: 0.0,
        }
    }

    /// Stop summing once the remaining terms are below `floor` in absolute
    /// value, even if that is not yet `term_tol` relative to the partial sum.
    pub fn with_abs_floor(mut self, floor: f64) -> Self {
        self.abs_floor = floor.max(0.0);
        self
    }

    /// At large `xi` the terms fall off like `exp(-d n^2 / (a1 a2 xi))`
    /// rather than geometrically, so more orders are needed.
    fn orders_needed(&self, xi: f64) -> usize {
        let g = &self.geom;
        let gaussian = (g.a1 * g.a2 * xi * (1.0 / self.term_tol).ln() / g.d()).sqrt();
        let n = self.n_geometric.max(gaussian.ceil() as usize + 4);
        n.min(self.n_cap)
    }

    pub fn geometry(&self) -> &CylinderGeometry {
        &self.geom
    }

    pub fn config(&self) -> ScalarConfig {
        self.cfg
    }

    pub fn eval(&self, xi: f64) -> ModeSumValue {
        debug_assert!(xi > 0.0);
        let mut n_top = self.orders_needed(xi);
        loop {
            let v = self.eval_upto(xi, n_top);
            if !v.truncated || n_top == self.n_cap {
                return v;
            }
            n_top = (2 * n_top).min(self.n_cap);
        }
    }

    fn eval_upto(&self, xi: f64, n_top: usize) -> ModeSumValue {
        let x1 = self.geom.a1 * xi;
        let x2 = self.geom.a2 * xi;
        let s1 = ModifiedSequence::new(x1, n_top).expect("x1 > 0");
        let s2 = ModifiedSequence::new(x2, n_top).expect("x2 > 0");
        let inner_n = self.cfg.inner.primed();
        let outer_n = self.cfg.outer.primed();
        let sign = if inner_n == outer_n { 1.0 } else { -1.0 };

        // ln of I_n(x1) K_n(x2) / (K_n(x1) I_n(x2)), advanced by ratio products
        let mut base = (s1.i0_scaled() / s2.i0_scaled() * (s2.k0_scaled() / s1.k0_scaled())).ln()
            - 2.0 * self.geom.d() * xi;
        let tail_factor = 1.0 / (1.0 - self.q);
        let mut sum = 0.0;
        let mut n = 0;
        loop {
            let mut s = base;
            if inner_n || outer_n {
                let mut f = 1.0;
                if inner_n {
                    f *= s1.i_log_derivative(n) / -s1.k_log_derivative(n);
                }
                if outer_n {
                    f *= -s2.k_log_derivative(n) / s2.i_log_derivative(n);
                }
                s += f.ln();
            }
            let term = if s < -745.0 {
                0.0
            } else {
                ln_one_minus(s, sign)
            };
            assert!(
                term.is_finite(),
                "|M_{n}({xi})| >= 1 for {} (ln|M| = {s})",
                self.cfg
            );
            sum += if n == 0 { 0.5 * term } else { term };
            let negligible =
                n >= 2 && term.abs() * tail_factor <= self.term_tol * sum.abs() + self.abs_floor;
            if negligible || term == 0.0 && n >= 2 {
                return ModeSumValue {
                    value: sum,
                    n_used: n + 1,
                    truncated: false,
                };
            }
            if n == n_top {
                return ModeSumValue {
                    value: sum,
                    n_used: n + 1,
                    truncated: true,
                };
            }
            base += (s1.i_ratio(n) / s1.k_ratio(n) * (s2.k_ratio(n) / s2.i_ratio(n))).ln();
            n += 1;
        }
    }
}
