use casimir_core::asymptotics::{expansion, pfa_leading, Regime};
use casimir_core::engine::{
    classical_term, free_energy_matsubara, thermal_correction_poisson, thermal_leading,
    zero_temperature_energy, zero_temperature_energy_double_form, EnergyRegime, EnergyResult,
    NumericsSpec,
};
use casimir_core::{CasimirError, CylinderGeometry, FieldConfig};
use serde::Serialize;

use crate::args::{CommonArgs, ComputeArgs, RegimeArg, ScanArgs, Units};
use crate::output::{finite_or_null, Record};
use crate::ExitCode;

/// hbar * c in J m.
const HBAR_C: f64 = 1.054_571_817e-34 * 299_792_458.0;
/// Boltzmann constant in J/K.
const K_B: f64 = 1.380_649e-23;
const MICRON: f64 = 1e-6;

impl Units {
    /// Temperature as an inverse length in the unit of the radii.
    fn temperature_in(self, t: f64) -> f64 {
        match self {
            Units::Natural => t,
            Units::Si => t * K_B / HBAR_C * MICRON,
        }
    }

    /// Energy per length from inverse-length-squared to the output unit.
    fn energy_out(self, e: f64) -> f64 {
        match self {
            Units::Natural => e,
            Units::Si => e * HBAR_C / (MICRON * MICRON),
        }
    }

    fn label(self) -> &'static str {
        match self {
            Units::Natural => "natural",
            Units::Si => "si",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComputeRecord {
    pub command: &'static str,
    pub bc: String,
    pub a1: f64,
    pub a2: f64,
    pub eps: f64,
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "a1T")]
    pub a1t: f64,
    pub regime: String,
    #[serde(serialize_with = "finite_or_null")]
    pub value: f64,
    #[serde(serialize_with = "finite_or_null")]
    pub err: f64,
    pub n_used: usize,
    pub l_used: usize,
    pub status: &'static str,
    pub units: &'static str,
    pub warnings: Vec<String>,
}

impl Record for ComputeRecord {
    fn columns() -> &'static [&'static str] {
        &[
            "command", "bc", "a1", "a2", "eps", "T", "a1T", "regime", "value", "err", "n_used",
            "l_used", "status", "units", "warnings",
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRecord {
    pub eps: f64,
    #[serde(rename = "a1T")]
    pub a1t: f64,
    pub bc: String,
    pub regime: String,
    #[serde(serialize_with = "finite_or_null")]
    pub value: f64,
    #[serde(serialize_with = "finite_or_null")]
    pub err: f64,
    #[serde(serialize_with = "finite_or_null")]
    pub pfa: f64,
    #[serde(serialize_with = "finite_or_null")]
    pub expansion: f64,
    #[serde(serialize_with = "finite_or_null")]
    pub ratio_to_pfa: f64,
    pub status: &'static str,
}

impl Record for ScanRecord {
    fn columns() -> &'static [&'static str] {
        &[
            "eps",
            "a1T",
            "bc",
            "regime",
            "value",
            "err",
            "pfa",
            "expansion",
            "ratio_to_pfa",
            "status",
        ]
    }
}

/// Input problems that abort a command with exit code 2.
#[derive(Debug, Clone, PartialEq)]
pub struct InvalidInput(pub String);

impl std::fmt::Display for InvalidInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<CasimirError> for InvalidInput {
    fn from(e: CasimirError) -> Self {
        InvalidInput(e.to_string())
    }
}

fn parse_config(bc: &str) -> Result<FieldConfig, InvalidInput> {
    bc.parse().map_err(InvalidInput::from)
}

fn positive(name: &str, x: f64) -> Result<f64, InvalidInput> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(InvalidInput(format!(
            "{name} must be positive and finite, got {x}"
        )))
    }
}

fn numerics(common: &CommonArgs) -> Result<NumericsSpec, InvalidInput> {
    let rel_tol = common.rel_tol;
    if !(rel_tol > 0.0 && rel_tol < 1.0) {
        return Err(InvalidInput(format!(
            "--rel-tol must lie in (0, 1), got {rel_tol}"
        )));
    }
    Ok(NumericsSpec::with_rel_tol(rel_tol))
}

/// Outcome of one evaluation: a converged result, or the partial result of a
/// tolerance failure.
struct Evaluation {
    result: EnergyResult,
    converged: bool,
}

fn evaluate(
    regime: RegimeArg,
    geom: &CylinderGeometry,
    cfg: FieldConfig,
    t: f64,
    spec: &NumericsSpec,
) -> Result<Evaluation, InvalidInput> {
    let needs_t = |name: &str| {
        if t > 0.0 {
            Ok(())
        } else {
            Err(InvalidInput(format!("regime {name} needs T > 0")))
        }
    };
    let outcome = match regime {
        RegimeArg::Auto if t == 0.0 => zero_temperature_energy(geom, cfg, spec),
        RegimeArg::Auto | RegimeArg::Matsubara => {
            needs_t("matsubara")?;
            free_energy_matsubara(geom, cfg, t, spec)
        }
        RegimeArg::ZeroT => zero_temperature_energy(geom, cfg, spec),
        RegimeArg::Double => zero_temperature_energy_double_form(geom, cfg, spec),
        RegimeArg::Classical => {
            needs_t("classical")?;
            classical_term(geom, cfg, t, spec)
        }
        RegimeArg::Poisson => {
            needs_t("poisson")?;
            thermal_correction_poisson(geom, cfg, t, spec)
        }
        RegimeArg::Leading => {
            needs_t("leading")?;
            let mut total = 0.0;
            for ch in cfg.channels() {
                total += thermal_leading(ch.inner, geom.a1(), t)?.value;
            }
            Ok(EnergyResult {
                value: total,
                err_estimate: 0.0,
                n_used: 0,
                l_used: 0,
                regime: EnergyRegime::ThermalLeading,
                warnings: Vec::new(),
            })
        }
    };
    match outcome {
        Ok(result) => Ok(Evaluation {
            result,
            converged: true,
        }),
        Err(CasimirError::ToleranceNotMet { partial }) => Ok(Evaluation {
            result: *partial,
            converged: false,
        }),
        Err(e) => Err(e.into()),
    }
}

fn status(converged: bool) -> &'static str {
    if converged {
        "ok"
    } else {
        "tolerance_not_met"
    }
}

/// One evaluation; the exit code is 3 when the tolerance was not met.
pub fn cmd_compute(args: &ComputeArgs) -> Result<(ComputeRecord, ExitCode), InvalidInput> {
    let common = &args.common;
    let cfg = parse_config(&common.bc)?;
    let a1 = positive("--a1", common.a1)?;
    let geom = match (args.eps, args.a2) {
        (Some(eps), None) => CylinderGeometry::from_gap(a1, positive("--eps", eps)?)?,
        (None, Some(a2)) => CylinderGeometry::new(a1, positive("--a2", a2)?)?,
        _ => return Err(InvalidInput("give exactly one of --eps and --a2".into())),
    };
    if !(args.t >= 0.0 && args.t.is_finite()) {
        return Err(InvalidInput(format!("--T must be >= 0, got {}", args.t)));
    }
    let spec = numerics(common)?;
    let t = common.units.temperature_in(args.t);
    let eval = evaluate(common.regime, &geom, cfg, t, &spec)?;
    let r = eval.result;
    let record = ComputeRecord {
        command: "compute",
        bc: cfg.to_string(),
        a1: geom.a1(),
        a2: geom.a2(),
        eps: args.eps.unwrap_or_else(|| geom.eps()),
        t: args.t,
        a1t: geom.a1() * t,
        regime: r.regime.to_string(),
        value: common.units.energy_out(r.value),
        err: common.units.energy_out(r.err_estimate),
        n_used: r.n_used,
        l_used: r.l_used,
        status: status(eval.converged),
        units: common.units.label(),
        warnings: r.warnings,
    };
    let code = if eval.converged {
        ExitCode::Success
    } else {
        ExitCode::ToleranceNotMet
    };
    Ok((record, code))
}

/// Strictly increasing or strictly decreasing.
fn is_monotone(grid: &[f64]) -> bool {
    grid.windows(2).all(|w| w[0] < w[1]) || grid.windows(2).all(|w| w[0] > w[1])
}

/// The asymptote a scan row is compared with: the zero-temperature series at
/// `T = 0`, otherwise the classical (high-temperature) series.
fn reference_regime(regime: RegimeArg, t: f64) -> Option<Regime> {
    match regime {
        RegimeArg::Auto if t == 0.0 => Some(Regime::ZeroT),
        RegimeArg::ZeroT | RegimeArg::Double => Some(Regime::ZeroT),
        RegimeArg::Auto | RegimeArg::Matsubara | RegimeArg::Classical => Some(Regime::Classical),
        RegimeArg::Poisson | RegimeArg::Leading => None,
    }
}

/// Sweep over `eps` or `T`; rows that miss the tolerance are flagged and the
/// scan continues (exit code 3 at the end).
pub fn cmd_scan(args: &ScanArgs) -> Result<(Vec<ScanRecord>, ExitCode), InvalidInput> {
    let common = &args.common;
    let cfg = parse_config(&common.bc)?;
    let a1 = positive("--a1", common.a1)?;
    let spec = numerics(common)?;
    let (eps_grid, t_grid) = (&args.eps, &args.t);
    if eps_grid.is_empty() {
        return Err(InvalidInput("--eps grid is empty".into()));
    }
    let t_grid: Vec<f64> = if t_grid.is_empty() {
        vec![0.0]
    } else {
        t_grid.clone()
    };
    if eps_grid.len() > 1 && t_grid.len() > 1 {
        return Err(InvalidInput("sweep either --eps or --T, not both".into()));
    }
    for (name, grid) in [("--eps", eps_grid.as_slice()), ("--T", t_grid.as_slice())] {
        if !is_monotone(grid) {
            return Err(InvalidInput(format!(
                "{name} grid must be strictly monotone"
            )));
        }
    }
    for &eps in eps_grid {
        positive("--eps", eps)?;
    }
    for &t in &t_grid {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(InvalidInput(format!("--T values must be >= 0, got {t}")));
        }
    }

    let mut rows = Vec::new();
    let mut all_converged = true;
    for &eps in eps_grid {
        for &t_in in &t_grid {
            let geom = CylinderGeometry::from_gap(a1, eps)?;
            let t = common.units.temperature_in(t_in);
            let eval = evaluate(common.regime, &geom, cfg, t, &spec)?;
            all_converged &= eval.converged;
            let (pfa, series) = match reference_regime(common.regime, t) {
                Some(regime) => {
                    let t_opt = (t > 0.0).then_some(t);
                    (
                        pfa_leading(cfg, regime, &geom, t_opt)?,
                        expansion(cfg, regime, &geom, t_opt)?.value,
                    )
                }
                None => (f64::NAN, f64::NAN),
            };
            let value = eval.result.value;
            rows.push(ScanRecord {
                eps,
                a1t: a1 * t,
                bc: cfg.to_string(),
                regime: eval.result.regime.to_string(),
                value: common.units.energy_out(value),
                err: common.units.energy_out(eval.result.err_estimate),
                pfa: common.units.energy_out(pfa),
                expansion: common.units.energy_out(series),
                ratio_to_pfa: value / pfa,
                status: status(eval.converged),
            });
        }
    }
    let code = if all_converged {
        ExitCode::Success
    } else {
        ExitCode::ToleranceNotMet
    };
    Ok((rows, code))
}
