//! Self-check suites behind `casimir validate`.

use std::f64::consts::PI;

use casimir_core::asymptotics::{expansion, mellin_integral_check, MellinKind, Regime};
use casimir_core::engine::{
    classical_term, free_energy_matsubara, thermal_correction_poisson, thermal_leading,
    zero_temperature_energy, NumericsSpec,
};
use casimir_core::special::{
    bessel_j, bessel_jy_sequence, bessel_y, debye, djn, dyn_, log_ratio_ik, ModifiedSequence,
};
use casimir_core::{BoundaryCondition, CylinderGeometry, FieldConfig, ScalarConfig};
use serde::Serialize;

use crate::args::Suite;
use crate::output::{finite_or_null, Record};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub suite: &'static str,
    pub check: String,
    #[serde(serialize_with = "finite_or_null")]
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Record for CheckRecord {
    fn columns() -> &'static [&'static str] {
        &["suite", "check", "deviation", "tolerance", "pass"]
    }
}

impl CheckRecord {
    /// A check passes when the deviation is finite and within tolerance.
    fn new(suite: &'static str, check: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        CheckRecord {
            suite,
            check: check.into(),
            deviation,
            tolerance,
            pass: deviation.is_finite() && deviation <= tolerance,
        }
    }

    fn failed(suite: &'static str, check: impl Into<String>, tolerance: f64) -> Self {
        CheckRecord::new(suite, check, f64::NAN, tolerance)
    }
}

pub fn run_suite(suite: Suite) -> Vec<CheckRecord> {
    match suite {
        Suite::Wronskian => wronskian(),
        Suite::Debye => debye_residuals(),
        Suite::Identity => identity(),
        Suite::Mellin => mellin(),
        Suite::Expansion => expansion_vs_numerics(),
        Suite::Thermal => thermal(),
    }
}

fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|k| lo * (hi / lo).powf(k as f64 / (count - 1) as f64))
        .collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// `I K' - I' K = -1/x` and `J Y' - J' Y = 2/(pi x)` for n = 0..20, x in [1e-3, 1e3].
pub fn wronskian() -> Vec<CheckRecord> {
    const SUITE: &str = "wronskian";
    let grid = log_grid(1e-3, 1e3, 61);
    let mut modified: f64 = 0.0;
    let mut ordinary: f64 = 0.0;
    let mut ok = true;
    for &x in &grid {
        match (ModifiedSequence::new(x, 21), bessel_jy_sequence(x, 21)) {
            (Ok(s), Ok((j, y))) => {
                for n in 0..=20 {
                    let ik = (s.ln_i_scaled(n) + s.ln_k_scaled(n)).exp();
                    let w = ik * (s.k_log_derivative(n) - s.i_log_derivative(n)) * x;
                    modified = modified.max((w + 1.0).abs());

                    let (dj, dy) = if n == 0 {
                        (-j[1], -y[1])
                    } else {
                        (0.5 * (j[n - 1] - j[n + 1]), 0.5 * (y[n - 1] - y[n + 1]))
                    };
                    let w = (j[n] * dy - dj * y[n]) * PI * x / 2.0;
                    ordinary = ordinary.max((w - 1.0).abs());
                }
            }
            _ => ok = false,
        }
    }
    if !ok {
        return vec![
            CheckRecord::failed(SUITE, "modified_I_K", 1e-12),
            CheckRecord::failed(SUITE, "ordinary_J_Y", 1e-10),
        ];
    }
    let (x, n) = (2.5, 4);
    let spot = match (dyn_(n, x), bessel_y(n, x)) {
        (Ok(dy), Ok(y)) => rel(bessel_j(n, x) * dy - djn(n, x) * y, 2.0 / (PI * x)),
        _ => f64::NAN,
    };
    vec![
        CheckRecord::new(SUITE, "modified_I_K", modified, 1e-12),
        CheckRecord::new(SUITE, "ordinary_J_Y", ordinary, 1e-10),
        CheckRecord::new(SUITE, "ordinary_J_Y_n4_x2.5", spot, 1e-12),
    ]
}

/// Residual of the first-order uniform expansion of `ln(I_n K_n)` at argument
/// `n w`. The deviation is `max_n r_n / (r_5 (5/n)^2)`: at most 1 when the
/// residual falls at least as fast as `n^-2`.
pub fn debye_residuals() -> Vec<CheckRecord> {
    const SUITE: &str = "debye";
    let mut out = Vec::new();
    for &w in &[0.5, 1.0, 2.0] {
        for primed in [false, true] {
            let name = format!("w={w}{}", if primed { ",derivative" } else { "" });
            let Ok(d) = debye(w) else {
                out.push(CheckRecord::failed(SUITE, name, 1.0));
                continue;
            };
            let p1 = if primed { d.m1 } else { d.d1 };
            let residual = |n: usize| {
                let nf = n as f64;
                log_ratio_ik(n, nf * w, primed)
                    .map(|l| (l.log_magnitude - (2.0 * nf * d.eta - PI.ln() + 2.0 * p1 / nf)).abs())
                    .unwrap_or(f64::NAN)
            };
            let r5 = residual(5);
            let worst = (6..=50)
                .map(|n| residual(n) / (r5 * (5.0 / n as f64).powi(2) + 1e-12))
                .fold(0.0, f64::max);
            out.push(CheckRecord::new(SUITE, name, worst, 1.0));
        }
    }
    out
}

/// Matsubara free energy against zero-temperature energy plus the
/// Poisson-resummed thermal correction.
pub fn identity() -> Vec<CheckRecord> {
    const SUITE: &str = "identity";
    const TOL: f64 = 1e-4;
    let spec = NumericsSpec::with_rel_tol(1e-8);
    let geom = CylinderGeometry::from_gap(1.0, 0.1).expect("valid geometry");
    let mut out = Vec::new();
    for cfg in [ScalarConfig::DD, ScalarConfig::NN] {
        let cfg = FieldConfig::Scalar(cfg);
        let e0 = zero_temperature_energy(&geom, cfg, &spec);
        for a1t in [0.1, 0.3, 0.5] {
            let name = format!("{cfg},a1T={a1t}");
            let t = a1t / geom.a1();
            let f = free_energy_matsubara(&geom, cfg, t, &spec);
            let dt = thermal_correction_poisson(&geom, cfg, t, &spec);
            out.push(match (&e0, f, dt) {
                (Ok(e0), Ok(f), Ok(dt)) => {
                    CheckRecord::new(SUITE, name, rel(e0.value + dt.value, f.value), TOL)
                }
                _ => CheckRecord::failed(SUITE, name, TOL),
            });
        }
    }
    out
}

/// Grid of (function, chi, z, eps, configuration) points inside the
/// convergence domain.
pub fn mellin_grid() -> Vec<(MellinKind, u8, f64, f64, ScalarConfig)> {
    use MellinKind::{A, B, C, G};
    let (dd, nn, dn, nd) = (
        ScalarConfig::DD,
        ScalarConfig::NN,
        ScalarConfig::DN,
        ScalarConfig::ND,
    );
    vec![
        (A, 1, 4.0, 0.01, dd),
        (A, 0, 2.5, 0.05, dd),
        (A, 1, 3.5, 0.1, nn),
        (B, 0, 3.0, 0.0, nn),
        (B, 1, 2.5, 0.0, dd),
        (B, 0, 1.5, 0.0, dn),
        (C, 1, 3.0, 0.05, dn),
        (C, 0, 2.5, 0.1, nd),
        (C, 1, 4.0, 0.02, dd),
        (G, 0, 4.0, 0.0, dn),
        (G, 1, 3.0, 0.0, nd),
        (G, 0, 2.0, 0.0, nd),
        (G, 1, 4.5, 0.0, dn),
    ]
}

pub fn mellin() -> Vec<CheckRecord> {
    const SUITE: &str = "mellin";
    const TOL: f64 = 1e-8;
    mellin_grid()
        .into_iter()
        .map(|(which, chi, z, eps, cfg)| {
            let name = format!("{which:?}_{chi}(z={z},eps={eps},{cfg})");
            match mellin_integral_check(which, chi, z, eps, cfg, 1e-11) {
                Ok(c) => CheckRecord::new(SUITE, name, c.rel_deviation, TOL),
                Err(_) => CheckRecord::failed(SUITE, name, TOL),
            }
        })
        .collect()
}

/// Small-gap series against direct numerics, relative, with tolerance `5 eps^2`.
pub fn expansion_vs_numerics() -> Vec<CheckRecord> {
    const SUITE: &str = "expansion";
    let spec = NumericsSpec::with_rel_tol(1e-8);
    let t = 1.0;
    let mut out = Vec::new();
    for cfg in FieldConfig::ALL {
        for eps in [0.1, 0.05] {
            let tol = 5.0 * eps * eps;
            let geom = CylinderGeometry::from_gap(1.0, eps).expect("valid geometry");
            for regime in [Regime::ZeroT, Regime::Classical] {
                let name = format!("{cfg},{regime},eps={eps}");
                let numeric = match regime {
                    Regime::ZeroT => zero_temperature_energy(&geom, cfg, &spec),
                    Regime::Classical => classical_term(&geom, cfg, t, &spec),
                };
                let t_opt = matches!(regime, Regime::Classical).then_some(t);
                out.push(match (numeric, expansion(cfg, regime, &geom, t_opt)) {
                    (Ok(n), Ok(s)) => CheckRecord::new(SUITE, name, rel(s.value, n.value), tol),
                    _ => CheckRecord::failed(SUITE, name, tol),
                });
            }
        }
    }
    out
}

/// Low-temperature leading terms against direct numerics. The ratio of the
/// numerical thermal correction to the leading term must lie in [0.5, 1.5];
/// the deviation is `|ratio - 1|`.
pub fn thermal() -> Vec<CheckRecord> {
    const SUITE: &str = "thermal";
    const TOL: f64 = 0.5;
    let spec = NumericsSpec::with_rel_tol(1e-10);
    let geom = CylinderGeometry::from_gap(1.0, 0.1).expect("valid geometry");
    let mut out = Vec::new();

    let dd = FieldConfig::Scalar(ScalarConfig::DD);
    let e0 = zero_temperature_energy(&geom, dd, &spec);
    for a1t in [0.02, 0.01, 0.005] {
        let name = format!("DD,matsubara,a1T={a1t}");
        let t = a1t / geom.a1();
        let f = free_energy_matsubara(&geom, dd, t, &spec);
        let lead = thermal_leading(BoundaryCondition::Dirichlet, geom.a1(), t);
        out.push(match (&e0, f, lead) {
            (Ok(e0), Ok(f), Ok(l)) => CheckRecord::new(
                SUITE,
                name,
                ((f.value - e0.value) / l.value - 1.0).abs(),
                TOL,
            ),
            _ => CheckRecord::failed(SUITE, name, TOL),
        });
    }

    let nn = FieldConfig::Scalar(ScalarConfig::NN);
    for a1t in [0.02, 0.01] {
        let name = format!("NN,poisson,a1T={a1t}");
        let t = a1t / geom.a1();
        let dt = thermal_correction_poisson(&geom, nn, t, &spec);
        let lead = thermal_leading(BoundaryCondition::Neumann, geom.a1(), t);
        out.push(match (dt, lead) {
            (Ok(dt), Ok(l)) => CheckRecord::new(SUITE, name, (dt.value / l.value - 1.0).abs(), TOL),
            _ => CheckRecord::failed(SUITE, name, TOL),
        });
    }
    out
}
